//! Exact coefficient polynomials in `x = 1 − a`.
//!
//! `t_n(x)` are the phase-expansion coefficients, `c_n(x)` those of the inverse
//! phase, and `d_{n,k}(x)` the intermediate power-series coefficients linking
//! them (`c_n = d_{n,n+1}`). The results are exact rationals; the
//! floating evaluations go through a shared cache of double-double splits.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

/// Polynomial with exact rational coefficients, lowest power first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_integers(&[0, 1])
    }

    /// `x + c` for an integer `c`.
    pub fn linear(c: i64) -> Self {
        Self::from_integers(&[c, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// True when every coefficient from `x^1` upwards is strictly positive.
    pub fn positive_above_constant(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_positive())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Synthetic division by `x + c`: returns quotient and remainder.
    pub fn div_linear(&self, c: i64) -> (Self, BigRational) {
        if self.coeffs.is_empty() {
            return (Self::zero(), BigRational::zero());
        }
        let root = rat(-c, 1);
        let n = self.coeffs.len();
        let mut q = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * &root;
            if i == 0 {
                return (Self::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Exact division by `x + c`; a nonzero remainder is an internal error.
    pub fn div_linear_exact(&self, c: i64) -> Result<Self> {
        let (q, r) = self.div_linear(c);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal(format!("division by (x + {c}) left remainder {r}")))
        }
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients split into double-double parts `(hi, lo)`.
    pub fn float_parts(&self) -> Vec<(f64, f64)> {
        self.coeffs.iter().map(split_rational).collect()
    }

    /// Horner evaluation in `T`.
    pub fn eval<T: Real>(&self, x: T) -> T {
        eval_parts(&self.float_parts(), x)
    }

    /// Coefficients rendered as `"p/q"` strings, lowest power first.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }
}

/// Rounds a rational to `hi + lo` with `hi = fl(r)` and `lo = fl(r − hi)`.
fn split_rational(r: &BigRational) -> (f64, f64) {
    let hi = r.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return (hi, 0.0);
    }
    let exact_hi = BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
    let lo = (r - exact_hi).to_f64().unwrap_or(0.0);
    (hi, lo)
}

fn eval_parts<T: Real>(parts: &[(f64, f64)], x: T) -> T {
    parts.iter().rev().fold(T::zero(), |acc, &(h, l)| acc * x + T::from_parts(h, l))
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({}/{})", mag.numer(), mag.denom())?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Parses the [`Display`](fmt::Display) form, e.g. `x^2 - (3/2)x + 4`.
/// Coefficients may also be written without parentheses (`3/2x`).
impl std::str::FromStr for RationalPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("cannot parse polynomial {s:?}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad());
        }
        let mut coeffs: Vec<BigRational> = Vec::new();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let mut sign = BigRational::one();
            if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            }
            let end = rest[1..].find(['+', '-']).map_or(rest.len(), |i| i + 1);
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let (coef, power) = match term.find('x') {
                Some(i) => {
                    let p = match &term[i + 1..] {
                        "" => 1,
                        e => e.strip_prefix('^').and_then(|e| e.parse::<usize>().ok()).ok_or_else(bad)?,
                    };
                    (&term[..i], p)
                }
                None => (term, 0),
            };
            let coef = coef.trim_start_matches('(').trim_end_matches(')');
            let value = if coef.is_empty() {
                if power == 0 {
                    return Err(bad());
                }
                BigRational::one()
            } else {
                let (n, d) = coef.split_once('/').unwrap_or((coef, "1"));
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigRational::zero());
            }
            coeffs[power] += sign * value;
        }
        Ok(RationalPolynomial::new(coeffs))
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPolynomial({self})")
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, b: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(b.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) + b.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, b: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(b.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) - b.coeff(i)).collect())
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, b: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || b.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + b.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in b.coeffs.iter().enumerate() {
                out[i + j] += p * q;
            }
        }
        RationalPolynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalPolynomial {
            type Output = RationalPolynomial;
            fn $m(self, b: RationalPolynomial) -> RationalPolynomial {
                (&self).$m(&b)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Rising factorial `(x)_k` as a polynomial in `x`.
pub fn pochhammer_poly(k: usize) -> RationalPolynomial {
    let mut p = RationalPolynomial::from_integers(&[1]);
    for i in 0..k {
        p = &p * &RationalPolynomial::linear(i as i64);
    }
    p
}

// ---------------------------------------------------------------------------
// Integer kernels. The recurrences run over `BigInt` with one denominator per
// polynomial; rational normalisation per coefficient dominates otherwise.

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in b.iter().enumerate() {
            out[i + j] += p * q;
        }
    }
    out
}

fn int_axpy(acc: &mut Vec<BigInt>, s: &BigInt, v: &[BigInt]) {
    if acc.len() < v.len() {
        acc.resize(v.len(), BigInt::zero());
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += s * b;
    }
}

fn int_pochhammer(k: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for i in 0..k {
        p = int_mul(&p, &[BigInt::from(i), BigInt::one()]);
    }
    p
}

/// Exact quotient by the monic `x + c`; integer inputs stay integer.
fn int_div_linear(p: &[BigInt], c: i64) -> Result<Vec<BigInt>> {
    let n = p.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let root = BigInt::from(-c);
    let mut q = vec![BigInt::zero(); n - 1];
    let mut carry = BigInt::zero();
    for i in (1..n).rev() {
        let v = &p[i] + &carry * &root;
        q[i - 1] = v.clone();
        carry = v;
    }
    let r = &p[0] + &carry * &root;
    if !r.is_zero() {
        return Err(Error::Internal(format!("division by (x + {c}) left remainder {r}")));
    }
    Ok(q)
}

fn to_rational(num: &[BigInt], den: &BigInt) -> RationalPolynomial {
    RationalPolynomial::new(num.iter().map(|c| BigRational::new(c.clone(), den.clone())).collect())
}

/// Numerator coefficients over a common positive denominator.
#[derive(Clone)]
struct Scaled {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scaled {
    fn reduce(mut self) -> Self {
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
        self
    }
}

struct Entry {
    poly: RationalPolynomial,
    parts: Vec<(f64, f64)>,
    int: Vec<BigInt>,
}

impl Entry {
    fn new(int: Vec<BigInt>, den: &BigInt) -> Arc<Entry> {
        let poly = to_rational(&int, den);
        let parts = poly.float_parts();
        Arc::new(Entry { poly, parts, int })
    }
}

#[derive(Default)]
struct Tables {
    t: RwLock<Vec<Arc<Entry>>>,
    c: RwLock<Vec<Arc<Entry>>>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(Tables::default)
}

/// The next `t_n` given `t_0 .. t_{n-1}`.
fn t_next(prev: &[Arc<Entry>]) -> Result<Vec<BigInt>> {
    let n = prev.len();
    let lead = int_div_linear(&int_pochhammer(2 * n + 2), n as i64 + 1)?;
    let mut acc = Vec::new();
    int_axpy(&mut acc, &BigInt::from(n + 1), &lead);
    let minus_one = -BigInt::one();
    for k in 1..=n {
        let q = int_div_linear(&int_pochhammer(2 * k + 1), k as i64)?;
        int_axpy(&mut acc, &minus_one, &int_mul(&q, &prev[n - k].int));
    }
    while acc.last().is_some_and(|c| c.is_zero()) {
        acc.pop();
    }
    Ok(acc)
}

fn t_entry(n: usize) -> Result<Arc<Entry>> {
    let tb = tables();
    if let Some(e) = tb.t.read().expect("coefficient cache poisoned").get(n) {
        return Ok(e.clone());
    }
    let mut w = tb.t.write().expect("coefficient cache poisoned");
    while w.len() <= n {
        let next = t_next(&w)?;
        w.push(Entry::new(next, &BigInt::one()));
    }
    Ok(w[n].clone())
}

/// `t_0 .. t_{k-1}` from the cache.
fn t_prefix(k: usize) -> Result<Vec<Arc<Entry>>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    t_entry(k - 1)?;
    Ok(tables().t.read().expect("coefficient cache poisoned")[..k].to_vec())
}

/// `d_{n,0} .. d_{n,kmax}` with `d_{n,0} = 1`.
fn d_row(n: usize, kmax: usize) -> Result<Vec<Scaled>> {
    let ts = t_prefix(kmax)?;
    let m = BigInt::from(2 * n + 1);
    let n1 = n as i64 + 1;
    let mut d = Vec::with_capacity(kmax + 1);
    d.push(Scaled { num: vec![BigInt::one()], den: BigInt::one() });
    for k in 1..=kmax {
        let ki = k as i64;
        // d_{n,k} = m/(2k-1) t_{k-1} + (1/k) sum_j w_j/(2j-1) t_{j-1} d_{n,k-j},
        // with w_j = 2j(n+1) - k; everything is put over one denominator.
        let mut den = BigInt::from(2 * ki - 1);
        let mut terms = Vec::with_capacity(k);
        for j in 1..k {
            let ji = j as i64;
            let w = 2 * ji * n1 - ki;
            if w == 0 {
                continue;
            }
            let dj = &d[k - j];
            let q = BigInt::from(ki * (2 * ji - 1)) * &dj.den;
            den = den.lcm(&q);
            terms.push((j, w, q));
        }
        let mut acc = Vec::new();
        int_axpy(&mut acc, &(&den / BigInt::from(2 * ki - 1) * &m), &ts[k - 1].int);
        for (j, w, q) in terms {
            let s = &den / &q * BigInt::from(w);
            int_axpy(&mut acc, &s, &int_mul(&ts[j - 1].int, &d[k - j].num));
        }
        d.push(Scaled { num: acc, den }.reduce());
    }
    Ok(d)
}

fn c_entry(n: usize) -> Result<Arc<Entry>> {
    let tb = tables();
    if let Some(e) = tb.c.read().expect("coefficient cache poisoned").get(n) {
        return Ok(e.clone());
    }
    // Rows are independent, so they are computed outside the lock.
    let have = tb.c.read().expect("coefficient cache poisoned").len();
    let mut fresh = Vec::new();
    for m in have..=n {
        let c = d_row(m, m + 1)?.pop().expect("row has m + 2 entries");
        fresh.push(Entry::new(c.num, &c.den));
    }
    let mut w = tb.c.write().expect("coefficient cache poisoned");
    for (i, e) in fresh.into_iter().enumerate() {
        if w.len() == have + i {
            w.push(e);
        }
    }
    Ok(w[n].clone())
}

/// `t_n(x)`, monic of degree `2n + 1` with integer coefficients.
pub fn t_poly(n: usize) -> Result<RationalPolynomial> {
    Ok(t_entry(n)?.poly.clone())
}

/// `d_{n,k}(x)` for `k ≥ 1`.
pub fn d_poly(n: usize, k: usize) -> Result<RationalPolynomial> {
    if k == 0 {
        return Err(Error::Precondition("d_{n,k} requires k >= 1".into()));
    }
    let d = d_row(n, k)?.pop().expect("row has k + 1 entries");
    Ok(to_rational(&d.num, &d.den))
}

/// `c_n(x) = d_{n,n+1}(x)`, monic of degree `2n + 1`.
pub fn c_poly(n: usize) -> Result<RationalPolynomial> {
    Ok(c_entry(n)?.poly.clone())
}

/// Floating evaluation of any coefficient polynomial.
pub fn eval_poly<T: Real>(p: &RationalPolynomial, x: T) -> T {
    p.eval(x)
}

/// `t_n(x)` evaluated through the cache.
pub fn t_value<T: Real>(n: usize, x: T) -> Result<T> {
    Ok(eval_parts(&t_entry(n)?.parts, x))
}

/// `c_n(x)` evaluated through the cache.
pub fn c_value<T: Real>(n: usize, x: T) -> Result<T> {
    Ok(eval_parts(&c_entry(n)?.parts, x))
}
