//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`s with
//! `|lo| <= ulp(hi)/2`, giving roughly 106 bits of significand.
//!
//! The error-free transformations follow Dekker and Knuth; the transcendental
//! functions use argument reduction plus Taylor series or a Newton correction
//! of the `f64` result. Accuracy is a few units of `2^-104` for arguments of
//! moderate size, which is what the reference evaluations in this crate need.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, Pow, Signed, ToPrimitive, Zero};

/// A double-double floating point number.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn d(x: f64) -> DoubleDouble {
    DoubleDouble { hi: x, lo: 0.0 }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl DoubleDouble {
    /// Builds a value from its two components; the pair is renormalised.
    pub fn new(hi: f64, lo: f64) -> Self {
        if !hi.is_finite() {
            return DoubleDouble { hi, lo: 0.0 };
        }
        let (h, l) = quick_two_sum(hi, lo);
        DoubleDouble::renorm(h, l)
    }

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Self {
        if hi.is_finite() {
            DoubleDouble { hi, lo }
        } else {
            DoubleDouble { hi, lo: 0.0 }
        }
    }

    pub const fn from_f64_const(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    /// The exact value `hi + lo`; `None` for infinities and NaN.
    pub fn to_rational(self) -> Option<BigRational> {
        Some(BigRational::from_float(self.hi)? + BigRational::from_float(self.lo)?)
    }

    /// `hi` is `r` rounded to `f64`, `lo` is the rounded remainder.
    pub fn from_rational(r: &BigRational) -> Self {
        let hi = r.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return d(hi);
        }
        let rest = r - BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
        DoubleDouble::new(hi, rest.to_f64().unwrap_or(0.0))
    }

    /// Scientific notation with `digits` significant digits, correctly
    /// rounded, trailing zeros removed, e.g. `3.1415926535897932384626433832795e0`.
    pub fn to_sci_string(self, digits: usize) -> String {
        let Some(r) = self.to_rational() else {
            return format!("{}", self.hi);
        };
        if r.is_zero() {
            return "0e0".into();
        }
        let digits = digits.clamp(1, 800);
        let r = r.abs();
        let ten = BigInt::from(10);
        let pow10 = |k: i64| -> BigRational {
            let p = BigRational::from_integer(Pow::pow(&ten, k.unsigned_abs()));
            if k >= 0 { p } else { p.recip() }
        };
        let lower = Pow::pow(&ten, digits as u64 - 1);
        let upper = &lower * &ten;
        let mut e = self.hi.abs().log10().floor() as i64;
        let mant = loop {
            let m = (&r * pow10(digits as i64 - 1 - e)).round().to_integer();
            if m >= upper {
                e += 1;
            } else if m < lower {
                e -= 1;
            } else {
                break m;
            }
        };
        let text = mant.to_string();
        let text = text.trim_end_matches('0');
        let mut out = String::with_capacity(text.len() + 8);
        if self.hi < 0.0 {
            out.push('-');
        }
        out.push_str(&text[..1]);
        if text.len() > 1 {
            out.push('.');
            out.push_str(&text[1..]);
        }
        out.push('e');
        out.push_str(&e.to_string());
        out
    }

    /// The shortest decimal string that parses back to exactly `self`.
    pub fn to_roundtrip_string(self) -> String {
        if self.lo == 0.0 || !self.hi.is_finite() {
            return format!("{:e}", self.hi);
        }
        (17..800)
            .map(|n| self.to_sci_string(n))
            .find(|s| s.parse::<DoubleDouble>().is_ok_and(|v| v == self))
            .unwrap_or_else(|| self.to_sci_string(800))
    }

    /// Exact decimal parse, rounded as in [`DoubleDouble::from_rational`].
    fn parse_decimal(src: &str) -> Option<Self> {
        let s = src.trim();
        let (neg, body) = match s.as_bytes().first()? {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i64>().ok()?),
            None => (body, 0),
        };
        let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{int}{frac}");
        let digits = digits.trim_start_matches('0');
        let sign = if neg { -1.0 } else { 1.0 };
        if digits.is_empty() {
            return Some(d(0.0 * sign));
        }
        let scale = exp.checked_sub(frac.len() as i64)?;
        let magnitude = scale + digits.len() as i64;
        if magnitude > 330 {
            return Some(d(f64::INFINITY * sign));
        }
        if magnitude < -360 {
            return Some(d(0.0 * sign));
        }
        let m: BigInt = digits.parse().ok()?;
        let p = Pow::pow(&BigInt::from(10), scale.unsigned_abs());
        let r = if scale >= 0 { BigRational::from_integer(m * p) } else { BigRational::new(m, p) };
        let v = DoubleDouble::from_rational(&r);
        Some(if neg { -v } else { v })
    }

    pub const PI: DoubleDouble = DoubleDouble { hi: std::f64::consts::PI, lo: 1.2246467991473532e-16 };
    pub const FRAC_PI_2: DoubleDouble = DoubleDouble { hi: std::f64::consts::FRAC_PI_2, lo: 6.123233995736766e-17 };
    pub const FRAC_PI_4: DoubleDouble = DoubleDouble { hi: std::f64::consts::FRAC_PI_4, lo: 3.061616997868383e-17 };
    pub const TAU: DoubleDouble = DoubleDouble { hi: std::f64::consts::TAU, lo: 2.4492935982947064e-16 };
    pub const E: DoubleDouble = DoubleDouble { hi: std::f64::consts::E, lo: 1.4456468917292502e-16 };
    pub const LN_2: DoubleDouble = DoubleDouble { hi: std::f64::consts::LN_2, lo: 2.3190468138462996e-17 };
    pub const LN_10: DoubleDouble = DoubleDouble { hi: std::f64::consts::LN_10, lo: -2.1707562233822494e-16 };
    pub const EPSILON: f64 = 4.930380657631324e-32; // 2^-104

    fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = p2 + self.lo * b;
        let (h, l) = quick_two_sum(p1, p2);
        DoubleDouble::renorm(h, l)
    }

    fn sqr(self) -> Self {
        let (p1, p2) = two_prod(self.hi, self.hi);
        let p2 = p2 + 2.0 * self.hi * self.lo + self.lo * self.lo;
        let (h, l) = quick_two_sum(p1, p2);
        DoubleDouble::renorm(h, l)
    }

    fn ldexp(self, e: i32) -> Self {
        let f = 2f64.powi(e);
        DoubleDouble { hi: self.hi * f, lo: self.lo * f }
    }

    fn nint(self) -> Self {
        let hi = self.hi.round();
        if hi == self.hi {
            let lo = self.lo.round();
            let (h, l) = quick_two_sum(hi, lo);
            DoubleDouble::renorm(h, l)
        } else {
            if (hi - self.hi).abs() == 0.5 && self.lo < 0.0 {
                // hi sits exactly on a half; the low word decides.
                return d(hi - 1.0);
            }
            d(hi)
        }
    }

    /// `exp(x) - 1` for `|x| <= ~1e-3`, by Taylor series.
    fn expm1_small(r: Self) -> Self {
        let eps = Self::EPSILON * 1e-2;
        let mut sum = r;
        let mut term = r;
        let mut n = 2.0;
        loop {
            term = term * r / d(n);
            sum += term;
            if term.hi.abs() <= eps * sum.hi.abs() || n > 40.0 {
                break;
            }
            n += 1.0;
        }
        sum
    }

    /// Sine and cosine for `|t| <= pi/4`.
    fn sin_cos_reduced(t: Self) -> (Self, Self) {
        if t.hi == 0.0 {
            return (t, DoubleDouble::one());
        }
        // Halve three times, then apply the double-angle formulas.
        let s = t.ldexp(-3);
        let s2 = s.sqr();
        let eps = Self::EPSILON * 1e-3;
        let mut sin = s;
        let mut term = s;
        let mut k = 1.0;
        loop {
            term = -(term * s2) / d((2.0 * k) * (2.0 * k + 1.0));
            sin += term;
            if term.hi.abs() <= eps * sin.hi.abs() || k > 30.0 {
                break;
            }
            k += 1.0;
        }
        let mut cos = (DoubleDouble::one() - sin.sqr()).sqrt();
        for _ in 0..3 {
            let s_new = (sin * cos).ldexp(1);
            let c_new = DoubleDouble::one() - sin.sqr().ldexp(1);
            sin = s_new;
            cos = c_new;
        }
        (sin, cos)
    }

    fn sin_cos_dd(self) -> (Self, Self) {
        if !self.hi.is_finite() {
            return (DoubleDouble::nan(), DoubleDouble::nan());
        }
        let j = (self / Self::FRAC_PI_2).nint();
        let t = self - Self::FRAC_PI_2 * j;
        let (s, c) = Self::sin_cos_reduced(t);
        let q = (j.hi.rem_euclid(4.0)) as i32;
        match q {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

/// Shortest `f64` form when the low word is zero, otherwise 32 significant
/// digits.
impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == 0.0 || f.precision().is_some() {
            fmt::Display::fmt(&self.hi, f)
        } else {
            f.write_str(&self.to_sci_string(32))
        }
    }
}

impl std::str::FromStr for DoubleDouble {
    type Err = std::num::ParseFloatError;

    fn from_str(src: &str) -> Result<Self, Self::Err> {
        match DoubleDouble::parse_decimal(src) {
            Some(v) => Ok(v),
            None => src.trim().parse::<f64>().map(d),
        }
    }
}

impl fmt::LowerExp for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerExp::fmt(&self.hi, f)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return d(s1);
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (h, l) = quick_two_sum(s1, s2);
        DoubleDouble::renorm(h, l)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        if !p1.is_finite() {
            return d(p1);
        }
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (h, l) = quick_two_sum(p1, p2);
        DoubleDouble::renorm(h, l)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || b.hi.is_infinite() {
            return d(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        DoubleDouble::renorm(q1, q2) + d(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        let n = (self / b).trunc();
        self - b * n
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for DoubleDouble {
            fn $m(&mut self, rhs: Self) {
                *self = *self $op rhs;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /, RemAssign rem_assign %);

impl Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(DoubleDouble::zero(), |a, b| a + b)
    }
}

impl Product for DoubleDouble {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(DoubleDouble::one(), |a, b| a * b)
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble { hi: 0.0, lo: 0.0 }
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        DoubleDouble { hi: 1.0, lo: 0.0 }
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = std::num::ParseFloatError;

    /// Decimal strings only; digits beyond `f64` precision are folded in
    /// through a second parse of the residual.
    fn from_str_radix(src: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            // Forces the standard parse error for unsupported radices.
            "radix".parse::<f64>()?;
        }
        src.parse()
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        let hi = t.hi.to_i64()?;
        hi.checked_add(t.lo.to_i64()?)
    }
    fn to_u64(&self) -> Option<u64> {
        let t = self.trunc();
        if t.hi < 0.0 {
            return None;
        }
        let v = t.to_i128()?;
        u64::try_from(v).ok()
    }
    fn to_i128(&self) -> Option<i128> {
        let t = self.trunc();
        let hi = t.hi.to_i128()?;
        hi.checked_add(t.lo.to_i128()?)
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
    fn to_f32(&self) -> Option<f32> {
        Some((self.hi + self.lo) as f32)
    }
}

impl NumCast for DoubleDouble {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        if let Some(i) = n.to_i64() {
            let hi = i as f64;
            let lo = (i - hi as i64) as f64;
            if (hi as i64).checked_add(lo as i64) == Some(i) {
                return Some(DoubleDouble::new(hi, lo));
            }
        }
        n.to_f64().map(d)
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        <DoubleDouble as NumCast>::from(n)
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(DoubleDouble::new(hi, lo))
    }
    fn from_f64(n: f64) -> Option<Self> {
        Some(d(n))
    }
    fn from_f32(n: f32) -> Option<Self> {
        Some(d(n as f64))
    }
}

impl FloatConst for DoubleDouble {
    fn E() -> Self {
        DoubleDouble::E
    }
    fn FRAC_1_PI() -> Self {
        DoubleDouble::new(std::f64::consts::FRAC_1_PI, -1.9678676675182486e-17)
    }
    fn FRAC_1_SQRT_2() -> Self {
        DoubleDouble::new(std::f64::consts::FRAC_1_SQRT_2, -4.833646656726457e-17)
    }
    fn FRAC_2_PI() -> Self {
        DoubleDouble::new(std::f64::consts::FRAC_2_PI, -3.935735335036497e-17)
    }
    fn FRAC_2_SQRT_PI() -> Self {
        DoubleDouble::new(std::f64::consts::FRAC_2_SQRT_PI, 1.533545961316588e-17)
    }
    fn FRAC_PI_2() -> Self {
        DoubleDouble::FRAC_PI_2
    }
    fn FRAC_PI_3() -> Self {
        DoubleDouble::new(std::f64::consts::FRAC_PI_3, -1.072081766451091e-16)
    }
    fn FRAC_PI_4() -> Self {
        DoubleDouble::FRAC_PI_4
    }
    fn FRAC_PI_6() -> Self {
        DoubleDouble::new(std::f64::consts::FRAC_PI_6, -5.360408832255455e-17)
    }
    fn FRAC_PI_8() -> Self {
        DoubleDouble::new(std::f64::consts::FRAC_PI_8, 1.5308084989341915e-17)
    }
    fn LN_10() -> Self {
        DoubleDouble::LN_10
    }
    fn LN_2() -> Self {
        DoubleDouble::LN_2
    }
    fn LOG10_E() -> Self {
        DoubleDouble::new(std::f64::consts::LOG10_E, 1.098319650216765e-17)
    }
    fn LOG2_E() -> Self {
        DoubleDouble::new(std::f64::consts::LOG2_E, 2.0355273740931033e-17)
    }
    fn PI() -> Self {
        DoubleDouble::PI
    }
    fn SQRT_2() -> Self {
        DoubleDouble::new(std::f64::consts::SQRT_2, -9.667293313452913e-17)
    }
    fn TAU() -> Self {
        DoubleDouble::TAU
    }
    fn LOG10_2() -> Self {
        DoubleDouble::new(std::f64::consts::LOG10_2, -2.8037281277851704e-18)
    }
    fn LOG2_10() -> Self {
        DoubleDouble::new(std::f64::consts::LOG2_10, 1.661617516973592e-16)
    }
}

impl Float for DoubleDouble {
    fn nan() -> Self {
        d(f64::NAN)
    }
    fn infinity() -> Self {
        d(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        d(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        d(-0.0)
    }
    fn min_value() -> Self {
        d(f64::MIN)
    }
    fn min_positive_value() -> Self {
        d(f64::MIN_POSITIVE)
    }
    fn epsilon() -> Self {
        d(Self::EPSILON)
    }
    fn max_value() -> Self {
        d(f64::MAX)
    }
    fn is_nan(self) -> bool {
        self.hi.is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi.is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi.is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi.classify()
    }
    fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            DoubleDouble::new(hi, self.lo.floor())
        } else {
            d(hi)
        }
    }
    fn ceil(self) -> Self {
        let hi = self.hi.ceil();
        if hi == self.hi {
            DoubleDouble::new(hi, self.lo.ceil())
        } else {
            d(hi)
        }
    }
    fn round(self) -> Self {
        if self.hi >= 0.0 {
            (self + d(0.5)).floor()
        } else {
            (self - d(0.5)).ceil()
        }
    }
    fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            self.ceil()
        }
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.hi.is_sign_negative()) {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        d(self.hi.signum())
    }
    fn is_sign_positive(self) -> bool {
        self.hi.is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.hi.is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        DoubleDouble::one() / self
    }
    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return DoubleDouble::one();
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = DoubleDouble::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
    fn powf(self, n: Self) -> Self {
        if self.hi == 0.0 {
            return if n.hi > 0.0 {
                DoubleDouble::zero()
            } else if n.hi == 0.0 {
                DoubleDouble::one()
            } else {
                DoubleDouble::infinity()
            };
        }
        if self.hi < 0.0 {
            if n.fract().is_zero() {
                if let Some(k) = n.to_i64() {
                    if k.unsigned_abs() <= i32::MAX as u64 {
                        return self.powi(k as i32);
                    }
                }
            }
            return DoubleDouble::nan();
        }
        (n * self.ln()).exp()
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { DoubleDouble::zero() } else { DoubleDouble::nan() };
        }
        if self.hi.is_infinite() {
            return self;
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let diff = (self - d(ax).sqr()).hi;
        let (h, l) = two_sum(ax, diff * x * 0.5);
        DoubleDouble::renorm(h, l)
    }
    fn exp(self) -> Self {
        if self.hi > 709.78 {
            return DoubleDouble::infinity();
        }
        if self.hi < -745.0 {
            return DoubleDouble::zero();
        }
        if self.hi == 0.0 {
            return DoubleDouble::one();
        }
        let k = (self.hi / Self::LN_2.hi).round();
        let r = self - Self::LN_2.mul_f64(k);
        // exp(r) = (1 + s)^(2^9) with s = expm1(r / 2^9)
        let mut s = Self::expm1_small(r.ldexp(-9));
        for _ in 0..9 {
            s = s.ldexp(1) + s.sqr();
        }
        let v = s + DoubleDouble::one();
        let ki = k as i32;
        // Split the scaling so that subnormal ranges do not overflow 2^k.
        if ki.abs() > 1000 {
            v.ldexp(ki / 2).ldexp(ki - ki / 2)
        } else {
            v.ldexp(ki)
        }
    }
    fn exp2(self) -> Self {
        (self * Self::LN_2).exp()
    }
    fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { DoubleDouble::neg_infinity() } else { DoubleDouble::nan() };
        }
        if self.hi.is_infinite() {
            return self;
        }
        if self.hi == 1.0 && self.lo == 0.0 {
            return DoubleDouble::zero();
        }
        let mut x = d(self.hi.ln());
        for _ in 0..2 {
            x = x + self * (-x).exp() - DoubleDouble::one();
        }
        x
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn log2(self) -> Self {
        self.ln() / Self::LN_2
    }
    fn log10(self) -> Self {
        self.ln() / Self::LN_10
    }
    fn max(self, other: Self) -> Self {
        if self.is_nan() {
            return other;
        }
        if other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if self.is_nan() {
            return other;
        }
        if other < self {
            other
        } else {
            self
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            DoubleDouble::zero()
        }
    }
    fn cbrt(self) -> Self {
        if self.hi == 0.0 {
            return self;
        }
        let y = d(self.hi.cbrt());
        // One Newton step on y^3 = x.
        y - (y * y * y - self) / (d(3.0) * y.sqr())
    }
    fn hypot(self, other: Self) -> Self {
        let a = self.abs();
        let b = other.abs();
        let (big, small) = if a > b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return DoubleDouble::zero();
        }
        if big.is_infinite() {
            return big;
        }
        let r = small / big;
        big * (DoubleDouble::one() + r.sqr()).sqrt()
    }
    fn sin(self) -> Self {
        self.sin_cos_dd().0
    }
    fn cos(self) -> Self {
        self.sin_cos_dd().1
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos_dd();
        s / c
    }
    fn asin(self) -> Self {
        let one = DoubleDouble::one();
        if self.abs() > one {
            return DoubleDouble::nan();
        }
        self.atan2((one - self.sqr()).sqrt())
    }
    fn acos(self) -> Self {
        let one = DoubleDouble::one();
        if self.abs() > one {
            return DoubleDouble::nan();
        }
        (one - self.sqr()).sqrt().atan2(self)
    }
    fn atan(self) -> Self {
        self.atan2(DoubleDouble::one())
    }
    fn atan2(self, other: Self) -> Self {
        let y = self;
        let x = other;
        if x.hi == 0.0 && y.hi == 0.0 {
            return d(y.hi.atan2(x.hi));
        }
        if y.is_nan() || x.is_nan() {
            return DoubleDouble::nan();
        }
        if x.is_infinite() || y.is_infinite() {
            return d(y.hi.atan2(x.hi));
        }
        let r = x.hypot(y);
        let xx = x / r;
        let yy = y / r;
        let mut z = d(y.hi.atan2(x.hi));
        for _ in 0..2 {
            let (sz, cz) = z.sin_cos_dd();
            if xx.hi.abs() > yy.hi.abs() {
                z += (yy - sz) / cz;
            } else {
                z -= (xx - cz) / sz;
            }
        }
        z
    }
    fn sin_cos(self) -> (Self, Self) {
        self.sin_cos_dd()
    }
    fn exp_m1(self) -> Self {
        if self.hi.abs() < 1e-3 {
            Self::expm1_small(self)
        } else if self.hi.abs() < 0.5 {
            let mut s = Self::expm1_small(self.ldexp(-9));
            for _ in 0..9 {
                s = s.ldexp(1) + s.sqr();
            }
            s
        } else {
            self.exp() - DoubleDouble::one()
        }
    }
    fn ln_1p(self) -> Self {
        let u = DoubleDouble::one() + self;
        if u.hi <= 0.0 {
            return u.ln();
        }
        // Newton on exp(y) - 1 = x starting from the f64 estimate.
        let mut y = d(self.hi.ln_1p());
        for _ in 0..2 {
            let em1 = y.exp_m1();
            y -= (em1 - self) / (em1 + DoubleDouble::one());
        }
        y
    }
    fn sinh(self) -> Self {
        if self.hi.abs() < 0.5 {
            let e = self.exp_m1();
            // sinh x = (e^x - 1)(e^x + 1) / (2 e^x)
            let ex = e + DoubleDouble::one();
            (e * (ex + DoubleDouble::one()) / ex).ldexp(-1)
        } else {
            let e = self.exp();
            (e - e.recip()).ldexp(-1)
        }
    }
    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).ldexp(-1)
    }
    fn tanh(self) -> Self {
        if self.hi.abs() > 40.0 {
            return d(self.hi.signum());
        }
        let e = self.ldexp(1).exp_m1();
        e / (e + d(2.0))
    }
    fn asinh(self) -> Self {
        let a = self.abs();
        let r = if a.hi < 0.5 {
            let t = a.sqr();
            (a + t / (DoubleDouble::one() + (DoubleDouble::one() + t).sqrt())).ln_1p()
        } else {
            (a + (a.sqr() + DoubleDouble::one()).sqrt()).ln()
        };
        if self.hi < 0.0 {
            -r
        } else {
            r
        }
    }
    fn acosh(self) -> Self {
        if self.hi < 1.0 {
            return DoubleDouble::nan();
        }
        (self + (self.sqr() - DoubleDouble::one()).sqrt()).ln()
    }
    fn atanh(self) -> Self {
        let one = DoubleDouble::one();
        ((one + self) / (one - self)).ln().ldexp(-1)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi.integer_decode()
    }
    fn to_degrees(self) -> Self {
        self * d(180.0) / Self::PI
    }
    fn to_radians(self) -> Self {
        self * Self::PI / d(180.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(x: f64) -> DoubleDouble {
        d(x)
    }

    fn close(a: DoubleDouble, b: DoubleDouble, rel: f64) -> bool {
        let d = (a - b).abs();
        d.hi <= rel * b.abs().hi.max(1e-300)
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(DoubleDouble::PI.to_sci_string(32), "3.1415926535897932384626433832795e0");
        assert_eq!(dd(-0.125).to_sci_string(10), "-1.25e-1");
        assert_eq!(dd(9.9999).to_sci_string(3), "1e1");
        assert_eq!(dd(0.5).to_string(), "0.5");
        let third: DoubleDouble = "0.3333333333333333333333333333333333".parse().unwrap();
        assert!(close(third, dd(1.0) / dd(3.0), 1e-31));
        let back: DoubleDouble = DoubleDouble::PI.to_string().parse().unwrap();
        assert!(close(back, DoubleDouble::PI, 1e-31));
        let big: DoubleDouble = "-2.5e40".parse().unwrap();
        assert_eq!(big.hi, -2.5e40);
        assert!("1.2.3".parse::<DoubleDouble>().is_err());
        assert_eq!("inf".parse::<DoubleDouble>().unwrap().hi, f64::INFINITY);
        assert_eq!("0.1".parse::<DoubleDouble>().unwrap().hi, 0.1);
    }

    #[test]
    fn decimal_round_trip() {
        let mut x = dd(1.0) / dd(3.0);
        for k in 0..200 {
            let v = if k % 2 == 0 { x } else { -x.recip() };
            let s = v.to_roundtrip_string();
            assert_eq!(s.parse::<DoubleDouble>().unwrap(), v, "{s}");
            x = x * dd(1.7) + dd(1e-3);
        }
        let tiny_lo = DoubleDouble::new(1.0, 1e-40);
        assert_eq!(tiny_lo.to_roundtrip_string().parse::<DoubleDouble>().unwrap(), tiny_lo);
        assert_eq!(DoubleDouble::PI.to_roundtrip_string().len(), 35);
    }

    #[test]
    fn arithmetic_recovers_low_word() {
        let third = dd(1.0) / dd(3.0);
        let back = third * dd(3.0);
        assert!(close(back, dd(1.0), 1e-31));
        // 1/3 carries information below f64 resolution.
        assert!(third.lo().abs() > 0.0);
    }

    #[test]
    fn sqrt_squares_back() {
        for &x in &[2.0, 3.0, 0.125, 1e10, 7e-8] {
            let r = dd(x).sqrt();
            assert!(close(r * r, dd(x), 1e-31), "x = {x}");
        }
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[-30.0, -1.5, -1e-5, 0.3, 1.0, 2.5, 40.0, 300.0] {
            let y = dd(x).exp().ln();
            assert!((y - dd(x)).abs().hi <= 1e-30 * x.abs().max(1.0), "x = {x}");
        }
        let e = dd(1.0).exp();
        assert!(close(e, DoubleDouble::E, 1e-31));
    }

    #[test]
    fn trig_identities() {
        for &x in &[0.1, 0.7, 1.3, 2.0, 3.0, -4.2, 10.0, 55.5, 123.456] {
            let (s, c) = dd(x).sin_cos();
            assert!((s * s + c * c - dd(1.0)).abs().hi < 1e-30, "x = {x}");
            assert!((s.hi - x.sin()).abs() < 1e-14);
        }
        let s = (DoubleDouble::PI / dd(6.0)).sin();
        assert!(close(s, dd(0.5), 1e-31));
        let c = (DoubleDouble::PI / dd(3.0)).cos();
        assert!(close(c, dd(0.5), 1e-30));
    }

    #[test]
    fn atan2_inverts_tan() {
        for &x in &[0.1, 0.7, 1.3, -1.0, 2.9] {
            let (s, c) = dd(x).sin_cos();
            let back = s.atan2(c);
            assert!((back - dd(x)).abs().hi < 1e-30, "x = {x}");
        }
        let q = dd(1.0).atan() * dd(4.0);
        assert!(close(q, DoubleDouble::PI, 1e-31));
    }

    #[test]
    fn powf_and_ln1p() {
        let p = dd(2.0).powf(dd(0.5));
        assert!(close(p, DoubleDouble::SQRT_2(), 1e-31));
        let l = dd(1e-10).ln_1p();
        let x = dd(1e-10);
        let expect = x - x * x / dd(2.0) + x * x * x / dd(3.0);
        assert!(close(l, expect, 1e-30));
        assert_eq!(dd(3.0).powi(4), dd(81.0));
    }

    #[test]
    fn rounding_and_ordering() {
        assert_eq!(dd(2.5).round(), dd(3.0));
        assert_eq!(dd(-2.5).round(), dd(-3.0));
        assert_eq!(dd(-2.7).trunc(), dd(-2.0));
        assert!(DoubleDouble::new(1.0, 1e-20) > dd(1.0));
        assert!(DoubleDouble::new(1.0, -1e-20) < dd(1.0));
    }
}
