//! Verification suites run against the quadrature oracle.
//!
//! Every suite is deterministic for a given [`Grid`]. Reference values are
//! computed in double-double arithmetic; expansions in the bound suite use
//! the working precision, the envelope suite always uses double-double so
//! that remainders below `f64` resolution keep their sign.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::time::Instant;

use gentrig::coeffs::{c_poly, t_poly, RationalPolynomial};
use gentrig::expansions::{
    f_expand, g_expand, m2_expand, phi_expand, x_expand, CertifiedValue, EvalRequest, Order, RemainderSign,
};
use gentrig::terminant::{b3_angle, b3_equation_residual, best_bound, terminant_eval, TerminantQuery};
use gentrig::{oracle, zeros, DoubleDouble, Real};
use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::config::Grid;
use crate::error::{CliError, CliResult};
use crate::output::{Record, Value};

type D = DoubleDouble;
type Cd = Complex<D>;

/// Reference tables of `t_n` and `c_n`, `n ≤ 5`.
const T_TABLE: [&str; 6] = [
    "x",
    "x^3 + 6x^2 + 6x",
    "x^5 + 20x^4 + 110x^3 + 210x^2 + 120x",
    "x^7 + 42x^6 + 560x^5 + 3248x^4 + 8946x^3 + 11256x^2 + 5040x",
    "x^9 + 72x^8 + 1764x^7 + 20580x^6 + 129834x^5 + 463050x^4 + 920184x^3 + 930960x^2 + 362880x",
    "x^11 + 110x^10 + 4290x^9 + 83688x^8 + 939774x^7 + 6494092x^6 + 28332282x^5 + 77504328x^4 \
     + 127178832x^3 + 112289760x^2 + 39916800x",
];
const C_TABLE: [&str; 6] = [
    "x",
    "x^3 + 9x^2 + 6x",
    "x^5 + 80/3x^4 + 160x^3 + 250x^2 + 120x",
    "x^7 + 791/15x^6 + 791x^5 + 4529x^4 + 11088x^3 + 12348x^2 + 5040x",
    "x^9 + 3048/35x^8 + 11996/5x^7 + 144924/5x^6 + 176016x^5 + 578466x^4 + 1052520x^3 + 986256x^2 + 362880x",
    "x^11 + 40843/315x^10 + 356092/63x^9 + 2439712/21x^8 + 3907442/3x^7 + 8635462x^6 + 35393952x^5 \
     + 271612924/3x^4 + 139585512x^3 + 116915040x^2 + 39916800x",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Tables,
    Envelope,
    Bounds,
    Zeros,
    Identities,
    Terminant,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Tables, Suite::Envelope, Suite::Bounds, Suite::Zeros, Suite::Identities, Suite::Terminant];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Envelope => "envelope",
            Suite::Bounds => "bounds",
            Suite::Zeros => "zeros",
            Suite::Identities => "identities",
            Suite::Terminant => "terminant",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub cases_run: usize,
    pub cases_failed: usize,
    /// Smallest `(bound − |error|)/bound`; absent for exact suites.
    pub worst_margin: Option<f64>,
    /// Wall-clock seconds.
    pub elapsed: f64,
    /// Descriptions of the first failing cases.
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cases_failed == 0 && self.worst_margin.is_none_or(|m| m > 0.0)
    }

    pub fn record(&self) -> Record {
        Record::new()
            .with("suite", Value::text(self.suite.name()))
            .with("cases_run", Value::Int(self.cases_run as i64))
            .with("cases_failed", Value::Int(self.cases_failed as i64))
            .with("worst_margin", Value::opt_real(self.worst_margin))
            .with("elapsed", Value::real(self.elapsed))
    }
}

const MAX_NOTES: usize = 20;

struct Tally {
    run: usize,
    failed: usize,
    worst: Option<f64>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { run: 0, failed: 0, worst: None, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.run += 1;
        if !ok {
            self.failed += 1;
            if self.notes.len() < MAX_NOTES {
                self.notes.push(what());
            }
        }
    }

    /// Passes when `err ≤ bound`; records the relative margin.
    fn margin(&mut self, err: f64, bound: f64, what: impl FnOnce() -> String) {
        let m = if bound > 0.0 {
            (bound - err) / bound
        } else if err == 0.0 {
            1.0
        } else {
            -1.0
        };
        self.worst = Some(self.worst.map_or(m, |w| w.min(m)));
        self.check(err <= bound, what);
    }

    fn error(&mut self, e: impl fmt::Display) {
        self.check(false, || e.to_string());
    }

    fn report(self, suite: Suite, start: Instant) -> VerifyReport {
        VerifyReport {
            suite,
            cases_run: self.run,
            cases_failed: self.failed,
            worst_margin: self.worst,
            elapsed: start.elapsed().as_secs_f64(),
            failures: self.notes,
        }
    }
}

fn f64s(xs: &[D]) -> Vec<f64> {
    xs.iter().map(|x| x.hi()).collect()
}

fn lift<T: Real>(z: Complex<T>) -> Cd {
    let (rh, rl) = z.re.parts();
    let (ih, il) = z.im.parts();
    Complex::new(D::new(rh, rl), D::new(ih, il))
}

fn down<T: Real>(z: Cd) -> Complex<T> {
    Complex::new(T::from_parts(z.re.hi(), z.re.lo()), T::from_parts(z.im.hi(), z.im.lo()))
}

fn orders(r: &std::ops::RangeInclusive<i64>) -> impl Iterator<Item = usize> {
    (*r.start()..=*r.end()).map(|n| n as usize)
}

pub fn run_verify<T: Real>(suite: Suite, grid: &Grid) -> CliResult<VerifyReport> {
    let start = Instant::now();
    let tally = match suite {
        Suite::Tables => tables()?,
        Suite::Envelope => envelope(grid),
        Suite::Bounds => bounds::<T>(grid),
        Suite::Zeros => zeros_suite(grid),
        Suite::Identities => identities(grid),
        Suite::Terminant => terminant(grid),
    };
    Ok(tally.report(suite, start))
}

fn tables() -> CliResult<Tally> {
    let mut t = Tally::new();
    for n in 0..=5 {
        for (name, table, poly) in [("t", &T_TABLE, t_poly(n)?), ("c", &C_TABLE, c_poly(n)?)] {
            let want: RationalPolynomial =
                table[n].parse().map_err(|e| CliError::Assertion(format!("reference table: {e}")))?;
            t.check(poly == want, || format!("{name}_{n} = {poly}, table has {want}"));
        }
    }
    Ok(t)
}

type Expand<T> = fn(&EvalRequest<T>) -> gentrig::Result<CertifiedValue<T>>;

fn envelope(grid: &Grid) -> Tally {
    let mut t = Tally::new();
    for &a in &grid.a {
        for &z in &grid.z {
            let refs = (|| -> gentrig::Result<_> {
                let (f, g) = oracle::f_g_quadrature(Complex::new(a, D::zero()), Complex::new(z, D::zero()))?;
                let (f, g) = (f.re, g.re);
                Ok([f, g, f * f + g * g, oracle::phase_real(a, z)?, oracle::invert_phase(a, z)?])
            })();
            let refs = match refs {
                Ok(r) => r,
                Err(e) => {
                    t.error(format_args!("oracle at a = {a}, z = {z}: {e}"));
                    continue;
                }
            };
            let series: [(&str, Expand<D>, &std::ops::RangeInclusive<i64>); 5] = [
                ("f", f_expand, &grid.orders),
                ("g", g_expand, &grid.orders),
                ("M2", m2_expand, &grid.orders),
                ("phi", phi_expand, &grid.phase_orders),
                ("X", x_expand, &grid.phase_orders),
            ];
            for ((name, expand, range), reference) in series.into_iter().zip(refs) {
                let mut prev: Option<bool> = None;
                for n in orders(range) {
                    let cv = match expand(&EvalRequest::new(a, Complex::new(z, D::zero()), Order::Fixed(n))) {
                        Ok(cv) if cv.error_bound.is_some() => cv,
                        Ok(_) => {
                            prev = None;
                            continue;
                        }
                        Err(e) => {
                            t.error(format_args!("{name} at a = {a}, z = {z}, N = {n}: {e}"));
                            prev = None;
                            continue;
                        }
                    };
                    let r = reference - cv.value.re;
                    let neg = r < D::zero();
                    let sign_ok = match cv.sign_certificate {
                        Some(RemainderSign::Positive) => r > D::zero(),
                        Some(RemainderSign::Negative) => neg,
                        None => false,
                    };
                    t.check(sign_ok, || format!("{name}: a = {a}, z = {z}, N = {n}: remainder {r:e} against {:?}", cv.sign_certificate));
                    let fnt = cv.first_neglected;
                    t.margin(r.abs().hi(), fnt.hi(), || {
                        format!("{name}: a = {a}, z = {z}, N = {n}: |R| = {r:e} ≥ first neglected {fnt:e}")
                    });
                    if let Some(p) = prev {
                        t.check(p != neg, || format!("{name}: a = {a}, z = {z}: no sign change at N = {n}"));
                    }
                    prev = Some(neg);
                }
            }
        }
    }
    t
}

fn bounds<T: Real>(grid: &Grid) -> Tally {
    let mut t = Tally::new();
    let mut fg_points: Vec<Cd> = grid.z.iter().map(|&z| Complex::new(z, D::zero())).collect();
    let mut phase_points = fg_points.clone();
    for &r in &grid.z_complex {
        fg_points.extend(grid.args.iter().map(|&th| Complex::from_polar(r, th)));
    }
    for &r in &grid.z {
        phase_points.extend(grid.args.iter().map(|&th| Complex::from_polar(r, th)));
    }
    let check = |t: &mut Tally, name: &str, a: D, z: Cd, n: usize, expand: Expand<T>, reference: Cd| {
        let req = EvalRequest::new(T::from_parts(a.hi(), a.lo()), down::<T>(z), Order::Fixed(n));
        match expand(&req) {
            Ok(cv) => {
                if let Some(b) = cv.error_bound {
                    let err = (lift(cv.value) - reference).norm().hi();
                    let b = b.to_f64_lossy();
                    t.margin(err, b, || format!("{name}: a = {a}, z = {z}, N = {n}: |error| = {err:e} > {b:e}"));
                }
            }
            Err(e) => t.error(format_args!("{name}: a = {a}, z = {z}, N = {n}: {e}")),
        }
    };
    for &a in &grid.a {
        let ac = Complex::new(a, D::zero());
        for &z in &fg_points {
            let (f, g) = match (oracle::f(ac, z), oracle::g(ac, z)) {
                (Ok(f), Ok(g)) => (f, g),
                (Err(e), _) | (_, Err(e)) => {
                    t.error(format_args!("oracle at a = {a}, z = {z}: {e}"));
                    continue;
                }
            };
            for n in orders(&grid.orders) {
                check(&mut t, "f", a, z, n, f_expand::<T>, f);
                check(&mut t, "g", a, z, n, g_expand::<T>, g);
                check(&mut t, "M2", a, z, n, m2_expand::<T>, f * f + g * g);
            }
        }
        for &z in &phase_points {
            match oracle::phase(a, z) {
                Ok(phi) => orders(&grid.phase_orders).for_each(|n| check(&mut t, "phi", a, z, n, phi_expand::<T>, phi)),
                Err(e) => t.error(format_args!("phase oracle at a = {a}, z = {z}: {e}")),
            }
            match oracle::invert_phase_complex(a, z) {
                Ok(x) => orders(&grid.phase_orders).for_each(|n| check(&mut t, "X", a, z, n, x_expand::<T>, x)),
                Err(e) => t.error(format_args!("inverse-phase oracle at a = {a}, w = {z}: {e}")),
            }
        }
    }
    t
}

fn zeros_suite(grid: &Grid) -> Tally {
    let mut t = Tally::new();
    let zmax = grid.zmax.hi();
    for a in f64s(&grid.zero_a) {
        for alpha in f64s(&grid.alpha) {
            let recs = match zeros::enumerate(a, alpha, *grid.k.start(), *grid.k.end(), true) {
                Ok(r) => r,
                Err(e) => {
                    t.error(format_args!("a = {a}, α = {alpha}: {e}"));
                    continue;
                }
            };
            for r in &recs {
                let k = r.k;
                let Some(z) = r.refined else { continue };
                if let Some(b) = r.seed_bound {
                    let d = (z - r.seed).abs();
                    t.margin(d, b, || format!("a = {a}, α = {alpha}, k = {k}: |{z} − {}| > {b:e}", r.seed));
                }
                match oracle::phase_real(a, z) {
                    Ok(phi) => {
                        let off = phi - PI * (k as f64 + alpha + 0.5);
                        t.check(off.abs() < 1e-10, || format!("a = {a}, α = {alpha}, k = {k}: phase off by {off:e}"));
                    }
                    Err(e) => t.error(e),
                }
                if let Ok((lo, hi)) = zeros::literature_bracket(a, alpha, k) {
                    t.check(lo < z && z < hi, || format!("a = {a}, α = {alpha}, k = {k}: {z} outside ({lo}, {hi})"));
                }
            }
            let counted = (|| -> gentrig::Result<usize> {
                let mut k = zeros::first_index(a, alpha)?;
                let mut count = 0;
                while zeros::zero_refine(zeros::zero_seed(a, alpha, k)?)?.refined.is_some_and(|z| z <= zmax) {
                    count += 1;
                    k += 1;
                }
                Ok(count)
            })();
            match (counted, zeros::sign_changes(a, alpha, zmax, grid.samples)) {
                (Ok(c), Ok(s)) => t.check(c == s, || format!("a = {a}, α = {alpha}: {c} zeros, {s} sign changes on (0, {zmax}]")),
                (Err(e), _) | (_, Err(e)) => t.error(e),
            }
        }
    }
    t
}

fn identities(grid: &Grid) -> Tally {
    let mut t = Tally::new();
    let h = 1e-5;
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(1e-300);
    for a in f64s(&grid.a) {
        for z in f64s(&grid.z) {
            let at = |x: f64| oracle::phase_modulus(a, x);
            let (pt, plus, minus) = match (at(z), at(z + h), at(z - h)) {
                (Ok(p), Ok(u), Ok(d)) => (p, u, d),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                    t.error(format_args!("a = {a}, z = {z}: {e}"));
                    continue;
                }
            };
            match oracle::incomplete_gamma_upper(a, Complex::new(0.0, -z)) {
                Ok(gm) => {
                    let e = rel(gm.norm_sqr(), pt.m2);
                    t.check(e < 1e-12, || format!("M² against |Γ(a, −iz)|² at a = {a}, z = {z}: rel {e:e}"));
                }
                Err(e) => t.error(e),
            }
            let fd = |u: f64, d: f64| (u - d) / (2.0 * h);
            let zp = z.powf(a - 1.0);
            let checks = [
                ("f' = −g", fd(plus.f, minus.f), -pt.g),
                ("g' = f − z^{a−1}", fd(plus.g, minus.g), pt.f - zp),
                ("(M²)' = −2g z^{a−1}", fd(plus.m2, minus.m2), -2.0 * pt.g * zp),
                ("φ' = z^{a−1} f/M²", fd(plus.phi, minus.phi), zp * pt.f / pt.m2),
            ];
            for (name, got, want) in checks {
                let e = rel(got, want);
                t.check(e < 1e-6, || format!("{name} at a = {a}, z = {z}: rel {e:e}"));
            }
            for alpha in f64s(&grid.alpha) {
                match oracle::ti(Complex::new(a, 0.0), Complex::new(z, 0.0), alpha) {
                    Ok(ti) => {
                        let m = pt.m2.sqrt();
                        let e = (ti.re - m * (pt.phi - PI * alpha).cos()).abs() / m;
                        t.check(e < 1e-11, || format!("ti = M cos(φ − πα) at a = {a}, z = {z}, α = {alpha}: {e:e}"));
                    }
                    Err(e) => t.error(e),
                }
            }
            let w = pt.phi - FRAC_PI_2;
            match oracle::invert_phase(a, w) {
                Ok(back) => t.check((back - z).abs() < 1e-10, || format!("X(φ − π/2) = {back} at a = {a}, z = {z}")),
                Err(e) => t.error(e),
            }
        }
    }
    t
}

fn terminant(grid: &Grid) -> Tally {
    let mut t = Tally::new();
    for p in f64s(&grid.p) {
        for z in f64s(&grid.z) {
            let v = TerminantQuery::real(p, Complex::new(z, 0.0)).and_then(|q| terminant_eval(&q));
            match v {
                Ok(v) => t.check(v.re > 0.0 && v.re < 1.0 && v.im == 0.0, || format!("Π_{p}({z}) = {v}")),
                Err(e) => t.error(e),
            }
        }
        for z in f64s(&grid.z) {
            for k in -6..=6 {
                let theta = k as f64 * PI / 8.0;
                let q = match TerminantQuery::real(p, Complex::from_polar(z, theta)) {
                    Ok(q) => q,
                    Err(e) => {
                        t.error(e);
                        continue;
                    }
                };
                match (terminant_eval(&q), best_bound(&q)) {
                    (Ok(v), Ok(b)) if b.sector_ok => {
                        let (v, b) = (v.norm(), b.value_or_inf());
                        t.margin(v, b, || format!("p = {p}, |z| = {z}, arg = {k}π/8: |Π| = {v:e} > {b:e}"));
                    }
                    (Ok(_), Ok(_)) => t.error(format_args!("no bound at p = {p}, arg = {k}π/8")),
                    (Err(e), _) | (_, Err(e)) => t.error(e),
                }
            }
        }
        for k in [5, 6, 8, 10, 12, 14] {
            let theta = k as f64 * PI / 16.0;
            match b3_angle(p, theta) {
                Ok(v) => {
                    let res = b3_equation_residual(p, theta, v).abs();
                    t.check(res < 1e-12, || format!("B3 angle residual {res:e} at p = {p}, θ = {k}π/16"));
                }
                Err(e) => t.error(e),
            }
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(x: f64) -> D {
        D::from(x)
    }

    #[test]
    fn tables_suite_counts() {
        let r = run_verify::<f64>(Suite::Tables, &Grid::default()).unwrap();
        assert_eq!((r.cases_run, r.cases_failed), (12, 0));
        assert!(r.passed());
    }

    #[test]
    fn small_bound_grid() {
        let grid = Grid {
            a: vec![dd(0.0), dd(-1.0)],
            z: vec![dd(10.0)],
            z_complex: vec![dd(8.0)],
            args: vec![dd(PI / 4.0)],
            orders: 1..=3,
            phase_orders: 1..=2,
            ..Grid::default()
        };
        let r = run_verify::<f64>(Suite::Bounds, &grid).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.cases_run > 20);
    }
}
