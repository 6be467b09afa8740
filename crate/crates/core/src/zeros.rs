//! Positive real zeros `z_κ(a)` of `ti(a, z, α)`, `κ = k + α`.
//!
//! The zero with index `k` satisfies `φ(a, z) − π/2 = πκ`, so it equals the
//! inverse phase `X(a, πκ)`. Seeds come from the certified expansion of `X`,
//! refinement from Newton's method on the quadrature value of `ti`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::expansions::{optimal_order, x_expand, EvalRequest, Order, Series};
use crate::oracle;
use crate::real::Real;

/// One indexed zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord<T> {
    pub a: T,
    pub alpha: T,
    pub k: i64,
    pub kappa: T,
    /// Asymptotic estimate `X(a, πκ)` or, for small `κ`, a scan estimate.
    pub seed: T,
    /// Certified bound on `|z_κ − seed|`; absent for scan seeds.
    pub seed_bound: Option<T>,
    /// Terms of the inverse-phase series behind `seed` (0 for scan seeds).
    pub seed_terms: usize,
    pub refined: Option<T>,
    /// `|ti(a, refined, α)|`.
    pub residual: Option<T>,
}

impl<T: Real> ZeroRecord<T> {
    /// `|refined − seed| ≤ seed_bound`, when both are present.
    pub fn certificate_holds(&self) -> Option<bool> {
        Some((self.refined? - self.seed).abs() <= self.seed_bound?)
    }
}

fn check_params<T: Real>(a: T, alpha: T) -> Result<()> {
    if !(a <= T::one()) {
        return Err(Error::Domain(format!("zeros are supported for a ≤ 1, got a = {a}")));
    }
    if !(alpha >= T::zero() && alpha < T::one()) {
        return Err(Error::Domain(format!("alpha must lie in [0, 1), got {alpha}")));
    }
    Ok(())
}

fn kappa_floor<T: Real>(a: T) -> T {
    (a + a.abs() - T::c(2.0)) / T::c(4.0)
}

/// Smallest `k` with `k + α > (a + |a| − 2)/4`.
pub fn first_index<T: Real>(a: T, alpha: T) -> Result<i64> {
    check_params(a, alpha)?;
    let k = (kappa_floor(a) - alpha).floor() + T::one();
    Ok(k.to_f64_lossy() as i64)
}

fn kappa_of<T: Real>(a: T, alpha: T, k: i64) -> Result<T> {
    check_params(a, alpha)?;
    let kappa = T::c(k as f64) + alpha;
    if !(kappa > kappa_floor(a)) {
        return Err(Error::Index(format!(
            "no zero with k = {k}: κ = {kappa} must exceed {}",
            kappa_floor(a)
        )));
    }
    Ok(kappa)
}

/// `ti(a, z, α)` on the positive axis.
fn ti_real<T: Real>(a: T, z: T, alpha: T) -> Result<T> {
    let v = oracle::ti(Complex::new(a, T::zero()), Complex::new(z, T::zero()), alpha)?;
    Ok(v.re)
}

/// Locates the zero by sign changes of `ti` on `(max(w, 0), w + π/2)` and
/// bisection; the phase bounds `z − π/2 < φ − π/2 < z` confine it there.
fn scan_seed<T: Real>(a: T, alpha: T, w: T) -> Result<T> {
    let hi = w + T::FRAC_PI_2();
    let lo = w.max(T::zero());
    let n = 64;
    let step = (hi - lo) / T::c(n as f64);
    let mut x0 = lo + step * T::c(1e-3);
    let mut y0 = ti_real(a, x0, alpha)?;
    for j in 1..=n {
        let x1 = lo + step * T::c(j as f64);
        let y1 = ti_real(a, x1, alpha)?;
        if y0 == T::zero() {
            return Ok(x0);
        }
        if (y0 < T::zero()) != (y1 < T::zero()) {
            let (mut l, mut r, mut yl) = (x0, x1, y0);
            for _ in 0..40 {
                let m = (l + r) * T::c(0.5);
                let ym = ti_real(a, m, alpha)?;
                if (ym < T::zero()) == (yl < T::zero()) {
                    l = m;
                    yl = ym;
                } else {
                    r = m;
                }
            }
            return Ok((l + r) * T::c(0.5));
        }
        x0 = x1;
        y0 = y1;
    }
    Err(Error::NonConvergence(format!("no sign change of ti located for w = {w}")))
}

/// Asymptotic seed for the `k`-th zero with its certificate.
///
/// Uses the optimally truncated inverse-phase series at `w = πκ`. When
/// `κ ≤ 0` or the certified bound exceeds 1, the seed comes from a sign
/// scan instead and `seed_bound` is absent.
pub fn zero_seed<T: Real>(a: T, alpha: T, k: i64) -> Result<ZeroRecord<T>> {
    let kappa = kappa_of(a, alpha, k)?;
    let w = T::PI() * kappa;
    let mut rec = ZeroRecord {
        a,
        alpha,
        k,
        kappa,
        seed: w,
        seed_bound: None,
        seed_terms: 0,
        refined: None,
        residual: None,
    };
    if a == T::one() {
        rec.seed_bound = Some(T::zero());
        return Ok(rec);
    }
    if w > T::zero() {
        let n = optimal_order(a, w, Series::X)?;
        let x = x_expand(&EvalRequest::new(a, Complex::new(w, T::zero()), Order::Fixed(n)))?;
        if let Some(b) = x.error_bound.filter(|b| *b <= T::one()) {
            rec.seed = x.value.re;
            rec.seed_bound = Some(b);
            rec.seed_terms = n;
            return Ok(rec);
        }
    }
    rec.seed = scan_seed(a, alpha, w)?;
    Ok(rec)
}

/// Newton refinement of a seeded record on `ti(a, z, α) = 0` using
/// `d ti/dz = −z^{a−1} cos(z − πα)`.
pub fn zero_refine<T: Real>(rec: ZeroRecord<T>) -> Result<ZeroRecord<T>> {
    let (a, alpha) = (rec.a, rec.alpha);
    let mut out = rec;
    if a == T::one() {
        out.refined = Some(rec.seed);
        out.residual = Some(ti_real(a, rec.seed, alpha)?.abs());
        return Ok(out);
    }
    let stop = (T::c(8.0) * T::epsilon()).max(T::quad_tolerance() * T::c(0.1));
    let mut z = rec.seed;
    for _ in 0..50 {
        let t = ti_real(a, z, alpha)?;
        let d = -(z.powf(a - T::one()) * (z - T::PI() * alpha).cos());
        let step = t / d;
        let mut next = z - step;
        if !(next > T::zero()) {
            next = z * T::c(0.5);
        }
        let done = (next - z).abs() <= stop * z;
        z = next;
        if done {
            out.refined = Some(z);
            out.residual = Some(ti_real(a, z, alpha)?.abs());
            return Ok(out);
        }
    }
    Err(Error::NonConvergence(format!("Newton refinement for k = {} did not converge", rec.k)))
}

/// Classical enclosure `πκ < z_κ < πκ + ((1−a)/(πκ))·2/(1 + √(1 + 4(1−a)/(πκ)²))`,
/// stated for the sine and cosine cases `α ∈ {0, 1/2}`.
pub fn literature_bracket<T: Real>(a: T, alpha: T, k: i64) -> Result<(T, T)> {
    if !(alpha == T::zero() || alpha == T::c(0.5)) {
        return Err(Error::Domain(format!("the bracket is stated for alpha ∈ {{0, 1/2}}, got {alpha}")));
    }
    let kappa = kappa_of(a, alpha, k)?;
    if !(kappa > T::zero()) {
        return Err(Error::Domain(format!("the bracket needs κ > 0, got {kappa}")));
    }
    let w = T::PI() * kappa;
    let x = T::one() - a;
    let gap = x / w * T::c(2.0) / (T::one() + (T::one() + T::c(4.0) * x / (w * w)).sqrt());
    Ok((w, w + gap))
}

/// Records for `k_from ..= k_to`, skipping indices below [`first_index`].
pub fn enumerate<T: Real>(a: T, alpha: T, k_from: i64, k_to: i64, refine: bool) -> Result<Vec<ZeroRecord<T>>> {
    let start = k_from.max(first_index(a, alpha)?);
    (start..=k_to)
        .map(|k| {
            let rec = zero_seed(a, alpha, k)?;
            if refine {
                zero_refine(rec)
            } else {
                Ok(rec)
            }
        })
        .collect()
}

/// Sign changes of `ti(a, ·, α)` over `samples` equally spaced points of `(0, zmax]`.
pub fn sign_changes<T: Real>(a: T, alpha: T, zmax: T, samples: usize) -> Result<usize> {
    let mut count = 0;
    let mut prev: Option<bool> = None;
    for j in 1..=samples {
        let z = zmax * T::c(j as f64) / T::c(samples as f64);
        let v = ti_real(a, z, alpha)?;
        if v == T::zero() {
            continue;
        }
        let neg = v < T::zero();
        if prev.is_some_and(|p| p != neg) {
            count += 1;
        }
        prev = Some(neg);
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn first_indices() {
        assert_eq!(first_index(0.0, 0.0).unwrap(), 0);
        assert_eq!(first_index(-2.0, 0.0).unwrap(), 0);
        assert_eq!(first_index(0.0, 0.75).unwrap(), -1);
        // κ = (a+|a|−2)/4 exactly is excluded
        assert_eq!(first_index(0.0, 0.5).unwrap(), 0);
        assert!(matches!(zero_seed(0.0, 0.5, -1), Err(Error::Index(_))));
        assert!(zero_seed(-2.0, 0.0, 2).is_ok());
    }

    #[test]
    fn cosine_integral_zero() {
        // third positive zero of Ci (index k = 3, α = 0): ci(0, z) = −Ci(z)
        let r = zero_refine(zero_seed(0.0_f64, 0.0, 3).unwrap()).unwrap();
        let z = r.refined.unwrap();
        assert!((z - 9.525_575_457_580_666).abs() < 1e-12, "{z}");
        assert_eq!(r.certificate_holds(), Some(true));
        let (lo, hi) = literature_bracket(0.0, 0.0, 3).unwrap();
        assert!(lo < z && z < hi);
    }

    #[test]
    fn closed_form_at_a_one() {
        let r = zero_refine(zero_seed(1.0, 0.25, 4).unwrap()).unwrap();
        assert_eq!(r.refined, Some(PI * 4.25));
    }

    #[test]
    fn small_kappa_uses_scan() {
        let r = zero_refine(zero_seed(0.0_f64, 0.75, -1).unwrap()).unwrap();
        assert!(r.seed_bound.is_none());
        let z = r.refined.unwrap();
        let phi = oracle::phase_real(0.0, z).unwrap();
        assert!((phi - PI * 0.25).abs() < 1e-12, "{phi}");
    }
}
