//! Double-exponential quadrature.
//!
//! [`integrate_line`] integrates over the whole real line after the
//! substitution `u = (π/2)·sinh t`; integrals over `(0, ∞)` are brought there
//! by `s = e^u`, which turns algebraic behaviour at `s = 0` and exponential
//! decay at infinity into double-exponential decay in `t`.
//! [`integrate_interval`] is the classical tanh-sinh rule on a finite interval.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::real::Real;

/// Result of a quadrature together with its diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: Complex<T>,
    /// Difference between the last two refinement levels.
    pub error_estimate: T,
    /// Sum of absolute contributions; measures cancellation.
    pub l1_norm: T,
    pub evaluations: usize,
    pub levels: usize,
}

const T_MAX: f64 = 10.0;
const SCAN_STEP: f64 = 0.125;
const H0: f64 = 0.25;
const MIN_LEVELS: usize = 3;
pub const MAX_LEVELS: usize = 10;

struct Node<T> {
    t: T,
    x: T,
    w: T,
}

/// Finds the t-range outside which the integrand is negligible.
fn extents<T, N, F>(node: &N, g: &F, evals: &mut usize) -> (f64, f64)
where
    T: Real,
    N: Fn(T) -> Node<T>,
    F: Fn(T) -> Complex<T>,
{
    let steps = (T_MAX / SCAN_STEP) as i32;
    let mut mags = Vec::with_capacity(2 * steps as usize + 1);
    let mut peak = T::zero();
    for k in -steps..=steps {
        let nd = node(T::c(k as f64 * SCAN_STEP));
        *evals += 1;
        let v = g(nd.x) * nd.w;
        let m = if v.re.is_finite() && v.im.is_finite() { v.norm() } else { T::zero() };
        if m > peak {
            peak = m;
        }
        mags.push(m);
    }
    let cutoff = peak * T::epsilon() * T::c(1e-3);
    let first = mags.iter().position(|&m| m > cutoff).unwrap_or(steps as usize);
    let last = mags.iter().rposition(|&m| m > cutoff).unwrap_or(steps as usize);
    let lo = ((first as i32 - steps - 1) as f64 * SCAN_STEP).max(-T_MAX);
    let hi = ((last as i32 - steps + 1) as f64 * SCAN_STEP).min(T_MAX);
    (lo, hi)
}

fn refine<T, N, F>(node: N, g: F, tol: T, max_levels: usize) -> Result<QuadResult<T>>
where
    T: Real,
    N: Fn(T) -> Node<T>,
    F: Fn(T) -> Complex<T>,
{
    let mut evals = 0usize;
    let (lo, hi) = extents(&node, &g, &mut evals);
    let eps = T::epsilon();
    let mut sum = Complex::<T>::zero();
    let mut l1 = T::zero();
    let mut h = H0;
    let add_points = |h: f64, stride: i64, offset: i64, sum: &mut Complex<T>, l1: &mut T, evals: &mut usize| -> Result<()> {
        let k_lo = (lo / h).floor() as i64;
        let k_hi = (hi / h).ceil() as i64;
        let mut k = k_lo;
        // Align to the requested residue class.
        while (k - offset).rem_euclid(stride) != 0 {
            k += 1;
        }
        while k <= k_hi {
            let nd = node(T::c(k as f64 * h));
            *evals += 1;
            let v = g(nd.x) * nd.w;
            if v.re.is_finite() && v.im.is_finite() {
                *sum = *sum + v;
                *l1 += v.norm();
            } else if nd.t.abs() < T::c(1.0) {
                return Err(Error::Quadrature(format!("non-finite integrand at t = {}", nd.t)));
            }
            k += stride;
        }
        Ok(())
    };
    add_points(h, 1, 0, &mut sum, &mut l1, &mut evals)?;
    let mut estimate = sum * T::c(h);
    for level in 1..=max_levels {
        h *= 0.5;
        add_points(h, 2, 1, &mut sum, &mut l1, &mut evals)?;
        let current = sum * T::c(h);
        let diff = (current - estimate).norm();
        let scale = current.norm();
        let noise = T::c(64.0) * eps * l1 * T::c(h);
        if level >= MIN_LEVELS && diff <= tol * scale + noise {
            return Ok(QuadResult {
                value: current,
                error_estimate: diff,
                l1_norm: l1 * T::c(h),
                evaluations: evals,
                levels: level,
            });
        }
        estimate = current;
    }
    Err(Error::Quadrature(format!(
        "tolerance {:e} not reached after {} levels ({} evaluations); last estimate {:e}",
        tol.to_f64_lossy(),
        max_levels,
        evals,
        estimate.norm().to_f64_lossy()
    )))
}

/// ∫_{-∞}^{∞} g(u) du for integrands decaying at least exponentially in |u|.
pub fn integrate_line<T, F>(g: F, tol: T) -> Result<QuadResult<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    let half_pi = T::FRAC_PI_2();
    let node = |t: T| {
        let (sh, ch) = (t.sinh(), t.cosh());
        Node { t, x: half_pi * sh, w: half_pi * ch }
    };
    refine(node, g, tol, MAX_LEVELS)
}

/// ∫_a^b g(x) dx by tanh-sinh.
pub fn integrate_interval<T, F>(g: F, a: T, b: T, tol: T) -> Result<QuadResult<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    let half_pi = T::FRAC_PI_2();
    let mid = (a + b) * T::c(0.5);
    let half = (b - a) * T::c(0.5);
    let node = move |t: T| {
        let u = half_pi * t.sinh();
        let ch = u.cosh();
        let w = half_pi * t.cosh() / (ch * ch);
        // Distance to the nearer endpoint, 1 - |tanh u|, without cancellation.
        let gap = T::c(2.0) / (T::one() + (T::c(2.0) * u.abs()).exp());
        let xx = if u < T::zero() { a + half * gap } else if u > T::zero() { b - half * gap } else { mid };
        Node { t, x: xx, w: half * w }
    };
    let guarded = |x: T| {
        if x <= a.min(b) || x >= a.max(b) {
            Complex::zero()
        } else {
            g(x)
        }
    };
    refine(node, guarded, tol, MAX_LEVELS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DoubleDouble;
    use num_traits::Float;

    #[test]
    fn gamma_integral_on_log_line() {
        // ∫_0^∞ s^{p-1} e^{-s} ds = Γ(p); with s = e^u the integrand is e^{pu - e^u}.
        for &p in &[0.1_f64, 0.5, 1.0, 3.5, 12.0] {
            let r = integrate_line(|u: f64| Complex::new((p * u - u.exp()).exp(), 0.0), 1e-14).unwrap();
            let g = crate::special::gamma_real(p);
            assert!((r.value.re - g).abs() < 1e-13 * g, "p = {p}: {} vs {g}", r.value.re);
        }
    }

    #[test]
    fn double_double_reaches_extended_accuracy() {
        type D = DoubleDouble;
        let p = D::from_f64_const(0.5);
        let r = integrate_line(|u: D| Complex::new((p * u - u.exp()).exp(), D::zero()), D::quad_tolerance()).unwrap();
        let err = (r.value.re - D::PI.sqrt()).abs().to_f64_lossy();
        assert!(err < 1e-29, "{err}");
    }

    #[test]
    fn tanh_sinh_polynomial_and_endpoint_singularity() {
        let r = integrate_interval(|x: f64| Complex::new(x * x, 0.0), 0.0, 3.0, 1e-14).unwrap();
        assert!((r.value.re - 9.0).abs() < 1e-13);
        let r = integrate_interval(|x: f64| Complex::new(1.0 / x.sqrt(), 0.0), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-12);
    }
}
