//! Reference values by direct quadrature, independent of the expansions.
//!
//! `f` and `g` come from their Stieltjes-type integrals through the basic
//! terminant, the phase from `atan2(f, g)` (or the incomplete-gamma ratio off
//! the real axis), and the inverse phase from a safeguarded Newton iteration.
//! Run these in [`crate::DoubleDouble`] when the comparison needs headroom
//! below double precision.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expansions::{optimal_order, principal_pow, x_expand, EvalRequest, Order, Series};
use crate::quad::integrate_line;
use crate::real::Real;
use crate::special::ln_gamma;
use crate::terminant::{terminant_eval_detailed, TerminantQuery};

/// Reference evaluation at a point of the positive real axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OraclePoint<T> {
    pub a: T,
    pub z: T,
    /// Relative tolerance the quadratures were run at.
    pub precision_target: T,
    pub f: T,
    pub g: T,
    pub m2: T,
    /// Continuous branch with `φ → π(a + |a|)/4` as `z → 0⁺`.
    pub phi: T,
}

fn is_one<T: Real>(a: Complex<T>) -> bool {
    a.re == T::one() && a.im.is_zero()
}

/// Rejects results that overflowed the working precision.
fn finite<T: Real>(v: Complex<T>, what: &str) -> Result<Complex<T>> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Quadrature(format!("{what} is not representable: {v}")))
    }
}

fn check_sector<T: Real>(z: Complex<T>) -> Result<()> {
    if z.is_zero() || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain("z must be finite and nonzero".into()));
    }
    Ok(())
}

/// `f(a, z) = z^{a−1} Π_{1−a}(z)` for `Re a < 1` (and the closed form at `a = 1`).
pub fn f_with_tol<T: Real>(a: Complex<T>, z: Complex<T>, tol: T) -> Result<Complex<T>> {
    check_sector(z)?;
    if is_one(a) {
        return Ok(Complex::one());
    }
    if !(a.re < T::one()) {
        return Err(Error::Domain(format!("the f integral needs Re a < 1, got a = {a}")));
    }
    let one = Complex::<T>::one();
    let q = TerminantQuery::new(one - a, z)?;
    let pi = terminant_eval_detailed(&q, tol)?.value;
    finite(principal_pow(z, a - one) * pi, "f")
}

/// `g(a, z) = (1−a) z^{a−2} Π_{2−a}(z)` for `Re a < 2`.
pub fn g_with_tol<T: Real>(a: Complex<T>, z: Complex<T>, tol: T) -> Result<Complex<T>> {
    check_sector(z)?;
    if is_one(a) {
        return Ok(Complex::zero());
    }
    if !(a.re < T::c(2.0)) {
        return Err(Error::Domain(format!("the g integral needs Re a < 2, got a = {a}")));
    }
    let one = Complex::<T>::one();
    let q = TerminantQuery::new(one * T::c(2.0) - a, z)?;
    let pi = terminant_eval_detailed(&q, tol)?.value;
    finite(principal_pow(z, a - one * T::c(2.0)) * (one - a) * pi, "g")
}

pub fn f<T: Real>(a: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    f_with_tol(a, z, T::quad_tolerance())
}

pub fn g<T: Real>(a: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    g_with_tol(a, z, T::quad_tolerance())
}

/// Both auxiliary functions.
pub fn f_g_quadrature<T: Real>(a: Complex<T>, z: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
    Ok((f(a, z)?, g(a, z)?))
}

/// `M² = f² + g²`.
pub fn m2<T: Real>(a: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    let (f, g) = f_g_quadrature(a, z)?;
    Ok(f * f + g * g)
}

/// `ti(a, z, α) = −f sin(z − πα) + g cos(z − πα)`.
pub fn ti<T: Real>(a: Complex<T>, z: Complex<T>, alpha: T) -> Result<Complex<T>> {
    let (f, g) = f_g_quadrature(a, z)?;
    let arg = z - T::PI() * alpha;
    Ok(-(f * arg.sin()) + g * arg.cos())
}

/// Upper incomplete gamma `Γ(a, w)` for real `a < 1` and `|arg w| ≤ 7π/8`.
///
/// Uses `Γ(a,w) = w^{a−1} e^{−w}/Γ(1−a) ∫_0^∞ s^{−a} e^{−s}/(1 + s/w) ds`; past
/// `|arg w| = π/2` the ray turns towards `arg w` so the pole at `s = −w` stays
/// clear.
pub fn incomplete_gamma_upper<T: Real>(a: T, w: Complex<T>) -> Result<Complex<T>> {
    check_sector(w)?;
    if !(a < T::one()) {
        return Err(Error::Domain(format!("incomplete gamma reference needs a < 1, got {a}")));
    }
    let theta = w.arg();
    let limit = T::c(7.0) * T::PI() / T::c(8.0);
    if theta.abs() > limit * (T::one() + T::epsilon()) {
        return Err(Error::Domain(format!("|arg w| must not exceed 7π/8, got {theta}")));
    }
    let beta = theta.signum() * ((theta.abs() - T::FRAC_PI_2()) * T::c(0.5)).max(T::zero());
    let one_minus_a = Complex::new(T::one() - a, T::zero());
    let lg = ln_gamma(one_minus_a);
    let winv = w.inv();
    let floor = T::c(-740.0);
    let g = move |u: T| {
        let lns = Complex::new(u, beta);
        let s = lns.exp();
        let e = one_minus_a * lns - s - lg;
        if e.re < floor {
            return Complex::zero();
        }
        e.exp() / (Complex::<T>::one() + s * winv)
    };
    let r = integrate_line(g, T::quad_tolerance())?;
    let pref = principal_pow(w, one_minus_a * -T::one()) * (-w).exp();
    Ok(pref * r.value)
}

/// Modulus and phase on the positive real axis via `φ = z + atan2(f, g)`.
pub fn phase_modulus<T: Real>(a: T, z: T) -> Result<OraclePoint<T>> {
    if !(a < T::one()) {
        return Err(Error::Domain(format!("the phase needs a < 1, got {a}")));
    }
    if !(z > T::zero()) {
        return Err(Error::Domain(format!("phase_modulus needs z > 0, got {z}")));
    }
    let ac = Complex::new(a, T::zero());
    let zc = Complex::new(z, T::zero());
    let (f, g) = f_g_quadrature(ac, zc)?;
    let (f, g) = (f.re, g.re);
    Ok(OraclePoint {
        a,
        z,
        precision_target: T::quad_tolerance(),
        f,
        g,
        m2: f * f + g * g,
        phi: z + f.atan2(g),
    })
}

/// `φ(a, z)` on the real axis.
pub fn phase_real<T: Real>(a: T, z: T) -> Result<T> {
    Ok(phase_modulus(a, z)?.phi)
}

/// `φ(a, z) = z + π/2 − atan(g/f)` for `Re z > 0`, continuing the
/// `atan2` form off the axis.
pub fn phase<T: Real>(a: T, z: Complex<T>) -> Result<Complex<T>> {
    if !(a < T::one()) {
        return Err(Error::Domain(format!("the phase needs a < 1, got {a}")));
    }
    if !(z.re > T::zero()) {
        return Err(Error::Domain(format!("the phase needs Re z > 0, got {z}")));
    }
    if z.im.is_zero() {
        return Ok(Complex::new(phase_real(a, z.re)?, T::zero()));
    }
    let (f, g) = f_g_quadrature(Complex::new(a, T::zero()), z)?;
    Ok(z + T::FRAC_PI_2() - (g / f).atan())
}

/// `φ(a, z) = (1/2i)·log(e^{iπa} Γ(a, z e^{−iπ/2}) / Γ(a, z e^{iπ/2}))`,
/// `Re z > 0`, `|arg z| ≤ 3π/8`.
///
/// The logarithm fixes `Re φ` only modulo `π`. The multiple is taken nearest
/// the large-`z` estimate `z + π/2 − (1−a)/z` when `|z| ≥ 4`; for smaller
/// `|z|` the value is carried continuously along the arc from `|z|` on the
/// positive axis, where the `atan2` form fixes the branch.
pub fn phase_complex<T: Real>(a: T, z: Complex<T>) -> Result<Complex<T>> {
    if !(a < T::one()) {
        return Err(Error::Domain(format!("the phase needs a < 1, got {a}")));
    }
    if !(z.re > T::zero()) {
        return Err(Error::Domain(format!("the phase needs Re z > 0, got {z}")));
    }
    let raw = |z: Complex<T>| -> Result<Complex<T>> {
        let i = Complex::<T>::i();
        let lower = incomplete_gamma_upper(a, z * -i)?;
        let upper = incomplete_gamma_upper(a, z * i)?;
        let r = (i * T::PI() * a).exp() * lower / upper;
        Ok(r.ln() / (i * T::c(2.0)))
    };
    let snap = |v: Complex<T>, target: T| -> Complex<T> {
        let k = ((target - v.re) / T::PI()).round();
        v + T::PI() * k
    };
    let r = z.norm();
    if r >= T::c(4.0) {
        let est = z + T::FRAC_PI_2() - z.inv() * (T::one() - a);
        return Ok(snap(raw(z)?, est.re));
    }
    let theta = z.arg();
    let mut prev = phase_real(a, r)?;
    let steps = ((theta.abs() / T::c(0.05)).ceil().to_f64_lossy() as usize).max(1);
    let mut v = Complex::new(prev, T::zero());
    for k in 1..=steps {
        let t = theta * T::c(k as f64) / T::c(steps as f64);
        v = snap(raw(Complex::from_polar(r, t))?, prev);
        prev = v.re;
    }
    Ok(v)
}

/// Solves `φ(a, z) − π/2 = w` for `z > 0`, given real `a < 1` and
/// `w > π(a + |a| − 2)/4`.
///
/// Since `φ − π/2 = z + atan2(f, g) − π/2` with `f, g > 0`, the root lies in
/// `(max(w, 0), w + π/2)`; Newton steps using `φ' = z^{a−1} f/M²` are kept
/// inside that bracket and replaced by bisection when they leave it.
pub fn invert_phase<T: Real>(a: T, w: T) -> Result<T> {
    if !(a < T::one()) {
        return Err(Error::Domain(format!("the phase inverse needs a < 1, got {a}")));
    }
    let w_min = T::PI() * (a + a.abs() - T::c(2.0)) / T::c(4.0);
    if !(w > w_min) {
        return Err(Error::Domain(format!("w = {w} is outside the range of the phase (must exceed {w_min})")));
    }
    let big_phi = |z: T| -> Result<(T, T)> {
        let p = phase_modulus(a, z)?;
        let d = z.powf(a - T::one()) * p.f / p.m2;
        Ok((p.phi - T::FRAC_PI_2() - w, d))
    };
    let mut hi = w + T::FRAC_PI_2();
    let mut lo = if w > T::zero() { w } else { hi * T::c(1e-3) };
    let mut tries = 0;
    while big_phi(lo)?.0 >= T::zero() {
        tries += 1;
        if tries > 30 {
            return Err(Error::NonConvergence(format!("no lower bracket for the phase inverse at w = {w}")));
        }
        lo *= T::c(1e-3);
    }
    let seed = if w > T::c(2.0) {
        let n = optimal_order(a, w, Series::X)?.min(8);
        x_expand(&EvalRequest::new(a, Complex::new(w, T::zero()), Order::Fixed(n)))?.value.re
    } else {
        (lo + hi) * T::c(0.5)
    };
    let mut z = if seed > lo && seed < hi { seed } else { (lo + hi) * T::c(0.5) };
    let tol = T::quad_tolerance() * w.abs().max(T::one());
    for _ in 0..100 {
        let (r, d) = big_phi(z)?;
        if r.abs() <= tol {
            return Ok(z);
        }
        if r > T::zero() {
            hi = z;
        } else {
            lo = z;
        }
        let step = z - r / d;
        z = if step > lo && step < hi { step } else { (lo + hi) * T::c(0.5) };
        if (hi - lo) <= T::c(4.0) * T::epsilon() * hi {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence(format!("phase inverse did not converge at w = {w}")))
}

/// Solves `φ(a, z) − π/2 = w` for complex `w` with `Re w > 0` by Newton's
/// method from the optimally truncated inverse-phase series.
pub fn invert_phase_complex<T: Real>(a: T, w: Complex<T>) -> Result<Complex<T>> {
    if w.im.is_zero() {
        return Ok(Complex::new(invert_phase(a, w.re)?, T::zero()));
    }
    if !(w.re > T::zero()) {
        return Err(Error::Domain(format!("complex phase inverse needs Re w > 0, got {w}")));
    }
    let n = optimal_order(a, w.norm(), Series::X)?;
    let mut z = x_expand(&EvalRequest::complex_a(Complex::new(a, T::zero()), w, Order::Fixed(n)))?.value;
    let ac = Complex::new(a, T::zero());
    for _ in 0..60 {
        let (f, g) = f_g_quadrature(ac, z)?;
        let big_phi = z - (g / f).atan();
        let d = principal_pow(z, ac - T::one()) * f / (f * f + g * g);
        let step = (big_phi - w) / d;
        z = z - step;
        if step.norm() <= T::c(10.0) * T::quad_tolerance() * z.norm() {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence(format!("complex phase inverse did not converge at w = {w}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn classical_auxiliary_at_ten() {
        // Si(10), Ci(10)
        let (si, ci) = (1.658_347_594_218_874_1, -0.045_456_433_004_455_37);
        let f_ref = ci * 10f64.sin() + (FRAC_PI_2 - si) * 10f64.cos();
        let f = f(c(0.0), c(10.0)).unwrap().re;
        assert!((f - f_ref).abs() < 1e-15, "{f} vs {f_ref}");
    }

    #[test]
    fn incomplete_gamma_values() {
        // Γ(1/2, 1) = √π erfc(1)
        let v = incomplete_gamma_upper(0.5, c(1.0)).unwrap();
        let expect = PI.sqrt() * 0.157_299_207_050_285_13;
        assert!((v.re - expect).abs() < 1e-15 && v.im.abs() < 1e-16);
        // Γ(a+1, w) = a Γ(a, w) + w^a e^{−w}
        let w = Complex::new(0.0, 2.0);
        let g0 = incomplete_gamma_upper(-0.5, w).unwrap();
        let g1 = incomplete_gamma_upper(-1.5, w).unwrap();
        let rhs = g1 * -1.5 + principal_pow(w, c(-1.5)) * (-w).exp();
        assert!((g0 - rhs).norm() < 1e-14 * g0.norm());
        assert!(incomplete_gamma_upper(0.5, Complex::from_polar(1.0, 3.0)).is_err());
    }

    #[test]
    fn phase_forms_agree() {
        for &(a, z) in &[(0.0, 3.0), (0.5, 7.0), (-1.0, 1.5)] {
            let p = phase_real(a, z).unwrap();
            let q = phase_complex(a, c(z)).unwrap();
            assert!((p - q.re).abs() < 1e-11 && q.im.abs() < 1e-11, "a = {a}, z = {z}: {p} vs {q}");
        }
        let z = Complex::from_polar(8.0, PI / 8.0);
        let p = phase(0.0, z).unwrap();
        let q = phase_complex(0.0, z).unwrap();
        assert!((p - q).norm() < 1e-11, "{p} vs {q}");
    }

    #[test]
    fn inversion_round_trip() {
        for &a in &[-2.0, 0.0, 0.5] {
            for &z in &[2.0, 5.0, 10.0, 50.0] {
                let w = phase_real(a, z).unwrap() - FRAC_PI_2;
                let back = invert_phase(a, w).unwrap();
                assert!((back - z).abs() < 1e-10 * z, "a = {a}, z = {z}: {back}");
            }
        }
        assert!(invert_phase(0.0, -2.0).is_err());
    }
}
