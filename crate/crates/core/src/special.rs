//! Gamma-function plumbing shared by the bounds and the reference evaluations.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::dd::DoubleDouble;
use crate::real::Real;

/// Bernoulli numbers B_2 .. B_30 as (numerator, denominator).
const BERNOULLI: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

/// Shift radius and number of Stirling terms appropriate for `T`.
fn stirling_plan<T: Real>() -> (f64, usize) {
    let eps = T::epsilon().to_f64_lossy();
    if eps < 1e-20 {
        (26.0, 15)
    } else if eps < 1e-10 {
        (12.0, 10)
    } else {
        (8.0, 5)
    }
}

fn ln_gamma_stirling<T: Real>(w: Complex<T>, terms: usize) -> Complex<T> {
    let half = T::c(0.5);
    let ln_sqrt_2pi = (T::TAU()).ln() * half;
    let mut s = (w - half) * w.ln() - w + ln_sqrt_2pi;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for (k, &(num, den)) in BERNOULLI.iter().take(terms).enumerate() {
        let two_k = T::c(2.0 * (k as f64 + 1.0));
        let coeff = T::c(num) / T::c(den) / (two_k * (two_k - T::one()));
        s = s + pow * coeff;
        pow = pow * inv2;
    }
    s
}

/// Logarithm of the gamma function for complex argument.
///
/// The real part is `ln|Γ(z)|`; the imaginary part is an argument of `Γ(z)`
/// that is correct modulo 2π, so `ln_gamma(z).exp()` reproduces `Γ(z)`.
pub fn ln_gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    if T::epsilon().to_f64_lossy() > 1e-20 {
        // Narrow types go through the extended type; the log form otherwise
        // loses a few units in the last place through exp().
        let w = Complex::new(DoubleDouble::c(z.re.to_f64_lossy()), DoubleDouble::c(z.im.to_f64_lossy()));
        let r = ln_gamma(w);
        return Complex::new(T::from_parts(r.re.hi(), r.re.lo()), T::from_parts(r.im.hi(), r.im.lo()));
    }
    let half = T::c(0.5);
    if z.re < half {
        // Reflection: Γ(z)Γ(1-z) = π / sin(πz).
        let pi = T::PI();
        let s = (z * pi).sin();
        return Complex::new(pi.ln(), T::zero()) - s.ln() - ln_gamma(Complex::<T>::one() - z);
    }
    let (radius, terms) = stirling_plan::<T>();
    let radius = T::c(radius);
    let mut w = z;
    let mut prod = Complex::<T>::one();
    let mut log_shift = Complex::<T>::zero();
    while w.norm() < radius {
        prod = prod * w;
        w = w + T::one();
        if prod.norm() > T::c(1e100) {
            log_shift = log_shift + prod.ln();
            prod = Complex::one();
        }
    }
    ln_gamma_stirling(w, terms) - prod.ln() - log_shift
}

/// Γ(z) for complex `z`.
pub fn gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    if T::epsilon().to_f64_lossy() > 1e-20 {
        let w = Complex::new(DoubleDouble::c(z.re.to_f64_lossy()), DoubleDouble::c(z.im.to_f64_lossy()));
        let r = ln_gamma(w).exp();
        return Complex::new(T::from_parts(r.re.hi(), r.re.lo()), T::from_parts(r.im.hi(), r.im.lo()));
    }
    ln_gamma(z).exp()
}

/// Γ(x) for real `x` (poles give ±∞ or NaN).
pub fn gamma_real<T: Real>(x: T) -> T {
    if x <= T::zero() && x.fract().is_zero() {
        return T::nan();
    }
    gamma(Complex::new(x, T::zero())).re
}

/// `ln|Γ(x)|` for real `x`.
pub fn ln_gamma_abs<T: Real>(x: T) -> T {
    ln_gamma(Complex::new(x, T::zero())).re
}

/// The ratio Γ(Re p)/|Γ(p)|, exactly one for real `p`.
pub fn gamma_modulus_ratio<T: Real>(p: Complex<T>) -> T {
    if p.im.is_zero() {
        return T::one();
    }
    (ln_gamma_abs(p.re) - ln_gamma(p).re).exp()
}

/// χ(p) = √π Γ(p/2 + 1) / Γ((p + 1)/2) for `p > 0`.
pub fn chi<T: Real>(p: T) -> T {
    if T::epsilon().to_f64_lossy() > 1e-20 {
        let r = chi(DoubleDouble::c(p.to_f64_lossy()));
        return T::from_parts(r.hi(), r.lo());
    }
    let half = T::c(0.5);
    let l = ln_gamma_abs(p * half + T::one()) - ln_gamma_abs((p + T::one()) * half);
    T::PI().sqrt() * l.exp()
}

/// Watson's two-sided bracket √((π/2)(p + 1/2)) < χ(p) < √((π/2)(p + 2/π)).
pub fn chi_watson_bracket<T: Real>(p: T) -> (T, T) {
    let half_pi = T::FRAC_PI_2();
    let lo = (half_pi * (p + T::c(0.5))).sqrt();
    let hi = (half_pi * (p + T::FRAC_2_PI())).sqrt();
    (lo, hi)
}

/// Rising factorial (x)_k for complex `x`.
pub fn pochhammer<T: Real>(x: Complex<T>, k: usize) -> Complex<T> {
    let mut acc = Complex::<T>::one();
    for i in 0..k {
        acc = acc * (x + T::c(i as f64));
    }
    acc
}

/// Rising factorial (x)_k for real `x`.
pub fn pochhammer_real<T: Real>(x: T, k: usize) -> T {
    let mut acc = T::one();
    for i in 0..k {
        acc *= x + T::c(i as f64);
    }
    acc
}
