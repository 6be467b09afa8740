//! Dingle's basic terminant
//!
//! ```text
//! Π_p(z) = (1/Γ(p)) ∫_0^∞ s^{p−1} e^{−s} / (1 + (s/z)²) ds,   Re p > 0,
//! ```
//!
//! and upper bounds for `|Π_p(z)|` that depend only on `p` and `arg z`.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quad::{integrate_line, QuadResult};
use crate::real::Real;
use crate::special::{chi, gamma_modulus_ratio, ln_gamma};

/// Which estimate produced a [`TerminantBound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Proposition {
    /// `Γ(Re p)/|Γ(p)|` times 1 or `|csc 2θ|`.
    B1Csc,
    /// Half-plane secant bound, variant with two exponential maxima.
    B2HalfplaneA,
    /// Half-plane secant bound, variant ending in `Γ(Re p)/(2|Γ(p)|)`.
    B2HalfplaneB,
    /// Real-order bound with the implicitly defined angle.
    B3Theta,
    /// χ-form bound, variant with two exponential maxima.
    B4ChiA,
    /// χ-form bound, variant ending in `Γ(Re p)/(2|Γ(p)|)`.
    B4ChiB,
    /// Reflection bound for `π/2 < |arg z| < π`.
    B5Reflect,
}

impl Proposition {
    pub fn name(self) -> &'static str {
        match self {
            Proposition::B1Csc => "B1_csc",
            Proposition::B2HalfplaneA => "B2_halfplane_a",
            Proposition::B2HalfplaneB => "B2_halfplane_b",
            Proposition::B3Theta => "B3_theta",
            Proposition::B4ChiA => "B4_chi_a",
            Proposition::B4ChiB => "B4_chi_b",
            Proposition::B5Reflect => "B5_reflect",
        }
    }

    /// Cost rank used to break exact ties.
    fn rank(self) -> u8 {
        match self {
            Proposition::B1Csc => 0,
            Proposition::B2HalfplaneA | Proposition::B2HalfplaneB => 1,
            Proposition::B4ChiA | Proposition::B4ChiB => 2,
            Proposition::B3Theta => 3,
            Proposition::B5Reflect => 4,
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An upper bound for `|Π_p(z)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminantBound<T> {
    /// Absent when `sector_ok` is false.
    pub bound: Option<T>,
    pub proposition: Proposition,
    pub sector_ok: bool,
    /// The implicit angle, for [`Proposition::B3Theta`] only.
    pub theta: Option<T>,
}

impl<T: Real> TerminantBound<T> {
    fn ok(proposition: Proposition, bound: T) -> Self {
        TerminantBound { bound: Some(bound), proposition, sector_ok: true, theta: None }
    }

    fn outside(proposition: Proposition) -> Self {
        TerminantBound { bound: None, proposition, sector_ok: false, theta: None }
    }

    /// The bound, or `+∞` when the proposition does not apply.
    pub fn value_or_inf(&self) -> T {
        self.bound.unwrap_or_else(T::infinity)
    }
}

/// Arguments of the terminant; `Re p > 0` and `z ≠ 0` are enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminantQuery<T> {
    p: Complex<T>,
    z: Complex<T>,
}

impl<T: Real> TerminantQuery<T> {
    pub fn new(p: Complex<T>, z: Complex<T>) -> Result<Self> {
        if !(p.re > T::zero()) {
            return Err(Error::Domain(format!("terminant order needs Re p > 0, got {}", p.re)));
        }
        if z.is_zero() || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain("terminant argument must be finite and nonzero".into()));
        }
        Ok(TerminantQuery { p, z })
    }

    /// Real order.
    pub fn real(p: T, z: Complex<T>) -> Result<Self> {
        Self::new(Complex::new(p, T::zero()), z)
    }

    /// Unit-modulus argument `e^{iθ}`; enough for the bounds, which ignore `|z|`.
    pub fn at_angle(p: Complex<T>, theta: T) -> Result<Self> {
        Self::new(p, Complex::from_polar(T::one(), theta))
    }

    pub fn p(&self) -> Complex<T> {
        self.p
    }

    pub fn z(&self) -> Complex<T> {
        self.z
    }

    /// `arg z ∈ (−π, π]`.
    pub fn theta(&self) -> T {
        self.z.arg()
    }
}

// ---------------------------------------------------------------------------
// Evaluation

/// Integration-ray angle used for `Π_p(z)`.
///
/// The poles at `s = ±iz` sit on the rays `arg z ± π/2`. Up to `|arg z| = 3π/8`
/// the positive axis keeps at least `π/8` of clearance; beyond that the ray
/// turns with `arg z` so the moving pole stays `π/8` away on the same side.
pub fn ray_angle<T: Real>(theta: T) -> T {
    let start = T::c(3.0) * T::FRAC_PI_8();
    if theta.abs() <= start {
        T::zero()
    } else {
        theta.signum() * (theta.abs() - start)
    }
}

/// Evaluates `Π_p(z)` by double-exponential quadrature, returning diagnostics.
pub fn terminant_eval_detailed<T: Real>(q: &TerminantQuery<T>, tol: T) -> Result<QuadResult<T>> {
    let theta = q.theta();
    if theta.abs() > T::c(3.0) * T::FRAC_PI_4() * (T::one() + T::epsilon()) {
        return Err(Error::Domain(format!(
            "terminant evaluation supports |arg z| <= 3π/4, got arg z = {}",
            theta
        )));
    }
    let p = q.p;
    let zinv = q.z.inv();
    let beta = ray_angle(theta);
    let lg = ln_gamma(p);
    let floor = T::c(-740.0);
    let g = move |u: T| {
        let lns = Complex::new(u, beta);
        let s = lns.exp();
        let e = p * lns - s - lg;
        if e.re < floor {
            return Complex::zero();
        }
        let r = s * zinv;
        let den = Complex::<T>::one() + r * r;
        e.exp() / den
    };
    integrate_line(g, tol)
}

/// `Π_p(z)` at the default tolerance of `T`.
pub fn terminant_eval<T: Real>(q: &TerminantQuery<T>) -> Result<Complex<T>> {
    Ok(terminant_eval_detailed(q, T::quad_tolerance())?.value)
}

// ---------------------------------------------------------------------------
// Bounds

fn emax<T: Real>(x: T) -> T {
    x.exp().max(T::one())
}

/// `Γ(Re p)/|Γ(p)|·{1 or |csc 2θ|}` for `|arg z| < π/2`.
pub fn bound_b1<T: Real>(q: &TerminantQuery<T>) -> TerminantBound<T> {
    b1_at(q.p, q.theta())
}

fn b1_at<T: Real>(p: Complex<T>, theta: T) -> TerminantBound<T> {
    let a = theta.abs();
    if a >= T::FRAC_PI_2() {
        return TerminantBound::outside(Proposition::B1Csc);
    }
    let ratio = gamma_modulus_ratio(p);
    let factor = if a <= T::FRAC_PI_4() { T::one() } else { (T::c(2.0) * theta).sin().abs().recip() };
    TerminantBound::ok(Proposition::B1Csc, ratio * factor)
}

/// Both half-plane variants for `0 ≤ ±arg z < π/2`; on the real axis both
/// sign choices are tried.
pub fn bound_b2_variants<T: Real>(q: &TerminantQuery<T>) -> [TerminantBound<T>; 2] {
    b2_at(q.p, q.theta())
}

fn b2_at<T: Real>(p: Complex<T>, theta: T) -> [TerminantBound<T>; 2] {
    if theta.abs() >= T::FRAC_PI_2() {
        return [TerminantBound::outside(Proposition::B2HalfplaneA), TerminantBound::outside(Proposition::B2HalfplaneB)];
    }
    let half = T::c(0.5);
    let hp = T::FRAC_PI_2();
    let sec = theta.cos().recip().powf(p.re);
    let ratio_half = gamma_modulus_ratio(p) * half;
    let signs: &[T] = if theta.is_zero() { &[T::one(), -T::one()] } else if theta > T::zero() { &[T::one()] } else { &[-T::one()] };
    let mut a = T::infinity();
    let mut b = T::infinity();
    for &sg in signs {
        let first = half * sec * emax(p.im * (-sg * hp - theta));
        a = a.min(first + half * emax(p.im * (sg * hp - theta)));
        b = b.min(first + ratio_half);
    }
    [TerminantBound::ok(Proposition::B2HalfplaneA, a), TerminantBound::ok(Proposition::B2HalfplaneB, b)]
}

/// The smaller half-plane bound.
pub fn bound_b2<T: Real>(q: &TerminantQuery<T>) -> TerminantBound<T> {
    pick_min(&bound_b2_variants(q)).unwrap_or(TerminantBound::outside(Proposition::B2HalfplaneA))
}

/// Bracket for the implicit angle, for `θ = |arg z| ∈ (π/4, π)`.
fn b3_bracket<T: Real>(theta: T) -> (T, T) {
    let q = T::FRAC_PI_4();
    let h = T::FRAC_PI_2();
    if theta < h {
        (T::zero(), theta - q)
    } else if theta < T::c(3.0) * q {
        (theta - h, theta - q)
    } else {
        (theta - h, h)
    }
}

fn b3_residual<T: Real>(p: T, theta: T, v: T) -> T {
    let two = T::c(2.0);
    (p + two) * (two * theta - T::c(3.0) * v).cos() - (p - two) * (two * theta - v).cos()
}

fn b3_value<T: Real>(p: T, theta: T, v: T) -> T {
    (T::c(2.0) * (theta - v)).sin().abs().recip() / v.cos().powf(p)
}

/// Solves the implicit equation for `θ = |arg z| ∈ (π/4, π)` by bisection.
pub fn b3_angle<T: Real>(p: T, theta: T) -> Result<T> {
    let (mut lo, mut hi) = b3_bracket(theta);
    let mut flo = b3_residual(p, theta, lo);
    let fhi = b3_residual(p, theta, hi);
    if flo.is_zero() {
        return Ok(lo);
    }
    if fhi.is_zero() {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NonConvergence(format!(
            "implicit angle not bracketed for p = {p}, arg z = {theta}: residuals {flo} and {fhi}"
        )));
    }
    for _ in 0..200 {
        let mid = (lo + hi) * T::c(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = b3_residual(p, theta, mid);
        if fm.is_zero() {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * T::c(0.5))
}

/// Real-order bound for `π/4 < |arg z| < π`.
pub fn bound_b3<T: Real>(q: &TerminantQuery<T>) -> Result<TerminantBound<T>> {
    b3_at(q.p, q.theta())
}

fn b3_at<T: Real>(p: Complex<T>, theta: T) -> Result<TerminantBound<T>> {
    let a = theta.abs();
    if !p.im.is_zero() || a <= T::FRAC_PI_4() || a >= T::PI() {
        return Ok(TerminantBound::outside(Proposition::B3Theta));
    }
    let v = b3_angle(p.re, a)?;
    let mut out = TerminantBound::ok(Proposition::B3Theta, b3_value(p.re, a, v));
    // The lower half-plane cases are the mirror image.
    out.theta = Some(if theta < T::zero() { -v } else { v });
    Ok(out)
}

/// The bracket the implicit angle is sought in, signed like `arg z`.
pub fn b3_interval<T: Real>(theta: T) -> Option<(T, T)> {
    let a = theta.abs();
    if a <= T::FRAC_PI_4() || a >= T::PI() {
        return None;
    }
    let (lo, hi) = b3_bracket(a);
    Some(if theta < T::zero() { (-hi, -lo) } else { (lo, hi) })
}

/// Right-hand side of the real-order bound at an arbitrary angle `v`.
pub fn b3_objective<T: Real>(p: T, theta: T, v: T) -> T {
    b3_value(p, theta.abs(), if theta < T::zero() { -v } else { v })
}

/// Residual of the implicit equation at `v`, for signed `arg z`.
pub fn b3_equation_residual<T: Real>(p: T, theta: T, v: T) -> T {
    b3_residual(p, theta.abs(), if theta < T::zero() { -v } else { v })
}

/// Both χ-form variants for `π/4 < ±arg z ≤ π/2`.
pub fn bound_b4_variants<T: Real>(q: &TerminantQuery<T>) -> [TerminantBound<T>; 2] {
    b4_at(q.p, q.theta())
}

fn b4_at<T: Real>(p: Complex<T>, theta: T) -> [TerminantBound<T>; 2] {
    let a = theta.abs();
    if a <= T::FRAC_PI_4() || a > T::FRAC_PI_2() {
        return [TerminantBound::outside(Proposition::B4ChiA), TerminantBound::outside(Proposition::B4ChiB)];
    }
    let half = T::c(0.5);
    let sg = theta.signum();
    let lead = half + p.norm() / (T::c(2.0) * p.re) * chi(p.re) * emax(-p.im * theta);
    let a_val = lead + half * emax(p.im * (sg * T::FRAC_PI_2() - theta));
    let b_val = lead + half * gamma_modulus_ratio(p);
    [TerminantBound::ok(Proposition::B4ChiA, a_val), TerminantBound::ok(Proposition::B4ChiB, b_val)]
}

/// The smaller χ-form bound.
pub fn bound_b4<T: Real>(q: &TerminantQuery<T>) -> TerminantBound<T> {
    pick_min(&bound_b4_variants(q)).unwrap_or(TerminantBound::outside(Proposition::B4ChiA))
}

/// The reflection bound in both forms, `(√(2π Re p)/2 form, χ form)`, for
/// `π/2 < |arg z| < π`. The reflected term uses the best bound at `arg z ∓ π`.
pub fn bound_b5_variants<T: Real>(q: &TerminantQuery<T>) -> Result<(TerminantBound<T>, TerminantBound<T>)> {
    let p = q.p;
    let theta = q.theta();
    let a = theta.abs();
    if a <= T::FRAC_PI_2() || a >= T::PI() {
        let o = TerminantBound::outside(Proposition::B5Reflect);
        return Ok((o, o));
    }
    let sg = theta.signum();
    let reflected = theta - sg * T::PI();
    let rest = best_below_half_pi(p, reflected)?;
    let pre = (p.im * (sg * T::FRAC_PI_2() - theta)).exp() * gamma_modulus_ratio(p) / a.sin().powf(p.re);
    let sqrt_form = (T::TAU() * p.re).sqrt() * T::c(0.5);
    let v_sqrt = pre * sqrt_form + rest;
    let v_chi = pre * chi(p.re) + rest;
    Ok((TerminantBound::ok(Proposition::B5Reflect, v_sqrt), TerminantBound::ok(Proposition::B5Reflect, v_chi)))
}

/// The smaller reflection bound.
pub fn bound_b5<T: Real>(q: &TerminantQuery<T>) -> Result<TerminantBound<T>> {
    let (s, c) = bound_b5_variants(q)?;
    Ok(if s.value_or_inf() <= c.value_or_inf() { s } else { c })
}

fn pick_min<T: Real>(cands: &[TerminantBound<T>]) -> Option<TerminantBound<T>> {
    let mut best: Option<TerminantBound<T>> = None;
    for c in cands.iter().filter(|c| c.sector_ok && c.bound.is_some()) {
        best = match best {
            None => Some(*c),
            Some(b) => {
                let (vb, vc) = (b.value_or_inf(), c.value_or_inf());
                if vc < vb || (vc == vb && c.proposition.rank() < b.proposition.rank()) {
                    Some(*c)
                } else {
                    Some(b)
                }
            }
        }
    }
    best
}

/// Best bound among the estimates that do not themselves reflect.
fn best_below_half_pi<T: Real>(p: Complex<T>, theta: T) -> Result<T> {
    let mut cands = vec![b1_at(p, theta)];
    cands.extend(b2_at(p, theta));
    cands.extend(b4_at(p, theta));
    cands.push(b3_at(p, theta)?);
    pick_min(&cands).map(|b| b.value_or_inf()).ok_or_else(|| {
        Error::Precondition(format!("no terminant bound applies at arg z = {theta} for p = {p}"))
    })
}

/// Every applicable bound for the query, in proposition order.
pub fn all_bounds<T: Real>(q: &TerminantQuery<T>) -> Result<Vec<TerminantBound<T>>> {
    let mut out = vec![bound_b1(q)];
    out.extend(bound_b2_variants(q));
    out.push(bound_b3(q)?);
    out.extend(bound_b4_variants(q));
    out.push(bound_b5(q)?);
    Ok(out)
}

/// The smallest applicable bound; exact ties go to the cheaper estimate
/// (B1, then B2, B4, B3, B5). When nothing applies (`arg z = π`) the result
/// has `sector_ok = false`.
pub fn best_bound<T: Real>(q: &TerminantQuery<T>) -> Result<TerminantBound<T>> {
    let all = all_bounds(q)?;
    Ok(pick_min(&all).unwrap_or(TerminantBound::outside(Proposition::B5Reflect)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn q(p: f64, theta: f64) -> TerminantQuery<f64> {
        TerminantQuery::at_angle(Complex::new(p, 0.0), theta).unwrap()
    }

    #[test]
    fn query_validation() {
        assert!(TerminantQuery::new(Complex::new(0.0, 1.0), Complex::new(1.0, 0.0)).is_err());
        assert!(TerminantQuery::new(Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn b1_values() {
        assert_eq!(bound_b1(&q(3.0, 0.2)).bound, Some(1.0));
        let b = bound_b1(&q(2.0, 3.0 * PI / 8.0)).bound.unwrap();
        assert!((b - 2f64.sqrt()).abs() < 1e-14);
        assert!(!bound_b1(&q(2.0, FRAC_PI_2)).sector_ok);
    }

    #[test]
    fn b2_values() {
        assert!((bound_b2(&q(2.0, 0.0)).bound.unwrap() - 1.0).abs() < 1e-15);
        assert!((bound_b2(&q(3.0, PI / 3.0)).bound.unwrap() - 4.5).abs() < 1e-12);
    }

    #[test]
    fn b3_closed_form_case() {
        let b = bound_b3(&q(2.0, FRAC_PI_2)).unwrap();
        assert!((b.theta.unwrap() - PI / 6.0).abs() < 1e-14);
        assert!((b.bound.unwrap() - 8.0 / (3.0 * 3f64.sqrt())).abs() < 1e-13);
        let m = bound_b3(&q(4.0, -PI / 3.0)).unwrap();
        let p = bound_b3(&q(4.0, PI / 3.0)).unwrap();
        assert_eq!(m.bound, p.bound);
        assert_eq!(m.theta.map(|t| -t), p.theta);
    }

    #[test]
    fn b4_and_b5_values() {
        let b = bound_b4(&q(1.0, FRAC_PI_2)).bound.unwrap();
        assert!((b - (1.0 + FRAC_PI_4)).abs() < 1e-14);
        let (_, chi_form) = bound_b5_variants(&q(2.0, 3.0 * PI / 4.0)).unwrap();
        assert!((chi_form.bound.unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn best_on_positive_axis() {
        let z = Complex::new(10.0, 0.0);
        let b = best_bound(&TerminantQuery::real(2.0, z).unwrap()).unwrap();
        assert_eq!(b.bound, Some(1.0));
        assert_eq!(b.proposition, Proposition::B1Csc);
    }

    #[test]
    fn evaluation_limits() {
        let v = terminant_eval(&TerminantQuery::real(1.0_f64, Complex::new(1e6, 0.0)).unwrap()).unwrap();
        assert!((v.re - 1.0).abs() < 1e-10);
        let v = terminant_eval(&TerminantQuery::real(2.0_f64, Complex::new(5.0, 0.0)).unwrap()).unwrap();
        assert!(v.re > 0.0 && v.re < 1.0 && v.im.abs() < 1e-16);
        // Π_1(z) = z·f(0, z); f(0, 1) = Ci(1) sin 1 + (π/2 − Si(1)) cos 1.
        let v = terminant_eval(&TerminantQuery::real(1.0, Complex::new(1.0, 0.0)).unwrap()).unwrap();
        let (si1, ci1) = (0.946_083_070_367_183_1, 0.337_403_922_900_968_1);
        let f = ci1 * 1f64.sin() + (FRAC_PI_2 - si1) * 1f64.cos();
        assert!((v.re - f).abs() < 1e-14, "{} vs {f}", v.re);
        assert!(terminant_eval(&TerminantQuery::real(1.0, Complex::from_polar(1.0, 2.5)).unwrap()).is_err());
    }
}
