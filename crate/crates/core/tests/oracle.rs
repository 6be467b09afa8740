use std::f64::consts::{FRAC_PI_2, PI};

use gentrig::oracle::{
    f_with_tol, g_with_tol, incomplete_gamma_upper, invert_phase, phase, phase_complex, phase_modulus, phase_real, ti,
};
use gentrig::{DoubleDouble, Real};
use num_complex::Complex;

type D = DoubleDouble;

fn c(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0)
}

#[test]
fn halving_the_tolerance_is_stable() {
    let a = Complex::new(D::c(0.5), D::c(0.0));
    let z = gentrig::real::polar(D::c(5.0), D::c(PI / 6.0));
    for tol in [1e-20, 1e-26] {
        let t = D::c(tol);
        let h = t * D::c(0.5);
        let df = (f_with_tol(a, z, t).unwrap() - f_with_tol(a, z, h).unwrap()).norm();
        let dg = (g_with_tol(a, z, t).unwrap() - g_with_tol(a, z, h).unwrap()).norm();
        assert!(df < t * D::c(10.0) && dg < t * D::c(10.0));
    }
}

#[test]
fn incomplete_gamma_limits() {
    let v = incomplete_gamma_upper(0.5, c(1e-14)).unwrap();
    assert!((v.re - PI.sqrt()).abs() < 1e-6);
    // Γ(0, w) + Γ(−1, w) relation at a = −1: Γ(0, w) = −Γ(−1, w) + w^{−1} e^{−w}
    let w = Complex::new(0.0, 2.0);
    let lhs = incomplete_gamma_upper(-1e-300, w).unwrap();
    let rhs = -incomplete_gamma_upper(-1.0, w).unwrap() + w.inv() * (-w).exp();
    assert!((lhs - rhs).norm() < 1e-14);
}

#[test]
fn positivity_and_monotone_phase() {
    for &a in &[-2.5, -1.0, 0.0, 0.5, 0.9] {
        let mut last = f64::NEG_INFINITY;
        for j in 1..=40 {
            let z = 0.25 * j as f64;
            let p = phase_modulus(a, z).unwrap();
            assert!(p.f > 0.0 && p.g > 0.0 && p.m2 > 0.0);
            assert!(p.phi > last);
            last = p.phi;
        }
    }
    assert!(phase_modulus(1.0, 2.0).is_err());
    assert!(phase_modulus(0.0, -2.0).is_err());
}

#[test]
fn complex_phase_forms() {
    let z = Complex::from_polar(8.0, PI / 8.0);
    assert!((phase(0.0, z).unwrap() - phase_complex(0.0, z).unwrap()).norm() < 1e-11);
    let far = Complex::from_polar(6.0, 3.0 * PI / 8.0);
    let v = phase_complex(0.5, far).unwrap();
    assert!(v.re.is_finite() && v.im.is_finite());
    assert!((v.im - far.im).abs() < 0.5);
    for &x in &[0.5, 2.0, 5.0] {
        let p = phase_complex(-1.0, c(x)).unwrap();
        assert!((p.re - phase_real(-1.0, x).unwrap()).abs() < 1e-11 && p.im.abs() < 1e-11);
    }
}

#[test]
fn inversion() {
    let w = PI * 3.5;
    let z = invert_phase(0.0, w).unwrap();
    assert!((z - 11.083_037_977_608_44).abs() < 1e-11);
    assert!(ti(c(0.0), c(z), 0.5).unwrap().norm() < 1e-14);
    let ws = [-1.0, 0.0, 1.0, 4.0, 9.0];
    let zs: Vec<f64> = ws.iter().map(|&w| invert_phase(0.0, w).unwrap()).collect();
    assert!(zs.windows(2).all(|p| p[0] < p[1]));
    for (&w, &z) in ws.iter().zip(&zs) {
        assert!((phase_real(0.0, z).unwrap() - FRAC_PI_2 - w).abs() < 1e-12);
    }
    assert!(invert_phase(0.5, -1.0).is_err());
}
