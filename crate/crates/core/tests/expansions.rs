use std::f64::consts::{FRAC_PI_2, PI};

use gentrig::expansions::{
    ci_expand, f_expand, fresnel, g_expand, m2_expand, optimal_order, phi_expand, ti_expand, EvalRequest, Order,
    RemainderSign, Series, Truncation, MAX_ORDER,
};
use gentrig::oracle;
use num_complex::Complex;

fn c(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0)
}

fn req(a: f64, z: Complex<f64>, n: usize) -> EvalRequest<f64> {
    EvalRequest::new(a, z, Order::Fixed(n))
}

#[test]
fn f_on_a_complex_ray() {
    let z = Complex::from_polar(8.0, PI / 4.0);
    let r = f_expand(&req(0.5, z, 4)).unwrap();
    let exact = oracle::f(c(0.5), z).unwrap();
    assert!((r.value - exact).norm() <= r.error_bound.unwrap());
    assert!(r.sign_certificate.is_none());
}

#[test]
fn g_sign_follows_the_order() {
    let r = g_expand(&req(-1.0, c(6.0), 3)).unwrap();
    assert_eq!(r.sign_certificate, Some(RemainderSign::Negative));
    let exact = oracle::g(c(-1.0), c(6.0)).unwrap().re;
    assert!(exact < r.value.re && r.value.re - exact <= r.error_bound.unwrap());
}

#[test]
fn m2_and_phase_against_the_oracle() {
    let m = m2_expand(&req(0.5, c(12.0), 4)).unwrap();
    assert!((m.value - oracle::m2(c(0.5), c(12.0)).unwrap()).norm() <= m.error_bound.unwrap());
    let p = phi_expand(&req(0.5, c(9.0), 3)).unwrap();
    assert!((p.value.re - oracle::phase_real(0.5, 9.0).unwrap()).abs() <= p.error_bound.unwrap());
    let p = phi_expand(&req(0.0, c(10.0), 1)).unwrap();
    assert!((p.value.re - (10.0 + FRAC_PI_2 - 0.1)).abs() < 1e-14);
}

#[test]
fn ti_cases() {
    // ci(0, z) = −Ci(z)
    let r = ci_expand(&req(0.0, c(20.0), 4)).unwrap();
    let ci20 = 0.044_419_820_845_353_316;
    assert!((r.value.re + ci20).abs() <= r.error_bound.unwrap());
    let r = ti_expand(&req(0.5, c(7.0), 3).with_alpha(0.25)).unwrap();
    let reference = 0.050_850_752_650_640_987;
    assert!((r.value.re - reference).abs() <= r.error_bound.unwrap());
}

#[test]
fn optimal_order_is_a_scan_minimum() {
    let n = optimal_order(0.0, 5.0, Series::Phi).unwrap();
    let term = |k: usize| gentrig::coeffs::t_value(k, 1.0).unwrap() / (2 * k + 1) as f64 / 5f64.powi(2 * k as i32 + 1);
    assert!(n > 0 && n < MAX_ORDER);
    assert!(term(n) <= term(n - 1) && term(n) <= term(n + 1));
    assert!((0..n).all(|k| term(k) > term(n)));
    let r = phi_expand(&EvalRequest::new(0.0, c(5.0), Order::Optimal)).unwrap();
    assert_eq!((r.terms_used, r.truncation), (n, Truncation::Optimal));
    let kappa = 10.0;
    let nx = optimal_order(0.0, PI * kappa, Series::X).unwrap() as f64;
    assert!((nx - FRAC_PI_2 * kappa).abs() <= 3.0);
    assert_eq!(optimal_order(1.0, 3.0, Series::F).unwrap(), 1);
}

#[test]
fn error_decays_with_the_expected_power() {
    // |S_N − f| ~ |z|^{−(2N+1)} for f = z^{a−1}(…), so the slope in log|z| is −(2N+1) − (1 − a)
    let (a, n) = (0.0, 3);
    let err = |z: f64| (f_expand(&req(a, c(z), n)).unwrap().value - oracle::f(c(a), c(z)).unwrap()).norm();
    let zs = [10.0, 20.0, 40.0];
    let e: Vec<f64> = zs.iter().map(|&z| err(z)).collect();
    let slope = (e[2].ln() - e[0].ln()) / (zs[2].ln() - zs[0].ln());
    let want = -(2.0 * n as f64) - (1.0 - a);
    assert!((slope - want).abs() < 0.3, "slope {slope}, want {want}");
}

#[test]
fn fresnel_limits() {
    let z0 = fresnel(c(0.0)).unwrap();
    assert!(z0.s.norm() < 1e-15 && z0.c.norm() < 1e-15);
    let f10 = fresnel(c(10.0)).unwrap();
    assert!(f10.from_expansion);
    assert!((f10.tail.norm() - 0.031_830_182_628_298_746).abs() < 1e-14);
    assert!((f10.tail.norm() - 1.0 / (PI * 10.0)).abs() < 1e-5);
    let neg = fresnel(c(-2.0)).unwrap();
    let pos = fresnel(c(2.0)).unwrap();
    assert_eq!((neg.s, neg.c), (-pos.s, -pos.c));
}
