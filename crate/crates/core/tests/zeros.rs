use std::f64::consts::PI;

use gentrig::expansions::{x_expand, EvalRequest, Order};
use gentrig::zeros::{enumerate, first_index, literature_bracket, zero_refine, zero_seed};
use num_complex::Complex;

#[test]
fn refined_zero_inside_its_certificate() {
    let r = zero_refine(zero_seed(0.5_f64, 0.25, 6).unwrap()).unwrap();
    let z = r.refined.unwrap();
    assert!(r.residual.unwrap() < 1e-12 * z.powf(-0.5));
    assert_eq!(r.certificate_holds(), Some(true));
}

#[test]
fn partial_sums_alternate_around_the_zero() {
    let r = zero_refine(zero_seed(0.0_f64, 0.5, 4).unwrap()).unwrap();
    let z = r.refined.unwrap();
    let w = Complex::new(PI * 4.5, 0.0);
    let mut prev: Option<bool> = None;
    for n in 1..=6 {
        let s = x_expand(&EvalRequest::new(0.0, w, Order::Fixed(n))).unwrap().value.re;
        let above = s > z;
        if let Some(p) = prev {
            assert_ne!(p, above, "N = {n}");
        }
        prev = Some(above);
    }
}

#[test]
fn bracket_formula() {
    let (lo, hi) = literature_bracket(0.0, 0.5, 1).unwrap();
    let w = 1.5 * PI;
    assert_eq!(lo, w);
    assert!((hi - (w + (1.0 / w) * 2.0 / (1.0 + (1.0 + 4.0 / (w * w)).sqrt()))).abs() < 1e-15);
    let (lo, hi) = literature_bracket(1.0 - 1e-12, 0.0, 3).unwrap();
    assert!(hi - lo < 1e-12);
    let r = zero_refine(zero_seed(-1.0_f64, 0.0, 2).unwrap()).unwrap();
    let (lo, hi) = literature_bracket(-1.0, 0.0, 2).unwrap();
    assert!(lo < r.refined.unwrap() && r.refined.unwrap() < hi);
    assert!(literature_bracket(0.0, 0.25, 2).is_err());
}

#[test]
fn zeros_increase_with_the_index() {
    let recs = enumerate(0.5_f64, 0.0, -3, 8, true).unwrap();
    assert_eq!(recs[0].k, first_index(0.5, 0.0).unwrap());
    let zs: Vec<f64> = recs.iter().map(|r| r.refined.unwrap()).collect();
    assert!(zs.windows(2).all(|p| p[0] < p[1]));
    let seeds = enumerate(0.5, 0.0, 3, 5, false).unwrap();
    assert!(seeds.iter().all(|r| r.refined.is_none() && r.seed_bound.is_some()));
}

#[test]
fn near_one_seeds_approach_the_sine_zeros() {
    let eps = 1e-9;
    let r = zero_seed(1.0_f64 - eps, 0.25, 4).unwrap();
    assert!((r.seed - PI * 4.25).abs() < 10.0 * eps);
}
