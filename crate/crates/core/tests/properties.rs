use gentrig::expansions::{f_expand, g_expand, phi_expand, x_expand, EvalRequest, Order};
use gentrig::{oracle, DoubleDouble, Real};
use num_complex::Complex;
use num_traits::Float;
use proptest::prelude::*;

type D = DoubleDouble;

fn dd(z: Complex<f64>) -> Complex<D> {
    Complex::new(D::c(z.re), D::c(z.im))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn auxiliary_expansions_are_enclosed(
        a in -3.0f64..0.95,
        r in 5.0f64..60.0,
        theta in -1.1f64..1.1,
        n in 1usize..7,
    ) {
        let z = Complex::from_polar(r, theta);
        let (f, g) = oracle::f_g_quadrature(dd(Complex::new(a, 0.0)), dd(z)).unwrap();
        let req = EvalRequest::new(a, z, Order::Fixed(n));
        for (cv, exact) in [(f_expand(&req).unwrap(), f), (g_expand(&req).unwrap(), g)] {
            if let Some(b) = cv.error_bound {
                let err = (dd(cv.value) - exact).norm().to_f64_lossy();
                prop_assert!(err <= b, "err {err:e} > bound {b:e}");
            }
        }
    }

    #[test]
    fn phase_and_inverse_are_enclosed(a in -3.0f64..0.95, z in 4.0f64..60.0, n in 1usize..6) {
        let phi = oracle::phase_real(D::c(a), D::c(z)).unwrap();
        let cv = phi_expand(&EvalRequest::new(a, Complex::new(z, 0.0), Order::Fixed(n))).unwrap();
        prop_assert!((D::c(cv.value.re) - phi).abs().to_f64_lossy() <= cv.error_bound.unwrap());
        let x = oracle::invert_phase(D::c(a), D::c(z)).unwrap();
        let cv = x_expand(&EvalRequest::new(a, Complex::new(z, 0.0), Order::Fixed(n))).unwrap();
        prop_assert!((D::c(cv.value.re) - x).abs().to_f64_lossy() <= cv.error_bound.unwrap());
    }

    #[test]
    fn polar_form_of_ti(a in -3.0f64..0.95, z in 0.5f64..40.0, alpha in 0.0f64..1.0) {
        let p = oracle::phase_modulus(a, z).unwrap();
        let ti = oracle::ti(Complex::new(a, 0.0), Complex::new(z, 0.0), alpha).unwrap().re;
        let polar = p.m2.sqrt() * (p.phi - std::f64::consts::PI * alpha).cos();
        prop_assert!((ti - polar).abs() <= 1e-11 * p.m2.sqrt());
    }
}
