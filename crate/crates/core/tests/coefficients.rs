mod common;

use gentrig::coeffs::{c_poly, c_value, d_poly, eval_poly, t_poly, t_value};
use gentrig::DoubleDouble;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, Zero};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn tables_match_exactly() {
    for n in 0..=5 {
        assert_eq!(t_poly(n).unwrap(), common::parse_poly(common::T_TABLE[n]), "t_{n}");
        assert_eq!(c_poly(n).unwrap(), common::parse_poly(common::C_TABLE[n]), "c_{n}");
    }
}

#[test]
fn display_round_trips_through_the_table_notation() {
    assert_eq!(c_poly(2).unwrap().to_string(), "x^5 + (80/3)x^4 + 160x^3 + 250x^2 + 120x");
    assert_eq!(t_poly(0).unwrap().to_string(), "x");
}

#[test]
fn structure_up_to_order_twelve() {
    for n in 0..=12 {
        let t = t_poly(n).unwrap();
        assert!(t.is_monic() && t.degree() == 2 * n + 1 && t.has_integer_coefficients());
        assert!(t.coeff(0).is_zero());
        assert!(t.positive_above_constant(), "t_{n} has a nonpositive coefficient");
        let c = c_poly(n).unwrap();
        assert!(c.is_monic() && c.degree() == 2 * n + 1 && c.coeff(0).is_zero());
        assert!(c.positive_above_constant(), "c_{n} has a nonpositive coefficient");
    }
}

#[test]
fn d_leading_terms_and_first_row() {
    for n in 0..=6 {
        assert_eq!(d_poly(n, 1).unwrap().coefficients(), &[BigRational::zero(), q(2 * n as i64 + 1, 1)]);
        for k in 1..=6 {
            let d = d_poly(n, k).unwrap();
            assert_eq!(d.degree(), 2 * k - 1);
            assert_eq!(d.leading(), q(2 * n as i64 + 1, 2 * k as i64 - 1));
        }
        assert_eq!(d_poly(n, n + 1).unwrap(), c_poly(n).unwrap());
    }
    assert!(d_poly(1, 0).is_err());
}

#[test]
fn values_at_one() {
    let one = BigRational::one();
    assert_eq!(t_poly(1).unwrap().eval_exact(&one), q(13, 1));
    assert_eq!(c_poly(1).unwrap().eval_exact(&one), q(16, 1));
    assert_eq!(c_poly(2).unwrap().eval_exact(&one), q(1673, 3));
    assert_eq!(c_value(1, 0.0_f64).unwrap(), 0.0);
    assert_eq!(t_value(3, 1.0_f64).unwrap(), 1.0 + 42.0 + 560.0 + 3248.0 + 8946.0 + 11256.0 + 5040.0);
    let p = c_poly(5).unwrap();
    let x = DoubleDouble::from_f64_const(0.5);
    let exact = p.eval_exact(&q(1, 2));
    let approx = eval_poly(&p, x);
    let err = (approx - DoubleDouble::new(num_traits::ToPrimitive::to_f64(&exact).unwrap(), 0.0)).abs();
    assert!(err.hi() < 1e-15 * approx.hi());
}
