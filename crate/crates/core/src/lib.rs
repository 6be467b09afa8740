//! Generalised trigonometric integrals
//! `ti(a, z, α) = ∫_z^∞ t^{a−1} cos(t − πα) dt` with certified large-`z`
//! expansions.
//!
//! The crate provides
//!
//! * exact rational coefficient polynomials for the phase and inverse-phase
//!   series ([`coeffs`]);
//! * the auxiliary functions `f`, `g`, the squared modulus `M²`, the phase `φ`
//!   and its inverse `X` as truncated expansions paired with rigorous error
//!   bounds ([`expansions`]);
//! * bounds and quadrature values for Dingle's basic terminant `Π_p(z)`
//!   ([`terminant`]);
//! * an independent quadrature oracle ([`oracle`]) and the real zeros of `ti`
//!   ([`zeros`]).
//!
//! Numerical routines are generic over [`Real`], implemented for `f32`, `f64`
//! and [`DoubleDouble`]; the coefficient polynomials are exact over
//! `num_rational::BigRational`.
//!
//! ```
//! use gentrig::{phi_expand, EvalRequest, Order};
//! use num_complex::Complex;
//!
//! let r = phi_expand(&EvalRequest::new(0.0_f64, Complex::new(20.0, 0.0), Order::Optimal)).unwrap();
//! let exact = gentrig::oracle::phase_real(0.0_f64, 20.0).unwrap();
//! assert!((r.value.re - exact).abs() <= r.error_bound.unwrap());
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coeffs;
pub mod dd;
pub mod error;
pub mod expansions;
pub mod oracle;
pub mod quad;
pub mod real;
pub mod special;
pub mod terminant;
pub mod zeros;

pub use coeffs::{c_poly, d_poly, t_poly, RationalPolynomial};
pub use dd::DoubleDouble;
pub use error::{Error, Result};
pub use expansions::{
    f_expand, fresnel, g_expand, m2_expand, optimal_order, phi_expand, ti_expand, x_expand, CertifiedValue,
    EvalRequest, Order, RemainderSign, Series, Truncation,
};
pub use real::Real;
pub use terminant::{best_bound, Proposition, TerminantBound, TerminantQuery};
pub use zeros::ZeroRecord;

/// Complex double-precision value.
pub type C64 = num_complex::Complex<f64>;
/// Complex double-double value.
pub type Cdd = num_complex::Complex<DoubleDouble>;

pub type CertifiedValue32 = CertifiedValue<f32>;
pub type CertifiedValue64 = CertifiedValue<f64>;
pub type CertifiedValueDD = CertifiedValue<DoubleDouble>;
pub type ZeroRecord64 = ZeroRecord<f64>;
pub type ZeroRecordDD = ZeroRecord<DoubleDouble>;
pub type TerminantBound64 = TerminantBound<f64>;
pub type OraclePoint64 = oracle::OraclePoint<f64>;
pub type OraclePointDD = oracle::OraclePoint<DoubleDouble>;
