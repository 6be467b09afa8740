//! The scalar abstraction every numerical routine in the crate is generic over.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

use crate::dd::DoubleDouble;

/// Real floating scalar usable throughout the crate.
///
/// Implemented for `f32`, `f64` and [`DoubleDouble`].
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
{
    /// Short name used in diagnostics.
    const NAME: &'static str;

    /// Rounds the exact sum `hi + lo` into `Self`.
    fn from_parts(hi: f64, lo: f64) -> Self;

    /// Default relative tolerance for quadrature and iterative solvers.
    fn quad_tolerance() -> Self;

    /// Converts an `f64` constant.
    #[inline]
    fn c(x: f64) -> Self {
        Self::from_parts(x, 0.0)
    }

    /// The value as an unevaluated sum `hi + lo` of two `f64`s.
    fn parts(self) -> (f64, f64);

    /// Lossy conversion to `f64` for reporting.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    const NAME: &'static str = "f32";
    fn from_parts(hi: f64, lo: f64) -> Self {
        (hi + lo) as f32
    }
    fn parts(self) -> (f64, f64) {
        (f64::from(self), 0.0)
    }
    fn quad_tolerance() -> Self {
        2e-6
    }
}

impl Real for f64 {
    const NAME: &'static str = "f64";
    fn from_parts(hi: f64, lo: f64) -> Self {
        hi + lo
    }
    fn parts(self) -> (f64, f64) {
        (self, 0.0)
    }
    fn quad_tolerance() -> Self {
        1e-14
    }
}

impl Real for DoubleDouble {
    const NAME: &'static str = "double-double";
    fn from_parts(hi: f64, lo: f64) -> Self {
        DoubleDouble::new(hi, lo)
    }
    fn parts(self) -> (f64, f64) {
        (self.hi(), self.lo())
    }
    fn quad_tolerance() -> Self {
        DoubleDouble::from_f64_const(1e-29)
    }
}

/// Builds a complex number from real and imaginary parts given as `f64`.
pub fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::c(re), T::c(im))
}

/// `r·e^{iθ}`.
pub fn polar<T: Real>(r: T, theta: T) -> Complex<T> {
    let (s, c) = theta.sin_cos();
    Complex::new(r * c, r * s)
}

/// Converts a complex value to `f64` parts.
pub fn to_c64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy())
}

/// Converts an `f64` complex value into `T`.
pub fn from_c64<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::c(z.re), T::c(z.im))
}
