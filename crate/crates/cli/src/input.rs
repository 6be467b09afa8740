//! Parsing of numeric command-line values.
//!
//! Reals are read into [`DoubleDouble`] so that `--precision extended`
//! keeps every digit given. Accepted complex forms:
//!
//! * `RE` — a real number;
//! * `RE,IM` — Cartesian form;
//! * `MOD:ARG` — polar form, `ARG` in degrees unless suffixed `rad`, or
//!   written as a multiple of `pi` (`3pi/8`, `-pi/4`).

use std::ops::RangeInclusive;

use gentrig::{DoubleDouble, Order, Real};
use num_complex::Complex;
use num_traits::{Float, One, Zero};

use crate::error::{CliError, CliResult};

type D = DoubleDouble;

pub fn real(s: &str) -> CliResult<D> {
    let t = s.trim();
    if let Some(v) = pi_multiple(t)? {
        return Ok(v);
    }
    t.parse::<D>().map_err(|_| CliError::usage(format!("not a number: {s:?}")))
}

/// `[-][N]pi[/M]`.
fn pi_multiple(s: &str) -> CliResult<Option<D>> {
    let Some(i) = s.find("pi") else {
        return Ok(None);
    };
    let bad = || CliError::usage(format!("not a multiple of pi: {s:?}"));
    let (head, tail) = (&s[..i], &s[i + 2..]);
    let num = match head {
        "" => D::one(),
        "-" => -D::one(),
        h => h.trim_end_matches('*').parse::<D>().map_err(|_| bad())?,
    };
    let den = match tail {
        "" => D::one(),
        t => t.strip_prefix('/').and_then(|d| d.parse::<D>().ok()).ok_or_else(bad)?,
    };
    Ok(Some(num * D::PI / den))
}

/// An angle: plain numbers and `deg` suffixes are degrees; `rad` suffixes
/// and multiples of `pi` are radians.
pub fn angle(s: &str) -> CliResult<D> {
    let t = s.trim();
    if let Some(r) = t.strip_suffix("rad") {
        return real(r);
    }
    if let Some(v) = pi_multiple(t)? {
        return Ok(v);
    }
    let deg = real(t.strip_suffix("deg").unwrap_or(t))?;
    Ok(deg * D::PI / D::c(180.0))
}

pub fn complex(s: &str) -> CliResult<Complex<D>> {
    let t = s.trim();
    if let Some((m, a)) = t.split_once(':') {
        let r = real(m)?;
        let th = angle(a)?;
        if th.is_zero() {
            return Ok(Complex::new(r, D::zero()));
        }
        return Ok(Complex::new(r * th.cos(), r * th.sin()));
    }
    if let Some((re, im)) = t.split_once(',') {
        return Ok(Complex::new(real(re)?, real(im)?));
    }
    Ok(Complex::new(real(t)?, D::zero()))
}

pub fn order(s: &str) -> CliResult<Order> {
    match s.trim() {
        "optimal" => Ok(Order::Optimal),
        n => n
            .parse::<usize>()
            .map(Order::Fixed)
            .map_err(|_| CliError::usage(format!("order must be a non-negative integer or `optimal`, got {s:?}"))),
    }
}

/// `N` or `A..B` (inclusive).
pub fn int_range(s: &str) -> CliResult<RangeInclusive<i64>> {
    let bad = || CliError::usage(format!("expected an integer or A..B, got {s:?}"));
    let t = s.trim();
    let (a, b) = match t.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (t, t),
    };
    let a = a.trim().parse::<i64>().map_err(|_| bad())?;
    let b = b.trim().parse::<i64>().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

/// Comma-separated reals.
pub fn real_list(s: &str) -> CliResult<Vec<D>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(real).collect()
}

/// Comma-separated angles.
pub fn angle_list(s: &str) -> CliResult<Vec<D>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(angle).collect()
}

/// Converts a parsed value to the working precision.
pub fn to<T: Real>(x: D) -> T {
    T::from_parts(x.hi(), x.lo())
}

pub fn to_complex<T: Real>(z: Complex<D>) -> Complex<T> {
    Complex::new(to(z.re), to(z.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let z = complex("2:90").unwrap();
        assert!(z.re.abs() < D::c(1e-30) && (z.im - D::c(2.0)).abs() < D::c(1e-30));
        assert_eq!(complex("2:pi/2").unwrap(), complex("2:1.5707963267948966192313216916397514rad").unwrap());
        assert_eq!(complex("3,-4").unwrap(), Complex::new(D::c(3.0), D::c(-4.0)));
        assert_eq!(complex("7").unwrap(), Complex::new(D::c(7.0), D::zero()));
        assert_eq!(complex("7:0").unwrap(), Complex::new(D::c(7.0), D::zero()));
        assert!(complex("1:x").is_err());
    }

    #[test]
    fn angles_and_lists() {
        assert_eq!(angle("3pi/8").unwrap(), D::PI * D::c(3.0) / D::c(8.0));
        assert_eq!(angle("-pi").unwrap(), -D::PI);
        assert!((angle("180deg").unwrap() - D::PI).abs() < D::c(1e-30));
        assert_eq!(real_list("1, 2.5,-3").unwrap().len(), 3);
        assert_eq!(int_range("3..12").unwrap(), 3..=12);
        assert_eq!(int_range("-1").unwrap(), -1..=-1);
        assert!(int_range("5..2").is_err());
        assert_eq!(order("optimal").unwrap(), Order::Optimal);
        assert!(order("-1").is_err());
    }
}
