//! Coefficient domains.
//!
//! Every polynomial, matrix and reduction in this crate is generic over a
//! [`Scalar`]. Three domains are used in practice: [`Rational`] for exact
//! symbolic work, [`GaussianRational`] for exact evaluation at complex
//! potentials, and [`Complex64`] for the numerical solver.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{FloqError, Result};

pub use num_complex::Complex64;

/// Exact rational numbers.
pub type Rational = BigRational;

/// Exact complex numbers with rational real and imaginary parts.
pub type GaussianRational = Complex<BigRational>;

/// Tag naming a coefficient domain, used in serialized output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    BigRational,
    GaussianRational,
    ComplexDouble,
    Double,
}

/// Commutative ring with the conversions this crate needs.
///
/// Zero testing is exact (`is_zero`); no tolerance is applied when a
/// polynomial decides whether to store a term.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const DOMAIN: Domain;

    fn from_i64(value: i64) -> Self;

    /// Nearest complex double.
    fn to_c64(&self) -> Complex64;

    /// Magnitude as a double, used for residual reporting.
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
}

/// A [`Scalar`] with division.
pub trait Field: Scalar + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Scalars with a complex conjugation (identity on real domains).
pub trait Conjugate: Scalar {
    fn conjugate(&self) -> Self;
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for BigRational {
    const DOMAIN: Domain = Domain::BigRational;

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(self), 0.0)
    }

    fn magnitude(&self) -> f64 {
        rat_to_f64(&self.abs())
    }
}

impl Field for BigRational {}

impl Conjugate for BigRational {
    fn conjugate(&self) -> Self {
        self.clone()
    }
}

impl Scalar for GaussianRational {
    const DOMAIN: Domain = Domain::GaussianRational;

    fn from_i64(value: i64) -> Self {
        Complex::new(BigRational::from_i64(value), BigRational::zero())
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl Field for GaussianRational {}

impl Conjugate for GaussianRational {
    fn conjugate(&self) -> Self {
        self.conj()
    }
}

impl Scalar for Complex64 {
    const DOMAIN: Domain = Domain::ComplexDouble;

    fn from_i64(value: i64) -> Self {
        Complex64::new(value as f64, 0.0)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }
}

impl Field for Complex64 {}

impl Conjugate for Complex64 {
    fn conjugate(&self) -> Self {
        self.conj()
    }
}

impl Scalar for f64 {
    const DOMAIN: Domain = Domain::Double;

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl Field for f64 {}

impl Conjugate for f64 {
    fn conjugate(&self) -> Self {
        *self
    }
}

/// Lossless embedding of one coefficient domain into another.
pub trait Embed<T> {
    fn embed(&self) -> T;
}

impl<T: Clone> Embed<T> for T {
    fn embed(&self) -> T {
        self.clone()
    }
}

impl Embed<GaussianRational> for BigRational {
    fn embed(&self) -> GaussianRational {
        Complex::new(self.clone(), BigRational::zero())
    }
}

impl Embed<Complex64> for BigRational {
    fn embed(&self) -> Complex64 {
        self.to_c64()
    }
}

impl Embed<Complex64> for GaussianRational {
    fn embed(&self) -> Complex64 {
        self.to_c64()
    }
}

impl Embed<Complex64> for f64 {
    fn embed(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"` (an optional leading sign is allowed).
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || FloqError::Parse(format!("invalid rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Formats a Gaussian rational as `"p/q+r/s*i"`, or as a bare rational
/// when it is real.
pub fn format_gaussian(z: &GaussianRational) -> String {
    let re = format_rational(&z.re);
    if z.im.is_zero() {
        re
    } else if z.im.is_negative() {
        format!("{re}-{}*i", format_rational(&-z.im.clone()))
    } else {
        format!("{re}+{}*i", format_rational(&z.im))
    }
}

/// Parses the `"p/q+r/s*i"` form written by [`format_gaussian`]. A bare
/// rational is accepted as a real value.
pub fn parse_gaussian(text: &str) -> Result<GaussianRational> {
    let text = text.trim();
    let Some(body) = text.strip_suffix("*i") else {
        return Ok(parse_rational(text)?.embed());
    };
    // the sign separating the parts is the last '+' or '-' not at position 0
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last()
        .ok_or_else(|| FloqError::Parse(format!("invalid gaussian rational {text:?}")))?;
    let re = parse_rational(&body[..split])?;
    let im = parse_rational(&body[split..].trim_start_matches('+'))?;
    Ok(Complex::new(re, im))
}

/// Exact rational from an integer pair.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact Gaussian integer `re + im*i`.
pub fn gaussian(re: i64, im: i64) -> GaussianRational {
    Complex::new(BigRational::from_i64(re), BigRational::from_i64(im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_text_round_trip() {
        for z in [gaussian(1, 1), gaussian(1, -1), gaussian(-1, -1), gaussian(0, 0)] {
            assert_eq!(parse_gaussian(&format_gaussian(&z)).unwrap(), z);
        }
        let z = Complex::new(rational(-3, 4), rational(5, 7));
        assert_eq!(format_gaussian(&z), "-3/4+5/7*i");
        assert_eq!(parse_gaussian("-3/4+5/7*i").unwrap(), z);
        assert_eq!(parse_gaussian("2").unwrap(), gaussian(2, 0));
        assert_eq!(format_gaussian(&gaussian(0, 0)), "0");
        assert_eq!(format_gaussian(&gaussian(0, -2)), "0-2*i");
    }

    #[test]
    fn gaussian_product() {
        // (1+i)(1-i) = 2
        assert_eq!(gaussian(1, 1) * gaussian(1, -1), gaussian(2, 0));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
