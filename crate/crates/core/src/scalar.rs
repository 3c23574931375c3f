//! Scalar field abstraction.
//!
//! Everything above this module is generic over [`Scalar`], with two
//! backends: [`ExactScalar`] (arbitrary-precision rationals, used for every
//! identity check) and [`ApproxScalar`] (`f64`, used for limits, zeros and
//! truncated series).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type ExactScalar = BigRational;
pub type ApproxScalar = f64;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for the rational backend.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// Total order: exact on rationals, `f64::total_cmp` on floats.
    fn total_cmp(&self, other: &Self) -> Ordering;
    /// Equality used by parameter validation: literal on rationals,
    /// relative 1e-12 on floats.
    fn near(&self, other: &Self) -> bool;
    /// Square root, only needed by the float backend to derive t from q.
    fn sqrt(&self) -> Option<Self>;
    /// Canonical string form.
    fn to_canonical(&self) -> String;

    fn is_positive(&self) -> bool {
        self.total_cmp(&Self::zero()) == Ordering::Greater
    }

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    fn try_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.clone() / other.clone())
    }

    fn recip(&self) -> Result<Self> {
        Self::one().try_div(self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn near(&self, other: &Self) -> bool {
        self == other
    }
    fn sqrt(&self) -> Option<Self> {
        // Rational square roots exist only for squares of numerator and denominator.
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| BigRational::new(n, d))
    }
    fn to_canonical(&self) -> String {
        format_exact(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }
    fn near(&self, other: &Self) -> bool {
        let scale = self.abs().max(other.abs());
        (self - other).abs() <= 1e-12 * scale
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn to_canonical(&self) -> String {
        format_float(*self)
    }
}

/// `a^k`; negative exponents invert, which fails for a zero base.
pub fn scalar_pow<S: Scalar>(a: &S, k: i64) -> Result<S> {
    if k < 0 {
        if a.is_zero() {
            return Err(Error::ZeroToNegativePower(k));
        }
        return scalar_pow(&a.recip()?, -k);
    }
    let mut base = a.clone();
    let mut acc = S::one();
    let mut e = k as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    Ok(acc)
}

pub fn scalar_cmp<S: Scalar>(a: &S, b: &S) -> Ordering {
    a.total_cmp(b)
}

/// Parse `"±p/r"` or `"±p"` into lowest terms.
pub fn parse_exact(text: &str) -> Result<ExactScalar> {
    let s = text.trim();
    let err = || Error::Parse(text.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Lowest-terms `p/r` with positive `r`; the `/1` suffix is omitted for integers.
pub fn format_exact(x: &ExactScalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// 17 significant digits, scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}
