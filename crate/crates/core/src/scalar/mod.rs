//! Scalar arithmetic: exact cyclotomic-radical values and a float backend.
//!
//! Algorithms elsewhere in the crate are generic over [`Scalar`], so the
//! same code runs exactly on [`RadScalar`] and approximately on
//! [`FloatComplex`].

mod cyclo;
pub(crate) mod field;
mod float;
pub mod json;
mod precise;
mod rad;

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

pub use cyclo::CycloScalar;
pub use float::{session_tolerance, set_session_tolerance, FloatComplex};
pub use precise::{to_precise, PreciseComplex};
pub use rad::RadScalar;

use crate::error::{Error, Result};

pub trait Scalar: Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn root_of_unity(order: u32, k: i64) -> Result<Self>;
    fn sqrt_rational(q: &BigRational) -> Result<Self>;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;

    /// Square root of a non-negative real value, when representable.
    fn sqrt_real(&self) -> Result<Self>;
    fn to_complex(&self) -> Complex64;

    /// Pivot preference: larger is better, zero means unusable.
    fn pivot_weight(&self) -> f64;

    fn from_int(k: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(k.into()))
    }

    fn eq_value(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    fn to_float(&self) -> FloatComplex {
        FloatComplex::from_complex(self.to_complex())
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// `|x|²` as a scalar.
    fn norm_sqr(&self) -> Self {
        self.mul(&self.conj())
    }
}

impl Scalar for RadScalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        RadScalar::zero()
    }
    fn one() -> Self {
        RadScalar::one()
    }
    fn from_rational(q: &BigRational) -> Self {
        RadScalar::from_rational(q.clone())
    }
    fn root_of_unity(order: u32, k: i64) -> Result<Self> {
        RadScalar::root_of_unity(order, k)
    }
    fn sqrt_rational(q: &BigRational) -> Result<Self> {
        RadScalar::sqrt_rational(q)
    }
    fn add(&self, other: &Self) -> Self {
        RadScalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RadScalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RadScalar::mul(self, other)
    }
    fn neg(&self) -> Self {
        RadScalar::neg(self)
    }
    fn conj(&self) -> Self {
        RadScalar::conj(self)
    }
    fn inv(&self) -> Result<Self> {
        RadScalar::inv(self)
    }
    fn is_zero(&self) -> bool {
        RadScalar::is_zero(self)
    }
    fn sqrt_real(&self) -> Result<Self> {
        match self.as_rational() {
            Some(q) => RadScalar::sqrt_rational(&q),
            None => Err(Error::UnsupportedScalar(format!("square root of {self}"))),
        }
    }
    fn to_complex(&self) -> Complex64 {
        RadScalar::to_complex(self)
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            // prefer rational pivots, then fewer radicands
            1.0 / (self.radical_count() as f64 + if self.as_rational().is_some() { 0.0 } else { 1.0 })
        }
    }
    fn eq_value(&self, other: &Self) -> bool {
        self == other
    }
}

impl Scalar for FloatComplex {
    const EXACT: bool = false;

    fn zero() -> Self {
        FloatComplex::new(0.0, 0.0)
    }
    fn one() -> Self {
        FloatComplex::new(1.0, 0.0)
    }
    fn from_rational(q: &BigRational) -> Self {
        use num_traits::ToPrimitive;
        FloatComplex::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn root_of_unity(order: u32, k: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        let angle = std::f64::consts::TAU * (k.rem_euclid(order as i64) as f64) / order as f64;
        Ok(FloatComplex::from_complex(Complex64::from_polar(1.0, angle)))
    }
    fn sqrt_rational(q: &BigRational) -> Result<Self> {
        use num_traits::{Signed, ToPrimitive};
        if q.is_negative() {
            return Err(Error::UnsupportedScalar(format!("square root of negative {q}")));
        }
        Ok(FloatComplex::new(q.to_f64().unwrap_or(f64::NAN).sqrt(), 0.0))
    }
    fn add(&self, other: &Self) -> Self {
        FloatComplex::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        FloatComplex::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FloatComplex::mul(self, other)
    }
    fn neg(&self) -> Self {
        FloatComplex::neg(self)
    }
    fn conj(&self) -> Self {
        FloatComplex::conj(self)
    }
    fn inv(&self) -> Result<Self> {
        FloatComplex::inv(self)
    }
    fn is_zero(&self) -> bool {
        FloatComplex::is_zero(self)
    }
    fn sqrt_real(&self) -> Result<Self> {
        if self.re < -self.eps || self.im.abs() > self.eps {
            return Err(Error::UnsupportedScalar(format!("square root of {self}")));
        }
        Ok(FloatComplex::with_tolerance(self.re.max(0.0).sqrt(), 0.0, self.eps))
    }
    fn to_complex(&self) -> Complex64 {
        self.complex()
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.abs()
        }
    }
    fn to_float(&self) -> FloatComplex {
        *self
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<num_bigint::BigInt>()
            .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if num_traits::Zero::is_zero(&q) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}
