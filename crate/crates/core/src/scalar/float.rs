use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;

use crate::error::{Error, Result};

const DEFAULT_TOLERANCE: f64 = 1e-9;

static SESSION_TOLERANCE: AtomicU64 = AtomicU64::new(0);

/// Tolerance given to newly created float values in this process.
pub fn session_tolerance() -> f64 {
    match SESSION_TOLERANCE.load(Ordering::Relaxed) {
        0 => DEFAULT_TOLERANCE,
        bits => f64::from_bits(bits),
    }
}

pub fn set_session_tolerance(eps: f64) {
    assert!(eps > 0.0 && eps.is_finite(), "tolerance must be positive");
    SESSION_TOLERANCE.store(eps.to_bits(), Ordering::Relaxed);
}

/// Double-precision complex value carrying its own equality tolerance.
///
/// Arithmetic keeps the larger of the two operand tolerances.
#[derive(Clone, Copy, Debug)]
pub struct FloatComplex {
    pub re: f64,
    pub im: f64,
    pub eps: f64,
}

impl FloatComplex {
    pub fn new(re: f64, im: f64) -> Self {
        FloatComplex {
            re,
            im,
            eps: session_tolerance(),
        }
    }

    pub fn with_tolerance(re: f64, im: f64, eps: f64) -> Self {
        FloatComplex { re, im, eps }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }

    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.complex().norm()
    }

    fn join(&self, other: &Self, z: Complex64) -> Self {
        FloatComplex {
            re: z.re,
            im: z.im,
            eps: self.eps.max(other.eps),
        }
    }

    fn keep(&self, z: Complex64) -> Self {
        FloatComplex {
            re: z.re,
            im: z.im,
            eps: self.eps,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.join(o, self.complex() + o.complex())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.join(o, self.complex() - o.complex())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.join(o, self.complex() * o.complex())
    }

    pub fn neg(&self) -> Self {
        self.keep(-self.complex())
    }

    pub fn conj(&self) -> Self {
        self.keep(self.complex().conj())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.re == 0.0 && self.im == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.keep(self.complex().inv()))
    }

    pub fn is_zero(&self) -> bool {
        self.abs() <= self.eps
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Display for FloatComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{} - {}i", self.re, -self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_governs_equality() {
        let a = FloatComplex::with_tolerance(1.0, 0.0, 1e-6);
        let b = FloatComplex::with_tolerance(1.0 + 5e-7, 0.0, 1e-12);
        assert!(a.approx_eq(&b));
        let c = FloatComplex::with_tolerance(1.0, 1e-9, 1e-12);
        assert!(!b.approx_eq(&c));
    }

    #[test]
    fn inverse() {
        let a = FloatComplex::new(3.0, 4.0);
        let p = a.mul(&a.inv().unwrap());
        assert!(p.approx_eq(&FloatComplex::new(1.0, 0.0)));
        assert!(FloatComplex::new(0.0, 0.0).inv().is_err());
    }
}
