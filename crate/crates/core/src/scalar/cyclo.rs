use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::field::{self, canonical_order, lcm_order, mul_coeffs, reduce_raw, trim};
use crate::error::{Error, Result};

/// Element of `Q(ζ_L)` in the power basis `1, ζ, …, ζ^{φ(L)-1}`.
///
/// Orders congruent to 2 mod 4 are folded onto half the order at
/// construction, so the stored order is always odd or divisible by 4.
#[derive(Clone, Debug)]
pub struct CycloScalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycloScalar {
    pub fn zero(order: u32) -> Self {
        CycloScalar {
            order: canonical_order(order.max(1)),
            coeffs: Vec::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u32, q: BigRational) -> Self {
        let mut coeffs = vec![q];
        trim(&mut coeffs);
        CycloScalar {
            order: canonical_order(order.max(1)),
            coeffs,
        }
    }

    /// Canonical representative of `Σ raw_j ζ_L^j`.
    pub fn make(order: u32, raw: &[i64]) -> Result<Self> {
        let raw: Vec<BigRational> = raw
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        Self::make_rational(order, &raw)
    }

    pub fn make_rational(order: u32, raw: &[BigRational]) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        let target = canonical_order(order);
        let data = field::field(target);
        let coeffs = if target == order {
            reduce_raw(&data, raw.iter().enumerate().map(|(j, c)| (j as u64, c.clone())))
        } else {
            // ζ_{2h} = -ζ_h^{(h+1)/2} for odd h
            let h = target as u64;
            let e = (h + 1) / 2;
            reduce_raw(
                &data,
                raw.iter().enumerate().map(|(j, c)| {
                    let c = if j % 2 == 1 { -c.clone() } else { c.clone() };
                    ((j as u64 * e) % h, c)
                }),
            )
        };
        Ok(CycloScalar {
            order: target,
            coeffs,
        })
    }

    /// `ζ_L^k`.
    pub fn root_of_unity(order: u32, k: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        let kk = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![0i64; kk + 1];
        raw[kk] = 1;
        Self::make(order, &raw)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub(crate) fn from_parts(order: u32, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(canonical_order(order), order);
        CycloScalar { order, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Re-expresses the element in `Q(ζ_M)`; `L` must divide `M`.
    pub fn lift(&self, order: u32) -> Self {
        let order = canonical_order(order);
        if order == self.order {
            return self.clone();
        }
        debug_assert_eq!(order % self.order, 0, "lift target must be a multiple");
        let step = (order / self.order) as u64;
        let data = field::field(order);
        let coeffs = reduce_raw(
            &data,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (j as u64 * step, c.clone())),
        );
        CycloScalar { order, coeffs }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = lcm_order(self.order, other.order);
        (self.lift(l), other.lift(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); n];
        for (j, c) in a.coeffs.iter().enumerate() {
            coeffs[j] += c;
        }
        for (j, c) in b.coeffs.iter().enumerate() {
            coeffs[j] += c;
        }
        trim(&mut coeffs);
        CycloScalar {
            order: a.order,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CycloScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        if let Some(q) = a.as_rational() {
            return b.scale(&q);
        }
        if let Some(q) = b.as_rational() {
            return a.scale(&q);
        }
        let data = field::field(a.order);
        CycloScalar {
            order: a.order,
            coeffs: mul_coeffs(&data, &a.coeffs, &b.coeffs),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.order);
        }
        CycloScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^t`.
    pub fn galois(&self, t: u32) -> Self {
        let data = field::field(self.order);
        let coeffs = reduce_raw(
            &data,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (j as u64 * t as u64, c.clone())),
        );
        CycloScalar {
            order: self.order,
            coeffs,
        }
    }

    pub fn conj(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    /// Inverse through the product of the nontrivial Galois conjugates.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order, q.recip()));
        }
        let data = field::field(self.order);
        let mut cofactor = Self::one(self.order);
        for &t in data.units.iter().filter(|&&t| t != 1) {
            cofactor = cofactor.mul(&self.galois(t));
        }
        let norm = self
            .mul(&cofactor)
            .as_rational()
            .expect("field norm is rational");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn to_complex(&self) -> Complex64 {
        let l = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            let angle = std::f64::consts::TAU * j as f64 / l;
            acc += Complex64::from_polar(1.0, angle) * c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloScalar {}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·ζ{}", self.order)?,
                _ => write!(f, "{c}·ζ{}^{j}", self.order)?,
            }
        }
        Ok(())
    }
}
