use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclo::CycloScalar;
use super::field::{self, canonical_order, lcm_order, radical_class, squarefree_split};
use crate::error::{Error, Result};

/// `Σ_r q_r √r` with cyclotomic coefficients `q_r ∈ Q(ζ_L)` and distinct
/// square-free radicands `r`.
///
/// The term map is canonical for its order: every radicand is the least
/// member of its square class modulo `Q(ζ_L)`, so radicands whose roots
/// already lie in the cyclotomic field are folded into the `r = 1` term.
/// Two values of the same order are equal iff their term maps agree.
#[derive(Clone, Debug)]
pub struct RadScalar {
    order: u32,
    terms: BTreeMap<u64, CycloScalar>,
}

impl RadScalar {
    pub fn zero() -> Self {
        RadScalar {
            order: 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_cyclo(CycloScalar::from_rational(1, q))
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(k.into()))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(p.into(), q.into()))
    }

    pub fn from_cyclo(c: CycloScalar) -> Self {
        let mut terms = BTreeMap::new();
        let order = c.order();
        if !c.is_zero() {
            terms.insert(1, c);
        }
        RadScalar { order, terms }
    }

    /// `ζ_L^k`.
    pub fn root_of_unity(order: u32, k: i64) -> Result<Self> {
        Ok(Self::from_cyclo(CycloScalar::root_of_unity(order, k)?))
    }

    /// `√q` for a non-negative rational `q`.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::UnsupportedScalar(format!("square root of negative {q}")));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // √(a/b) = √(ab)/b
        let prod = q.numer() * q.denom();
        let n: u64 = u64::try_from(&prod)
            .map_err(|_| Error::UnsupportedScalar(format!("radicand {prod} too large")))?;
        let (g, s) = squarefree_split(n);
        let coeff = BigRational::new(BigInt::from(g), q.denom().clone());
        Ok(Self::radical(s, CycloScalar::from_rational(1, coeff)))
    }

    /// `coeff · √r` for any positive integer `r`.
    pub fn radical(r: u64, coeff: CycloScalar) -> Self {
        assert!(r > 0, "radicand must be positive");
        let order = coeff.order();
        let mut out = RadScalar {
            order,
            terms: BTreeMap::new(),
        };
        out.accumulate(r, coeff);
        out
    }

    /// Parts accessor; terms are keyed by square-free radicand.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<u64, CycloScalar> {
        &self.terms
    }

    /// Builds from raw parts, re-canonicalising the radicands.
    pub fn from_terms(order: u32, terms: impl IntoIterator<Item = (u64, CycloScalar)>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        let mut out = RadScalar {
            order: canonical_order(order),
            terms: BTreeMap::new(),
        };
        for (r, c) in terms {
            if r == 0 {
                return Err(Error::Parse("radicand must be positive".into()));
            }
            let l = lcm_order(out.order, c.order());
            if l != out.order {
                out = out.lift(l);
            }
            out.accumulate(r, c.lift(out.order));
        }
        Ok(out)
    }

    /// Adds `c · √r` into the term map, folding `r` onto its class
    /// representative. `c` must already have this scalar's order.
    fn accumulate(&mut self, r: u64, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        let (g, s) = squarefree_split(r);
        let mut c = if g == 1 {
            c
        } else {
            c.scale(&BigRational::from_integer(BigInt::from(g)))
        };
        let data = field::field(self.order);
        let (rep, factor) = radical_class(&data, s);
        if rep != s {
            c = c.mul(&CycloScalar::from_parts(self.order, factor));
        }
        let c = c.lift(self.order);
        let entry = self
            .terms
            .entry(rep)
            .or_insert_with(|| CycloScalar::zero(self.order));
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&rep);
        }
    }

    pub fn lift(&self, order: u32) -> Self {
        let order = canonical_order(order);
        if order == self.order {
            return self.clone();
        }
        let mut out = RadScalar {
            order,
            terms: BTreeMap::new(),
        };
        for (r, c) in &self.terms {
            out.accumulate(*r, c.lift(order));
        }
        out
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = lcm_order(self.order, other.order);
        (self.lift(l), other.lift(l))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).and_then(|c| c.as_rational()),
            _ => None,
        }
    }

    /// Number of distinct radicands.
    pub fn radical_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (mut a, b) = self.aligned(other);
        for (r, c) in b.terms {
            let entry = a.terms.entry(r).or_insert_with(|| CycloScalar::zero(b.order));
            *entry = entry.add(&c);
            if entry.is_zero() {
                a.terms.remove(&r);
            }
        }
        a
    }

    pub fn neg(&self) -> Self {
        RadScalar {
            order: self.order,
            terms: self.terms.iter().map(|(r, c)| (*r, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = self.aligned(other);
        let mut out = RadScalar {
            order: a.order,
            terms: BTreeMap::new(),
        };
        for (r1, c1) in &a.terms {
            for (r2, c2) in &b.terms {
                out.accumulate(r1 * r2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        RadScalar {
            order: self.order,
            terms: self.terms.iter().map(|(r, c)| (*r, c.scale(q))).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        RadScalar {
            order: self.order,
            terms: self.terms.iter().map(|(r, c)| (*r, c.conj())).collect(),
        }
    }

    /// Multiplicative inverse. Single-radicand values invert in closed
    /// form. General values are reduced to the cyclotomic field by
    /// multiplying with conjugates `√g ↦ −√g`, one independent square
    /// class `g` at a time.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.terms.len() == 1 {
            let (r, c) = self.terms.iter().next().expect("one term");
            // (c√r)^{-1} = c^{-1} √r / r
            let ci = c.inv()?.scale(&BigRational::new(BigInt::one(), BigInt::from(*r)));
            return Ok(RadScalar::radical(*r, ci).lift(self.order));
        }
        self.inv_general()
    }

    fn inv_general(&self) -> Result<Self> {
        let data = field::field(self.order);
        // F₂-coordinates of every square class generated by the radicands.
        let mut coords: BTreeMap<u64, u64> = BTreeMap::from([(1, 0)]);
        let mut generators = 0u32;
        for &r in self.terms.keys() {
            if coords.contains_key(&r) {
                continue;
            }
            if generators == 63 {
                return Err(Error::UnsupportedInverse);
            }
            let bit = 1u64 << generators;
            generators += 1;
            let known: Vec<(u64, u64)> = coords.iter().map(|(k, v)| (*k, *v)).collect();
            for (c, m) in known {
                let (_, s) = squarefree_split(c * r);
                let (rep, _) = radical_class(&data, s);
                coords.insert(rep, m | bit);
            }
        }
        let mut y = self.clone();
        let mut cofactor = RadScalar::one().lift(self.order);
        for i in 0..generators {
            let bit = 1u64 << i;
            let conj = RadScalar {
                order: y.order,
                terms: y
                    .terms
                    .iter()
                    .map(|(r, c)| {
                        let m = coords.get(r).ok_or(Error::UnsupportedInverse)?;
                        Ok((*r, if m & bit != 0 { c.neg() } else { c.clone() }))
                    })
                    .collect::<Result<_>>()?,
            };
            y = y.mul(&conj);
            cofactor = cofactor.mul(&conj);
        }
        let base = match y.terms.len() {
            0 => return Err(Error::DivisionByZero),
            1 if y.terms.contains_key(&1) => y.terms[&1].clone(),
            _ => return Err(Error::UnsupportedInverse),
        };
        Ok(cofactor.mul(&RadScalar::from_cyclo(base.inv()?)))
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(r, c)| c.to_complex() * (*r as f64).sqrt())
            .sum()
    }

    /// Order-independent structural key: the term map after lifting to `order`.
    pub fn key_at(&self, order: u32) -> Vec<(u64, Vec<BigRational>)> {
        self.lift(lcm_order(order, self.order))
            .terms
            .into_iter()
            .map(|(r, c)| (r, c.coeffs().to_vec()))
            .collect()
    }
}

impl PartialEq for RadScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.terms == other.terms;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for RadScalar {}

impl fmt::Display for RadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let single = c.coeffs().iter().filter(|x| !x.is_zero()).count() == 1;
            match (*r, single) {
                (1, _) => write!(f, "{c}")?,
                (r, true) => write!(f, "{c}·√{r}")?,
                (r, false) => write!(f, "({c})·√{r}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(n: i64) -> RadScalar {
        RadScalar::sqrt_rational(&BigRational::from_integer(n.into())).unwrap()
    }

    #[test]
    fn sqrt2_squared() {
        assert_eq!(sqrt(2).mul(&sqrt(2)), RadScalar::from_int(2));
    }

    #[test]
    fn squarefree_reduction_of_products() {
        let expect = RadScalar::radical(3, CycloScalar::from_rational(1, BigRational::from_integer(2.into())));
        assert_eq!(sqrt(2).mul(&sqrt(6)), expect);
        assert_eq!(sqrt(12), expect);
    }

    #[test]
    fn inverse_single_radicand() {
        let a = sqrt(2).scale(&BigRational::from_integer(3.into()));
        let inv = a.inv().unwrap();
        assert_eq!(inv, sqrt(2).scale(&BigRational::new(1.into(), 6.into())));
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn inverse_multi_radicand() {
        let a = RadScalar::one().add(&sqrt(2)).add(&sqrt(3));
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        let i = RadScalar::root_of_unity(4, 1).unwrap();
        let b = i.add(&sqrt(5)).add(&sqrt(7).mul(&i));
        assert!(b.mul(&b.inv().unwrap()).is_one());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(RadScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn sqrt2_folds_into_order_eight() {
        // √2 = ζ8 + ζ8^7 once the field contains ζ8.
        let z8 = RadScalar::root_of_unity(8, 1).unwrap();
        let cyc = z8.add(&RadScalar::root_of_unity(8, 7).unwrap());
        let diff = cyc.sub(&sqrt(2));
        assert!(diff.is_zero(), "{diff}");
        assert_eq!(cyc, sqrt(2));
        // √2·ζ8 = 1 + i
        let one_plus_i = RadScalar::one().add(&RadScalar::root_of_unity(4, 1).unwrap());
        assert_eq!(sqrt(2).mul(&z8), one_plus_i);
    }

    #[test]
    fn hidden_root_classes() {
        // √3 · √(-3) relation: in Q(ζ12), √3 is cyclotomic.
        let z12 = RadScalar::root_of_unity(12, 1).unwrap();
        let s3 = z12.add(&RadScalar::root_of_unity(12, 11).unwrap());
        assert_eq!(s3, sqrt(3));
        // √6 in Q(ζ12)(√2): √6 = √3·√2
        let x = s3.mul(&sqrt(2));
        assert_eq!(x, sqrt(6));
        assert_eq!(x.radical_count(), 1);
    }

    #[test]
    fn negative_sqrt_rejected() {
        assert!(RadScalar::sqrt_rational(&BigRational::from_integer((-2).into())).is_err());
    }
}
