//! Multi-indices and scalar polynomials in `n` variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector `α`, ordered graded-lexicographically: total degree
/// first, then `z₁` before `z₂` within a degree (so `z₁² < z₁z₂ < z₂²`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `α − β` as a signed vector.
    pub fn diff(&self, other: &Self) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| *a as i64 - *b as i64)
            .collect()
    }

    pub fn dot(&self, m: &[i64]) -> i64 {
        self.0.iter().zip(m).map(|(a, b)| *a as i64 * b).sum()
    }

    /// All multi-indices of length `n` and total degree `d`, in order.
    pub fn of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for a in (0..=d).rev() {
                prefix.push(a);
                rec(n, d - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(MultiIndex(vec![]));
            }
            return out;
        }
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// All multi-indices with `|α| ≤ d`, in order.
    pub fn up_to_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        (0..=d).flat_map(|k| Self::of_degree(n, k)).collect()
    }

    /// `m! / (α₁! ⋯ αₙ!)` for `m = |α|`.
    pub fn multinomial(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut total: u128 = 0;
        for &a in &self.0 {
            for k in 1..=a as u128 {
                total += 1;
                acc = acc * total / k;
            }
        }
        acc
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Scalar-valued polynomial `Σ a_α z^α`.
#[derive(Clone, Debug)]
pub struct ScalarPoly<S> {
    n: usize,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> ScalarPoly<S> {
    pub fn zero(n: usize) -> Self {
        ScalarPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: S) -> Self {
        let mut p = Self::zero(n);
        p.add_term(MultiIndex::zero(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, S::one())
    }

    pub fn variable(n: usize, j: usize) -> Self {
        let mut p = Self::zero(n);
        p.add_term(MultiIndex::unit(n, j), S::one());
        p
    }

    /// `Σ_j coeffs[j]·z_j + c`.
    pub fn affine(coeffs: &[S], c: S) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, c);
        for (j, a) in coeffs.iter().enumerate() {
            p.add_term(MultiIndex::unit(n, j), a.clone());
        }
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MultiIndex, S)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (alpha, c) in terms {
            if alpha.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "exponent {alpha} in {n} variables"
                )));
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, S> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> S {
        self.terms.get(alpha).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&MultiIndex::zero(self.n))
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&alpha);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|a| a.degree()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.mul(s));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.add(b), x.mul(y));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ScalarPoly<T> {
        let mut out = ScalarPoly::zero(self.n);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), f(c));
        }
        out
    }

    pub fn to_float(&self) -> ScalarPoly<crate::scalar::FloatComplex> {
        self.map_coeffs(|c| c.to_float())
    }

    pub fn eval(&self, z: &[S]) -> Result<S> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for {} variables",
                z.len(),
                self.n
            )));
        }
        let pw = PowerTable::new(z, self.degree());
        Ok(self
            .terms
            .iter()
            .fold(S::zero(), |acc, (a, c)| acc.add(&c.mul(&pw.monomial(a)))))
    }

    /// Substitutes `z_j ↦ subs[j]`, a polynomial in `m` variables.
    pub fn substitute(&self, subs: &[ScalarPoly<S>]) -> Result<Self> {
        if subs.len() != self.n {
            return Err(Error::DimensionMismatch("substitution arity".into()));
        }
        let m = subs.first().map_or(0, |p| p.n);
        let cache = SubstitutionCache::new(subs);
        let mut out = Self::zero(m);
        for (a, c) in &self.terms {
            out = out.add(&cache.monomial(a).scale(c));
        }
        Ok(out)
    }

    pub fn eq_value(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

/// Powers `z_j^k` reused across monomials.
pub(crate) struct PowerTable<S> {
    pows: Vec<Vec<S>>,
}

impl<S: Scalar> PowerTable<S> {
    pub(crate) fn new(z: &[S], max_degree: u32) -> Self {
        let pows = z
            .iter()
            .map(|x| {
                let mut v = vec![S::one()];
                for k in 1..=max_degree as usize {
                    v.push(v[k - 1].mul(x));
                }
                v
            })
            .collect();
        PowerTable { pows }
    }

    pub(crate) fn monomial(&self, alpha: &MultiIndex) -> S {
        alpha
            .0
            .iter()
            .enumerate()
            .fold(S::one(), |acc, (j, &a)| {
                if a == 0 {
                    acc
                } else {
                    acc.mul(&self.pows[j][a as usize])
                }
            })
    }
}

/// Powers of substituted polynomials, computed on demand.
pub(crate) struct SubstitutionCache<'a, S> {
    subs: &'a [ScalarPoly<S>],
    pows: std::cell::RefCell<Vec<Vec<ScalarPoly<S>>>>,
}

impl<'a, S: Scalar> SubstitutionCache<'a, S> {
    pub(crate) fn new(subs: &'a [ScalarPoly<S>]) -> Self {
        let m = subs.first().map_or(0, |p| p.n);
        SubstitutionCache {
            subs,
            pows: std::cell::RefCell::new(vec![vec![ScalarPoly::one(m)]; subs.len()]),
        }
    }

    fn power(&self, j: usize, k: usize) -> ScalarPoly<S> {
        let mut pows = self.pows.borrow_mut();
        while pows[j].len() <= k {
            let next = pows[j].last().expect("nonempty").mul(&self.subs[j]);
            pows[j].push(next);
        }
        pows[j][k].clone()
    }

    pub(crate) fn monomial(&self, alpha: &MultiIndex) -> ScalarPoly<S> {
        let m = self.subs.first().map_or(0, |p| p.n);
        let mut out = ScalarPoly::one(m);
        for (j, &a) in alpha.0.iter().enumerate() {
            if a > 0 {
                out = out.mul(&self.power(j, a as usize));
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for ScalarPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·z^{a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RadScalar;

    #[test]
    fn graded_lex_order() {
        let mut v = MultiIndex::up_to_degree(2, 2);
        v.reverse();
        v.sort();
        let got: Vec<Vec<u32>> = v.into_iter().map(|m| m.0).collect();
        assert_eq!(
            got,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
    }

    #[test]
    fn multinomials() {
        assert_eq!(MultiIndex(vec![1, 1]).multinomial(), 2);
        assert_eq!(MultiIndex(vec![2, 1, 1]).multinomial(), 12);
        assert_eq!(MultiIndex(vec![0, 3]).multinomial(), 1);
        let total: u128 = MultiIndex::of_degree(3, 4).iter().map(|a| a.multinomial()).sum();
        assert_eq!(total, 81);
    }

    #[test]
    fn binomial_expansion() {
        let x = ScalarPoly::<RadScalar>::variable(2, 0);
        let y = ScalarPoly::<RadScalar>::variable(2, 1);
        let p = x.add(&y).pow(3);
        assert_eq!(p.terms().len(), 4);
        assert_eq!(p.coeff(&MultiIndex(vec![2, 1])), RadScalar::from_int(3));
        let v = p
            .eval(&[RadScalar::ratio(1, 2), RadScalar::ratio(1, 3)])
            .unwrap();
        assert_eq!(v, RadScalar::ratio(125, 216));
    }

    #[test]
    fn substitution() {
        // p(z1, z2) = z1 z2 with z1 -> z1 + z2, z2 -> z1 - z2 gives z1² - z2²
        let p = ScalarPoly::<RadScalar>::from_terms(2, [(MultiIndex(vec![1, 1]), RadScalar::one())]).unwrap();
        let x = ScalarPoly::variable(2, 0);
        let y = ScalarPoly::variable(2, 1);
        let q = p.substitute(&[x.add(&y), x.sub(&y)]).unwrap();
        let expected = x.mul(&x).sub(&y.mul(&y));
        assert!(q.eq_value(&expected));
    }
}
