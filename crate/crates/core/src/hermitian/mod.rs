//! Polarized Hermitian forms `⟨f(z), f(w)⟩`, treated as polynomials in
//! `z` and independent conjugate variables `w̄`.

mod gram;
pub mod json;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{MultiIndex, ScalarPoly};
use crate::polymap::{PolyMap, RationalMap};
use crate::scalar::Scalar;

pub use gram::{degree_bound, gram_unitary_solve, GramSolution};

/// `Σ e_{αβ} z^α w̄^β`.
#[derive(Clone, Debug)]
pub struct BiPoly<S> {
    n: usize,
    terms: BTreeMap<(MultiIndex, MultiIndex), S>,
}

/// Gram table `⟨c_α, c_β⟩` of a map's coefficient vectors.
pub type PolarizedForm<S> = BiPoly<S>;

impl<S: Scalar> BiPoly<S> {
    pub fn zero(n: usize) -> Self {
        BiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(MultiIndex, MultiIndex), S> {
        &self.terms
    }

    pub fn entry(&self, alpha: &MultiIndex, beta: &MultiIndex) -> S {
        self.terms
            .get(&(alpha.clone(), beta.clone()))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, alpha: MultiIndex, beta: MultiIndex, c: S) {
        if c.is_zero() {
            return;
        }
        let key = (alpha, beta);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// `p(z)·conj(q)(w̄)`.
    pub fn outer(p: &ScalarPoly<S>, q: &ScalarPoly<S>) -> Self {
        let mut out = Self::zero(p.nvars());
        for (a, x) in p.terms() {
            for (b, y) in q.terms() {
                out.add_term(a.clone(), b.clone(), x.mul(&y.conj()));
            }
        }
        out
    }

    /// `⟨z, w⟩ − 1`.
    pub fn sphere(n: usize) -> Self {
        let mut out = Self::zero(n);
        for j in 0..n {
            out.add_term(MultiIndex::unit(n, j), MultiIndex::unit(n, j), S::one());
        }
        out.add_term(MultiIndex::zero(n), MultiIndex::zero(n), S::one().neg());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for ((a1, b1), x) in &self.terms {
            for ((a2, b2), y) in &other.terms {
                out.add_term(a1.add(a2), b1.add(b2), x.mul(y));
            }
        }
        out
    }

    pub fn eq_value(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// `e_{βα} = conj(e_{αβ})` for every entry.
    pub fn is_hermitian(&self) -> bool {
        self.terms
            .iter()
            .all(|((a, b), c)| self.entry(b, a).eq_value(&c.conj()))
    }

    /// No entries with `α ≠ β`.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|(a, b)| a == b)
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiPoly<T> {
        let mut out = BiPoly::zero(self.n);
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), f(c));
        }
        out
    }

    /// Coupled pairs `α ≠ β` with nonzero entry, each unordered pair once.
    pub fn coupled_pairs(&self) -> Vec<(MultiIndex, MultiIndex)> {
        self.terms
            .keys()
            .filter(|(a, b)| a < b)
            .cloned()
            .collect()
    }

    /// Evaluates at `(z, w)`, conjugating `w`.
    pub fn eval(&self, z: &[S], w: &[S]) -> S {
        let wc: Vec<S> = w.iter().map(|x| x.conj()).collect();
        self.terms.iter().fold(S::zero(), |acc, ((a, b), c)| {
            let mut t = c.clone();
            for (j, &e) in a.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&z[j]);
                }
            }
            for (j, &e) in b.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&wc[j]);
                }
            }
            acc.add(&t)
        })
    }
}

pub fn polarized_form<S: Scalar>(f: &PolyMap<S>) -> PolarizedForm<S> {
    let mut out = BiPoly::zero(f.source_dim());
    let terms: Vec<_> = f.terms().iter().collect();
    for (a, ca) in &terms {
        for (b, cb) in &terms {
            let g = crate::linalg::inner(ca, cb);
            out.add_term((*a).clone(), (*b).clone(), g);
        }
    }
    out
}

/// `⟨p(z), p(w)⟩ − q(z)·conj(q)(w̄)` for `f = p/q`.
pub fn sphere_defect<S: Scalar>(f: &RationalMap<S>) -> BiPoly<S> {
    polarized_form(f.numerator()).sub(&BiPoly::outer(f.denominator(), f.denominator()))
}

#[derive(Clone, Debug)]
pub struct PropernessCertificate<S> {
    /// `r` with `⟨p(z),p(w)⟩ − q(z)q̄(w̄) = r·(⟨z,w⟩ − 1)`.
    pub quotient: BiPoly<S>,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub enum Properness<S> {
    Proper(PropernessCertificate<S>),
    NotProper { remainder: BiPoly<S> },
}

impl<S> Properness<S> {
    pub fn is_proper(&self) -> bool {
        matches!(self, Properness::Proper(_))
    }
}

/// Division by `⟨z,w⟩ − 1`, rewriting `z₁w̄₁ ↦ 1 − Σ_{j≥2} z_j w̄_j`.
/// Returns `(quotient, remainder)`; the remainder has no term divisible
/// by `z₁w̄₁`, so it vanishes exactly when the division is exact.
pub fn divide_by_sphere<S: Scalar>(p: &BiPoly<S>) -> (BiPoly<S>, BiPoly<S>) {
    let n = p.n;
    let mut work = p.clone();
    let mut quotient = BiPoly::zero(n);
    if n == 0 {
        return (quotient, work);
    }
    let e1 = MultiIndex::unit(n, 0);
    loop {
        let key = work
            .terms
            .keys()
            .rev()
            .find(|(a, b)| a.0[0] > 0 && b.0[0] > 0)
            .cloned();
        let Some((a, b)) = key else { break };
        let c = work.terms.remove(&(a.clone(), b.clone())).expect("present");
        let a1 = a.checked_sub(&e1).expect("z₁ divides");
        let b1 = b.checked_sub(&e1).expect("w̄₁ divides");
        quotient.add_term(a1.clone(), b1.clone(), c.clone());
        work.add_term(a1.clone(), b1.clone(), c.clone());
        for j in 1..n {
            let ej = MultiIndex::unit(n, j);
            work.add_term(a1.add(&ej), b1.add(&ej), c.neg());
        }
    }
    (quotient, work)
}

pub fn is_proper<S: Scalar>(f: &RationalMap<S>) -> Result<Properness<S>> {
    if f.is_constant() {
        return Err(Error::ConstantMap);
    }
    let lhs = sphere_defect(f);
    let (quotient, remainder) = divide_by_sphere(&lhs);
    if !remainder.is_zero() {
        return Ok(Properness::NotProper { remainder });
    }
    let verified = quotient.mul(&BiPoly::sphere(f.source_dim())).eq_value(&lhs);
    Ok(Properness::Proper(PropernessCertificate { quotient, verified }))
}

pub fn is_proper_poly<S: Scalar>(f: &PolyMap<S>) -> Result<Properness<S>> {
    is_proper(&RationalMap::from_poly(f.clone()))
}

/// `‖f‖² = ‖g‖²` as Hermitian polynomials, after clearing denominators.
pub fn norm_equal<S: Scalar>(f: &RationalMap<S>, g: &RationalMap<S>) -> Result<bool> {
    if f.source_dim() != g.source_dim() {
        return Err(Error::DimensionMismatch("norm comparison across source dimensions".into()));
    }
    let lhs = polarized_form(f.numerator()).mul(&BiPoly::outer(g.denominator(), g.denominator()));
    let rhs = polarized_form(g.numerator()).mul(&BiPoly::outer(f.denominator(), f.denominator()));
    Ok(lhs.eq_value(&rhs))
}

pub fn norm_equal_poly<S: Scalar>(f: &PolyMap<S>, g: &PolyMap<S>) -> Result<bool> {
    if f.source_dim() != g.source_dim() {
        return Err(Error::DimensionMismatch("norm comparison across source dimensions".into()));
    }
    Ok(polarized_form(f).eq_value(&polarized_form(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::polymap::{direct_sum, identity, tensor_power, whitney};
    use crate::scalar::{rational, RadScalar};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn polarized_examples() {
        let id = polarized_form(&identity::<RadScalar>(2));
        assert_eq!(id.terms().len(), 2);
        assert_eq!(id.entry(&mi(&[1, 0]), &mi(&[1, 0])), RadScalar::one());
        let t = polarized_form(&tensor_power::<RadScalar>(2, 2).unwrap());
        assert!(t.is_diagonal());
        assert_eq!(t.entry(&mi(&[1, 1]), &mi(&[1, 1])), RadScalar::from_int(2));
        let f = identity::<RadScalar>(1);
        let s = polarized_form(&direct_sum(&f, &f, &rational(1, 2)).unwrap());
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.entry(&mi(&[1]), &mi(&[1])), RadScalar::one());
    }

    #[test]
    fn tensor_square_certificate() {
        let t = tensor_power::<RadScalar>(2, 2).unwrap();
        let Properness::Proper(cert) = is_proper_poly(&t).unwrap() else {
            panic!("tensor square is proper")
        };
        assert!(cert.verified);
        // r = ⟨z,w⟩ + 1
        let mut expected = BiPoly::sphere(2);
        expected.add_term(mi(&[0, 0]), mi(&[0, 0]), RadScalar::from_int(2));
        assert!(cert.quotient.eq_value(&expected));
    }

    #[test]
    fn whitney_and_shrunk_identity() {
        assert!(is_proper_poly(&whitney::<RadScalar>()).unwrap().is_proper());
        let half = identity::<RadScalar>(2)
            .apply_matrix(&Matrix::diagonal(&[RadScalar::ratio(1, 2), RadScalar::one()]))
            .unwrap();
        match is_proper_poly(&half).unwrap() {
            Properness::NotProper { remainder } => assert!(!remainder.is_zero()),
            Properness::Proper(_) => panic!("(z1/2, z2) is not proper"),
        }
    }

    #[test]
    fn constant_map_rejected() {
        let c = PolyMap::from_terms(2, 1, [(mi(&[0, 0]), vec![RadScalar::one()])]).unwrap();
        assert_eq!(is_proper_poly(&c).unwrap_err(), Error::ConstantMap);
    }

    #[test]
    fn moebius_is_proper() {
        use crate::autgroup::BallAutomorphism;
        let phi = BallAutomorphism::involution(&[RadScalar::ratio(3, 5)]).unwrap();
        let f = identity::<RadScalar>(1).compose_automorphism(&phi).unwrap();
        assert!(!f.is_polynomial());
        assert!(is_proper(&f).unwrap().is_proper());
    }

    #[test]
    fn norm_equality() {
        let w = whitney::<RadScalar>();
        let z3 = RadScalar::root_of_unity(3, 1).unwrap();
        let u = Matrix::diagonal(&[z3.clone(), z3.mul(&z3)]);
        assert!(norm_equal_poly(&w, &w.compose_unitary(&u).unwrap()).unwrap());
        let id = identity::<RadScalar>(2);
        let half = id
            .apply_matrix(&Matrix::diagonal(&[RadScalar::one(), RadScalar::ratio(1, 2)]))
            .unwrap();
        assert!(!norm_equal_poly(&id, &half).unwrap());
    }
}
