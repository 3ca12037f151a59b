//! Polynomial and rational maps `ℂⁿ → ℂᴺ`.

mod construct;
pub mod json;

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::autgroup::BallAutomorphism;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{MultiIndex, PowerTable, ScalarPoly, SubstitutionCache};
use crate::scalar::{FloatComplex, Scalar};

pub use construct::{direct_sum, identity, pad, partial_tensor, tensor_power, whitney};

/// `f(z) = Σ_α c_α z^α` with `c_α ∈ ℂᴺ`.
#[derive(Clone, Debug)]
pub struct PolyMap<S> {
    n: usize,
    target: usize,
    terms: BTreeMap<MultiIndex, Vec<S>>,
}

#[derive(Clone, Debug)]
pub struct SpanReport<S> {
    pub rank: usize,
    /// Coefficient vectors `c_α` that form a basis of the span.
    pub basis: Vec<Vec<S>>,
    /// Exponents of the basis vectors, earliest in graded-lex order.
    pub pivots: Vec<MultiIndex>,
}

impl<S: Scalar> PolyMap<S> {
    pub fn zero(n: usize, target: usize) -> Self {
        PolyMap {
            n,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        n: usize,
        target: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Vec<S>)>,
    ) -> Result<Self> {
        let mut f = Self::zero(n, target);
        for (alpha, c) in terms {
            if alpha.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "exponent {alpha} for source dimension {n}"
                )));
            }
            if c.len() != target {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient of length {} for target dimension {target}",
                    c.len()
                )));
            }
            f.add_term(alpha, &c);
        }
        Ok(f)
    }

    /// Map whose components are the given polynomials.
    pub fn from_components(n: usize, comps: &[ScalarPoly<S>]) -> Result<Self> {
        let target = comps.len();
        let mut f = Self::zero(n, target);
        for (i, p) in comps.iter().enumerate() {
            if p.nvars() != n {
                return Err(Error::DimensionMismatch("component arity".into()));
            }
            for (a, c) in p.terms() {
                let mut v = vec![S::zero(); target];
                v[i] = c.clone();
                f.add_term(a.clone(), &v);
            }
        }
        Ok(f)
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: &[S]) {
        let entry = self
            .terms
            .entry(alpha.clone())
            .or_insert_with(|| vec![S::zero(); c.len()]);
        for (e, x) in entry.iter_mut().zip(c) {
            *e = e.add(x);
        }
        if entry.iter().all(|x| x.is_zero()) {
            self.terms.remove(&alpha);
        }
    }

    pub fn source_dim(&self) -> usize {
        self.n
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Vec<S>> {
        &self.terms
    }

    pub fn support(&self) -> Vec<MultiIndex> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Vec<S> {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| vec![S::zero(); self.target])
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|a| a.degree()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// `f(0) = 0`.
    pub fn vanishes_at_origin(&self) -> bool {
        !self.terms.contains_key(&MultiIndex::zero(self.n))
    }

    pub fn component(&self, i: usize) -> ScalarPoly<S> {
        let mut p = ScalarPoly::zero(self.n);
        for (a, c) in &self.terms {
            p.add_term(a.clone(), c[i].clone());
        }
        p
    }

    pub fn components(&self) -> Vec<ScalarPoly<S>> {
        (0..self.target).map(|i| self.component(i)).collect()
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PolyMap<T> {
        let mut out = PolyMap::zero(self.n, self.target);
        for (a, c) in &self.terms {
            let v: Vec<T> = c.iter().map(&f).collect();
            out.add_term(a.clone(), &v);
        }
        out
    }

    pub fn to_float(&self) -> PolyMap<FloatComplex> {
        self.map_coeffs(|c| c.to_float())
    }

    pub fn evaluate(&self, z: &[S]) -> Result<Vec<S>> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for source dimension {}",
                z.len(),
                self.n
            )));
        }
        let pw = PowerTable::new(z, self.degree());
        let mut out = vec![S::zero(); self.target];
        for (a, c) in &self.terms {
            let m = pw.monomial(a);
            for (o, x) in out.iter_mut().zip(c) {
                *o = o.add(&x.mul(&m));
            }
        }
        Ok(out)
    }

    pub fn eq_value(&self, other: &Self) -> bool {
        if self.n != other.n || self.target != other.target {
            return false;
        }
        let keys: std::collections::BTreeSet<&MultiIndex> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|a| {
            self.coeff(a)
                .iter()
                .zip(other.coeff(a))
                .all(|(x, y)| x.eq_value(&y))
        })
    }

    /// `f ∘ L` for an `n×n` matrix `L`, without a unitarity check.
    pub fn compose_linear(&self, l: &Matrix<S>) -> Result<Self> {
        if l.rows() != self.n || l.cols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix on source dimension {}",
                l.rows(),
                l.cols(),
                self.n
            )));
        }
        let subs: Vec<ScalarPoly<S>> = (0..self.n)
            .map(|j| ScalarPoly::affine(&l.row(j), S::zero()))
            .collect();
        self.substitute(&subs, self.n)
    }

    /// `f ∘ U` for exactly unitary `U`.
    pub fn compose_unitary(&self, u: &Matrix<S>) -> Result<Self> {
        if !u.is_unitary() {
            return Err(Error::NonUnitary);
        }
        self.compose_linear(u)
    }

    fn substitute(&self, subs: &[ScalarPoly<S>], m: usize) -> Result<Self> {
        let cache = SubstitutionCache::new(subs);
        let mut out = PolyMap::zero(m, self.target);
        for (a, c) in &self.terms {
            let mono = cache.monomial(a);
            for (b, s) in mono.terms() {
                let v: Vec<S> = c.iter().map(|x| x.mul(s)).collect();
                out.add_term(b.clone(), &v);
            }
        }
        Ok(out)
    }

    /// `L ∘ f` for an `N'×N` matrix `L`.
    pub fn apply_matrix(&self, l: &Matrix<S>) -> Result<Self> {
        if l.cols() != self.target {
            return Err(Error::DimensionMismatch("matrix width vs target dimension".into()));
        }
        let mut out = PolyMap::zero(self.n, l.rows());
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &l.mul_vec(c)?);
        }
        Ok(out)
    }

    /// `q·f` for a scalar polynomial `q`.
    pub fn mul_poly(&self, q: &ScalarPoly<S>) -> Self {
        let mut out = PolyMap::zero(self.n, self.target);
        for (a, c) in &self.terms {
            for (b, s) in q.terms() {
                let v: Vec<S> = c.iter().map(|x| x.mul(s)).collect();
                out.add_term(a.add(b), &v);
            }
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_coeffs(|x| x.mul(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.target != other.target {
            return Err(Error::DimensionMismatch("sum of maps".into()));
        }
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&S::one().neg()))
    }

    /// `N × |support|` coefficient matrix, columns in `order`.
    pub fn coefficient_matrix(&self, order: &[MultiIndex]) -> Matrix<S> {
        let cols: Vec<Vec<S>> = order.iter().map(|a| self.coeff(a)).collect();
        Matrix::from_columns(&cols, self.target)
    }

    pub fn span_rank(&self) -> Result<SpanReport<S>> {
        let support = self.support();
        let c = self.coefficient_matrix(&support);
        let pivots = c.pivot_columns()?;
        Ok(SpanReport {
            rank: pivots.len(),
            basis: pivots.iter().map(|&j| c.column(j)).collect(),
            pivots: pivots.iter().map(|&j| support[j].clone()).collect(),
        })
    }

    pub fn is_minimal(&self) -> Result<bool> {
        Ok(self.span_rank()?.rank == self.target)
    }

    pub fn compose_automorphism(&self, gamma: &BallAutomorphism<S>) -> Result<RationalMap<S>> {
        RationalMap::from_poly(self.clone()).compose_automorphism(gamma)
    }

    /// Restriction to `z_j = 0` for `j ∉ keep`.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut out = PolyMap::zero(self.n, self.target);
        for (a, c) in &self.terms {
            if a.0.iter().enumerate().all(|(j, &e)| e == 0 || keep.contains(&j)) {
                out.add_term(a.clone(), c);
            }
        }
        out
    }
}

/// `p(z)/q(z)` with `q(0) = 1`.
#[derive(Clone, Debug)]
pub struct RationalMap<S> {
    numerator: PolyMap<S>,
    denominator: ScalarPoly<S>,
}

/// Outcome of sampling `|q|` on the unit sphere.
#[derive(Clone, Debug)]
pub struct DenominatorCheck {
    pub samples: usize,
    pub min_abs: f64,
    pub ok: bool,
}

pub const DENOMINATOR_SAMPLES: usize = 1000;

impl<S: Scalar> RationalMap<S> {
    /// Normalises so that the denominator has constant term 1.
    pub fn new(numerator: PolyMap<S>, denominator: ScalarPoly<S>) -> Result<Self> {
        if denominator.nvars() != numerator.source_dim() {
            return Err(Error::DimensionMismatch("denominator arity".into()));
        }
        let q0 = denominator.constant_term();
        if q0.is_zero() {
            return Err(Error::DenominatorZero);
        }
        let s = q0.inv()?;
        Ok(RationalMap {
            numerator: numerator.scale(&s),
            denominator: denominator.scale(&s),
        })
    }

    pub fn from_poly(p: PolyMap<S>) -> Self {
        let n = p.source_dim();
        RationalMap {
            numerator: p,
            denominator: ScalarPoly::one(n),
        }
    }

    pub fn numerator(&self) -> &PolyMap<S> {
        &self.numerator
    }

    pub fn denominator(&self) -> &ScalarPoly<S> {
        &self.denominator
    }

    pub fn source_dim(&self) -> usize {
        self.numerator.source_dim()
    }

    pub fn target_dim(&self) -> usize {
        self.numerator.target_dim()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.degree() == 0
    }

    /// The polynomial map when the denominator is constant.
    pub fn as_poly(&self) -> Option<PolyMap<S>> {
        self.is_polynomial().then(|| self.numerator.clone())
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> RationalMap<T> {
        RationalMap {
            numerator: self.numerator.map_coeffs(f),
            denominator: self.denominator.map_coeffs(f),
        }
    }

    pub fn to_float(&self) -> RationalMap<FloatComplex> {
        self.map_coeffs(|c| c.to_float())
    }

    pub fn evaluate(&self, z: &[S]) -> Result<Vec<S>> {
        let q = self.denominator.eval(z)?;
        if q.is_zero() {
            return Err(Error::DenominatorZero);
        }
        let qi = q.inv()?;
        Ok(self
            .numerator
            .evaluate(z)?
            .into_iter()
            .map(|x| x.mul(&qi))
            .collect())
    }

    /// `f` is constant iff `p = p(0)·q`.
    pub fn is_constant(&self) -> bool {
        let p0 = self.numerator.coeff(&MultiIndex::zero(self.source_dim()));
        let mut scaled = PolyMap::zero(self.source_dim(), self.target_dim());
        for (a, s) in self.denominator.terms() {
            let v: Vec<S> = p0.iter().map(|x| x.mul(s)).collect();
            scaled.add_term(a.clone(), &v);
        }
        scaled.eq_value(&self.numerator)
    }

    /// Cross-multiplied identity `p₁q₂ = p₂q₁`.
    pub fn eq_value(&self, other: &Self) -> bool {
        self.source_dim() == other.source_dim()
            && self.target_dim() == other.target_dim()
            && self
                .numerator
                .mul_poly(&other.denominator)
                .eq_value(&other.numerator.mul_poly(&self.denominator))
    }

    /// `f ∘ γ`, with denominator normalised to `q(0) = 1`.
    pub fn compose_automorphism(&self, gamma: &BallAutomorphism<S>) -> Result<Self> {
        let n = self.source_dim();
        if gamma.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "automorphism of B^{} on map from B^{n}",
                gamma.dim()
            )));
        }
        let a = gamma.a_block();
        let b = gamma.b_block();
        let subs: Vec<ScalarPoly<S>> = (0..n)
            .map(|j| ScalarPoly::affine(&a.row(j), b[j].clone()))
            .collect();
        let ell = ScalarPoly::affine(&gamma.c_block(), gamma.d_entry());
        let deg = self.numerator.degree().max(self.denominator.degree());
        let cache = SubstitutionCache::new(&subs);
        let ell_pows: Vec<ScalarPoly<S>> = {
            let mut v = vec![ScalarPoly::one(n)];
            for k in 1..=deg as usize {
                v.push(v[k - 1].mul(&ell));
            }
            v
        };
        let mut num = PolyMap::zero(n, self.target_dim());
        for (alpha, c) in self.numerator.terms() {
            let mono = cache
                .monomial(alpha)
                .mul(&ell_pows[(deg - alpha.degree()) as usize]);
            for (b, s) in mono.terms() {
                let v: Vec<S> = c.iter().map(|x| x.mul(s)).collect();
                num.add_term(b.clone(), &v);
            }
        }
        let mut den = ScalarPoly::zero(n);
        for (alpha, c) in self.denominator.terms() {
            let mono = cache
                .monomial(alpha)
                .mul(&ell_pows[(deg - alpha.degree()) as usize]);
            den = den.add(&mono.scale(c));
        }
        RationalMap::new(num, den)
    }

    /// `ψ ∘ f` for a target automorphism `ψ`.
    pub fn post_compose(&self, psi: &BallAutomorphism<S>) -> Result<Self> {
        if psi.dim() != self.target_dim() {
            return Err(Error::DimensionMismatch("automorphism vs target dimension".into()));
        }
        let q = self.denominator.clone();
        let comps = self.numerator.components();
        let a = psi.a_block();
        let b = psi.b_block();
        let c = psi.c_block();
        let n = self.source_dim();
        let mut out_comps = Vec::with_capacity(comps.len());
        for i in 0..comps.len() {
            let mut p = q.scale(&b[i]);
            for (j, comp) in comps.iter().enumerate() {
                p = p.add(&comp.scale(a.get(i, j)));
            }
            out_comps.push(p);
        }
        let mut den = q.scale(&psi.d_entry());
        for (j, comp) in comps.iter().enumerate() {
            den = den.add(&comp.scale(&c[j]));
        }
        RationalMap::new(PolyMap::from_components(n, &out_comps)?, den)
    }

    /// Samples `|q|` at deterministic points of the unit sphere.
    pub fn check_denominator(&self, samples: usize) -> DenominatorCheck {
        let q = self.denominator.to_float();
        let n = self.source_dim();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut min_abs = f64::INFINITY;
        for _ in 0..samples {
            let mut z: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
                .collect();
            let norm = z.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            z.iter_mut().for_each(|x| *x /= norm);
            let pt: Vec<FloatComplex> = z.into_iter().map(FloatComplex::from_complex).collect();
            let v = q.eval(&pt).map(|v| v.abs()).unwrap_or(0.0);
            min_abs = min_abs.min(v);
        }
        if samples == 0 || n == 0 {
            min_abs = q.constant_term().abs();
        }
        DenominatorCheck {
            samples,
            min_abs,
            ok: min_abs > crate::scalar::session_tolerance(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RadScalar;

    fn r(p: i64, q: i64) -> RadScalar {
        RadScalar::ratio(p, q)
    }

    #[test]
    fn evaluate_examples() {
        let id = identity::<RadScalar>(2);
        assert_eq!(id.evaluate(&[r(1, 2), r(0, 1)]).unwrap(), vec![r(1, 2), r(0, 1)]);
        let t = tensor_power::<RadScalar>(2, 2).unwrap();
        assert_eq!(
            t.evaluate(&[r(1, 1), r(0, 1)]).unwrap(),
            vec![r(1, 1), r(0, 1), r(0, 1)]
        );
        let w = whitney::<RadScalar>();
        assert_eq!(
            w.evaluate(&[r(3, 5), r(4, 5)]).unwrap(),
            vec![r(3, 5), r(12, 25), r(16, 25)]
        );
    }

    #[test]
    fn compose_unitary_examples() {
        let w = whitney::<RadScalar>();
        let i = RadScalar::root_of_unity(4, 1).unwrap();
        let u = Matrix::diagonal(&[i.clone(), RadScalar::one()]);
        let g = w.compose_unitary(&u).unwrap();
        assert_eq!(g.coeff(&MultiIndex(vec![1, 0]))[0], i);
        assert_eq!(g.coeff(&MultiIndex(vec![1, 1]))[1], i);
        assert_eq!(g.coeff(&MultiIndex(vec![0, 2]))[2], RadScalar::one());
        assert!(g.compose_unitary(&u.adjoint()).unwrap().eq_value(&w));
        let two = Matrix::diagonal(&[r(2, 1), r(1, 1)]);
        assert_eq!(w.compose_unitary(&two).unwrap_err(), Error::NonUnitary);
    }

    #[test]
    fn span_examples() {
        assert_eq!(identity::<RadScalar>(2).span_rank().unwrap().rank, 2);
        let p = pad(&identity::<RadScalar>(2), 1).unwrap();
        assert_eq!(p.span_rank().unwrap().rank, 2);
        assert!(!p.is_minimal().unwrap());
        assert!(whitney::<RadScalar>().is_minimal().unwrap());
    }

    #[test]
    fn rational_equality_cross_multiplies() {
        let id = identity::<RadScalar>(1);
        let q = ScalarPoly::affine(&[r(1, 3)], RadScalar::one());
        let f = RationalMap::new(id.mul_poly(&q), q.mul(&q)).unwrap();
        let g = RationalMap::new(id.clone(), q.clone()).unwrap();
        assert!(f.eq_value(&g));
        assert!(!f.eq_value(&RationalMap::from_poly(id)));
        assert!(g.check_denominator(DENOMINATOR_SAMPLES).ok);
    }
}
