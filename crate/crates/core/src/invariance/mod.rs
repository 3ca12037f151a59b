//! Invariance groups of maps: diagonal torus parts of `Γ_f` and `G_f`,
//! the left group `H_f`, membership with the induced target automorphism
//! `Φ(γ)`, kernels of `Φ`, graded certificates, and the monomial solver.

pub mod json;
mod lattice;
mod solver;

use crate::autgroup::{BallAutomorphism, FiniteUnitaryGroup};
use crate::error::{Error, Result};
use crate::hermitian::{degree_bound, gram_unitary_solve, norm_equal_poly, polarized_form};
use crate::linalg::Matrix;
use crate::poly::MultiIndex;
use crate::polymap::{PolyMap, RationalMap};
use crate::scalar::{FloatComplex, RadScalar, Scalar};

pub use lattice::{row_basis, smith_normal_form, ExponentLattice, FiniteGenerator, Smith, TorusSubgroup};
pub use solver::{candidate_exponents, monomial_proper_solve, CyclicConstraint, SolveOutcome, MAX_VERTEX_DIMENSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeMode {
    /// `α − β` over Gram-coupled pairs: obstructions to `‖f∘γ‖² = ‖f‖²`.
    Gram,
    /// `α` over the support: obstructions to `f∘γ = f`.
    Support,
}

pub fn exponent_lattice<S: Scalar>(f: &PolyMap<S>, mode: LatticeMode) -> Result<ExponentLattice> {
    let n = f.source_dim();
    let to_i64 = |a: &MultiIndex| a.0.iter().map(|&x| x as i64).collect::<Vec<_>>();
    let generators = match mode {
        LatticeMode::Gram => polarized_form(f)
            .coupled_pairs()
            .iter()
            .map(|(a, b)| a.diff(b))
            .collect(),
        LatticeMode::Support => f.terms().keys().map(to_i64).collect(),
    };
    ExponentLattice::new(n, generators)
}

/// Diagonal `θ` (in turns) with `‖f∘diag(e^{2πiθ})‖² = ‖f‖²`.
pub fn torus_invariance_group<S: Scalar>(f: &PolyMap<S>) -> Result<TorusSubgroup> {
    if !f.vanishes_at_origin() {
        return Err(Error::NonzeroOrigin);
    }
    Ok(exponent_lattice(f, LatticeMode::Gram)?.dual())
}

/// Diagonal `θ` with `f∘diag(e^{2πiθ}) = f`.
pub fn diagonal_fixing_group<S: Scalar>(f: &PolyMap<S>) -> Result<TorusSubgroup> {
    Ok(exponent_lattice(f, LatticeMode::Support)?.dual())
}

#[derive(Clone, Debug)]
pub struct HfReport<S> {
    /// `H_f ≅ U(k)`, acting on the complement of the coefficient span.
    pub k: usize,
    pub span_rank: usize,
    /// Pairwise-orthogonal basis of the complement.
    pub complement_basis: Vec<Vec<S>>,
}

pub fn hf_group<S: Scalar>(f: &PolyMap<S>) -> Result<HfReport<S>> {
    if !f.vanishes_at_origin() {
        return Err(Error::NonzeroOrigin);
    }
    let span = f.span_rank()?;
    let basis = Matrix::from_columns(&span.basis, f.target_dim());
    let mut complement: Vec<Vec<S>> = Vec::new();
    for v in basis.adjoint().kernel()? {
        let mut w = v;
        for u in &complement {
            let coef = crate::linalg::inner(&w, u).div(&crate::linalg::inner(u, u))?;
            w = w.iter().zip(u).map(|(x, y)| x.sub(&coef.mul(y))).collect();
        }
        complement.push(w);
    }
    Ok(HfReport {
        k: f.target_dim() - span.rank,
        span_rank: span.rank,
        complement_basis: complement,
    })
}

/// `γ ∈ Γ_f` together with `ψ = Φ(γ)`, `f∘γ = ψ∘f`.
#[derive(Clone, Debug)]
pub struct PhiResult<S> {
    pub gamma: BallAutomorphism<S>,
    pub psi: BallAutomorphism<S>,
    /// `ψ` is unique: the coefficient span of `f` is the whole target.
    pub unique: bool,
    /// `f∘γ = ψ∘f` re-checked after solving.
    pub verified: bool,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub enum Membership<S> {
    Member(PhiResult<S>),
    NotMember { reason: String },
}

impl<S> Membership<S> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn phi(&self) -> Option<&PhiResult<S>> {
        match self {
            Membership::Member(p) => Some(p),
            Membership::NotMember { .. } => None,
        }
    }
}

fn not_member<S>(reason: &str) -> Result<Membership<S>> {
    Ok(Membership::NotMember {
        reason: reason.to_string(),
    })
}

/// Decides `γ ∈ Γ_f` for `f` with `f(0) = 0` and returns `Φ(γ)`.
///
/// Unitary `γ` is tested by norm equality and a Gram solve. For general
/// `γ`, the target involution `τ` moving `f(γ(0))` to the origin reduces
/// the question to a unitary `U` with `τ∘f∘γ = U∘f`, and `ψ = τ⁻¹∘U`.
pub fn gamma_membership<S: Scalar>(f: &PolyMap<S>, gamma: &BallAutomorphism<S>) -> Result<Membership<S>> {
    if gamma.dim() != f.source_dim() {
        return Err(Error::DimensionMismatch("automorphism vs source dimension".into()));
    }
    if !f.vanishes_at_origin() {
        return Err(Error::NonzeroOrigin);
    }
    let unique = f.is_minimal()?;
    let fr = RationalMap::from_poly(f.clone());
    let (u, tau, residual) = if let Some(a) = gamma.unitary_part() {
        let g = f.compose_linear(&a)?;
        if !norm_equal_poly(f, &g)? {
            return not_member("‖f∘γ‖² differs from ‖f‖²");
        }
        match gram_unitary_solve(f, &g) {
            Ok(sol) => (sol.unitary, None, sol.residual),
            Err(Error::NoSolution) => return not_member("no unitary U with f∘γ = U∘f"),
            Err(e) => return Err(e),
        }
    } else {
        let g = fr.compose_automorphism(gamma)?;
        let p = g.evaluate(&vec![S::zero(); f.source_dim()])?;
        let tau = if p.iter().all(|x| x.is_zero()) {
            None
        } else {
            match BallAutomorphism::involution(&p) {
                Ok(t) => Some(t),
                Err(Error::PointOnBoundary) => return not_member("f(γ(0)) is not inside the target ball"),
                Err(e) => return Err(e),
            }
        };
        let h = match &tau {
            Some(t) => g.post_compose(t)?,
            None => g,
        };
        let lhs = f.mul_poly(h.denominator());
        match gram_unitary_solve(&lhs, h.numerator()) {
            Ok(sol) => (sol.unitary, tau, sol.residual),
            Err(Error::NoSolution) => return not_member("no target automorphism ψ with f∘γ = ψ∘f"),
            Err(e) => return Err(e),
        }
    };
    let mut psi = BallAutomorphism::from_unitary(&u)?;
    if let Some(t) = tau {
        psi = t.inverse().compose(&psi)?;
    }
    let verified = fr
        .compose_automorphism(gamma)?
        .eq_value(&fr.post_compose(&psi)?);
    if !verified {
        return not_member("solved ψ fails f∘γ = ψ∘f");
    }
    Ok(Membership::Member(PhiResult {
        gamma: gamma.clone(),
        psi,
        unique,
        verified,
        residual,
    }))
}

/// Result of an exact computation, or of its float re-run when the exact
/// scalars leave the supported fragment.
#[derive(Clone, Debug)]
pub enum Backed<E, F> {
    Exact(E),
    Float(F),
}

pub fn gamma_membership_with_fallback(
    f: &PolyMap<RadScalar>,
    gamma: &BallAutomorphism<RadScalar>,
) -> Result<Backed<Membership<RadScalar>, Membership<FloatComplex>>> {
    match gamma_membership(f, gamma) {
        Ok(m) => Ok(Backed::Exact(m)),
        Err(Error::UnsupportedScalar(_)) | Err(Error::UnsupportedInverse) => {
            Ok(Backed::Float(gamma_membership(&f.to_float(), &gamma.to_float())?))
        }
        Err(e) => Err(e),
    }
}

/// `{γ ∈ G : f∘γ = f}`.
pub fn phi_kernel<S: Scalar>(f: &PolyMap<S>, candidates: &FiniteUnitaryGroup<S>) -> Result<FiniteUnitaryGroup<S>> {
    if candidates.dim() != f.source_dim() {
        return Err(Error::DimensionMismatch("candidate group vs source dimension".into()));
    }
    let mut members = Vec::new();
    for g in candidates.elements() {
        if f.compose_linear(g)?.eq_value(f) {
            members.push(g.clone());
        }
    }
    candidates.subgroup(members)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedReport {
    pub m: Vec<i64>,
    pub positive_indices: Vec<usize>,
    /// Largest degree in the graded-lex greedy spanning set of coefficients.
    pub spanning_degree: u32,
    pub restricted_degree_bound: Option<u64>,
    pub restriction_degree: u32,
    pub restriction_is_polynomial: bool,
    pub within_bound: bool,
}

/// Checks that `t ↦ diag(e^{i m_j t})` lies in `Γ_f` and bounds the degree
/// of `f` restricted to the coordinates with `m_j > 0`.
pub fn graded_analysis<S: Scalar>(f: &PolyMap<S>, m: &[i64]) -> Result<GradedReport> {
    if m.len() != f.source_dim() {
        return Err(Error::DimensionMismatch(format!(
            "weight vector of length {} for source dimension {}",
            m.len(),
            f.source_dim()
        )));
    }
    if !f.vanishes_at_origin() {
        return Err(Error::NonzeroOrigin);
    }
    for (a, b) in polarized_form(f).coupled_pairs() {
        if a.dot(m) != b.dot(m) {
            return Err(Error::NotInvariant {
                alpha: a.0,
                beta: b.0,
            });
        }
    }
    let positive: Vec<usize> = (0..m.len()).filter(|&j| m[j] > 0).collect();
    let spanning_degree = f
        .span_rank()?
        .pivots
        .iter()
        .map(|a| a.degree())
        .max()
        .unwrap_or(0);
    let bound = if positive.is_empty() {
        None
    } else {
        let mv: Vec<i64> = positive.iter().map(|&j| m[j]).collect();
        Some(degree_bound(&mv, spanning_degree)?)
    };
    let restriction = f.restrict(&positive);
    let restriction_degree = restriction.degree();
    Ok(GradedReport {
        m: m.to_vec(),
        positive_indices: positive,
        spanning_degree,
        restricted_degree_bound: bound,
        restriction_degree,
        restriction_is_polynomial: true,
        within_bound: bound.is_none_or(|b| restriction_degree as u64 <= b),
    })
}
