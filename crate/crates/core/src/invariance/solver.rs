//! Monomial proper maps `z ↦ (√d_α z^α)_α`: such a map is proper exactly
//! when `Σ d_α x^α ≡ 1` on the simplex `Σ x_j = 1`, `x = |z|²`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{diagonal_fixing_group, TorusSubgroup};
use crate::error::{Error, Result};
use crate::hermitian::{is_proper_poly, Properness, PropernessCertificate};
use crate::linalg::Matrix;
use crate::poly::{MultiIndex, ScalarPoly};
use crate::polymap::PolyMap;
use crate::scalar::RadScalar;

/// Largest affine solution dimension searched by vertex enumeration.
pub const MAX_VERTEX_DIMENSION: usize = 6;

/// The diagonal cyclic group generated by `diag(e^{2πi a_j/m})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicConstraint {
    pub weights: Vec<i64>,
    pub order: u64,
}

impl CyclicConstraint {
    /// `z^α` is invariant: `a·α ≡ 0 (mod m)`.
    pub fn admits(&self, alpha: &MultiIndex) -> bool {
        alpha.dot(&self.weights).rem_euclid(self.order as i64) == 0
    }

    pub fn generator_turns(&self) -> Vec<BigRational> {
        self.weights
            .iter()
            .map(|&a| {
                let q = BigRational::new(a.into(), (self.order as i64).into());
                &q - q.floor()
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solved {
        exponents: Vec<MultiIndex>,
        weights: Vec<BigRational>,
        map: PolyMap<RadScalar>,
        certificate: PropernessCertificate<RadScalar>,
        fixing_group: TorusSubgroup,
        /// The constraint generator lies in the map's diagonal fixing group.
        constraint_contained: Option<bool>,
    },
    Infeasible {
        exponents: Vec<MultiIndex>,
        reason: String,
        /// `y` with `yᵀA = 0` and `yᵀb ≠ 0`, when the system is inconsistent.
        farkas: Option<Vec<BigRational>>,
    },
    Undecided {
        exponents: Vec<MultiIndex>,
        dimension: usize,
    },
}

fn rat(x: &RadScalar) -> BigRational {
    x.as_rational().expect("solver works over the rationals")
}

/// Rows: coefficients of `x^α` after `x_n = 1 − x₁ − … − x_{n−1}`.
fn simplex_system(n: usize, exponents: &[MultiIndex]) -> (Matrix<RadScalar>, Vec<RadScalar>) {
    let m = n - 1;
    let mut last = ScalarPoly::<RadScalar>::one(m);
    for j in 0..m {
        last = last.sub(&ScalarPoly::variable(m, j));
    }
    let polys: Vec<ScalarPoly<RadScalar>> = exponents
        .iter()
        .map(|a| {
            let mut p = last.pow(a.0[n - 1]);
            for j in 0..m {
                p = p.mul(&ScalarPoly::variable(m, j).pow(a.0[j]));
            }
            p
        })
        .collect();
    let mut monomials: Vec<MultiIndex> = polys.iter().flat_map(|p| p.terms().keys().cloned()).collect();
    monomials.push(MultiIndex::zero(m));
    monomials.sort();
    monomials.dedup();
    let cols: Vec<Vec<RadScalar>> = polys
        .iter()
        .map(|p| monomials.iter().map(|mono| p.coeff(mono)).collect())
        .collect();
    let a = Matrix::from_columns(&cols, monomials.len());
    let b = monomials
        .iter()
        .map(|mono| if mono.is_zero() { RadScalar::one() } else { RadScalar::zero() })
        .collect();
    (a, b)
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().expect("present");
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Finds nonnegative `d_α` with `Σ d_α x^α ≡ 1` on the simplex, and builds
/// the proper monomial map with coefficients `√d_α`.
///
/// With a constraint, exponents are first filtered to the nonconstant
/// invariant ones. The first feasible basis in lexicographic column order
/// is returned.
pub fn monomial_proper_solve(
    n: usize,
    exponents: &[MultiIndex],
    constraint: Option<&CyclicConstraint>,
) -> Result<SolveOutcome> {
    if n == 0 {
        return Err(Error::InvalidParameter("source dimension must be positive".into()));
    }
    if let Some(c) = constraint {
        if c.weights.len() != n || c.order == 0 {
            return Err(Error::InvalidParameter("constraint needs n weights and a positive order".into()));
        }
    }
    let mut exps: Vec<MultiIndex> = exponents
        .iter()
        .filter(|a| constraint.is_none_or(|c| !a.is_zero() && c.admits(a)))
        .cloned()
        .collect();
    exps.sort();
    exps.dedup();
    if let Some(bad) = exps.iter().find(|a| a.len() != n) {
        return Err(Error::DimensionMismatch(format!("exponent {bad} for n = {n}")));
    }
    if exps.is_empty() {
        return Ok(SolveOutcome::Infeasible {
            exponents: exps,
            reason: "no admissible exponents".into(),
            farkas: None,
        });
    }
    let (a, b) = simplex_system(n, &exps);
    let cols = exps.len();
    let mut aug = Matrix::zeros(a.rows(), cols + 1);
    for i in 0..a.rows() {
        for j in 0..cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, cols, b[i].clone());
    }
    let pivots = aug.rref()?;
    if pivots.last() == Some(&cols) {
        let farkas = a
            .transpose()
            .kernel()?
            .into_iter()
            .find(|y| !crate::linalg::inner(y, &b).is_zero())
            .map(|y| y.iter().map(rat).collect());
        return Ok(SolveOutcome::Infeasible {
            exponents: exps,
            reason: "the coefficient equations are inconsistent".into(),
            farkas,
        });
    }
    let rank = pivots.len();
    let dimension = cols - rank;
    if dimension > MAX_VERTEX_DIMENSION {
        return Ok(SolveOutcome::Undecided {
            exponents: exps,
            dimension,
        });
    }
    // reduced system: first `rank` rows of the row-reduced augmented matrix
    let reduced = Matrix::from_rows((0..rank).map(|i| aug.row(i)).collect())?;
    for basis in combinations(cols, rank) {
        let sub = Matrix::from_rows(
            (0..rank)
                .map(|i| basis.iter().map(|&j| reduced.get(i, j).clone()).collect())
                .collect(),
        )?;
        let Ok(inv) = sub.inverse() else { continue };
        let rhs: Vec<RadScalar> = (0..rank).map(|i| reduced.get(i, cols).clone()).collect();
        let xb = inv.mul_vec(&rhs)?;
        if xb.iter().any(|x| rat(x).is_negative()) {
            continue;
        }
        let mut weights = vec![BigRational::zero(); cols];
        for (&j, x) in basis.iter().zip(&xb) {
            weights[j] = rat(x);
        }
        return build(n, exps, weights, constraint);
    }
    Ok(SolveOutcome::Infeasible {
        exponents: exps,
        reason: format!("no nonnegative vertex among the bases of a {dimension}-dimensional solution set"),
        farkas: None,
    })
}

fn build(
    n: usize,
    exps: Vec<MultiIndex>,
    weights: Vec<BigRational>,
    constraint: Option<&CyclicConstraint>,
) -> Result<SolveOutcome> {
    let used: Vec<(MultiIndex, BigRational)> = exps
        .iter()
        .zip(&weights)
        .filter(|(_, d)| !d.is_zero())
        .map(|(a, d)| (a.clone(), d.clone()))
        .collect();
    let target = used.len();
    let mut terms = Vec::with_capacity(target);
    for (i, (a, d)) in used.iter().enumerate() {
        let mut c = vec![RadScalar::zero(); target];
        c[i] = RadScalar::sqrt_rational(d)?;
        terms.push((a.clone(), c));
    }
    let map = PolyMap::from_terms(n, target, terms)?;
    let certificate = match is_proper_poly(&map)? {
        Properness::Proper(c) if c.verified => c,
        _ => {
            return Err(Error::InvalidParameter(
                "solver weights failed the properness check".into(),
            ))
        }
    };
    let fixing_group = diagonal_fixing_group(&map)?;
    let constraint_contained = constraint.map(|c| fixing_group.contains(&c.generator_turns()));
    Ok(SolveOutcome::Solved {
        exponents: exps,
        weights,
        map,
        certificate,
        fixing_group,
        constraint_contained,
    })
}

/// Exponents with `1 ≤ |α| ≤ max_degree`.
pub fn candidate_exponents(n: usize, max_degree: u32) -> Vec<MultiIndex> {
    MultiIndex::up_to_degree(n, max_degree)
        .into_iter()
        .filter(|a| !a.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn weights(o: &SolveOutcome) -> Vec<BigRational> {
        match o {
            SolveOutcome::Solved { weights, .. } => weights.clone(),
            other => panic!("expected a solution, got {other:?}"),
        }
    }

    #[test]
    fn linear_and_quadratic() {
        let w = weights(&monomial_proper_solve(2, &[mi(&[1, 0]), mi(&[0, 1])], None).unwrap());
        assert_eq!(w, vec![rational(1, 1), rational(1, 1)]);
        let w = weights(&monomial_proper_solve(2, &MultiIndex::of_degree(2, 2), None).unwrap());
        assert_eq!(w, vec![rational(1, 1), rational(2, 1), rational(1, 1)]);
    }

    #[test]
    fn pure_squares_are_infeasible() {
        match monomial_proper_solve(2, &[mi(&[2, 0]), mi(&[0, 2])], None).unwrap() {
            SolveOutcome::Infeasible { farkas, .. } => assert!(farkas.is_some()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cyclic_constraint() {
        let c = CyclicConstraint { weights: vec![1, 1], order: 3 };
        let out = monomial_proper_solve(2, &candidate_exponents(2, 3), Some(&c)).unwrap();
        let SolveOutcome::Solved { exponents, weights, constraint_contained, fixing_group, .. } = out else {
            panic!("solvable")
        };
        assert_eq!(exponents, MultiIndex::of_degree(2, 3));
        assert_eq!(weights, [1, 3, 3, 1].map(|k| rational(k, 1)).to_vec());
        assert_eq!(constraint_contained, Some(true));
        assert_eq!(fixing_group.finite_order(), 3);
    }

    #[test]
    fn underdetermined_picks_a_vertex() {
        // degree ≤ 2 in one variable: any d with Σ d = 1
        let out = monomial_proper_solve(1, &[mi(&[1]), mi(&[2])], None).unwrap();
        assert_eq!(weights(&out), vec![rational(1, 1), rational(0, 1)]);
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).count(), 6);
        assert_eq!(combinations(3, 0).count(), 1);
    }
}
