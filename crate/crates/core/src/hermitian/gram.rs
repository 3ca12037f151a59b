use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{inner, Matrix};
use crate::poly::MultiIndex;
use crate::polymap::PolyMap;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct GramSolution<S> {
    /// `U` with `g = U∘f`.
    pub unitary: Matrix<S>,
    /// The coefficient span of `f` is all of `ℂᴺ`.
    pub unique: bool,
    /// Largest entry of `|U·C_f − C_g|` and `|U*U − I|`; zero when exact.
    pub residual: f64,
}

/// Pairwise-orthogonal basis of the orthogonal complement of the column
/// span of `cols`, by Gram–Schmidt on a kernel basis of `cols*`.
fn orthogonal_complement<S: Scalar>(cols: &Matrix<S>) -> Result<Vec<Vec<S>>> {
    let kernel = cols.adjoint().kernel()?;
    let mut out: Vec<Vec<S>> = Vec::with_capacity(kernel.len());
    for v in kernel {
        let mut w = v;
        for u in &out {
            let coef = inner(&w, u).div(&inner(u, u))?;
            w = w.iter().zip(u).map(|(x, y)| x.sub(&coef.mul(y))).collect();
        }
        out.push(w);
    }
    Ok(out)
}

/// Solves `U·C_f = C_g` for unitary `U`, so that `g = U∘f`.
pub fn gram_unitary_solve<S: Scalar>(f: &PolyMap<S>, g: &PolyMap<S>) -> Result<GramSolution<S>> {
    if f.source_dim() != g.source_dim() || f.target_dim() != g.target_dim() {
        return Err(Error::DimensionMismatch("maps of different shapes".into()));
    }
    let n_target = f.target_dim();
    let support: Vec<MultiIndex> = f
        .terms()
        .keys()
        .chain(g.terms().keys())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let cf = f.coefficient_matrix(&support);
    let cg = g.coefficient_matrix(&support);
    if !cf.adjoint().mul(&cf)?.approx_eq(&cg.adjoint().mul(&cg)?) {
        return Err(Error::NoSolution);
    }
    let pivots = cf.pivot_columns()?;
    let fcols: Vec<Vec<S>> = pivots.iter().map(|&j| cf.column(j)).collect();
    let gcols: Vec<Vec<S>> = pivots.iter().map(|&j| cg.column(j)).collect();
    let fm = Matrix::from_columns(&fcols, n_target);
    let gm = Matrix::from_columns(&gcols, n_target);
    let uf = orthogonal_complement(&fm)?;
    let shared = uf
        .iter()
        .all(|u| gcols.iter().all(|c| inner(u, c).is_zero()));
    let ug: Vec<Vec<S>> = if shared {
        uf.clone()
    } else {
        let raw = orthogonal_complement(&gm)?;
        raw.iter()
            .zip(&uf)
            .map(|(v, u)| {
                let ratio = inner(u, u).div(&inner(v, v))?;
                let s = ratio.sqrt_real()?;
                Ok(v.iter().map(|x| x.mul(&s)).collect())
            })
            .collect::<Result<_>>()?
    };
    let mut src = fcols;
    src.extend(uf);
    let mut dst = gcols;
    dst.extend(ug);
    let src = Matrix::from_columns(&src, n_target);
    let dst = Matrix::from_columns(&dst, n_target);
    let u = dst.mul(&src.inverse()?)?;
    let image = u.mul(&cf)?;
    let gram = u.adjoint().mul(&u)?;
    let id = Matrix::identity(n_target);
    if !gram.approx_eq(&id) || !image.approx_eq(&cg) {
        return Err(Error::NoSolution);
    }
    let residual = image.max_deviation(&cg).max(gram.max_deviation(&id));
    Ok(GramSolution {
        unitary: u,
        unique: pivots.len() == n_target,
        residual: if S::EXACT { 0.0 } else { residual },
    })
}

/// `⌈K₂·d/K₁⌉` with `K₁ = min m_j`, `K₂ = max m_j`: past this total degree
/// no exponent `η` can satisfy `m·η = m·α` for any `|α| ≤ d`.
pub fn degree_bound(m: &[i64], support_degree: u32) -> Result<u64> {
    if m.is_empty() {
        return Err(Error::InvalidParameter("empty weight vector".into()));
    }
    if m.iter().any(|&x| x <= 0) {
        return Err(Error::NonPositiveEigenvalue);
    }
    let k1 = *m.iter().min().expect("nonempty") as u64;
    let k2 = *m.iter().max().expect("nonempty") as u64;
    Ok((k2 * support_degree as u64).div_ceil(k1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymap::{identity, pad, tensor_power, whitney};
    use crate::scalar::{FloatComplex, RadScalar};

    fn perm() -> Matrix<RadScalar> {
        Matrix::from_rows(vec![
            vec![RadScalar::zero(), RadScalar::one()],
            vec![RadScalar::one(), RadScalar::zero()],
        ])
        .unwrap()
    }

    #[test]
    fn swap_is_recovered() {
        let f = identity::<RadScalar>(2);
        let g = f.compose_unitary(&perm()).unwrap();
        let sol = gram_unitary_solve(&f, &g).unwrap();
        assert!(sol.unitary.approx_eq(&perm()));
        assert!(sol.unique);
    }

    #[test]
    fn tensor_square_diag() {
        let f = tensor_power::<RadScalar>(2, 2).unwrap();
        let i = RadScalar::root_of_unity(4, 1).unwrap();
        let g = f.compose_unitary(&Matrix::diagonal(&[i.clone(), RadScalar::one()])).unwrap();
        let sol = gram_unitary_solve(&f, &g).unwrap();
        let expected = Matrix::diagonal(&[RadScalar::from_int(-1), i, RadScalar::one()]);
        assert!(sol.unitary.approx_eq(&expected));
    }

    #[test]
    fn no_solution_for_different_norms() {
        let f = identity::<RadScalar>(2);
        let g = f
            .apply_matrix(&Matrix::diagonal(&[RadScalar::one(), RadScalar::ratio(1, 2)]))
            .unwrap();
        assert_eq!(gram_unitary_solve(&f, &g).unwrap_err(), Error::NoSolution);
    }

    #[test]
    fn non_minimal_completion() {
        let f = pad(&whitney::<RadScalar>(), 2).unwrap();
        let z = RadScalar::root_of_unity(5, 1).unwrap();
        let g = f.compose_unitary(&Matrix::diagonal(&[z.clone(), z])).unwrap();
        let sol = gram_unitary_solve(&f, &g).unwrap();
        assert!(!sol.unique);
        assert!(f.apply_matrix(&sol.unitary).unwrap().eq_value(&g));
    }

    #[test]
    fn complement_needs_rescaling() {
        // g's span differs from f's, so the complement is rotated
        let f = PolyMap::from_terms(
            1,
            2,
            [(MultiIndex(vec![1]), vec![RadScalar::one(), RadScalar::zero()])],
        )
        .unwrap();
        let h = RadScalar::ratio(3, 5);
        let k = RadScalar::ratio(4, 5);
        let g = PolyMap::from_terms(1, 2, [(MultiIndex(vec![1]), vec![h, k])]).unwrap();
        let sol = gram_unitary_solve(&f, &g).unwrap();
        assert!(sol.unitary.is_unitary());
        assert!(f.apply_matrix(&sol.unitary).unwrap().eq_value(&g));
    }

    #[test]
    fn float_backend_reports_residual() {
        let f = whitney::<RadScalar>().to_float();
        let u = Matrix::diagonal(&[FloatComplex::new(0.6, 0.8), FloatComplex::new(0.0, 1.0)]);
        let g = f.compose_unitary(&u).unwrap();
        let sol = gram_unitary_solve(&f, &g).unwrap();
        assert!(sol.residual < 1e-12);
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(degree_bound(&[1, 1], 3).unwrap(), 3);
        assert_eq!(degree_bound(&[1, 2], 3).unwrap(), 6);
        assert_eq!(degree_bound(&[2, 3, 6], 4).unwrap(), 12);
        assert_eq!(degree_bound(&[1, 0], 3).unwrap_err(), Error::NonPositiveEigenvalue);
    }
}
