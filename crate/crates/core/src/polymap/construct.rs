//! Standard constructions of proper maps.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::PolyMap;
use crate::error::{Error, Result};
use crate::poly::MultiIndex;
use crate::scalar::Scalar;

pub fn identity<S: Scalar>(n: usize) -> PolyMap<S> {
    let terms = (0..n).map(|j| {
        let mut c = vec![S::zero(); n];
        c[j] = S::one();
        (MultiIndex::unit(n, j), c)
    });
    PolyMap::from_terms(n, n, terms).expect("identity map is well formed")
}

/// `(z₁, z₁z₂, z₂²)`.
pub fn whitney<S: Scalar>() -> PolyMap<S> {
    let terms = [vec![1, 0], vec![1, 1], vec![0, 2]]
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            let mut c = vec![S::zero(); 3];
            c[i] = S::one();
            (MultiIndex(a), c)
        });
    PolyMap::from_terms(2, 3, terms).expect("Whitney map is well formed")
}

/// Symmetric tensor power `z ↦ z^{⊗m}`: components `√(m choose α)·z^α`
/// in graded-lex order of `α`.
pub fn tensor_power<S: Scalar>(n: usize, m: u32) -> Result<PolyMap<S>> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter("tensor power needs n ≥ 1 and m ≥ 1".into()));
    }
    let alphas = MultiIndex::of_degree(n, m);
    let target = alphas.len();
    let mut terms = Vec::with_capacity(target);
    for (i, a) in alphas.into_iter().enumerate() {
        let mult = BigRational::from_integer(a.multinomial().into());
        let mut c = vec![S::zero(); target];
        c[i] = S::sqrt_rational(&mult)?;
        terms.push((a, c));
    }
    PolyMap::from_terms(n, target, terms)
}

/// Replaces each component `g_i`, `i ∈ split`, in place by
/// `(g_i z₁, …, g_i z_n)`. Indices are zero-based.
pub fn partial_tensor<S: Scalar>(f: &PolyMap<S>, split: &[usize]) -> Result<PolyMap<S>> {
    if split.is_empty() {
        return Err(Error::EmptySplit);
    }
    if let Some(&bad) = split.iter().find(|&&i| i >= f.target_dim()) {
        return Err(Error::InvalidParameter(format!(
            "component {bad} out of range for target dimension {}",
            f.target_dim()
        )));
    }
    let n = f.source_dim();
    let comps = f.components();
    let mut out = Vec::new();
    for (i, g) in comps.iter().enumerate() {
        if split.contains(&i) {
            for j in 0..n {
                out.push(g.mul(&crate::poly::ScalarPoly::variable(n, j)));
            }
        } else {
            out.push(g.clone());
        }
    }
    PolyMap::from_components(n, &out)
}

/// `(√t·f) ⊕ (√(1−t)·g)`.
pub fn direct_sum<S: Scalar>(f: &PolyMap<S>, g: &PolyMap<S>, t: &BigRational) -> Result<PolyMap<S>> {
    if f.source_dim() != g.source_dim() {
        return Err(Error::DimensionMismatch(format!(
            "direct sum of maps from B^{} and B^{}",
            f.source_dim(),
            g.source_dim()
        )));
    }
    if *t < BigRational::zero() || *t > BigRational::one() {
        return Err(Error::InvalidParameter(format!("weight {t} outside [0, 1]")));
    }
    let sf = S::sqrt_rational(t)?;
    let sg = S::sqrt_rational(&(BigRational::one() - t))?;
    let nf = f.target_dim();
    let target = nf + g.target_dim();
    let mut out = PolyMap::zero(f.source_dim(), target);
    for (a, c) in f.terms() {
        let mut v = vec![S::zero(); target];
        for (i, x) in c.iter().enumerate() {
            v[i] = x.mul(&sf);
        }
        out.add_term(a.clone(), &v);
    }
    for (a, c) in g.terms() {
        let mut v = vec![S::zero(); target];
        for (i, x) in c.iter().enumerate() {
            v[nf + i] = x.mul(&sg);
        }
        out.add_term(a.clone(), &v);
    }
    Ok(out)
}

/// `0_k ⊕ f`.
pub fn pad<S: Scalar>(f: &PolyMap<S>, k: usize) -> Result<PolyMap<S>> {
    if k == 0 {
        return Err(Error::InvalidParameter("padding needs k ≥ 1".into()));
    }
    let target = f.target_dim() + k;
    let mut out = PolyMap::zero(f.source_dim(), target);
    for (a, c) in f.terms() {
        let mut v = vec![S::zero(); k];
        v.extend(c.iter().cloned());
        out.add_term(a.clone(), &v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, RadScalar};

    #[test]
    fn tensor_square_coefficients() {
        let t = tensor_power::<RadScalar>(2, 2).unwrap();
        assert_eq!(t.target_dim(), 3);
        let sqrt2 = RadScalar::sqrt_rational(&rational(2, 1)).unwrap();
        assert_eq!(t.coeff(&MultiIndex(vec![1, 1])), vec![RadScalar::zero(), sqrt2, RadScalar::zero()]);
        assert_eq!(tensor_power::<RadScalar>(3, 4).unwrap().target_dim(), 15);
        assert!(tensor_power::<RadScalar>(2, 1).unwrap().eq_value(&identity(2)));
    }

    #[test]
    fn partial_tensor_of_identity_is_whitney() {
        let w = partial_tensor(&identity::<RadScalar>(2), &[1]).unwrap();
        assert!(w.eq_value(&whitney()));
        let sq = partial_tensor(&identity::<RadScalar>(1), &[0]).unwrap();
        assert_eq!(sq.support(), vec![MultiIndex(vec![2])]);
        assert_eq!(partial_tensor(&identity::<RadScalar>(1), &[]).unwrap_err(), Error::EmptySplit);
    }

    #[test]
    fn direct_sum_weights() {
        let id = identity::<RadScalar>(1);
        let s = direct_sum(&id, &id, &rational(1, 2)).unwrap();
        let h = RadScalar::sqrt_rational(&rational(1, 2)).unwrap();
        assert_eq!(s.coeff(&MultiIndex(vec![1])), vec![h.clone(), h]);
        let one = direct_sum(&id, &id, &rational(1, 1)).unwrap();
        assert_eq!(one.coeff(&MultiIndex(vec![1])), vec![RadScalar::one(), RadScalar::zero()]);
        assert!(direct_sum(&id, &identity(2), &rational(1, 2)).is_err());
    }

    #[test]
    fn pad_prepends_zero_rows() {
        let p = pad(&identity::<RadScalar>(1), 1).unwrap();
        assert_eq!(p.coeff(&MultiIndex(vec![1])), vec![RadScalar::zero(), RadScalar::one()]);
    }
}
