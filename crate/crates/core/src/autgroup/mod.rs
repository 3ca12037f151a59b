//! Ball automorphisms and finite unitary groups.
//!
//! An automorphism of `Bⁿ` is stored as an `(n+1)×(n+1)` matrix
//! `M = [[A, b], [c, d]]` with `M*JM = λJ`, `J = diag(Iₙ, −1)`, acting by
//! `z ↦ (Az + b)/(c·z + d)`. Matrices are kept scaled so that `d = 1`.

mod group;
pub mod json;

use crate::error::{Error, Result};
use crate::linalg::{inner, Matrix};
use crate::scalar::{FloatComplex, Scalar};

pub use group::{
    classify_cyclic_kernel, group_closure, is_cyclic, is_fixed_point_free, FiniteUnitaryGroup,
    FpfReport, KernelClass, KernelTag, DEFAULT_CAP,
};

#[derive(Clone, Debug)]
pub struct BallAutomorphism<S> {
    n: usize,
    matrix: Matrix<S>,
    lambda: S,
}

fn j_form<S: Scalar>(n: usize) -> Matrix<S> {
    let mut j = Matrix::identity(n + 1);
    j.set(n, n, S::one().neg());
    j
}

fn is_positive_real<S: Scalar>(x: &S) -> bool {
    let c = x.to_complex();
    x.eq_value(&x.conj()) && !x.is_zero() && c.re > 0.0
}

impl<S: Scalar> BallAutomorphism<S> {
    /// Validates `M*JM = λJ` with `λ > 0` and normalises `d = 1`.
    pub fn new(matrix: Matrix<S>) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::DimensionMismatch("automorphism matrix must be square".into()));
        }
        let n = matrix.rows() - 1;
        let d = matrix.get(n, n).clone();
        if d.is_zero() {
            return Err(Error::NotAutomorphism);
        }
        let matrix = matrix.scale(&d.inv()?);
        let j = j_form::<S>(n);
        let form = matrix.adjoint().mul(&j)?.mul(&matrix)?;
        let lambda = form.get(n, n).neg();
        if !is_positive_real(&lambda) || !form.approx_eq(&j.scale(&lambda)) {
            return Err(Error::NotAutomorphism);
        }
        Ok(BallAutomorphism { n, matrix, lambda })
    }

    pub fn identity(n: usize) -> Self {
        BallAutomorphism {
            n,
            matrix: Matrix::identity(n + 1),
            lambda: S::one(),
        }
    }

    /// `z ↦ Uz`.
    pub fn from_unitary(u: &Matrix<S>) -> Result<Self> {
        if !u.is_unitary() {
            return Err(Error::NonUnitary);
        }
        let n = u.rows();
        let mut m = Matrix::identity(n + 1);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, u.get(i, j).clone());
            }
        }
        Ok(BallAutomorphism {
            n,
            matrix: m,
            lambda: S::one(),
        })
    }

    /// The involution `φ_a` exchanging `0` and `a`:
    /// `φ_a(z) = (a − P_a z − s·Q_a z)/(1 − ⟨z, a⟩)`, `s = √(1 − ‖a‖²)`.
    pub fn involution(a: &[S]) -> Result<Self> {
        let n = a.len();
        let norm = inner(a, a);
        let lambda = S::one().sub(&norm);
        if lambda.is_zero() || lambda.to_complex().re <= 0.0 {
            return Err(Error::PointOnBoundary);
        }
        if norm.is_zero() {
            let mut m = Matrix::identity(n + 1);
            for i in 0..n {
                m.set(i, i, S::one().neg());
            }
            return Ok(BallAutomorphism {
                n,
                matrix: m,
                lambda: S::one(),
            });
        }
        let s = lambda.sqrt_real()?;
        let inv_norm = norm.inv()?;
        let mut m = Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                let p = a[i].mul(&a[j].conj()).mul(&inv_norm);
                let q = if i == j { S::one().sub(&p) } else { p.neg() };
                m.set(i, j, p.add(&s.mul(&q)).neg());
            }
            m.set(i, n, a[i].clone());
            m.set(n, i, a[i].conj().neg());
        }
        m.set(n, n, S::one());
        Ok(BallAutomorphism {
            n,
            matrix: m,
            lambda,
        })
    }

    /// `U ∘ φ_a`; for `a = 0` this is `z ↦ Uz`.
    pub fn from_parts(u: &Matrix<S>, a: &[S]) -> Result<Self> {
        if u.rows() != a.len() {
            return Err(Error::DimensionMismatch("unitary vs point dimension".into()));
        }
        let base = Self::from_unitary(u)?;
        if a.iter().all(|x| x.is_zero()) {
            return Ok(base);
        }
        base.compose(&Self::involution(a)?)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn lambda(&self) -> &S {
        &self.lambda
    }

    pub fn a_block(&self) -> Matrix<S> {
        let mut a = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                a.set(i, j, self.matrix.get(i, j).clone());
            }
        }
        a
    }

    pub fn b_block(&self) -> Vec<S> {
        (0..self.n).map(|i| self.matrix.get(i, self.n).clone()).collect()
    }

    pub fn c_block(&self) -> Vec<S> {
        (0..self.n).map(|j| self.matrix.get(self.n, j).clone()).collect()
    }

    pub fn d_entry(&self) -> S {
        self.matrix.get(self.n, self.n).clone()
    }

    /// Fixes the origin, i.e. is a unitary map.
    pub fn is_unitary(&self) -> bool {
        self.b_block().iter().all(|x| x.is_zero()) && self.c_block().iter().all(|x| x.is_zero())
    }

    pub fn unitary_part(&self) -> Option<Matrix<S>> {
        self.is_unitary().then(|| self.a_block())
    }

    /// `(self ∘ other)(z) = self(other(z))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch("composition of automorphisms".into()));
        }
        Self::new(self.matrix.mul(&other.matrix)?)
    }

    /// `J M* J`, proportional to `M⁻¹`.
    pub fn inverse(&self) -> Self {
        let j = j_form::<S>(self.n);
        let m = j
            .mul(&self.matrix.adjoint())
            .and_then(|x| x.mul(&j))
            .expect("square blocks");
        Self::new(m).expect("inverse of an automorphism is an automorphism")
    }

    pub fn apply(&self, z: &[S]) -> Result<Vec<S>> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch("point dimension".into()));
        }
        let mut v = z.to_vec();
        v.push(S::one());
        let w = self.matrix.mul_vec(&v)?;
        let den = w[self.n].clone();
        if den.is_zero() {
            return Err(Error::DenominatorZero);
        }
        let inv = den.inv()?;
        Ok(w[..self.n].iter().map(|x| x.mul(&inv)).collect())
    }

    pub fn eq_value(&self, other: &Self) -> bool {
        self.n == other.n && self.matrix.approx_eq(&other.matrix)
    }

    pub fn map_entries<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BallAutomorphism<T> {
        BallAutomorphism {
            n: self.n,
            matrix: self.matrix.map(&f),
            lambda: f(&self.lambda),
        }
    }

    pub fn to_float(&self) -> BallAutomorphism<FloatComplex> {
        self.map_entries(|x| x.to_float())
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
    fn identity_from_parts() {
        let id = BallAutomorphism::from_parts(&Matrix::identity(2), &[r(0, 1), r(0, 1)]).unwrap();
        assert!(id.eq_value(&BallAutomorphism::identity(2)));
    }

    #[test]
    fn involution_three_fifths() {
        let phi = BallAutomorphism::involution(&[r(3, 5)]).unwrap();
        assert_eq!(phi.lambda(), &r(16, 25));
        assert!(phi.compose(&phi).unwrap().eq_value(&BallAutomorphism::identity(1)));
        assert_eq!(phi.apply(&[r(0, 1)]).unwrap(), vec![r(3, 5)]);
        assert_eq!(phi.apply(&[r(3, 5)]).unwrap(), vec![r(0, 1)]);
        // φ(z) = (3/5 − z)/(1 − 3z/5)
        for k in 1..5 {
            let z = r(k, 7);
            let expected = r(3, 5).sub(&z).mul(&RadScalar::one().sub(&r(3, 5).mul(&z)).inv().unwrap());
            assert_eq!(phi.apply(&[z]).unwrap(), vec![expected]);
        }
    }

    #[test]
    fn boundary_point_rejected() {
        let err = BallAutomorphism::involution(&[r(3, 5), r(4, 5)]).unwrap_err();
        assert_eq!(err, Error::PointOnBoundary);
    }

    #[test]
    fn two_dimensional_involution() {
        let a = [r(1, 3), r(2, 3)];
        // 1 − 5/9 = 4/9
        let phi = BallAutomorphism::involution(&a).unwrap();
        assert!(phi.compose(&phi).unwrap().eq_value(&BallAutomorphism::identity(2)));
        let inv = phi.inverse();
        assert!(phi.compose(&inv).unwrap().eq_value(&BallAutomorphism::identity(2)));
    }

    #[test]
    fn unitary_composition() {
        let i = RadScalar::root_of_unity(4, 1).unwrap();
        let u = Matrix::diagonal(&[i.clone(), RadScalar::one()]);
        let v = Matrix::from_rows(vec![
            vec![RadScalar::zero(), RadScalar::one()],
            vec![RadScalar::one(), RadScalar::zero()],
        ])
        .unwrap();
        let gu = BallAutomorphism::from_unitary(&u).unwrap();
        let gv = BallAutomorphism::from_unitary(&v).unwrap();
        let uv = BallAutomorphism::from_unitary(&u.mul(&v).unwrap()).unwrap();
        assert!(gu.compose(&gv).unwrap().eq_value(&uv));
        assert!(gu.is_unitary());
    }

    #[test]
    fn rejects_non_automorphism() {
        let m = Matrix::from_rows(vec![vec![r(2, 1), r(0, 1)], vec![r(0, 1), r(1, 1)]]).unwrap();
        assert_eq!(BallAutomorphism::new(m).unwrap_err(), Error::NotAutomorphism);
    }
}
