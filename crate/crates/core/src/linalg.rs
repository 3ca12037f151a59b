//! Dense matrices over a [`Scalar`].

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(cols: &[Vec<S>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector product".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(S::zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(&v[j]))
                    }
                })
            })
            .collect())
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_same(|x| x.mul(s))
    }

    fn map_same(&self, f: impl Fn(&S) -> S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.eq_value(b))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.approx_eq(&Self::identity(self.rows))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// `U*U = I`.
    pub fn is_unitary(&self) -> bool {
        self.is_square()
            && self
                .adjoint()
                .mul(self)
                .map(|p| p.is_identity())
                .unwrap_or(false)
    }

    /// Largest absolute entry-wise deviation from `other`.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.to_complex() - b.to_complex()).norm())
            .fold(0.0, f64::max)
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Result<Vec<usize>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let best = (r..self.rows)
                .map(|i| (i, self.get(i, c).pivot_weight()))
                .filter(|(_, w)| *w > 0.0)
                .fold(None::<(usize, f64)>, |acc, (i, w)| match acc {
                    Some((_, bw)) if bw >= w => acc,
                    _ => Some((i, w)),
                });
            let Some((p, _)) = best else {
                for i in r..self.rows {
                    self.set(i, c, S::zero());
                }
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv()?;
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            self.set(r, c, S::one());
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    self.set(i, c, S::zero());
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(i, j).sub(&f.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
                self.set(i, c, S::zero());
            }
            pivots.push(c);
            r += 1;
        }
        Ok(pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.clone().rref()?.len())
    }

    /// Columns forming a maximal independent set, earliest first.
    pub fn pivot_columns(&self) -> Result<Vec<usize>> {
        self.clone().rref()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, S::one());
        }
        let pivots = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Basis of the null space `{x : Ax = 0}`.
    pub fn kernel(&self) -> Result<Vec<Vec<S>>> {
        let mut m = self.clone();
        let pivots = m.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&fcol| {
                let mut v = vec![S::zero(); self.cols];
                v[fcol] = S::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = m.get(row, fcol).neg();
                }
                v
            })
            .collect())
    }

    pub fn convert<T: Scalar>(&self) -> Matrix<T>
    where
        S: Into<T>,
    {
        self.map(|x| x.clone().into())
    }
}

pub fn inner<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc.add(&x.mul(&y.conj())))
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FloatComplex, RadScalar};

    fn r(p: i64) -> RadScalar {
        RadScalar::from_int(p)
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_rows(vec![
            vec![r(1), r(2), r(3)],
            vec![r(2), r(4), r(6)],
            vec![r(1), r(0), r(1)],
        ])
        .unwrap();
        assert_eq!(m.rank().unwrap(), 2);
        let k = m.kernel().unwrap();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_round_trip() {
        let i = RadScalar::root_of_unity(4, 1).unwrap();
        let m = Matrix::from_rows(vec![vec![r(2), i.clone()], vec![i.neg(), r(3)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let singular = Matrix::from_rows(vec![vec![r(1), r(2)], vec![r(2), r(4)]]).unwrap();
        assert_eq!(singular.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn float_rank_tolerates_noise() {
        let m = Matrix::from_rows(vec![
            vec![FloatComplex::new(1.0, 0.0), FloatComplex::new(2.0, 0.0)],
            vec![FloatComplex::new(2.0, 0.0), FloatComplex::new(4.0 + 1e-12, 0.0)],
        ])
        .unwrap();
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn unitary_check() {
        let h = RadScalar::ratio(1, 2);
        let i = RadScalar::root_of_unity(4, 1).unwrap();
        // [[(1+i)/2, (1-i)/2], [(1-i)/2, (1+i)/2]]
        let a = h.add(&h.mul(&i));
        let b = h.sub(&h.mul(&i));
        let u = Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![b, a]]).unwrap();
        assert!(u.is_unitary());
        assert!(!Matrix::from_rows(vec![vec![r(2)]]).unwrap().is_unitary());
    }
}
