//! Integer lattices in `ℤⁿ`, Smith normal form, and the dual torus
//! subgroups `{θ ∈ (ℝ/ℤ)ⁿ : θ·v ∈ ℤ for all v ∈ Λ}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

type IMat = Vec<Vec<i128>>;

fn checked_axpy(dst: &mut [i128], src: &[i128], k: i128) -> Result<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = s
            .checked_mul(k)
            .and_then(|p| d.checked_add(p))
            .ok_or(Error::Overflow)?;
    }
    Ok(())
}

fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn matmul(a: &IMat, b: &IMat) -> Result<IMat> {
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i128; cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for (k, &x) in row.iter().enumerate() {
            if x == 0 {
                continue;
            }
            checked_axpy(&mut out[i], &b[k], x)?;
        }
    }
    Ok(out)
}

/// Determinant by fraction-free elimination.
fn determinant(a: &IMat) -> Result<i128> {
    let n = a.len();
    if n == 0 {
        return Ok(1);
    }
    let mut m = a.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|x| m[i][k].checked_mul(m[k][j]).and_then(|y| x.checked_sub(y)))
                    .ok_or(Error::Overflow)?;
                m[i][j] = v / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// Row-style Hermite reduction; returns a basis of the row lattice.
pub fn row_basis(rows: &[Vec<i64>], n: usize) -> Result<IMat> {
    let mut m: IMat = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut basis = Vec::new();
    let mut top = 0;
    for col in 0..n {
        loop {
            let nz: Vec<usize> = (top..m.len()).filter(|&i| m[i][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    m.swap(top, i);
                    if m[top][col] < 0 {
                        m[top].iter_mut().for_each(|x| *x = -*x);
                    }
                    top += 1;
                }
                break;
            }
            let p = *nz
                .iter()
                .min_by_key(|&&i| m[i][col].unsigned_abs())
                .expect("nonempty");
            m.swap(top, p);
            let pivot_row = m[top].clone();
            for i in top + 1..m.len() {
                let q = Integer::div_floor(&m[i][col], &pivot_row[col]);
                if q != 0 {
                    checked_axpy(&mut m[i], &pivot_row, -q)?;
                }
            }
        }
    }
    basis.extend(m.into_iter().take(top));
    Ok(basis)
}

/// `U·B·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IMat,
    pub v: IMat,
    pub diagonal: Vec<i128>,
}

pub fn smith_normal_form(b: &IMat, n: usize) -> Result<Smith> {
    let r = b.len();
    let mut d = b.clone();
    let mut u = identity(r);
    let mut v = identity(n);
    for t in 0..r.min(n) {
        // bring the smallest nonzero entry of the trailing block to (t, t)
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in d.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.unsigned_abs() < d[bi][bj].unsigned_abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(b, n, u, v, d);
            };
            d.swap(t, pi);
            u.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..r {
                let q = Integer::div_floor(&d[i][t], &p);
                if q != 0 {
                    let (rt, ut) = (d[t].clone(), u[t].clone());
                    checked_axpy(&mut d[i], &rt, -q)?;
                    checked_axpy(&mut u[i], &ut, -q)?;
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..n {
                let q = Integer::div_floor(&d[t][j], &p);
                if q != 0 {
                    for row in d.iter_mut() {
                        row[j] = row[t]
                            .checked_mul(-q)
                            .and_then(|x| row[j].checked_add(x))
                            .ok_or(Error::Overflow)?;
                    }
                    for row in v.iter_mut() {
                        row[j] = row[t]
                            .checked_mul(-q)
                            .and_then(|x| row[j].checked_add(x))
                            .ok_or(Error::Overflow)?;
                    }
                }
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let bad = (t + 1..r).find(|&i| (t + 1..n).any(|j| d[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let (ri, ui) = (d[i].clone(), u[i].clone());
                    checked_axpy(&mut d[t], &ri, 1)?;
                    checked_axpy(&mut u[t], &ui, 1)?;
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            d[t].iter_mut().for_each(|x| *x = -*x);
            u[t].iter_mut().for_each(|x| *x = -*x);
        }
    }
    finish(b, n, u, v, d)
}

fn finish(b: &IMat, n: usize, u: IMat, v: IMat, d: IMat) -> Result<Smith> {
    let k = b.len().min(n);
    let diagonal: Vec<i128> = (0..k).map(|i| d[i][i]).take_while(|&x| x != 0).collect();
    let s = Smith { u, v, diagonal };
    if !s.verify(b, n)? {
        return Err(Error::InvalidParameter("Smith normal form failed verification".into()));
    }
    Ok(s)
}

impl Smith {
    /// Re-multiplies `U·B·V` and checks unimodularity.
    pub fn verify(&self, b: &IMat, n: usize) -> Result<bool> {
        let ubv = if b.is_empty() {
            Vec::new()
        } else {
            matmul(&matmul(&self.u, b)?, &self.v)?
        };
        let diag_ok = ubv.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &x)| {
                if i != j {
                    x == 0
                } else {
                    x == self.diagonal.get(i).copied().unwrap_or(0)
                }
            })
        });
        let divides = self.diagonal.windows(2).all(|w| w[1] % w[0] == 0);
        let unimodular =
            determinant(&self.u)?.abs() == 1 && determinant(&self.v)?.abs() == 1 && self.v.len() == n;
        Ok(diag_ok && divides && unimodular)
    }
}

/// `Λ ⊂ ℤⁿ` with a reduced basis and its Smith form.
#[derive(Clone, Debug)]
pub struct ExponentLattice {
    pub n: usize,
    /// Spanning vectors as supplied.
    pub generators: Vec<Vec<i64>>,
    pub basis: IMat,
    pub smith: Smith,
}

impl ExponentLattice {
    pub fn new(n: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if generators.iter().any(|g| g.len() != n) {
            return Err(Error::DimensionMismatch("lattice vector length".into()));
        }
        let basis = row_basis(&generators, n)?;
        let smith = smith_normal_form(&basis, n)?;
        Ok(ExponentLattice {
            n,
            generators,
            basis,
            smith,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn invariant_factors(&self) -> &[i128] {
        &self.smith.diagonal
    }

    /// The dual torus subgroup.
    pub fn dual(&self) -> TorusSubgroup {
        let r = self.rank();
        let v = &self.smith.v;
        let column = |j: usize| -> Vec<i128> { (0..self.n).map(|i| v[i][j]).collect() };
        let continuous_basis = (r..self.n)
            .map(|j| column(j).into_iter().map(|x| BigRational::from_integer(x.into())).collect())
            .collect();
        let finite = self
            .smith
            .diagonal
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 1)
            .map(|(i, &d)| FiniteGenerator::canonical(&column(i), d as u64))
            .collect();
        TorusSubgroup {
            n: self.n,
            lattice: self.basis.clone(),
            continuous_basis,
            finite,
        }
    }
}

/// Element of order `order` given as fractions of a full turn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGenerator {
    pub turns: Vec<BigRational>,
    pub order: u64,
}

fn frac_part(q: &BigRational) -> BigRational {
    q - q.floor()
}

impl FiniteGenerator {
    /// `w/d mod 1`, replaced by the lexicographically least generator of
    /// the same cyclic subgroup.
    fn canonical(w: &[i128], d: u64) -> Self {
        let turns_for = |u: u64| -> Vec<BigRational> {
            w.iter()
                .map(|&x| {
                    frac_part(&BigRational::new(
                        BigInt::from(x) * BigInt::from(u),
                        BigInt::from(d),
                    ))
                })
                .collect()
        };
        let turns = (1..d)
            .filter(|u| u.gcd(&d) == 1)
            .map(turns_for)
            .min()
            .unwrap_or_else(|| turns_for(1));
        FiniteGenerator { turns, order: d }
    }
}

/// `{θ : θ·v ∈ ℤ, v ∈ Λ}`: a continuous part spanned by integer directions
/// plus finite generators.
#[derive(Clone, Debug)]
pub struct TorusSubgroup {
    pub n: usize,
    lattice: IMat,
    pub continuous_basis: Vec<Vec<BigRational>>,
    pub finite: Vec<FiniteGenerator>,
}

impl TorusSubgroup {
    pub fn continuous_dim(&self) -> usize {
        self.continuous_basis.len()
    }

    /// Order of the component group.
    pub fn finite_order(&self) -> u64 {
        self.finite.iter().map(|g| g.order).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.continuous_basis.is_empty() && self.finite.is_empty()
    }

    pub fn lattice_basis(&self) -> &IMat {
        &self.lattice
    }

    /// `θ` (in turns) lies in the subgroup.
    pub fn contains(&self, theta: &[BigRational]) -> bool {
        theta.len() == self.n
            && self.lattice.iter().all(|row| {
                let s: BigRational = row
                    .iter()
                    .zip(theta)
                    .map(|(&v, t)| t * BigRational::from_integer(v.into()))
                    .fold(BigRational::zero(), |a, b| a + b);
                s.is_integer()
            })
    }

    /// Every continuous direction annihilates `v`.
    pub fn annihilates(&self, v: &[i64]) -> bool {
        self.continuous_basis.iter().all(|b| {
            b.iter()
                .zip(v)
                .map(|(x, &y)| x * BigRational::from_integer(y.into()))
                .fold(BigRational::zero(), |a, c| a + c)
                .is_zero()
        })
    }

    /// Each finite generator has its stated order and lies in the group.
    pub fn generator_order_check(&self) -> bool {
        self.finite.iter().all(|g| {
            let scaled: Vec<BigRational> = g
                .turns
                .iter()
                .map(|t| t * BigRational::from_integer(g.order.into()))
                .collect();
            scaled.iter().all(|x| x.is_integer()) && self.contains(&g.turns)
        })
    }
}
