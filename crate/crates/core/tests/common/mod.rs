#![allow(dead_code)]

use std::collections::BTreeSet;

use ballmap::autgroup::BallAutomorphism;
use ballmap::invariance::{torus_invariance_group, TorusSubgroup};
use ballmap::linalg::Matrix;
use ballmap::poly::MultiIndex;
use ballmap::polymap::PolyMap;
use ballmap::scalar::{rational, FloatComplex, RadScalar};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn zeta(m: u32, k: i64) -> RadScalar {
    RadScalar::root_of_unity(m, k).unwrap()
}

pub fn q(p: i64, d: i64) -> RadScalar {
    RadScalar::ratio(p, d)
}

pub fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex(v.to_vec())
}

/// Gaussian rational `(p + iq)/d`.
pub fn gaussian(p: i64, q_: i64, d: i64) -> RadScalar {
    q(p, d).add(&q(q_, d).mul(&zeta(4, 1)))
}

/// Interior point with Gaussian-rational entries, `‖a‖² ≤ 2·(3/8)² < 1`.
pub fn interior_point(r: &mut ChaCha8Rng, n: usize) -> Vec<RadScalar> {
    (0..n)
        .map(|_| gaussian(r.gen_range(-3..=3), r.gen_range(-3..=3), 8 * n as i64))
        .collect()
}

/// `D·P∘φ_a` with `D` diagonal of fourth roots of unity.
pub fn gaussian_automorphism(r: &mut ChaCha8Rng, n: usize) -> BallAutomorphism<RadScalar> {
    let d = random_diag(r, n, &[4]);
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(r);
    let a = interior_point(r, n);
    BallAutomorphism::from_parts(&d.mul(&permutation(&p)).unwrap(), &a).unwrap()
}

/// `U∘φ_a` for a random exact unitary `U`.
pub fn random_automorphism(r: &mut ChaCha8Rng, n: usize) -> BallAutomorphism<RadScalar> {
    let u = random_unitary(r, n);
    let a = interior_point(r, n);
    BallAutomorphism::from_parts(&u, &a).unwrap()
}

pub fn random_root(r: &mut ChaCha8Rng, orders: &[u32]) -> RadScalar {
    let m = *orders.choose(r).unwrap();
    zeta(m, r.gen_range(0..m as i64))
}

pub fn random_diag(r: &mut ChaCha8Rng, n: usize, orders: &[u32]) -> Matrix<RadScalar> {
    let d: Vec<RadScalar> = (0..n).map(|_| random_root(r, orders)).collect();
    Matrix::diagonal(&d)
}

pub fn permutation(p: &[usize]) -> Matrix<RadScalar> {
    let n = p.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &j) in p.iter().enumerate() {
        m.set(j, i, RadScalar::one());
    }
    m
}

/// A 2×2 exact unitary block placed at rows/columns `(i, i+1)`.
pub fn block(n: usize, i: usize, b: [[RadScalar; 2]; 2]) -> Matrix<RadScalar> {
    let mut m = Matrix::identity(n);
    for r in 0..2 {
        for c in 0..2 {
            m.set(i + r, i + c, b[r][c].clone());
        }
    }
    m
}

pub fn pythagorean_rotation() -> [[RadScalar; 2]; 2] {
    [[q(3, 5), q(-4, 5)], [q(4, 5), q(3, 5)]]
}

pub fn hadamard() -> [[RadScalar; 2]; 2] {
    let s = RadScalar::sqrt_rational(&rational(1, 2)).unwrap();
    [[s.clone(), s.clone()], [s.clone(), s.neg()]]
}

/// Product of a random diagonal, a random permutation and, for `n ≥ 2`,
/// a random rotation or Hadamard block.
pub fn random_unitary(r: &mut ChaCha8Rng, n: usize) -> Matrix<RadScalar> {
    let d = random_diag(r, n, &[1, 2, 3, 4, 6, 8]);
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(r);
    let mut u = d.mul(&permutation(&p)).unwrap();
    if n >= 2 {
        let b = if r.gen_bool(0.5) { pythagorean_rotation() } else { hadamard() };
        let i = r.gen_range(0..n - 1);
        u = u.mul(&block(n, i, b)).unwrap();
    }
    assert!(u.is_unitary());
    u
}

pub fn random_exponent(r: &mut ChaCha8Rng, n: usize, max_degree: u32) -> MultiIndex {
    let d = r.gen_range(1..=max_degree);
    let mut a = vec![0u32; n];
    for _ in 0..d {
        a[r.gen_range(0..n)] += 1;
    }
    MultiIndex(a)
}

pub fn distinct_exponents(r: &mut ChaCha8Rng, n: usize, count: usize, max_degree: u32) -> Vec<MultiIndex> {
    assert!(count < MultiIndex::up_to_degree(n, max_degree).len(), "not enough exponents");
    let mut out: Vec<MultiIndex> = Vec::new();
    while out.len() < count {
        let a = random_exponent(r, n, max_degree);
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out.sort();
    out
}

/// Monomial map: one component per exponent, with rational coefficient.
pub fn random_monomial_map(r: &mut ChaCha8Rng, n: usize, count: usize, max_degree: u32) -> PolyMap<RadScalar> {
    let exps = distinct_exponents(r, n, count, max_degree);
    let terms = exps.iter().enumerate().map(|(i, a)| {
        let mut c = vec![RadScalar::zero(); count];
        c[i] = q(r.gen_range(1..=4), r.gen_range(1..=3));
        (a.clone(), c)
    });
    PolyMap::from_terms(n, count, terms).unwrap()
}

/// `terms` distinct exponents with small integer coefficient vectors in
/// `ℂ^target`, so that coefficient vectors are often non-orthogonal.
pub fn random_map(r: &mut ChaCha8Rng, n: usize, target: usize, terms: usize, max_degree: u32) -> PolyMap<RadScalar> {
    let exps = distinct_exponents(r, n, terms, max_degree);
    let t = exps.into_iter().map(|a| {
        let c: Vec<RadScalar> = (0..target)
            .map(|_| {
                let k = r.gen_range(-1..=2i64);
                if r.gen_bool(0.3) {
                    RadScalar::from_int(k).mul(&zeta(4, 1))
                } else {
                    RadScalar::from_int(k)
                }
            })
            .collect();
        (a, c)
    });
    PolyMap::from_terms(n, target, t).unwrap()
}

pub fn random_ball_point(r: &mut ChaCha8Rng, n: usize) -> Vec<FloatComplex> {
    let v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let scale = r.gen_range(0.0..0.95) / norm.max(1e-12);
    v.iter().map(|z| FloatComplex::from_complex(z * scale)).collect()
}

pub fn random_sphere_point(r: &mut ChaCha8Rng, n: usize) -> Vec<FloatComplex> {
    let v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter().map(|z| FloatComplex::from_complex(z / norm)).collect()
}

pub fn norm_sqr(v: &[FloatComplex]) -> f64 {
    v.iter().map(|z| z.complex().norm_sqr()).sum()
}

pub fn max_diff(a: &[FloatComplex], b: &[FloatComplex]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.complex() - y.complex()).norm())
        .fold(0.0, f64::max)
}

pub fn matrix_max_diff(a: &Matrix<FloatComplex>, b: &Matrix<FloatComplex>) -> f64 {
    let mut m = 0.0f64;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m = m.max((a.get(i, j).complex() - b.get(i, j).complex()).norm());
        }
    }
    m
}

pub fn farey(max_den: i64) -> Vec<BigRational> {
    let set: BTreeSet<BigRational> = (1..=max_den).flat_map(|d| (0..d).map(move |p| rational(p, d))).collect();
    set.into_iter().collect()
}

/// Pairs `(α − β, ⟨c_α, c_β⟩)` with a nonzero float Gram entry.
pub fn float_couplings(f: &PolyMap<RadScalar>) -> Vec<(Vec<i64>, Complex64)> {
    let terms: Vec<(&MultiIndex, Vec<Complex64>)> = f
        .terms()
        .iter()
        .map(|(a, c)| (a, c.iter().map(|x| x.to_complex()).collect()))
        .collect();
    let mut out = Vec::new();
    for (a, ca) in &terms {
        for (b, cb) in &terms {
            if a == b {
                continue;
            }
            let g: Complex64 = ca.iter().zip(cb).map(|(x, y)| x * y.conj()).sum();
            if g.norm() > 1e-9 {
                out.push((a.diff(b), g));
            }
        }
    }
    out
}

/// `‖f∘diag(e^{2πiθ})‖² = ‖f‖²`, from the float Gram table.
pub fn grid_oracle(couplings: &[(Vec<i64>, Complex64)], theta: &[BigRational]) -> bool {
    let th: Vec<f64> = theta.iter().map(|t| t.to_f64().unwrap()).collect();
    couplings.iter().all(|(d, g)| {
        let phase: f64 = d.iter().zip(&th).map(|(&x, t)| x as f64 * t).sum();
        let rot = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
        (g * (rot - 1.0)).norm() < 1e-9
    })
}

/// The finite subgroup generated by `t.finite`, reduced mod 1.
pub fn finite_elements(t: &TorusSubgroup) -> BTreeSet<Vec<BigRational>> {
    let mut out: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    out.insert(vec![BigRational::zero(); t.n]);
    for g in &t.finite {
        let current: Vec<Vec<BigRational>> = out.iter().cloned().collect();
        for e in current {
            for k in 1..g.order {
                let v: Vec<BigRational> = e
                    .iter()
                    .zip(&g.turns)
                    .map(|(x, y)| {
                        let s = x + y * BigRational::from_integer(k.into());
                        &s - s.floor()
                    })
                    .collect();
                out.insert(v);
            }
        }
    }
    out
}

pub fn check_torus_against_grid(f: &PolyMap<RadScalar>) -> Result<(), String> {
    let t = torus_invariance_group(f).map_err(|e| e.to_string())?;
    let couplings = float_couplings(f);
    let grid = farey(12);
    let mut oracle: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    for a in &grid {
        for b in &grid {
            let theta = vec![a.clone(), b.clone()];
            let expect = grid_oracle(&couplings, &theta);
            if expect != t.contains(&theta) {
                return Err(format!("θ = {theta:?}: oracle {expect}"));
            }
            if expect {
                oracle.insert(theta);
            }
        }
    }
    for (d, _) in &couplings {
        if !t.annihilates(d) {
            return Err(format!("continuous part does not annihilate {d:?}"));
        }
    }
    if !t.generator_order_check() {
        return Err("finite generator order".into());
    }
    for g in &t.finite {
        if !grid_oracle(&couplings, &g.turns) {
            return Err(format!("generator {:?} fails the oracle", g.turns));
        }
    }
    if t.continuous_dim() == 0 {
        let elems = finite_elements(&t);
        if elems.len() as u64 != t.finite_order() {
            return Err("finite order".into());
        }
        let on_grid: BTreeSet<Vec<BigRational>> = elems
            .into_iter()
            .filter(|v| v.iter().all(|x| x.denom() <= &12.into()))
            .collect();
        if on_grid != oracle {
            return Err("finite part differs from grid search".into());
        }
    }
    Ok(())
}
