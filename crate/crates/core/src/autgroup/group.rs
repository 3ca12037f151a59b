//! Finite unitary groups: closure, fixed points, cyclicity, kernel types.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub const DEFAULT_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct FiniteUnitaryGroup<S> {
    dim: usize,
    generators: Vec<Matrix<S>>,
    elements: Vec<Matrix<S>>,
}

/// Approximate fingerprint used to bucket candidate elements before an
/// exact comparison.
fn fingerprint<S: Scalar>(m: &Matrix<S>) -> Vec<i64> {
    let mut out = Vec::with_capacity(2 * m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let c = m.get(i, j).to_complex();
            out.push((c.re * 1e3).round() as i64);
            out.push((c.im * 1e3).round() as i64);
        }
    }
    out
}

struct ElementIndex<S> {
    buckets: HashMap<Vec<i64>, Vec<usize>>,
    _marker: std::marker::PhantomData<S>,
}

impl<S: Scalar> ElementIndex<S> {
    fn new() -> Self {
        ElementIndex {
            buckets: HashMap::new(),
            _marker: std::marker::PhantomData,
        }
    }

    fn find(&self, elements: &[Matrix<S>], m: &Matrix<S>) -> Option<usize> {
        self.buckets
            .get(&fingerprint(m))?
            .iter()
            .copied()
            .find(|&i| elements[i].approx_eq(m))
    }

    fn insert(&mut self, m: &Matrix<S>, idx: usize) {
        self.buckets.entry(fingerprint(m)).or_default().push(idx);
    }
}

/// Generates the group by breadth-first multiplication, failing with
/// `CapExceeded` once more than `cap` elements appear.
pub fn group_closure<S: Scalar>(generators: &[Matrix<S>], cap: usize) -> Result<FiniteUnitaryGroup<S>> {
    if cap == 0 {
        return Err(Error::InvalidParameter("closure cap must be at least 1".into()));
    }
    let dim = match generators.first() {
        Some(g) => g.rows(),
        None => return Err(Error::InvalidParameter("at least one generator is required".into())),
    };
    for g in generators {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::DimensionMismatch("generators of different sizes".into()));
        }
        if !g.is_unitary() {
            return Err(Error::NonUnitary);
        }
    }
    let mut elements = vec![Matrix::identity(dim)];
    let mut index = ElementIndex::new();
    index.insert(&elements[0], 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let p = elements[i].mul(g)?;
            if index.find(&elements, &p).is_none() {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                index.insert(&p, elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    Ok(FiniteUnitaryGroup {
        dim,
        generators: generators.to_vec(),
        elements,
    })
}

impl<S: Scalar> FiniteUnitaryGroup<S> {
    pub fn trivial(dim: usize) -> Self {
        FiniteUnitaryGroup {
            dim,
            generators: vec![Matrix::identity(dim)],
            elements: vec![Matrix::identity(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix<S>] {
        &self.elements
    }

    pub fn generators(&self) -> &[Matrix<S>] {
        &self.generators
    }

    pub fn contains(&self, m: &Matrix<S>) -> bool {
        self.elements.iter().any(|e| e.approx_eq(m))
    }

    /// Closed under products and inverses (checked exhaustively).
    pub fn is_closed(&self) -> bool {
        let mut index = ElementIndex::new();
        for (i, e) in self.elements.iter().enumerate() {
            index.insert(e, i);
        }
        self.elements.iter().all(|a| {
            index.find(&self.elements, &a.adjoint()).is_some()
                && self.elements.iter().all(|b| {
                    a.mul(b)
                        .map(|p| index.find(&self.elements, &p).is_some())
                        .unwrap_or(false)
                })
        })
    }

    /// Subgroup consisting of the listed elements, which must be closed.
    pub fn subgroup(&self, members: Vec<Matrix<S>>) -> Result<Self> {
        let generators = if members.len() > 1 {
            members[1..].to_vec()
        } else {
            vec![Matrix::identity(self.dim)]
        };
        let g = FiniteUnitaryGroup {
            dim: self.dim,
            generators,
            elements: members,
        };
        if g.elements.is_empty() || !g.is_closed() {
            return Err(Error::InvalidParameter("subset is not a subgroup".into()));
        }
        Ok(g)
    }

    pub fn element_order(&self, g: &Matrix<S>) -> usize {
        let mut p = g.clone();
        let mut k = 1;
        while !p.is_identity() && k <= self.order() {
            p = p.mul(g).expect("square");
            k += 1;
        }
        k
    }

    pub fn to_float(&self) -> FiniteUnitaryGroup<crate::scalar::FloatComplex> {
        FiniteUnitaryGroup {
            dim: self.dim,
            generators: self.generators.iter().map(|g| g.map(|x| x.to_float())).collect(),
            elements: self.elements.iter().map(|g| g.map(|x| x.to_float())).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FpfReport<S> {
    pub fixed_point_free: bool,
    /// Non-identity element with eigenvalue 1, when one exists.
    pub witness: Option<Matrix<S>>,
}

pub fn is_fixed_point_free<S: Scalar>(g: &FiniteUnitaryGroup<S>) -> Result<FpfReport<S>> {
    let id = Matrix::identity(g.dim);
    for e in &g.elements {
        if e.is_identity() {
            continue;
        }
        if e.sub(&id)?.rank()? < g.dim {
            return Ok(FpfReport {
                fixed_point_free: false,
                witness: Some(e.clone()),
            });
        }
    }
    Ok(FpfReport {
        fixed_point_free: true,
        witness: None,
    })
}

/// An element whose powers exhaust the group.
pub fn is_cyclic<S: Scalar>(g: &FiniteUnitaryGroup<S>) -> Result<Matrix<S>> {
    let n = g.order();
    g.elements
        .iter()
        .find(|e| g.element_order(e) == n)
        .cloned()
        .ok_or(Error::NotCyclic)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelTag {
    TypeI { m: u64 },
    TypeII { m: u64, j: usize, k: usize },
    TypeIII { j: usize, k: usize, l: usize },
    NotInList,
}

impl KernelTag {
    pub fn name(&self) -> &'static str {
        match self {
            KernelTag::TypeI { .. } => "TypeI",
            KernelTag::TypeII { .. } => "TypeII",
            KernelTag::TypeIII { .. } => "TypeIII",
            KernelTag::NotInList => "NotInList",
        }
    }
}

#[derive(Clone, Debug)]
pub struct KernelClass<S> {
    pub tag: KernelTag,
    pub order: u64,
    pub generator: Matrix<S>,
    /// Eigenvalues of the generator as exponents `k` of `e^{2πik/m}`.
    pub exponents: Vec<u64>,
    /// `t` with `generatorᵗ` in template form.
    pub power: Option<u64>,
    /// Coordinate order bringing a diagonal `generatorᵗ` into block form.
    pub permutation: Option<Vec<usize>>,
}

/// Eigenvalue exponents of `g` (of order `m`), with multiplicity, from
/// `dim ker(g − ζ_m^k I)`.
fn eigen_exponents<S: Scalar>(g: &Matrix<S>, m: u64) -> Result<Vec<u64>> {
    let n = g.rows();
    let mut out = Vec::with_capacity(n);
    for k in 0..m {
        let z = S::root_of_unity(m as u32, k as i64)?;
        let mult = n - g.sub(&Matrix::identity(n).scale(&z))?.rank()?;
        out.extend(std::iter::repeat(k).take(mult));
        if out.len() == n {
            break;
        }
    }
    if out.len() != n {
        return Err(Error::InvalidParameter("generator is not diagonalizable".into()));
    }
    Ok(out)
}

fn block_counts(exps: &[u64], t: u64, m: u64, blocks: &[u64]) -> Option<Vec<usize>> {
    let mut counts = vec![0usize; blocks.len()];
    for &e in exps {
        let v = e * t % m;
        let pos = blocks.iter().position(|&b| b % m == v)?;
        counts[pos] += 1;
    }
    counts.iter().all(|&c| c > 0).then_some(counts)
}

/// Best template match over units `t`: the lexicographically largest
/// block sizes, first `t` among ties.
fn match_blocks(exps: &[u64], m: u64, blocks: &[u64]) -> Option<(u64, Vec<usize>)> {
    let mut best: Option<(u64, Vec<usize>)> = None;
    for t in (1..=m.max(1)).filter(|t| t.gcd(&m) == 1) {
        if let Some(c) = block_counts(exps, t, m, blocks) {
            if best.as_ref().is_none_or(|(_, bc)| c > *bc) {
                best = Some((t, c));
            }
        }
    }
    best
}

/// Matches a cyclic group against `⟨ηIₙ⟩`, `⟨ηI_j ⊕ η²I_k⟩` (odd order)
/// and `⟨ηI_j ⊕ η²I_k ⊕ η⁴I_l⟩` (order 7).
pub fn classify_cyclic_kernel<S: Scalar>(g: &FiniteUnitaryGroup<S>) -> Result<KernelClass<S>> {
    let generator = is_cyclic(g)?;
    let m = g.order() as u64;
    let exponents = eigen_exponents(&generator, m)?;
    let (tag, power, blocks): (KernelTag, Option<u64>, Vec<u64>) =
        if let Some((t, _)) = match_blocks(&exponents, m, &[1]) {
            (KernelTag::TypeI { m }, Some(t), vec![1])
        } else if let Some((t, c)) = (m % 2 == 1)
            .then(|| match_blocks(&exponents, m, &[1, 2]))
            .flatten()
        {
            (KernelTag::TypeII { m, j: c[0], k: c[1] }, Some(t), vec![1, 2])
        } else if let Some((t, c)) = (m == 7)
            .then(|| match_blocks(&exponents, m, &[1, 2, 4]))
            .flatten()
        {
            (KernelTag::TypeIII { j: c[0], k: c[1], l: c[2] }, Some(t), vec![1, 2, 4])
        } else {
            (KernelTag::NotInList, None, vec![])
        };
    let permutation = match power {
        Some(t) if generator.is_diagonal() => {
            let gt = (0..g.dim)
                .map(|i| {
                    let d = Matrix::diagonal(&[generator.get(i, i).clone()]);
                    eigen_exponents(&d, m).map(|e| e[0] * t % m)
                })
                .collect::<Result<Vec<u64>>>()?;
            let mut perm: Vec<usize> = (0..g.dim).collect();
            perm.sort_by_key(|&i| blocks.iter().position(|&b| b % m == gt[i]));
            Some(perm)
        }
        _ => None,
    };
    Ok(KernelClass {
        tag,
        order: m,
        generator,
        exponents,
        power,
        permutation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RadScalar;

    fn zeta(m: u32, k: i64) -> RadScalar {
        RadScalar::root_of_unity(m, k).unwrap()
    }

    fn diag(entries: &[RadScalar]) -> Matrix<RadScalar> {
        Matrix::diagonal(entries)
    }

    #[test]
    fn closure_orders() {
        let z5 = group_closure(&[diag(&[zeta(5, 1), zeta(5, 1), zeta(5, 1)])], DEFAULT_CAP).unwrap();
        assert_eq!(z5.order(), 5);
        let z7 = group_closure(&[diag(&[zeta(7, 1), zeta(7, 2), zeta(7, 4)])], DEFAULT_CAP).unwrap();
        assert_eq!(z7.order(), 7);
        let h = RadScalar::sqrt_rational(&crate::scalar::rational(1, 2)).unwrap();
        let z8 = h.add(&h.mul(&zeta(4, 1)));
        assert_eq!(z8, zeta(8, 1));
        assert_eq!(group_closure(&[diag(&[z8])], DEFAULT_CAP).unwrap().order(), 8);
        assert!(z7.is_closed());
    }

    #[test]
    fn cap_exceeded() {
        assert_eq!(
            group_closure(&[diag(&[zeta(12, 1)])], 5).unwrap_err(),
            Error::CapExceeded(5)
        );
    }

    #[test]
    fn fixed_point_free_examples() {
        let minus = group_closure(&[diag(&[RadScalar::from_int(-1), RadScalar::from_int(-1)])], 10).unwrap();
        assert!(is_fixed_point_free(&minus).unwrap().fixed_point_free);
        let refl = diag(&[RadScalar::from_int(-1), RadScalar::one()]);
        let g = group_closure(&[refl.clone()], 10).unwrap();
        let rep = is_fixed_point_free(&g).unwrap();
        assert!(!rep.fixed_point_free);
        assert!(rep.witness.unwrap().approx_eq(&refl));
        let g5 = group_closure(&[diag(&[zeta(5, 1), zeta(5, 2)])], 10).unwrap();
        assert!(is_fixed_point_free(&g5).unwrap().fixed_point_free);
    }

    #[test]
    fn cyclicity() {
        let klein = group_closure(
            &[
                diag(&[RadScalar::from_int(-1), RadScalar::one()]),
                diag(&[RadScalar::one(), RadScalar::from_int(-1)]),
            ],
            10,
        )
        .unwrap();
        assert_eq!(klein.order(), 4);
        assert_eq!(is_cyclic(&klein).unwrap_err(), Error::NotCyclic);
        let trivial = FiniteUnitaryGroup::<RadScalar>::trivial(2);
        assert!(is_cyclic(&trivial).unwrap().is_identity());
    }

    #[test]
    fn classification_templates() {
        let c = |gens: Vec<RadScalar>| {
            classify_cyclic_kernel(&group_closure(&[diag(&gens)], DEFAULT_CAP).unwrap()).unwrap()
        };
        assert_eq!(c(vec![zeta(5, 1); 3]).tag, KernelTag::TypeI { m: 5 });
        assert_eq!(
            c(vec![zeta(5, 1), zeta(5, 1), zeta(5, 2)]).tag,
            KernelTag::TypeII { m: 5, j: 2, k: 1 }
        );
        assert_eq!(
            c(vec![zeta(7, 1), zeta(7, 2), zeta(7, 4)]).tag,
            KernelTag::TypeIII { j: 1, k: 1, l: 1 }
        );
        assert_eq!(c(vec![RadScalar::one(), RadScalar::from_int(-1)]).tag, KernelTag::NotInList);
        // generator replacement and permutation
        assert_eq!(
            c(vec![zeta(5, 4), zeta(5, 2), zeta(5, 2)]).tag,
            KernelTag::TypeII { m: 5, j: 2, k: 1 }
        );
    }

    #[test]
    fn non_diagonal_generator() {
        // swap matrix times ζ3: eigenvalues ±ζ3, order 6
        let z = zeta(3, 1);
        let g = Matrix::from_rows(vec![vec![RadScalar::zero(), z.clone()], vec![z, RadScalar::zero()]]).unwrap();
        let grp = group_closure(&[g], DEFAULT_CAP).unwrap();
        assert_eq!(grp.order(), 6);
        let k = classify_cyclic_kernel(&grp).unwrap();
        assert_eq!(k.exponents.len(), 2);
        assert_eq!(k.tag, KernelTag::NotInList);
    }
}
