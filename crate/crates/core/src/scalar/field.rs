//! Per-order cyclotomic field tables, built once and cached.
//!
//! For an order `L` the table holds the reduction of every power `ζ^k`
//! (`0 <= k < L`) modulo the `L`-th cyclotomic polynomial, the unit
//! residues (Galois group), and the square classes of positive
//! square-free integers whose square roots already lie in `Q(ζ_L)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) struct FieldData {
    pub order: u32,
    /// `φ(L)`: dimension of the canonical basis.
    pub degree: usize,
    /// `pow_table[k]` = coefficients of `ζ^k` in the canonical basis (length `degree`).
    pub pow_table: Vec<Vec<BigInt>>,
    pub units: Vec<u32>,
    /// Square-free `s` with `√s ∈ Q(ζ_L)`, paired with the coefficients of `√s`.
    pub square_classes: Vec<(u64, Vec<BigRational>)>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Orders congruent to 2 mod 4 generate the same field as half the order.
pub(crate) fn canonical_order(order: u32) -> u32 {
    if order % 4 == 2 {
        order / 2
    } else {
        order
    }
}

pub(crate) fn lcm_order(a: u32, b: u32) -> u32 {
    canonical_order(a.lcm(&b))
}

pub(crate) fn field(order: u32) -> Arc<FieldData> {
    debug_assert!(order >= 1 && canonical_order(order) == order);
    if let Some(f) = cache().read().expect("field cache poisoned").get(&order) {
        return f.clone();
    }
    let built = Arc::new(build_field(order));
    cache()
        .write()
        .expect("field cache poisoned")
        .entry(order)
        .or_insert(built)
        .clone()
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub(crate) fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    if let Some(p) = poly_cache().read().expect("poly cache poisoned").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d a proper divisor of n.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    let p = Arc::new(num);
    poly_cache()
        .write()
        .expect("poly cache poisoned")
        .entry(n)
        .or_insert(p)
        .clone()
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()));
    quot
}

#[cfg(test)]
pub(crate) fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

fn build_field(order: u32) -> FieldData {
    let phi = cyclotomic_polynomial(order);
    let degree = phi.len() - 1;
    let mut pow_table = Vec::with_capacity(order as usize);
    let mut cur = vec![BigInt::zero(); degree];
    cur[0] = BigInt::one();
    for _ in 0..order {
        pow_table.push(cur.clone());
        // multiply by x, then reduce x^degree = -Σ phi_j x^j
        let top = cur[degree - 1].clone();
        for j in (1..degree).rev() {
            cur[j] = cur[j - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !top.is_zero() {
            for j in 0..degree {
                cur[j] -= &top * &phi[j];
            }
        }
    }
    let units = (1..=order).filter(|k| k.gcd(&order) == 1).collect();
    let mut data = FieldData {
        order,
        degree,
        pow_table,
        units,
        square_classes: Vec::new(),
    };
    data.square_classes = square_classes(&data);
    data
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `n = g² s` with `s` square-free; returns `(g, s)`.
pub(crate) fn squarefree_split(mut n: u64) -> (u64, u64) {
    debug_assert!(n > 0);
    let mut g = 1;
    let mut s = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        g *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    s *= n;
    (g, s)
}

/// Conductor of `Q(√s)` for square-free positive `s`.
fn conductor(s: u64) -> u64 {
    if s % 4 == 1 {
        s
    } else {
        4 * s
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == 1 {
        1
    } else if result == 0 {
        0
    } else {
        -1
    }
}

/// Multiplies two elements given in the canonical basis of `data`.
pub(crate) fn mul_coeffs(
    data: &FieldData,
    a: &[BigRational],
    b: &[BigRational],
) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut raw = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                raw[i + j] += x * y;
            }
        }
    }
    reduce_raw(data, raw.into_iter().enumerate().map(|(k, c)| (k as u64, c)))
}

/// Reduces `Σ c_k ζ^k` (arbitrary exponents) to the canonical basis.
pub(crate) fn reduce_raw<I>(data: &FieldData, terms: I) -> Vec<BigRational>
where
    I: IntoIterator<Item = (u64, BigRational)>,
{
    let mut out = vec![BigRational::zero(); data.degree];
    let l = data.order as u64;
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let k = (k % l) as usize;
        if k < data.degree {
            out[k] += &c;
            continue;
        }
        for (j, e) in data.pow_table[k].iter().enumerate() {
            if !e.is_zero() {
                out[j] += &c * BigRational::from_integer(e.clone());
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn square_classes(data: &FieldData) -> Vec<(u64, Vec<BigRational>)> {
    let l = data.order as u64;
    let primes = prime_factors(l);
    let mut out = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let s: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| *p)
            .product();
        if l % conductor(s) != 0 {
            continue;
        }
        out.push((s, sqrt_in_field(data, s)));
    }
    out.sort_by_key(|(s, _)| *s);
    out
}

/// `√s` as an element of `Q(ζ_L)`, via quadratic Gauss sums. Caller
/// guarantees `conductor(s) | L`.
fn sqrt_in_field(data: &FieldData, s: u64) -> Vec<BigRational> {
    let l = data.order as u64;
    let one = BigRational::one();
    let mut acc = vec![one.clone()];
    let mut three_mod_four = 0;
    for p in prime_factors(s) {
        if p == 2 {
            // √2 = ζ_8 + ζ_8^{-1}
            let e = l / 8;
            let sqrt2 = reduce_raw(data, [(e, one.clone()), (7 * e, one.clone())]);
            acc = mul_coeffs(data, &acc, &sqrt2);
            continue;
        }
        if p % 4 == 3 {
            three_mod_four += 1;
        }
        let step = l / p;
        let gauss = reduce_raw(
            data,
            (1..p).map(|a| (a * step, BigRational::from_integer(legendre(a, p).into()))),
        );
        acc = mul_coeffs(data, &acc, &gauss);
    }
    // Each Gauss sum for p ≡ 3 mod 4 equals i√p; divide out i^k.
    match three_mod_four % 4 {
        0 => acc,
        2 => acc.into_iter().map(|c| -c).collect(),
        k => {
            // i^{-1} = -i, i^{-3} = i
            let quarter = l / 4;
            let sign = if k == 1 { -one.clone() } else { one.clone() };
            let i_inv = reduce_raw(data, [(quarter, sign)]);
            mul_coeffs(data, &acc, &i_inv)
        }
    }
}

/// Canonical square-class representative of radicand `r` in `Q(ζ_L)`:
/// returns `(rep, factor)` with `√r = factor · √rep`, `factor ∈ Q(ζ_L)`.
pub(crate) fn radical_class(data: &FieldData, r: u64) -> (u64, Vec<BigRational>) {
    let mut best: Option<(u64, u64, &Vec<BigRational>, u64)> = None;
    for (s, root) in &data.square_classes {
        let (g, t) = squarefree_split(r * s);
        if best.as_ref().is_none_or(|b| t < b.0) {
            best = Some((t, g, root, *s));
        }
    }
    let (rep, g, root, s) = best.expect("square classes always contain 1");
    // √r = g √rep √s / s
    let scale = BigRational::new(BigInt::from(g), BigInt::from(s));
    let factor = root.iter().map(|c| c * &scale).collect();
    (rep, factor)
}
