mod common;

use ballmap::hermitian::{
    degree_bound, divide_by_sphere, gram_unitary_solve, is_proper, is_proper_poly, norm_equal_poly, polarized_form,
    sphere_defect, BiPoly, Properness,
};
use ballmap::poly::MultiIndex;
use ballmap::polymap::{direct_sum, identity, pad, partial_tensor, tensor_power, whitney, PolyMap, RationalMap};
use ballmap::scalar::{rational, RadScalar, Scalar};
use ballmap::Error;
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn certificate_multiplies_out(f: &PolyMap<RadScalar>) -> bool {
    let rf = RationalMap::from_poly(f.clone());
    match is_proper(&rf).unwrap() {
        Properness::Proper(c) => c.verified && c.quotient.mul(&BiPoly::sphere(f.source_dim())).eq_value(&sphere_defect(&rf)),
        Properness::NotProper { .. } => false,
    }
}

/// A map with the same Gram table shape but one coefficient halved.
fn perturb(f: &PolyMap<RadScalar>) -> PolyMap<RadScalar> {
    let (a, c) = f.terms().iter().next().unwrap();
    let mut g = f.clone();
    let half: Vec<RadScalar> = c.iter().map(|x| x.mul(&q(-1, 2))).collect();
    g.add_term(a.clone(), &half);
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_equality_matches_gram_solve(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_map(&mut r, n, 3, 4, 4);
        let u = random_unitary(&mut r, 3);
        let g = f.apply_matrix(&u).unwrap();
        prop_assert!(norm_equal_poly(&f, &g).unwrap());
        let sol = gram_unitary_solve(&f, &g).unwrap();
        prop_assert!(sol.unitary.is_unitary());
        prop_assert!(f.apply_matrix(&sol.unitary).unwrap().eq_value(&g));
        prop_assert_eq!(sol.unique, f.span_rank().unwrap().rank == 3);

        let h = perturb(&f);
        let equal = norm_equal_poly(&f, &h).unwrap();
        let solved = gram_unitary_solve(&f, &h);
        prop_assert_eq!(equal, solved.is_ok());
        if !equal {
            prop_assert!(matches!(solved, Err(Error::NoSolution)));
        }
    }

    #[test]
    fn source_unitaries_preserve_norm_equality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_monomial_map(&mut r, 2, 3, 3);
        let d = random_diag(&mut r, 2, &[1, 2, 3, 4, 5, 6, 8]);
        let g = f.compose_unitary(&d).unwrap();
        prop_assert!(norm_equal_poly(&f, &g).unwrap());
        let sol = gram_unitary_solve(&f, &g).unwrap();
        prop_assert!(f.apply_matrix(&sol.unitary).unwrap().eq_value(&g));
    }

    #[test]
    fn polarized_form_is_hermitian(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_map(&mut r, n, 3, 5, 5);
        let p = polarized_form(&f);
        prop_assert!(p.is_hermitian());
        for ((a, b), v) in p.terms() {
            prop_assert!(p.entry(b, a).eq_value(&v.conj()));
            if a == b {
                let z = v.to_complex();
                prop_assert!(z.im.abs() < 1e-12 && z.re > 0.0);
            }
        }
    }

    #[test]
    fn monomial_maps_have_diagonal_forms(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_monomial_map(&mut r, n, 4, 4);
        let p = polarized_form(&f);
        prop_assert!(p.is_diagonal());
        prop_assert_eq!(p.terms().len(), 4);
    }

    #[test]
    fn degree_bound_is_monotone(m in prop::collection::vec(1i64..=6, 1..=4), d in 1u32..=6, bump in 1i64..=3) {
        let b = degree_bound(&m, d).unwrap();
        prop_assert!(degree_bound(&m, d + 1).unwrap() >= b);
        let mut wider = m.clone();
        let k = wider.iter().enumerate().max_by_key(|(_, &x)| x).map(|(i, _)| i).unwrap();
        wider[k] += bump;
        prop_assert!(degree_bound(&wider, d).unwrap() >= b);
        let k1 = *m.iter().min().unwrap() as u64;
        let k2 = *m.iter().max().unwrap() as u64;
        prop_assert!(b * k1 >= k2 * d as u64);
    }
}

/// Every `η` past the bound has `m·η > m·α` for all `|α| ≤ d`.
#[test]
fn degree_bound_brute_force() {
    for n in 1..=3usize {
        let mut weights: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..n {
            weights = weights
                .into_iter()
                .flat_map(|v| (1..=4).map(move |x| [v.clone(), vec![x]].concat()))
                .collect();
        }
        for m in &weights {
            for d in 1..=4u32 {
                let bound = degree_bound(m, d).unwrap() as u32;
                let alphas = MultiIndex::up_to_degree(n, d);
                let top = alphas.iter().map(|a| a.dot(m)).max().unwrap();
                for k in bound + 1..=bound + 3 {
                    for eta in MultiIndex::of_degree(n, k) {
                        assert!(eta.dot(m) > top, "m = {m:?}, d = {d}, η = {eta}");
                    }
                }
            }
        }
    }
}

#[test]
fn degree_bound_examples() {
    assert_eq!(degree_bound(&[1, 1], 3).unwrap(), 3);
    assert_eq!(degree_bound(&[1, 2], 3).unwrap(), 6);
    assert_eq!(degree_bound(&[2, 3, 6], 4).unwrap(), 12);
    assert!(matches!(degree_bound(&[1, 0], 2), Err(Error::NonPositiveEigenvalue)));
}

#[test]
fn constructions_carry_exact_certificates() {
    let mut maps: Vec<PolyMap<RadScalar>> = vec![whitney(), identity(1), identity(3)];
    for n in 1..=3 {
        for m in 1..=3 {
            maps.push(tensor_power(n, m).unwrap());
        }
    }
    maps.push(direct_sum(&whitney(), &tensor_power(2, 2).unwrap(), &rational(1, 3)).unwrap());
    maps.push(partial_tensor(&whitney(), &[0, 2]).unwrap());
    maps.push(pad(&whitney(), 2).unwrap());
    maps.push(tensor_power::<RadScalar>(2, 3).unwrap().compose_unitary(&hadamard_matrix()).unwrap());
    for f in &maps {
        assert!(certificate_multiplies_out(f), "{f:?}");
    }
}

fn hadamard_matrix() -> ballmap::linalg::Matrix<RadScalar> {
    block(2, 0, hadamard())
}

#[test]
fn random_non_proper_maps_leave_a_remainder() {
    let mut r = rng(11);
    for _ in 0..30 {
        let f = random_map(&mut r, 2, 2, 3, 3);
        let scale = q(r.gen_range(2..=5), 1);
        let g = f.apply_matrix(&ballmap::linalg::Matrix::diagonal(&[scale.clone(), scale])).unwrap();
        if g.is_constant() {
            continue;
        }
        if let Properness::NotProper { remainder } = is_proper_poly(&g).unwrap() {
            let (_, again) = divide_by_sphere(&sphere_defect(&RationalMap::from_poly(g.clone())));
            assert!(again.eq_value(&remainder));
            assert!(!remainder.is_zero());
        } else {
            panic!("scaled map cannot be proper: {g:?}");
        }
    }
    let half = PolyMap::from_terms(
        2,
        2,
        [
            (mi(&[1, 0]), vec![q(1, 2), RadScalar::zero()]),
            (mi(&[0, 1]), vec![RadScalar::zero(), RadScalar::one()]),
        ],
    )
    .unwrap();
    assert!(!is_proper_poly(&half).unwrap().is_proper());
}

#[test]
fn worked_examples() {
    let t = tensor_power::<RadScalar>(2, 2).unwrap();
    let p = polarized_form(&t);
    let diag: Vec<RadScalar> = [mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 2])].iter().map(|a| p.entry(a, a)).collect();
    assert!(diag[0].eq_value(&q(1, 1)) && diag[1].eq_value(&q(2, 1)) && diag[2].eq_value(&q(1, 1)));
    assert!(p.is_diagonal());

    let Properness::Proper(c) = is_proper_poly(&t).unwrap() else { panic!() };
    let mut expected = BiPoly::sphere(2);
    expected.add_term(MultiIndex::zero(2), MultiIndex::zero(2), q(2, 1));
    assert!(c.quotient.eq_value(&expected));

    let w = whitney::<RadScalar>();
    let d = ballmap::linalg::Matrix::diagonal(&[zeta(3, 1), zeta(3, 2)]);
    assert!(norm_equal_poly(&w, &w.compose_unitary(&d).unwrap()).unwrap());

    let id = identity::<RadScalar>(1);
    let s = direct_sum(&id, &id, &rational(1, 2)).unwrap();
    let ps = polarized_form(&s);
    assert_eq!(ps.terms().len(), 1);
    assert!(ps.entry(&mi(&[1]), &mi(&[1])).eq_value(&RadScalar::one()));
}
