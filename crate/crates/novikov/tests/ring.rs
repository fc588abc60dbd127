mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use schwarz_core::{int, Series};
use schwarz_novikov::lattice::LatticeSpec;
use schwarz_novikov::{specialize, ClassVector, DerivationData, NovikovElement, NovikovError};

fn neg(p: &[i64]) -> Vec<i64> {
    p.iter().map(|x| -x).collect()
}

#[test]
fn lattice_validation() {
    let ok = LatticeSpec::standard(2);
    assert!(ok.has_dual_pairing());
    assert!(skewed(1).has_dual_pairing());
    let bad_star = LatticeSpec::new(vec![1, 0], vec![0, 1], vec![1, 1], vec![], vec![]);
    assert!(matches!(bad_star, Err(NovikovError::Lattice(_))));
    let dependent = LatticeSpec::new(
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![1, -1, 0, 0],
        vec![vec![0, 0, 1, 1], vec![0, 0, 2, 2]],
        vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
    );
    assert!(dependent.is_err());
    let d_on_star =
        LatticeSpec::new(vec![1, 0, 0], vec![0, 1, 0], vec![1, -1, 0], vec![vec![0, 0, 1]], vec![vec![1, 0, 1]]);
    assert!(d_on_star.is_err());
    // D equal to a combination of e and m (and vanishing on A*) is degenerate
    let degenerate =
        LatticeSpec::new(vec![1, 0, 0], vec![0, 1, 0], vec![1, -1, 0], vec![vec![0, 0, 1]], vec![vec![1, 1, 0]]);
    assert!(degenerate.is_err());
    let not_dual =
        LatticeSpec::new(vec![1, 0, 0], vec![0, 1, 0], vec![1, -1, 0], vec![vec![0, 0, 1]], vec![vec![0, 0, 2]])
            .unwrap();
    assert!(!not_dual.has_dual_pairing());
}

#[test]
fn product_examples() {
    let l = Arc::new(LatticeSpec::standard(1));
    let star = NovikovElement::monomial(&l, &l.a_star, int(1), 5).unwrap();
    let inv = NovikovElement::monomial(&l, &neg(&l.a_star), int(1), 5).unwrap();
    let p = star.mul(&inv).unwrap();
    assert_eq!(p.num_terms(), 1);
    assert_eq!(p.coeff(&[0, 0, 0]), int(1));
    assert_eq!(p.degree(), 0);

    for a in [vec![0, 1, 0], vec![0, 2, -1], vec![0, 1, 3]] {
        let one = NovikovElement::one(&l, 10);
        let x = NovikovElement::monomial(&l, &a, int(1), 10).unwrap();
        let lhs = one.add(&x).unwrap().mul(&one.sub(&x).unwrap()).unwrap();
        let two_a: Vec<i64> = a.iter().map(|v| 2 * v).collect();
        let rhs = one.sub(&x.mul(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs.coeff(&two_a), int(-1));
    }
}

#[test]
fn product_levels_add_and_caps_follow_the_rule() {
    let mut rng = rng(3);
    let l = skewed(2);
    for _ in 0..10 {
        let a = random_element(&mut rng, &l, 2, 0, 3, 4, 6);
        let b = random_element(&mut rng, &l, -2, 1, 3, 4, 5);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.degree(), 0);
        let (va, vb) = (a.valuation().unwrap_or(7), b.valuation().unwrap_or(6));
        assert_eq!(p.cap(), (6 + vb).min(5 + va));
        // every product term arises from factor terms whose levels add up
        for (c, _) in p.terms() {
            let lc = l.level(c);
            assert!(a.terms().any(|(x, _)| b.terms().any(|(y, _)| {
                x.iter().zip(y).zip(c).all(|((p, q), r)| p + q == *r) && l.level(x) + l.level(y) == lc
            })));
        }
    }
}

#[test]
fn inverse_and_errors() {
    let mut rng = rng(5);
    let l = skewed(1);
    let a0 = NovikovElement::monomial(&l, &point(&l, 1, -1, &[1]), int(3), 6).unwrap();
    let x = a0.add(&random_element(&mut rng, &l, 2, 0, 4, 5, 6)).unwrap();
    let inv = x.invert().unwrap();
    assert_eq!(inv.cap(), 6 + 2);
    let one = x.mul(&inv).unwrap();
    assert_eq!(one.sub(&NovikovElement::one(&l, one.cap())).unwrap().num_terms(), 0);

    let two = NovikovElement::one(&l, 4)
        .add(&NovikovElement::monomial(&l, &point(&l, 0, 0, &[1]), int(1), 4).unwrap())
        .unwrap();
    assert!(matches!(two.invert(), Err(NovikovError::NotInvertible(_))));

    let other = Arc::new(LatticeSpec::standard(1));
    assert!(matches!(x.mul(&NovikovElement::one(&other, 3)), Err(NovikovError::LatticeMismatch)));
    assert!(matches!(x.add(&NovikovElement::one(&l, 3)), Err(NovikovError::Degree { .. })));
    assert!(matches!(NovikovElement::zero(&l, 3, 3), Err(NovikovError::OddDegree(3))));

    let tiny = Arc::new(LatticeSpec::standard(1).with_support_bound(3));
    let big = NovikovElement::monomial(&tiny, &[0, 2, 2], int(1), 10).unwrap();
    assert!(matches!(big.mul(&big), Err(NovikovError::SupportOverflow { level: 4 })));
}

#[test]
fn derivation_examples() {
    let l = skewed(1);
    let z = DerivationData::leading(&l, 10);
    for (level, d) in [(0, 0), (1, 1), (3, -2)] {
        let a = point(&l, 0, level, &[d]);
        let f = NovikovElement::monomial(&l, &a, int(1), 10).unwrap();
        let df = z.apply(&f).unwrap();
        let shifted: Vec<i64> = a.iter().zip(&l.a_star).map(|(x, y)| x + y).collect();
        if level == 0 {
            assert!(df.is_zero());
        } else {
            assert_eq!(df.num_terms(), 1);
            assert_eq!(df.coeff(&shifted), int(level));
        }
        assert_eq!(df.degree(), 2);
    }
    let mut rng = rng(8);
    let z = random_z1(&mut rng, &l, 6, 4, 3, false);
    assert!(z.apply(&NovikovElement::one(&l, 6)).unwrap().is_zero());
}

#[test]
fn derivation_data_shape_is_checked() {
    let l = Arc::new(LatticeSpec::standard(1));
    let r = 1;
    let extra = |a: Vec<i64>| vec![(l.a_star.clone(), ClassVector::delta_e(r)), (a, ClassVector::delta_e(r))];
    assert!(DerivationData::new(&l, 5, vec![(vec![1, 0, 0], ClassVector::delta_e(r))]).is_err());
    assert!(DerivationData::new(&l, 5, extra(vec![1, -2, 0])).is_err());
    assert!(DerivationData::new(&l, 5, extra(vec![1, -1, 1])).is_err());
    assert!(DerivationData::new(&l, 5, extra(vec![2, 0, 0])).is_err());
    assert!(DerivationData::new(&l, 5, extra(vec![1, 0, 0])).is_ok());
    let bad_class = vec![(l.a_star.clone(), ClassVector { de: int(2), m: int(0), d: vec![int(0)] })];
    assert!(DerivationData::new(&l, 5, bad_class).is_err());
}

#[test]
fn specialization_examples() {
    let l = skewed(2);
    let k = specialize(&NovikovElement::monomial(&l, &l.a_star, int(1), 4).unwrap()).unwrap();
    assert_eq!(k.t_pow, 1);
    assert_eq!(k.series, Series::monomial("q", -1, int(1), 5));
    for a in &l.a_basis {
        let k = specialize(&NovikovElement::monomial(&l, a, int(1), 4).unwrap()).unwrap();
        assert_eq!(k.t_pow, 0);
        assert_eq!(k.series, Series::one("q", 5));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn leibniz_rule(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let l = skewed(1);
        let z = random_z1(&mut rng, &l, 6, 3, 3, false);
        let f = random_element(&mut rng, &l, 0, 0, 3, 3, 6);
        let g = random_element(&mut rng, &l, -2, 1, 4, 3, 6);
        let lhs = z.apply(&f.mul(&g).unwrap()).unwrap();
        let rhs = z.apply(&f).unwrap().mul(&g).unwrap().add(&f.mul(&z.apply(&g).unwrap()).unwrap()).unwrap();
        let cap = lhs.cap().min(rhs.cap());
        prop_assert!(cap >= 5);
        prop_assert_eq!(lhs.truncate(cap), rhs.truncate(cap));
    }

    #[test]
    fn differential_term(seed in any::<u64>(), k in 0i64..4) {
        // d_z f = k q^{A*} f + (level >= k) for f at level >= k
        let mut rng = rng(seed);
        let l = Arc::new(LatticeSpec::standard(2));
        let z = random_z1(&mut rng, &l, 6, 4, 3, false);
        let f = random_element(&mut rng, &l, 2, k, k, 3, 6);
        let star = NovikovElement::monomial(&l, &l.a_star, int(k), 8).unwrap();
        let rest = z.apply(&f).unwrap().sub(&star.mul(&f).unwrap()).unwrap();
        prop_assert!(rest.valuation().is_none_or(|v| v >= k));
    }

    #[test]
    fn specialization_is_multiplicative(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let l = skewed(2);
        let a = random_element(&mut rng, &l, 2, -1, 3, 4, 5);
        let b = random_element(&mut rng, &l, 0, 0, 3, 4, 5);
        let lhs = specialize(&a.mul(&b).unwrap()).unwrap();
        let (ka, kb) = (specialize(&a).unwrap(), specialize(&b).unwrap());
        prop_assert_eq!(lhs.t_pow, ka.t_pow + kb.t_pow);
        let rhs = ka.series.try_mul(&kb.series).unwrap();
        prop_assert!(lhs.series.agrees_with(&rhs));
        // oracle: direct lattice sums
        let (ba, bb, bp) = (brute_k(&a), brute_k(&b), brute_k(&a.mul(&b).unwrap()));
        for (e, c) in &bp {
            let conv = ba.iter().fold(schwarz_core::int(0), |acc, (x, cx)| {
                acc + bb.get(&(e - x)).map_or(schwarz_core::int(0), |cy| cx * cy)
            });
            prop_assert_eq!(&conv, c);
        }
    }
}
