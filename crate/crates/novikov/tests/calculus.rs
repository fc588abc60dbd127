mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use schwarz_core::int;
use schwarz_novikov::lattice::LatticeSpec;
use schwarz_novikov::{DerivationData, NovikovElement, NovikovError};

fn neg(p: &[i64]) -> Vec<i64> {
    p.iter().map(|x| -x).collect()
}

#[test]
fn flat_sections_of_the_leading_term_are_constant() {
    let l = skewed(2);
    let z = DerivationData::leading(&l, 8);
    let f0 = NovikovElement::from_terms(
        &l,
        2,
        0,
        [(point(&l, 1, 0, &[1, 0]), int(2)), (point(&l, 1, 0, &[0, -1]), int(-1))],
    )
    .unwrap();
    let f = z.solve_flat(&f0, 8).unwrap();
    assert_eq!(f.truncate(0), f0);
    assert_eq!(f.num_terms(), 2);
    assert_eq!(f.cap(), 8);
}

#[test]
fn one_correction_term() {
    // z = [dE] q^{A*} + c q^{A'} with A' at level 0; oracle: re-apply z.
    let l = Arc::new(LatticeSpec::standard(1));
    let a_prime = point(&l, 1, 0, &[1]);
    let z = DerivationData::new(
        &l,
        6,
        [
            (l.a_star.clone(), schwarz_novikov::ClassVector::delta_e(1)),
            (a_prime.clone(), schwarz_novikov::ClassVector { de: int(2), m: int(-1), d: vec![int(3)] }),
        ],
    )
    .unwrap();
    let f0 = NovikovElement::monomial(&l, &point(&l, 0, 0, &[1]), int(1), 0).unwrap();
    let f = z.solve_flat(&f0, 6).unwrap();
    assert_eq!(f.degree(), 0);
    let df = z.apply(&f).unwrap();
    assert_eq!(df.cap(), 5);
    assert!(df.is_zero());
    // level 1 by hand: d(q^{A_1}) = 3 q^{A' + A_1} at level 0, so the level
    // 1 term is -3 q^{A' + A_1 - A*}.
    let p: Vec<i64> = a_prime.iter().zip(&l.a_basis[0]).zip(&l.a_star).map(|((x, y), s)| x + y - s).collect();
    assert_eq!(f.coeff(&p), int(-3));
}

#[test]
fn flat_section_errors() {
    let l = Arc::new(LatticeSpec::standard(1).with_support_bound(4));
    let z = DerivationData::new(
        &l,
        10,
        [
            (l.a_star.clone(), schwarz_novikov::ClassVector::delta_e(1)),
            (vec![1, 0, 1], schwarz_novikov::ClassVector { de: int(1), m: int(0), d: vec![int(1)] }),
        ],
    )
    .unwrap();
    let f0 = NovikovElement::monomial(&l, &[0, 0, 1], int(1), 0).unwrap();
    match z.solve_flat(&f0, 10) {
        Err(NovikovError::SupportOverflow { level }) => assert_eq!(level, 4),
        other => panic!("expected overflow, got {other:?}"),
    }
    let bad = NovikovElement::monomial(&l, &[0, 1, 0], int(1), 3).unwrap();
    assert!(z.solve_flat(&bad, 3).is_err());
}

#[test]
fn schwarzian_examples() {
    let l = skewed(1);
    let z = DerivationData::leading(&l, 10);
    let f = NovikovElement::monomial(&l, &neg(&l.a_star), int(1), 10).unwrap();
    let d1 = z.apply(&f).unwrap();
    assert_eq!(d1, NovikovElement::one(&l, 9));
    assert!(z.apply(&d1).unwrap().is_zero());
    assert!(z.schwarzian(&f).unwrap().is_zero());
    let zero = NovikovElement::zero(&l, 4, 6).unwrap();
    let sol = z.solve_schwarzian_normal(&zero).unwrap();
    assert_eq!(sol, f.truncate(9));
    // two monomials at the lowest level of d_z f
    let two = f.add(&NovikovElement::monomial(&l, &point(&l, -1, 1, &[1]), int(1), 10).unwrap()).unwrap();
    assert!(matches!(z.schwarzian(&two), Err(NovikovError::NotInvertible(_))));
    assert!(matches!(z.solve_schwarzian(&zero, 1), Err(NovikovError::OddDegree(1))));
}

#[test]
fn flat_perturbations_break_flatness() {
    let mut rng = rng(21);
    let l = skewed(1);
    let z = random_z1(&mut rng, &l, 6, 5, 1, false);
    let f0 = NovikovElement::monomial(&l, &point(&l, 0, 0, &[1]), int(1), 0).unwrap();
    let f = z.solve_flat(&f0, 5).unwrap();
    assert!(z.apply(&f).unwrap().is_zero());
    let mut checked = 0;
    for (a, c) in f.terms() {
        if l.level(a) == 0 {
            continue;
        }
        let mut g = f.clone();
        g.add_term(a, c / int(7) + int(1)).unwrap();
        assert!(!z.apply(&g).unwrap().is_zero(), "perturbing {a:?}");
        checked += 1;
    }
    assert!(checked >= 3, "only {checked} terms above level 0");
}

fn random_target(seed: u64, cap: i64) -> (Arc<LatticeSpec>, DerivationData, NovikovElement) {
    let mut rng = rng(seed);
    let l = skewed(1);
    let z = random_z1(&mut rng, &l, cap + 3, 3, 2, false);
    let g = random_element(&mut rng, &l, 4, 0, cap, 3, cap);
    (l, z, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flat_solutions_are_flat(seed in any::<u64>(), cap in 2i64..6) {
        let mut rng = rng(seed);
        let l = skewed(2);
        let z = random_z1(&mut rng, &l, cap, 4, 2, false);
        let f0 = random_element(&mut rng, &l, 2, 0, 0, 2, 0);
        let f = z.solve_flat(&f0, cap).unwrap();
        prop_assert_eq!(f.degree(), 2);
        prop_assert_eq!(f.truncate(0), f0.clone());
        let df = z.apply(&f).unwrap();
        prop_assert_eq!(df.cap(), cap - 1);
        prop_assert!(df.is_zero());
    }

    #[test]
    fn schwarzian_solver_round_trip(seed in any::<u64>(), cap in 1i64..4) {
        let (_, z, g) = random_target(seed, cap);
        let f = z.solve_schwarzian_normal(&g).unwrap();
        prop_assert_eq!(f.cap(), cap + 3);
        let s = z.schwarzian(&f).unwrap();
        prop_assert!(s.cap() >= cap);
        prop_assert!(s.sub(&g).unwrap().is_zero());
        for target in [-4i64, 0, 2] {
            let fi = z.solve_schwarzian(&g, target).unwrap();
            prop_assert_eq!(fi.degree(), target);
            let si = z.schwarzian(&fi).unwrap();
            prop_assert!(si.sub(&g).unwrap().truncate(cap).is_zero());
        }
    }

    #[test]
    fn schwarzian_is_invariant_under_flat_mobius(seed in any::<u64>()) {
        let cap = 5;
        let (l, z, g) = random_target(seed, cap - 3);
        let f = z.solve_schwarzian_normal(&g).unwrap();
        let mut rng = rng(seed ^ 0x55);
        let k = 2;
        let a0 = NovikovElement::monomial(&l, &point(&l, k / 2, 0, &[1]), nonzero(&mut rng), 0).unwrap();
        let b0 = NovikovElement::monomial(&l, &point(&l, (k + 2) / 2, 0, &[-1]), small(&mut rng), 0).unwrap();
        let a = z.solve_flat(&a0, cap).unwrap();
        let b = z.solve_flat(&b0, cap).unwrap();
        let moved = f.mul(&a.add(&b.mul(&f).unwrap()).unwrap().invert().unwrap()).unwrap();
        prop_assert_eq!(moved.degree(), -2 - k);
        let s0 = z.schwarzian(&f).unwrap();
        let s1 = z.schwarzian(&moved).unwrap();
        let through = cap - 2 - 3;
        prop_assert!(s1.cap() >= through && s0.cap() >= through);
        prop_assert_eq!(s0.truncate(through), s1.truncate(through));
    }
}
