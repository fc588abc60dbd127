mod common;

use common::*;
use proptest::prelude::*;
use schwarz_ainfty::{in_filtration, reduced_homotopy, AInfinityStructure, AinftyError, Cochain, HochschildCochain};
use schwarz_core::int;

/// Entries that survive modulo `F^{p+1}`: unit in slot `p + 1`, none in
/// the last `p` slots.
fn modulo_next(c: &HochschildCochain, p: usize, e: usize) -> HochschildCochain {
    c.filter(|t| t.len() > p && t[t.len() - p - 1] == e && !t[t.len() - p..].contains(&e))
}

/// `δ h γ + h δ γ` and `γ`, both modulo `F^{p+1}` and cut to the arity
/// window where the sum is valid.
fn both_sides(a: &AInfinityStructure, p: usize, gamma: &HochschildCochain) -> (HochschildCochain, HochschildCochain) {
    let h = reduced_homotopy(a, p, gamma).unwrap();
    let dh = a.hochschild_differential(&h).unwrap();
    let hd = reduced_homotopy(a, p, &a.hochschild_differential(gamma).unwrap()).unwrap();
    let sum = dh.add(&hd).unwrap();
    assert!(sum.arity() + 1 >= gamma.arity(), "window {} for cap {}", sum.arity(), gamma.arity());
    let e = a.basis().unit().unwrap();
    let window = gamma.arity() - 1;
    (
        modulo_next(&sum.truncated(window, gamma.qorder()), p, e),
        modulo_next(&gamma.truncated(window, gamma.qorder()), p, e),
    )
}

fn random_in_filtration(
    r: &mut rand_chacha::ChaCha8Rng,
    a: &AInfinityStructure,
    p: usize,
    degree: i64,
) -> HochschildCochain {
    let e = a.basis().unit().unwrap();
    random_cochain(r, a.basis(), degree, 0..=4, 4, a.qorder(), 0, 0.5, |t| !t[t.len().saturating_sub(p)..].contains(&e))
}

#[test]
fn zero_maps_to_zero() {
    let a = exterior2(4, 3);
    for p in 0..3 {
        let z = Cochain::zero(a.basis().clone(), 2, 4, 3);
        let h = reduced_homotopy(&a, p, &z).unwrap();
        assert!(h.is_zero());
        assert_eq!((h.degree(), h.arity()), (1, 3));
    }
}

#[test]
fn homotopy_of_the_identity_is_the_unit() {
    let a = two_element(1, 3, 2);
    let id = Cochain::identity(a.basis().clone(), 3, 2);
    let h = reduced_homotopy(&a, 0, &id).unwrap();
    let mut unit = Cochain::zero(a.basis().clone(), 0, 2, 2);
    unit.add_term(&[], 0, 0, int(1)).unwrap();
    assert_eq!(h, unit);
    // id has a unit input in slot 1, so only F^0 contains it
    assert!(in_filtration(&id, 0).unwrap());
    assert!(!in_filtration(&id, 1).unwrap());
}

/// Direct evaluation of the defining formula, tuple by tuple.
#[test]
fn homotopy_matches_pointwise_evaluation() {
    let mut r = rng(7);
    let a = exterior2(4, 2);
    let basis = a.basis().clone();
    let e = basis.unit().unwrap();
    for p in 0..3 {
        for degree in 0..3 {
            let g = random_in_filtration(&mut r, &a, p, degree);
            let h = reduced_homotopy(&a, p, &g).unwrap();
            let odd_gamma = (degree - 1).rem_euclid(2) == 1;
            for d in 0..=3 {
                for t in basis.tuples(d) {
                    for o in 0..basis.dim() {
                        for k in 0..2 {
                            let expected = if d < p {
                                int(0)
                            } else {
                                let mut full = t[..d - p].to_vec();
                                full.push(e);
                                full.extend_from_slice(&t[d - p..]);
                                let sign_sum: i64 = t[d - p..].iter().map(|&i| basis.degree(i) - 1).sum();
                                let v = g.coeff(&full, o, k);
                                if odd_gamma ^ (sign_sum.rem_euclid(2) == 1) {
                                    -v
                                } else {
                                    v
                                }
                            };
                            assert_eq!(h.coeff(&t, o, k), expected, "p={p} tuple {t:?} -> {o}, q^{k}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn contracting_identity_on_algebras() {
    let mut r = rng(11);
    let mut nontrivial = 0;
    for a in [dual_numbers(5, 2), two_element(1, 5, 2), exterior2(5, 2)] {
        for p in 0..3 {
            for degree in (-1..4).flat_map(|d| [d, d]) {
                let g = random_in_filtration(&mut r, &a, p, degree);
                let (lhs, expected) = both_sides(&a, p, &g);
                nontrivial += usize::from(!expected.is_zero());
                assert_eq!(lhs, expected, "p={p}, degree {degree}");
            }
        }
    }
    assert!(nontrivial >= 20, "{nontrivial}");
}

/// Without the `||γ||` sign the cross terms of `δh` and `hδ` add up
/// instead of cancelling.
#[test]
fn unsigned_insertion_is_not_a_homotopy() {
    let a = dual_numbers(5, 1);
    let (e, t) = (0, 1);
    let mut g = Cochain::zero(a.basis().clone(), 3, 4, 1);
    g.add_term(&[e, e, e], e, 0, int(1)).unwrap();
    let unsigned = |c: &HochschildCochain| {
        let h = reduced_homotopy(&a, 0, c).unwrap();
        if c.reduced_degree().rem_euclid(2) == 1 {
            h.neg()
        } else {
            h
        }
    };
    let literal = a
        .hochschild_differential(&unsigned(&g))
        .unwrap()
        .add(&unsigned(&a.hochschild_differential(&g).unwrap()))
        .unwrap()
        .truncated(3, 1);
    let literal = modulo_next(&literal, 0, e);
    let target = modulo_next(&g.truncated(3, 1), 0, e);
    assert_ne!(literal, target);
    assert_ne!(literal, target.neg());
    // the discrepancy lives on a tuple with fewer units than γ's
    assert_eq!(literal.coeff(&[t, e, e], t, 0), int(-2));
    let (signed, expected) = both_sides(&a, 0, &g);
    assert_eq!(signed, expected);
    assert_eq!(expected, target);
}

#[test]
fn errors() {
    let plain = left_module(3, 2);
    let z = Cochain::zero(plain.basis().clone(), 2, 3, 2);
    assert_eq!(reduced_homotopy(&plain, 0, &z), Err(AinftyError::NoUnit));
    assert_eq!(in_filtration(&z, 0), Err(AinftyError::NoUnit));

    let a = exterior2(3, 2);
    let mut g = Cochain::zero(a.basis().clone(), 2, 3, 2);
    g.add_term(&[1, 0], 1, 0, int(1)).unwrap();
    assert!(in_filtration(&g, 0).unwrap());
    assert!(!in_filtration(&g, 1).unwrap());
    assert_eq!(reduced_homotopy(&a, 1, &g), Err(AinftyError::NotInFiltration(1)));

    // a pullback along a map that moves the unit is not strictly unital
    let mut r = rng(2);
    let moved = (0..10)
        .map(|_| pullback_deformation(&mut r, &two_element(1, 3, 2), 0.6).1)
        .find(|s| !s.is_strictly_unital())
        .expect("a non-unital pullback");
    let z = Cochain::zero(moved.basis().clone(), 2, 3, 2);
    assert_eq!(reduced_homotopy(&moved, 0, &z), Err(AinftyError::NoUnit));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn contracting_identity_with_higher_products(seed in any::<u64>(), p in 0usize..3, degree in -1i64..4, which in 0usize..3) {
        let mut r = rng(seed);
        let base = [dual_numbers(5, 2), two_element(1, 5, 2), exterior2(5, 2)][which].clone();
        let a = unital_pullback(&mut r, &base, 0.4);
        prop_assert!(a.is_strictly_unital());
        let g = random_in_filtration(&mut r, &a, p, degree);
        let (lhs, expected) = both_sides(&a, p, &g);
        prop_assert_eq!(lhs, expected);
    }
}
