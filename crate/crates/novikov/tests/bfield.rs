mod common;

use std::sync::Arc;

use common::*;
use rand::Rng;
use schwarz_core::{int, ratio, Coeff, Rational, Series};
use schwarz_novikov::bfield::{
    beta_change, normalization_residual, phi, twisted_sum, BField, ChangeOfVariables, LSeries,
};
use schwarz_novikov::lattice::LatticeSpec;
use schwarz_novikov::specialize::{lift, specialize_b};
use schwarz_novikov::{
    b_field_normalize, change_of_variables, specialize, ClassVector, DerivationData, LaurentPoly, NovikovElement,
};

fn lp(exps: &[i64], c: Rational) -> LaurentPoly {
    LaurentPoly::monomial(exps, c)
}

/// `sum_{n < order} x^n / n!`, from powers only.
fn exp_by_powers(x: &LSeries) -> LSeries {
    let order = x.order();
    let mut acc = LSeries::one("q", order);
    let mut power = LSeries::one("q", order);
    let mut fact = int(1);
    for n in 1..order {
        power = power.try_mul(x).unwrap();
        fact *= int(n);
        acc = acc.try_add(&power.scale_rational(&fact.recip())).unwrap();
    }
    acc
}

/// Coefficientwise `d/dq` of a series, by hand.
fn deriv_by_hand(s: &LSeries) -> Vec<(i64, LaurentPoly)> {
    s.terms().map(|(n, c)| (n - 1, c.scale_int(n))).collect()
}

/// The relation `q^-1 [dE] + d_q B = z_B - eta [M]` re-evaluated from
/// scratch, coefficientwise for `q^-1 .. q^through`.
fn check_relation(l: &LatticeSpec, z: &DerivationData, b: &BField, eta: &LSeries, through: i64) {
    let order = through + 1;
    let r = l.r();
    let mut zb = vec![vec![LaurentPoly::zero(); (order + 1) as usize]; r + 2];
    for (a, class) in z.terms() {
        let e = l.level(a);
        let mut ba = b.b.scale_rational(&int(e)).truncate(order + 1);
        for k in 0..r {
            ba = &ba + &b.b_d[k].scale_rational(&int(l.divisor(k, a))).truncate(order + 1);
        }
        let twist = exp_by_powers(&ba);
        let q = lp(&l.divisors(a), int(1));
        for n in -1..order {
            if n < e {
                continue;
            }
            let c = q.mul(&twist.coeff(n - e));
            let comps = [&class.de, &class.m].into_iter().chain(&class.d);
            for (i, x) in comps.enumerate() {
                zb[i][(n + 1) as usize] = zb[i][(n + 1) as usize].add(&c.scale(x));
            }
        }
    }
    let mut lhs = vec![vec![LaurentPoly::zero(); (order + 1) as usize]; r + 2];
    lhs[0][0] = LaurentPoly::one();
    for (n, c) in deriv_by_hand(&b.b) {
        if n < order {
            lhs[0][(n + 1) as usize] = lhs[0][(n + 1) as usize].add(&c);
        }
    }
    for k in 0..r {
        for (n, c) in deriv_by_hand(&b.b_d[k]) {
            if n < order {
                lhs[k + 2][(n + 1) as usize] = lhs[k + 2][(n + 1) as usize].add(&c);
            }
        }
    }
    for n in -1..order {
        let i = (n + 1) as usize;
        lhs[1][i] = lhs[1][i].sub(&eta.get(n).unwrap_or_else(LaurentPoly::zero)).neg();
        // lhs[1] now holds -(0 - eta) = eta; compare z_m with eta
        for comp in 0..r + 2 {
            assert_eq!(lhs[comp][i], zb[comp][i], "component {comp} at q^{n}");
        }
    }
}

fn synthetic(seed: u64, r: usize, cap: i64) -> (Arc<LatticeSpec>, DerivationData) {
    let mut rng = rng(seed);
    let l = if seed.is_multiple_of(2) { Arc::new(LatticeSpec::standard(r)) } else { skewed(r) };
    let extra = rng.gen_range(1..=3);
    (l.clone(), random_z1(&mut rng, &l, cap, extra, 2, false))
}

#[test]
fn phi_inverse_law() {
    let mut rng = rng(1);
    for r in 0..=2usize {
        let l = if r == 0 { LatticeSpec::standard(0) } else { (*skewed(r)).clone() };
        for k in 1..=10i64 {
            for _ in 0..5 {
                let x = ClassVector::<LaurentPoly> {
                    de: lp(&random_d(&mut rng, r), small(&mut rng)),
                    m: LaurentPoly::zero(),
                    d: (0..r).map(|_| lp(&random_d(&mut rng, r), small(&mut rng))).collect(),
                };
                let y = phi(&l, &int(-1 - k), &x);
                assert_eq!(phi(&l, &int(k), &y), x, "k = {k}");
                assert_eq!(phi(&l, &int(-1 - k), &phi(&l, &int(k), &x)), x);
            }
        }
    }
    // [dE] . A* = -1 and D . A* = 0 give Phi_k([dE]) = (1 + 1/k)[dE]
    let l = LatticeSpec::standard(1);
    let de = ClassVector::<Rational>::delta_e(1);
    assert_eq!(phi(&l, &int(3), &de).de, ratio(4, 3));
    let d1 = ClassVector { de: int(0), m: int(0), d: vec![int(1)] };
    assert_eq!(phi(&l, &int(3), &d1), d1);
}

#[test]
fn leading_term_needs_no_twist() {
    for r in 0..=2 {
        let l = Arc::new(LatticeSpec::standard(r));
        let nb = b_field_normalize(&DerivationData::leading(&l, 6), 6).unwrap();
        assert!(nb.field.is_zero());
        assert!(nb.eta.is_zero());
        assert_eq!(nb.psi, LSeries::one("q", 8));
    }
}

#[test]
fn twenty_synthetic_instances() {
    let cap = 6;
    for seed in 0..20u64 {
        let r = (seed % 3) as usize;
        let (l, z) = synthetic(seed, r, cap);
        let nb = b_field_normalize(&z, cap).unwrap();
        assert_eq!(nb.psi, LSeries::one("q", cap + 2));
        assert!(nb.field.order() > cap && nb.eta.order() > cap);
        check_relation(&l, &z, &nb.field, &nb.eta, cap);
        let res = normalization_residual(&z, &nb, cap + 1).unwrap();
        assert!(res.is_zero(), "seed {seed}");
        assert_eq!(res.order(), cap + 1);
    }
}

#[test]
fn one_extra_class_at_order_one() {
    let l = Arc::new(LatticeSpec::standard(1));
    let a = point(&l, 1, 1, &[1]);
    let class = ClassVector { de: int(2), m: int(3), d: vec![int(-1)] };
    let z = DerivationData::new(&l, 6, [(l.a_star.clone(), ClassVector::delta_e(1)), (a, class)]).unwrap();
    let nb = b_field_normalize(&z, 6).unwrap();
    // first twist at q^2: 2 B_2 - (B_2 . A*)[dE] = 2 q1 [dE] - q1 D_1
    assert_eq!(nb.field.b.coeff(1), LaurentPoly::zero());
    assert_eq!(nb.field.b.coeff(2), lp(&[1], ratio(2, 3)));
    assert_eq!(nb.field.b_d[0].coeff(2), lp(&[1], ratio(-1, 2)));
    assert_eq!(nb.eta.coeff(1), lp(&[1], int(3)));
    check_relation(&l, &z, &nb.field, &nb.eta, 6);
}

#[test]
fn normalization_is_idempotent() {
    let cap = 5;
    for seed in 30..36u64 {
        let mut rng = rng(seed);
        let r = (seed % 3) as usize;
        let l = Arc::new(LatticeSpec::standard(r));
        let z = random_z1(&mut rng, &l, cap, 3, 2, false);
        let nb = b_field_normalize(&z, cap).unwrap();
        // z_B - d_q B = q^-1 [dE] + eta [M] is data that is already
        // normalized; re-encode it on the lattice.
        let zb = twisted_sum(&z, &nb.field, cap + 1).unwrap();
        let mut terms = Vec::new();
        for n in -1..=cap {
            let c = zb.coeff(n);
            let db = nb.field.coeff_class(n + 1).map(|p| p.scale_int(n + 1));
            let untwisted = c.sub(&db);
            let mut monomials: Vec<Vec<i64>> = Vec::new();
            for comp in [&untwisted.de, &untwisted.m].into_iter().chain(&untwisted.d) {
                for (d, _) in comp.terms_padded(r) {
                    if !monomials.contains(&d) {
                        monomials.push(d);
                    }
                }
            }
            for d in monomials {
                let class = untwisted.map(|p| lp(&[], p.coeff(&d)));
                let class = ClassVector {
                    de: class.de.as_constant().unwrap(),
                    m: class.m.as_constant().unwrap(),
                    d: class.d.iter().map(|p| p.as_constant().unwrap()).collect(),
                };
                if n >= 0 {
                    assert!(class.de == int(0) && class.d.iter().all(|x| *x == int(0)));
                }
                terms.push((point(&l, 1, n, &d), class));
            }
        }
        let z2 = DerivationData::new(&l, cap, terms).unwrap();
        let again = b_field_normalize(&z2, cap).unwrap();
        assert!(again.field.is_zero(), "seed {seed}: {:?}", again.field);
        assert_eq!(again.eta, nb.eta);
    }
}

#[test]
fn change_of_variables_examples() {
    let cv = change_of_variables(&BField::zero(2, 8), 7).unwrap();
    assert_eq!(cv.g().unwrap(), Series::var_series("q", 9));
    for g in cv.g_d().unwrap() {
        assert_eq!(g, Series::one("q", 8));
    }
    // b = q, r = 0: phi = -q e^phi
    let field = BField::new(LSeries::monomial("q", 1, LaurentPoly::one(), 8), vec![]).unwrap();
    let cv = change_of_variables(&field, 7).unwrap();
    let expect =
        Series::from_coeffs("q", 0, 6, vec![int(0), int(-1), int(1), ratio(-3, 2), ratio(8, 3), ratio(-125, 24)]);
    assert_eq!(cv.phi.truncate(6), expect);
    // back-substitution
    let rhs = -&(&Series::var_series("q", 8) * &cv.phi.exp().unwrap());
    assert!(cv.phi.agrees_with(&rhs));
    assert_eq!(cv.phi.order(), 8);
}

/// `B(g, g_k) . A` evaluated with explicit powers of `g` and `g_k`.
fn evaluate(field: &BField, l: &LatticeSpec, a: &[i64], g: &Series, gd: &[Series], order: i64) -> Series {
    let x = field.pair(l, a);
    let mut out = Series::zero("q", 0, order);
    for (n, poly) in x.terms() {
        for (d, c) in poly.terms_padded(gd.len()) {
            let mut term = g.pow(n).unwrap().truncate(order).scale_rational(c);
            for (gk, dk) in gd.iter().zip(&d) {
                term = term.try_mul(&gk.pow(*dk).unwrap()).unwrap().truncate(order);
            }
            out = out.try_add(&term).unwrap();
        }
    }
    out
}

#[test]
fn substitution_untwists_every_class() {
    let cap = 5;
    for seed in 40..46u64 {
        let r = (seed % 3) as usize;
        let (l, z) = synthetic(seed, r, cap);
        let nb = b_field_normalize(&z, cap).unwrap();
        let cv = change_of_variables(&nb.field, cap).unwrap();
        let (g, gd) = (cv.g().unwrap(), cv.g_d().unwrap());
        assert_eq!(g.coeff(1), int(1));
        assert_eq!(g.order(), cap + 2);
        for x in &gd {
            assert_eq!(x.coeff(0), int(1));
        }
        let mut rng = rng(seed);
        for _ in 0..12 {
            let a: Vec<i64> = (0..l.rank).map(|_| rng.gen_range(-2..=2)).collect();
            let e = l.level(&a);
            let mut lhs = g.pow(e).unwrap();
            for (k, gk) in gd.iter().enumerate() {
                lhs = lhs.try_mul(&gk.pow(l.divisor(k, &a)).unwrap()).unwrap();
            }
            let twist = evaluate(&nb.field, &l, &a, &g, &gd, cap + 1).exp().unwrap();
            let lhs = lhs.try_mul(&twist).unwrap();
            let target = Series::monomial("q", e, int(1), lhs.order());
            assert!(lhs.order() >= e + cap);
            assert_eq!(lhs, target, "A = {a:?}");
        }
    }
}

#[test]
fn untwisting_recovers_plain_specialization() {
    let cap = 5;
    for seed in 50..54u64 {
        let r = 1 + (seed % 2) as usize;
        let (l, z) = synthetic(seed, r, cap);
        let nb = b_field_normalize(&z, cap).unwrap();
        let cv: ChangeOfVariables = change_of_variables(&nb.field, cap).unwrap();
        let mut rng = rng(seed);
        for _ in 0..8 {
            let m = rng.gen_range(-1..=1);
            let level = rng.gen_range(-1..=2);
            let a = point(&l, m, level, &random_d(&mut rng, r));
            let x = NovikovElement::monomial(&l, &a, int(1), cap).unwrap();
            let (t, kb) = specialize_b(&x, &nb.field).unwrap();
            let k = specialize(&x).unwrap();
            assert_eq!(t, k.t_pow);
            let back = cv.apply(&kb).unwrap();
            assert!(back.order() >= level + cap - 1);
            assert!(back.agrees_with(&k.series), "A = {a:?}");
        }
    }
}

#[test]
fn twisted_derivation_diagram() {
    // K_B(d_z x) = t (d_q + m(x) eta_B) K_B(x)
    let cap = 5;
    for seed in 60..66u64 {
        let r = (seed % 3) as usize;
        let (l, z) = synthetic(seed, r, cap);
        let nb = b_field_normalize(&z, cap).unwrap();
        let mut rng = rng(seed);
        for _ in 0..6 {
            let m = rng.gen_range(-1..=1);
            let a = point(&l, m, rng.gen_range(0..=2), &random_d(&mut rng, r));
            let x = NovikovElement::monomial(&l, &a, int(1), cap).unwrap();
            let (t1, lhs) = specialize_b(&z.apply(&x).unwrap(), &nb.field).unwrap();
            let (t0, kx) = specialize_b(&x, &nb.field).unwrap();
            assert_eq!(t1, t0 + 1);
            let rhs = kx.derivative().try_add(&nb.eta.try_mul(&kx).unwrap().scale_rational(&int(m))).unwrap();
            assert!(lhs.order() >= cap - 1);
            assert!(lhs.agrees_with(&rhs), "A = {a:?}");
        }
    }
}

#[test]
fn flat_sections_specialize_to_the_variables() {
    // with D dual to the basis classes, K_B(g_lambda_k) = q_k
    let cap = 5;
    for seed in 70..74u64 {
        let r = 1 + (seed % 2) as usize;
        let (l, z) = synthetic(seed, r, cap);
        assert!(l.has_dual_pairing());
        let nb = b_field_normalize(&z, cap).unwrap();
        for (k, a) in l.a_basis.iter().enumerate() {
            let g = z.solve_flat(&NovikovElement::monomial(&l, a, int(1), 0).unwrap(), cap).unwrap();
            let (t, kb) = specialize_b(&g, &nb.field).unwrap();
            assert_eq!(t, 0);
            let mut e = vec![0; r];
            e[k] = 1;
            assert!(kb.agrees_with(&LSeries::monomial("q", 0, lp(&e, int(1)), cap + 1)));
            assert!(kb.order() >= cap);
        }
    }
}

#[test]
fn reparametrization_preserves_the_relation() {
    let cap = 5;
    for seed in 80..84u64 {
        let r = (seed % 3) as usize;
        let (l, z) = synthetic(seed, r, cap);
        let nb = b_field_normalize(&z, cap).unwrap();
        let mut rng = rng(seed);
        let mut gamma = LSeries::monomial("q", 1, LaurentPoly::one(), cap + 2);
        gamma =
            gamma.try_add(&LSeries::monomial("q", 2, lp(&random_d(&mut rng, r), small(&mut rng)), cap + 2)).unwrap();
        gamma = gamma.try_add(&LSeries::monomial("q", 3, LaurentPoly::constant(small(&mut rng)), cap + 2)).unwrap();
        let moved = beta_change(&nb, &gamma).unwrap();
        assert_eq!(moved.psi.coeff(0), LaurentPoly::one());
        let res = normalization_residual(&z, &moved, cap).unwrap();
        assert!(res.is_zero(), "seed {seed}");
        assert!(res.order() >= cap - 1);
        let _ = &l;
    }
    assert!(beta_change(
        &b_field_normalize(&DerivationData::leading(&Arc::new(LatticeSpec::standard(0)), 3), 3).unwrap(),
        &lift(&Series::from_ints("q", 0, 4, &[0, 2]))
    )
    .is_err());
}
