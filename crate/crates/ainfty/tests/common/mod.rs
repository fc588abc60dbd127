#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schwarz_ainfty::{AInfinityMorphism, AInfinityStructure, Cochain, GradedBasis, HochschildCochain};
use schwarz_core::{int, ratio, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

/// Multiplication table `(i, j) -> [(k, c)]` of a graded algebra.
pub type Table = Vec<((usize, usize), Vec<(usize, i64)>)>;

/// `μ²(a_2, a_1) = (-1)^{|a_1|} a_2 a_1`, written out entry by entry.
pub fn algebra(basis: GradedBasis, table: &Table, arity: usize, qorder: usize) -> AInfinityStructure {
    let basis = Arc::new(basis);
    let mut mu = Cochain::zero(basis.clone(), 2, arity, qorder);
    for ((i, j), terms) in table {
        for &(k, c) in terms {
            let sign = if basis.degree(*j) % 2 != 0 { -1 } else { 1 };
            mu.add_term(&[*i, *j], k, 0, int(sign * c)).unwrap();
        }
    }
    AInfinityStructure::new(mu, true).unwrap()
}

fn unital_table(dim: usize, unit: usize) -> Table {
    let mut table = vec![((unit, unit), vec![(unit, 1)])];
    for i in (0..dim).filter(|&i| i != unit) {
        table.push(((unit, i), vec![(i, 1)]));
        table.push(((i, unit), vec![(i, 1)]));
    }
    table
}

/// `Q e ⊕ Q t` with `t^2 = 0` and `|t| = deg`.
pub fn two_element(deg: i64, arity: usize, qorder: usize) -> AInfinityStructure {
    let basis = GradedBasis::from_pairs(&[("e", 0), ("t", deg)], Some(0)).unwrap();
    algebra(basis, &unital_table(2, 0), arity, qorder)
}

/// `Q[ε]/ε²` with `ε` in degree 0.
pub fn dual_numbers(arity: usize, qorder: usize) -> AInfinityStructure {
    two_element(0, arity, qorder)
}

/// Exterior algebra on `x, y` of degree 1: basis `1, x, y, xy`.
pub fn exterior2(arity: usize, qorder: usize) -> AInfinityStructure {
    let basis = GradedBasis::from_pairs(&[("1", 0), ("x", 1), ("y", 1), ("xy", 2)], Some(0)).unwrap();
    let mut table = unital_table(4, 0);
    table.push(((1, 2), vec![(3, 1)]));
    table.push(((2, 1), vec![(3, -1)]));
    algebra(basis, &table, arity, qorder)
}

/// Matrix algebra-like example without unit: `Q a ⊕ Q b`, `a a = a`,
/// `a b = b`, everything else zero (degrees 0 and 1).
pub fn left_module(arity: usize, qorder: usize) -> AInfinityStructure {
    let basis = GradedBasis::from_pairs(&[("a", 0), ("b", 1)], None).unwrap();
    let table = vec![((0, 0), vec![(0, 1)]), ((0, 1), vec![(1, 1)])];
    algebra(basis, &table, arity, qorder)
}

/// Random cochain of the given degree: each admissible entry is present
/// with probability `density`, with coefficients supported in
/// `q^min_q .. q^{qorder-1}`.
#[allow(clippy::too_many_arguments)]
pub fn random_cochain(
    rng: &mut ChaCha8Rng,
    basis: &Arc<GradedBasis>,
    degree: i64,
    arities: std::ops::RangeInclusive<usize>,
    arity_cap: usize,
    qorder: usize,
    min_q: usize,
    density: f64,
    keep: impl Fn(&[usize]) -> bool,
) -> HochschildCochain {
    let mut c = Cochain::zero(basis.clone(), degree, arity_cap, qorder);
    for d in arities {
        for t in basis.tuples(d) {
            if !keep(&t) {
                continue;
            }
            for o in 0..basis.dim() {
                if basis.degree(o) != basis.degrees_sum(&t) + degree - d as i64 {
                    continue;
                }
                if !rng.gen_bool(density) {
                    continue;
                }
                for k in min_q..qorder {
                    if rng.gen_bool(0.5) {
                        c.add_term(&t, o, k, small(rng)).unwrap();
                    }
                }
            }
        }
    }
    c
}

/// `F = id + q φ` with random `φ` in arities `1..=arity`.
pub fn random_automorphism(
    rng: &mut ChaCha8Rng,
    basis: &Arc<GradedBasis>,
    arity: usize,
    qorder: usize,
    density: f64,
    keep: impl Fn(&[usize]) -> bool,
) -> AInfinityMorphism {
    let phi = random_cochain(rng, basis, 1, 1..=arity, arity, qorder, 1, density, keep);
    let id = Cochain::identity(basis.clone(), arity, qorder);
    AInfinityMorphism::new(id.add(&phi).unwrap()).unwrap()
}

/// A deformation with higher products: a constant structure pushed along a
/// random `id + q φ`.
pub fn pullback_deformation(
    rng: &mut ChaCha8Rng,
    constant: &AInfinityStructure,
    density: f64,
) -> (AInfinityMorphism, AInfinityStructure) {
    let f = random_automorphism(rng, constant.basis(), constant.arity(), constant.qorder(), density, |_| true);
    let mu = f.pushforward(constant).unwrap();
    (f, mu)
}

/// Strictly unital variant: `φ` kills the unit and higher components avoid
/// it entirely.
pub fn unital_pullback(rng: &mut ChaCha8Rng, constant: &AInfinityStructure, density: f64) -> AInfinityStructure {
    let e = constant.basis().unit().unwrap();
    let f =
        random_automorphism(rng, constant.basis(), constant.arity(), constant.qorder(), density, |t| !t.contains(&e));
    f.pushforward(constant).unwrap()
}
