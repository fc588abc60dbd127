#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schwarz_core::{ratio, Rational};
use schwarz_novikov::{ClassVector, DerivationData, LatticeSpec, NovikovElement, Point};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small(rng);
        if r != ratio(0, 1) {
            return r;
        }
    }
}

/// A lattice point with prescribed `m`, level and `D` values.
pub fn point(l: &LatticeSpec, m: i64, level: i64, d: &[i64]) -> Point {
    l.point_from_functionals(level, m, d).expect("integral point")
}

pub fn random_d(rng: &mut ChaCha8Rng, r: usize) -> Vec<i64> {
    (0..r).map(|_| rng.gen_range(-1..=1)).collect()
}

/// Leading term plus `extra` random classes at levels `0..=max_level`.
/// With `in_span`, the classes have no divisor part.
pub fn random_z1(
    rng: &mut ChaCha8Rng,
    l: &Arc<LatticeSpec>,
    cap: i64,
    extra: usize,
    max_level: i64,
    in_span: bool,
) -> DerivationData {
    let r = l.r();
    let mut terms = vec![(l.a_star.clone(), ClassVector::delta_e(r))];
    for _ in 0..extra {
        let level = rng.gen_range(0..=max_level);
        let d = random_d(rng, r);
        let class = ClassVector {
            de: small(rng),
            m: small(rng),
            d: (0..r).map(|_| if in_span { ratio(0, 1) } else { small(rng) }).collect(),
        };
        terms.push((point(l, 1, level, &d), class));
    }
    DerivationData::new(l, cap, terms).unwrap()
}

/// Random element of the given degree with terms at levels
/// `min_level..=max_level`.
pub fn random_element(
    rng: &mut ChaCha8Rng,
    l: &Arc<LatticeSpec>,
    degree: i64,
    min_level: i64,
    max_level: i64,
    count: usize,
    cap: i64,
) -> NovikovElement {
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let level = rng.gen_range(min_level..=max_level);
            let d = random_d(rng, l.r());
            (point(l, degree / 2, level, &d), small(rng))
        })
        .collect();
    NovikovElement::from_terms(l, degree, cap, terms).unwrap()
}

/// A lattice with nonstandard coordinates: `m = (1, 1, 0, ..)`,
/// `e = (0, 1, 1, 0, ..)`.
pub fn skewed(r: usize) -> Arc<LatticeSpec> {
    let n = r + 2;
    let mut m = vec![0; n];
    m[0] = 1;
    m[1] = 1;
    let mut e = vec![0; n];
    e[1] = 1;
    if n > 2 {
        e[2] = 1;
    }
    // A* = (2, -1, 0, ..): m = 1, e = -1
    let mut a_star = vec![0; n];
    a_star[0] = 2;
    a_star[1] = -1;
    let mut a_basis = Vec::new();
    let mut d_basis = Vec::new();
    for j in 0..r {
        // kernel of m and e: (1, -1, 1, 0..) for j = 0, unit vectors beyond
        let mut a = vec![0; n];
        let mut d = vec![0; n];
        if j == 0 {
            a[0] = 1;
            a[1] = -1;
            a[2] = 1;
            d[2] = 1;
        } else {
            a[j + 2] = 1;
            d[j + 2] = 1;
        }
        a_basis.push(a);
        d_basis.push(d);
    }
    Arc::new(LatticeSpec::new(m, e, a_star, a_basis, d_basis).unwrap())
}

/// Brute-force specialization: `sum x_A q^{e(A)}` as an exponent map.
pub fn brute_k(f: &NovikovElement) -> BTreeMap<i64, Rational> {
    let l = f.lattice();
    let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
    for (a, c) in f.terms() {
        let e: i64 = l.e.iter().zip(a).map(|(x, y)| x * y).sum();
        *out.entry(e).or_insert_with(|| ratio(0, 1)) += c;
    }
    out.retain(|_, c| *c != ratio(0, 1));
    out
}
