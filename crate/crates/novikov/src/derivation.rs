//! Degree-2 derivations `d_z(q^A) = sum (z_B . A) q^{B + A}` and the
//! calculus built on them: flat sections and the Schwarzian.

use std::collections::BTreeMap;
use std::sync::Arc;

use schwarz_core::{int, ratio, Coeff};

use crate::element::NovikovElement;
use crate::error::{NovikovError, Result};
use crate::lattice::{ClassVector, LatticeSpec, Point};

/// `z = sum_B z_B q^B` with class-vector coefficients. Every shift has
/// `m(B) = 1`; the only shift of level -1 is `A*`, with class `[dE]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationData {
    lattice: Arc<LatticeSpec>,
    terms: BTreeMap<Point, ClassVector>,
    cap: i64,
}

impl DerivationData {
    /// Terms at levels above `cap` are dropped; the rest are taken as the
    /// exact data through `cap`.
    pub fn new<I>(lattice: &Arc<LatticeSpec>, cap: i64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Point, ClassVector)>,
    {
        let r = lattice.r();
        let mut map: BTreeMap<Point, ClassVector> = BTreeMap::new();
        for (a, c) in terms {
            lattice.check_point(&a)?;
            if c.d.len() != r {
                return Err(NovikovError::Derivation(format!(
                    "class at {a:?} has {} divisor entries, expected {r}",
                    c.d.len()
                )));
            }
            if lattice.degree_of(&a) != 1 {
                return Err(NovikovError::Derivation(format!("shift {a:?} does not raise the degree by 2")));
            }
            if lattice.level(&a) > cap {
                continue;
            }
            let entry = map.entry(a).or_insert_with(|| ClassVector::zero(r));
            *entry = entry.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        for (a, c) in &map {
            let level = lattice.level(a);
            if level < -1 {
                return Err(NovikovError::Derivation(format!("shift {a:?} has level {level} < -1")));
            }
            if level == -1 && (a != &lattice.a_star || c != &ClassVector::delta_e(r)) {
                return Err(NovikovError::Derivation(format!("level -1 term at {a:?} is not [dE] q^A*")));
            }
        }
        if map.get(&lattice.a_star) != Some(&ClassVector::delta_e(r)) {
            return Err(NovikovError::Derivation("leading term [dE] q^A* is missing".into()));
        }
        Ok(Self { lattice: lattice.clone(), terms: map, cap })
    }

    /// Just the leading term.
    pub fn leading(lattice: &Arc<LatticeSpec>, cap: i64) -> Self {
        Self::new(lattice, cap, [(lattice.a_star.clone(), ClassVector::delta_e(lattice.r()))])
            .expect("valid leading term")
    }

    pub fn lattice(&self) -> &Arc<LatticeSpec> {
        &self.lattice
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Point, &ClassVector)> {
        self.terms.iter()
    }

    /// Whether every class lies in the span of `[dE]` and `[M]`.
    pub fn classes_in_span(&self) -> bool {
        self.terms.values().all(|c| c.d.iter().all(Coeff::is_zero))
    }

    fn check_lattice(&self, f: &NovikovElement) -> Result<()> {
        if **f.lattice() != *self.lattice {
            return Err(NovikovError::LatticeMismatch);
        }
        Ok(())
    }

    /// `d_z f`, known through `min(cap_f - 1, cap_z + v_f)`.
    pub fn apply(&self, f: &NovikovElement) -> Result<NovikovElement> {
        self.check_lattice(f)?;
        let v = f.valuation().unwrap_or(f.cap() + 1);
        let cap = (f.cap() - 1).min(self.cap + v);
        let mut out = NovikovElement::zero(&self.lattice, f.degree() + 2, cap)?;
        for (a, x) in f.terms() {
            let la = self.lattice.level(a);
            for (b, class) in &self.terms {
                if la + self.lattice.level(b) > cap {
                    continue;
                }
                let w = self.lattice.pair(class, a);
                if w.is_zero() {
                    continue;
                }
                let s: Point = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(&s, w * x)?;
            }
        }
        Ok(out)
    }

    /// The unique `f` in `f0 + (level >= 1)` with `d_z f = 0`, known
    /// through `min(cap, cap_z + 1)`.
    pub fn solve_flat(&self, f0: &NovikovElement, cap: i64) -> Result<NovikovElement> {
        self.check_lattice(f0)?;
        if f0.terms().any(|(a, _)| self.lattice.level(a) != 0) {
            return Err(NovikovError::Derivation("initial value must sit at level 0".into()));
        }
        let cap = cap.min(self.cap + 1);
        let shift_back: Point = self.lattice.a_star.iter().map(|x| -x).collect();
        let mut f = f0.assume_exact_through(0);
        for level in 0..cap {
            // d_z f has its level-`level` part fixed by f through `level`;
            // the leading term maps level `level + 1` into it with weight
            // `level + 1`.
            let probe = f.assume_exact_through(level + 1);
            let d = self.apply(&probe).map_err(|e| overflow_at(e, level + 1))?.level_part(level);
            let mut next = f.assume_exact_through(level + 1);
            for (a, c) in d.terms() {
                let p: Point = a.iter().zip(&shift_back).map(|(x, y)| x + y).collect();
                next.add_term(&p, -c / int(level + 1)).map_err(|e| overflow_at(e, level + 1))?;
            }
            f = next;
        }
        Ok(f.assume_exact_through(cap.max(0)))
    }

    /// `S_z f = d(d^2 f / d f) - (d^2 f / d f)^2 / 2`.
    pub fn schwarzian(&self, f: &NovikovElement) -> Result<NovikovElement> {
        let d1 = self.apply(f)?;
        match d1.valuation() {
            Some(v) if d1.level_part(v).num_terms() == 1 => {}
            _ => return Err(NovikovError::NotInvertible("d_z f has no monomial leading part".into())),
        }
        let d2 = self.apply(&d1)?;
        let r = d2.mul(&d1.invert()?)?;
        let dr = self.apply(&r)?;
        dr.sub(&r.mul(&r)?.scale(&ratio(1, 2)))
    }

    /// Solves `S_z f = g` for `f` in `q^{-A*} + (level >= 3)`, with `g` of
    /// degree 4 and level `>= 0`. Adding `h` of level `k` changes `S_z f`
    /// by `+d_z^3 h` modulo level `k - 2`. The result is known through
    /// `cap_g + 3`, limited by the cap of `z`.
    pub fn solve_schwarzian_normal(&self, g: &NovikovElement) -> Result<NovikovElement> {
        self.check_lattice(g)?;
        if g.degree() != 4 {
            return Err(NovikovError::Degree { expected: 4, found: g.degree() });
        }
        if g.valuation().is_some_and(|v| v < 0) {
            return Err(NovikovError::Derivation("target has negative level".into()));
        }
        let neg_star: Point = self.lattice.a_star.iter().map(|x| -x).collect();
        let back3: Point = neg_star.iter().map(|x| 3 * x).collect();
        let mut f = NovikovElement::monomial(&self.lattice, &neg_star, int(1), 2)?;
        for k in 3..=g.cap() + 3 {
            let probe = f.assume_exact_through(k);
            let s = self.schwarzian(&probe)?;
            if s.cap() < k - 3 {
                return Err(NovikovError::Precision(format!("derivation data too short for level {k}")));
            }
            let residual = s.sub(&g.truncate(k - 3))?.level_part(k - 3);
            let w = int(k * (k - 1) * (k - 2));
            let mut next = probe;
            for (a, c) in residual.terms() {
                let p: Point = a.iter().zip(&back3).map(|(x, y)| x + y).collect();
                next.add_term(&p, -(c / &w)).map_err(|e| overflow_at(e, k))?;
            }
            f = next;
        }
        Ok(f)
    }

    /// Moves a normal-form solution of degree -2 to degree `target` by
    /// dividing by the flat section through `q^B`, `e(B) = 0`,
    /// `2 m(B) = -2 - target`.
    pub fn to_degree(&self, f: &NovikovElement, target: i64) -> Result<NovikovElement> {
        if target % 2 != 0 {
            return Err(NovikovError::OddDegree(target));
        }
        if target == f.degree() {
            return Ok(f.clone());
        }
        let shift = f.degree() - target;
        let b = self.lattice.find_level_zero(shift / 2).ok_or(NovikovError::NoDegreeShift { degree: shift })?;
        let a = self.solve_flat(&NovikovElement::monomial(&self.lattice, &b, int(1), 0)?, f.cap())?;
        f.mul(&a.invert()?)
    }

    /// Normal-form solve followed by the shift to degree `target`.
    pub fn solve_schwarzian(&self, g: &NovikovElement, target: i64) -> Result<NovikovElement> {
        let f = self.solve_schwarzian_normal(g)?;
        self.to_degree(&f, target)
    }
}

fn overflow_at(e: NovikovError, level: i64) -> NovikovError {
    match e {
        NovikovError::SupportOverflow { .. } => NovikovError::SupportOverflow { level },
        other => other,
    }
}
