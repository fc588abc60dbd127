//! Elements of the graded, filtered Novikov ring.

use std::collections::BTreeMap;
use std::sync::Arc;

use schwarz_core::{int, Coeff, Rational};

use crate::error::{NovikovError, Result};
use crate::lattice::{LatticeSpec, Point};

/// `sum x_A q^A` over lattice points with `2 m(A) = degree`, known exactly
/// at every filtration level `<= cap`.
#[derive(Clone, Debug)]
pub struct NovikovElement {
    lattice: Arc<LatticeSpec>,
    degree: i64,
    terms: BTreeMap<Point, Rational>,
    cap: i64,
}

impl PartialEq for NovikovElement {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
            && self.degree == other.degree
            && self.cap == other.cap
            && self.terms == other.terms
    }
}

impl NovikovElement {
    pub fn zero(lattice: &Arc<LatticeSpec>, degree: i64, cap: i64) -> Result<Self> {
        if degree % 2 != 0 {
            return Err(NovikovError::OddDegree(degree));
        }
        Ok(Self { lattice: lattice.clone(), degree, terms: BTreeMap::new(), cap })
    }

    pub fn monomial(lattice: &Arc<LatticeSpec>, a: &[i64], coeff: Rational, cap: i64) -> Result<Self> {
        let mut out = Self::zero(lattice, 2 * lattice.degree_of(a), cap)?;
        out.add_term(a, coeff)?;
        Ok(out)
    }

    pub fn one(lattice: &Arc<LatticeSpec>, cap: i64) -> Self {
        Self::monomial(lattice, &vec![0; lattice.rank], int(1), cap).expect("origin is in the box")
    }

    pub fn from_terms<I>(lattice: &Arc<LatticeSpec>, degree: i64, cap: i64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Point, Rational)>,
    {
        let mut out = Self::zero(lattice, degree, cap)?;
        for (a, c) in terms {
            out.add_term(&a, c)?;
        }
        Ok(out)
    }

    /// Adds `c q^A`; terms above the cap are dropped.
    pub fn add_term(&mut self, a: &[i64], c: Rational) -> Result<()> {
        self.lattice.check_point(a)?;
        let found = 2 * self.lattice.degree_of(a);
        if found != self.degree {
            return Err(NovikovError::Degree { expected: self.degree, found });
        }
        if c.is_zero() || self.lattice.level(a) > self.cap {
            return Ok(());
        }
        let slot = self.terms.entry(a.to_vec()).or_insert_with(|| int(0));
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(a);
        }
        Ok(())
    }

    pub fn lattice(&self) -> &Arc<LatticeSpec> {
        &self.lattice
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn coeff(&self, a: &[i64]) -> Rational {
        self.terms.get(a).cloned().unwrap_or_else(|| int(0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Point, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest filtration level carrying a nonzero term.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().map(|a| self.lattice.level(a)).min()
    }

    pub fn level_part(&self, k: i64) -> Self {
        let terms = self.terms.iter().filter(|(a, _)| self.lattice.level(a) == k).map(|(a, c)| (a.clone(), c.clone()));
        Self { terms: terms.collect(), ..self.clone_empty() }
    }

    fn clone_empty(&self) -> Self {
        Self { lattice: self.lattice.clone(), degree: self.degree, terms: BTreeMap::new(), cap: self.cap }
    }

    pub fn truncate(&self, cap: i64) -> Self {
        let cap = cap.min(self.cap);
        let terms =
            self.terms.iter().filter(|(a, _)| self.lattice.level(a) <= cap).map(|(a, c)| (a.clone(), c.clone()));
        Self { terms: terms.collect(), cap, ..self.clone_empty() }
    }

    /// Raises the cap, asserting that the unknown levels are zero.
    pub fn assume_exact_through(&self, cap: i64) -> Self {
        Self { cap, ..self.clone() }
    }

    fn same_lattice(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice {
            Ok(())
        } else {
            Err(NovikovError::LatticeMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        if self.degree != other.degree {
            return Err(NovikovError::Degree { expected: self.degree, found: other.degree });
        }
        let mut out = self.truncate(other.cap);
        for (a, c) in &other.terms {
            out.add_term(a, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = self.clone_empty();
        if !r.is_zero() {
            out.terms = self.terms.iter().map(|(a, c)| (a.clone(), c * r)).collect();
        }
        out
    }

    /// Known through `min(cap_a + v_b, cap_b + v_a)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        let va = self.valuation().unwrap_or(self.cap + 1);
        let vb = other.valuation().unwrap_or(other.cap + 1);
        let cap = (self.cap + vb).min(other.cap + va);
        let mut out = Self::zero(&self.lattice, self.degree + other.degree, cap)?;
        for (a, x) in &self.terms {
            let la = self.lattice.level(a);
            for (b, y) in &other.terms {
                if la + self.lattice.level(b) > cap {
                    continue;
                }
                let s: Point = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(&s, x * y)?;
            }
        }
        Ok(out)
    }

    /// Requires the lowest-level part to be a single monomial. Known
    /// through `cap - 2v`.
    pub fn invert(&self) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| NovikovError::NotInvertible("zero element".into()))?;
        let lead = self.level_part(v);
        if lead.num_terms() != 1 {
            return Err(NovikovError::NotInvertible(format!(
                "lowest level {v} carries {} monomials",
                lead.num_terms()
            )));
        }
        let (a, c) = lead.terms().next().map(|(a, c)| (a.clone(), c.clone())).expect("one term");
        let neg_a: Point = a.iter().map(|x| -x).collect();
        let cap = self.cap - 2 * v;
        // self = c q^a (1 + y), y of level >= 1
        let lead_inv = Self::monomial(&self.lattice, &neg_a, c.recip(), cap)?;
        let y = lead_inv.mul(self)?.sub(&Self::one(&self.lattice, self.cap - v))?;
        let rel_cap = self.cap - v;
        let mut sum = Self::one(&self.lattice, rel_cap);
        let mut power = Self::one(&self.lattice, rel_cap);
        let neg_y = y.scale(&int(-1));
        for _ in 0..rel_cap.max(0) {
            power = power.mul(&neg_y)?.truncate(rel_cap);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
        }
        Ok(lead_inv.assume_exact_through(rel_cap - v).mul(&sum.truncate(rel_cap))?.truncate(cap))
    }

    /// Whether this vanishes at every level `<= through`, which must be
    /// within the cap.
    pub fn vanishes_through(&self, through: i64) -> bool {
        through <= self.cap && self.terms.keys().all(|a| self.lattice.level(a) > through)
    }
}
