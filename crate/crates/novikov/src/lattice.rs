//! The class lattice `Z^{r+2}` with its two distinguished functionals.

use schwarz_core::{int, Coeff, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{NovikovError, Result};

pub type Point = Vec<i64>;

/// Default coordinate bound for supports.
pub const DEFAULT_SUPPORT_BOUND: i64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub rank: usize,
    /// The degree functional; elements of degree `i` live on `2 m(A) = i`.
    pub m: Vec<i64>,
    /// The filtration functional.
    pub e: Vec<i64>,
    #[serde(rename = "A_star")]
    pub a_star: Point,
    #[serde(rename = "A_basis")]
    pub a_basis: Vec<Point>,
    #[serde(rename = "D_basis")]
    pub d_basis: Vec<Vec<i64>>,
    /// Every stored lattice point must have all coordinates within this bound.
    #[serde(default = "default_bound")]
    pub support_bound: i64,
}

fn default_bound() -> i64 {
    DEFAULT_SUPPORT_BOUND
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank over `Q` of a list of integer rows.
#[allow(clippy::needless_range_loop)]
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in 0..cols {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `M x = b` over `Q` for square nonsingular `M`.
#[allow(clippy::needless_range_loop)]
fn solve_rational(mat: &[Vec<i64>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = mat.len();
    let mut a: Vec<Vec<Rational>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().map(|&x| int(x)).chain(std::iter::once(b.clone())).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for j in c..=n {
            a[c][j] = &a[c][j] / &pivot;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let d = &f * &a[c][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

impl LatticeSpec {
    pub fn new(m: Vec<i64>, e: Vec<i64>, a_star: Point, a_basis: Vec<Point>, d_basis: Vec<Vec<i64>>) -> Result<Self> {
        let spec = Self { rank: m.len(), m, e, a_star, a_basis, d_basis, support_bound: DEFAULT_SUPPORT_BOUND };
        spec.validate()?;
        Ok(spec)
    }

    /// Coordinates `(x_0, x_1, a_1..a_r)` with `m = x_0`, `e = x_1`,
    /// `A* = (1, -1, 0..)`, `A_j` and `D_j` the remaining unit vectors.
    pub fn standard(r: usize) -> Self {
        let n = r + 2;
        let unit = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>();
        let mut a_star = vec![0; n];
        a_star[0] = 1;
        a_star[1] = -1;
        Self::new(unit(0), unit(1), a_star, (2..n).map(unit).collect(), (2..n).map(unit).collect())
            .expect("standard lattice is valid")
    }

    pub fn with_support_bound(mut self, bound: i64) -> Self {
        self.support_bound = bound;
        self
    }

    pub fn r(&self) -> usize {
        self.rank.saturating_sub(2)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(NovikovError::Lattice(s));
        let n = self.rank;
        if n < 2 {
            return bad(format!("rank {n} < 2"));
        }
        if self.support_bound < 1 {
            return bad("support bound must be positive".into());
        }
        let r = n - 2;
        for (name, v) in [("m", &self.m), ("e", &self.e), ("A_star", &self.a_star)] {
            if v.len() != n {
                return bad(format!("{name} has length {} instead of {n}", v.len()));
            }
        }
        if self.a_basis.len() != r || self.d_basis.len() != r {
            return bad(format!("expected {r} basis classes and {r} dual classes"));
        }
        if self.a_basis.iter().chain(&self.d_basis).any(|v| v.len() != n) {
            return bad("basis vector of the wrong length".into());
        }
        if self.degree_of(&self.a_star) != 1 || self.level(&self.a_star) != -1 {
            return bad("A_star must satisfy m = 1 and e = -1".into());
        }
        for (j, a) in self.a_basis.iter().enumerate() {
            if self.degree_of(a) != 0 || self.level(a) != 0 {
                return bad(format!("A_{} must satisfy m = e = 0", j + 1));
            }
        }
        if rational_rank(&self.a_basis) != r {
            return bad("basis classes are linearly dependent".into());
        }
        for (k, d) in self.d_basis.iter().enumerate() {
            if dot(d, &self.a_star) != 0 {
                return bad(format!("D_{} does not vanish on A_star", k + 1));
            }
        }
        if rational_rank(&self.functionals()) != n {
            return bad("e, m, D_1..D_r are not a rational basis of the dual lattice".into());
        }
        Ok(())
    }

    /// `[e, m, D_1, .., D_r]`.
    pub fn functionals(&self) -> Vec<Vec<i64>> {
        let mut rows = vec![self.e.clone(), self.m.clone()];
        rows.extend(self.d_basis.iter().cloned());
        rows
    }

    /// Whether `D_k . A_j = delta_kj`.
    pub fn has_dual_pairing(&self) -> bool {
        self.d_basis
            .iter()
            .enumerate()
            .all(|(k, d)| self.a_basis.iter().enumerate().all(|(j, a)| dot(d, a) == i64::from(j == k)))
    }

    pub fn level(&self, a: &[i64]) -> i64 {
        dot(&self.e, a)
    }

    /// `m(A)`; the element degree is twice this.
    pub fn degree_of(&self, a: &[i64]) -> i64 {
        dot(&self.m, a)
    }

    pub fn divisor(&self, k: usize, a: &[i64]) -> i64 {
        dot(&self.d_basis[k], a)
    }

    pub fn divisors(&self, a: &[i64]) -> Vec<i64> {
        self.d_basis.iter().map(|d| dot(d, a)).collect()
    }

    /// Pairs a class vector with a lattice point.
    pub fn pair<C: Coeff>(&self, c: &ClassVector<C>, a: &[i64]) -> C {
        let mut out = c.de.scale_int(self.level(a)).add(&c.m.scale_int(self.degree_of(a)));
        for (k, d) in c.d.iter().enumerate() {
            out = out.add(&d.scale_int(self.divisor(k, a)));
        }
        out
    }

    pub fn check_point(&self, a: &[i64]) -> Result<()> {
        if a.len() != self.rank {
            return Err(NovikovError::Lattice(format!("point {a:?} has the wrong length")));
        }
        if a.iter().any(|x| x.abs() > self.support_bound) {
            return Err(NovikovError::SupportOverflow { level: self.level(a) });
        }
        Ok(())
    }

    /// The lattice point with prescribed values of `e`, `m` and `D_k`, if
    /// it is integral.
    pub fn point_from_functionals(&self, level: i64, m: i64, d: &[i64]) -> Option<Point> {
        if d.len() != self.r() {
            return None;
        }
        let mut rhs = vec![int(level), int(m)];
        rhs.extend(d.iter().map(|&x| int(x)));
        let x = solve_rational(&self.functionals(), &rhs)?;
        x.iter().map(|c| if c.is_integer() { i64::try_from(c.to_integer()).ok() } else { None }).collect()
    }

    /// A lattice point of level 0 and `m = target`, smallest in the
    /// coordinate box first by `l1` norm then lexicographically.
    pub fn find_level_zero(&self, target: i64) -> Option<Point> {
        // e, m and the D_k are a rational basis, so the point is unique
        // once the D values are fixed; search over small D values.
        let r = self.r();
        let bound = 3i64;
        let mut best: Option<Point> = None;
        let key = |p: &Point| (p.iter().map(|x| x.abs()).sum::<i64>(), p.clone());
        let mut d = vec![-bound; r];
        loop {
            if let Some(p) = self.point_from_functionals(0, target, &d) {
                if best.as_ref().is_none_or(|b| key(&p) < key(b)) {
                    best = Some(p);
                }
            }
            let mut i = 0;
            while i < r {
                d[i] += 1;
                if d[i] <= bound {
                    break;
                }
                d[i] = -bound;
                i += 1;
            }
            if i == r {
                break;
            }
        }
        best
    }
}

/// A cohomology class in the basis `{[dE], [M], D_1..D_r}` with
/// coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassVector<C: Coeff = Rational> {
    pub de: C,
    pub m: C,
    pub d: Vec<C>,
}

impl<C: Coeff> ClassVector<C> {
    pub fn zero(r: usize) -> Self {
        Self { de: C::zero(), m: C::zero(), d: vec![C::zero(); r] }
    }

    pub fn delta_e(r: usize) -> Self {
        Self { de: C::one(), ..Self::zero(r) }
    }

    pub fn is_zero(&self) -> bool {
        self.de.is_zero() && self.m.is_zero() && self.d.iter().all(Coeff::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            de: self.de.add(&o.de),
            m: self.m.add(&o.m),
            d: self.d.iter().zip(&o.d).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        Self { de: f(&self.de), m: f(&self.m), d: self.d.iter().map(&f).collect() }
    }
}
