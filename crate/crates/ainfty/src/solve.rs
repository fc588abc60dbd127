//! Exact solution of `δβ = c` in the arity-truncated Hochschild complex.

use std::collections::BTreeMap;

use schwarz_core::{Coeff, Rational};

use crate::cochain::{Cochain, Tuple};
use crate::error::{AinftyError, Result};
use crate::structure::AInfinityStructure;

#[derive(Clone, Debug, PartialEq)]
pub enum Coboundary {
    /// `δβ = c` modulo `q^n` through the equation window.
    Exact { beta: Cochain<Rational> },
    /// No `β` exists modulo `q^{order+1}`; `residual` is the `q^order` part
    /// of `c - δβ` for a solution modulo `q^order`.
    Obstructed { order: usize, residual: Cochain<Rational> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoboundaryReport {
    pub outcome: Coboundary,
    /// Arity through which the equations were imposed.
    pub equation_arity: usize,
    /// Arity through which conclusions are claimed, `D - J + 1`.
    pub valid_arity: usize,
    pub qorder: usize,
}

impl CoboundaryReport {
    pub fn is_exact(&self) -> bool {
        matches!(self.outcome, Coboundary::Exact { .. })
    }

    pub fn beta(&self) -> Option<&Cochain<Rational>> {
        match &self.outcome {
            Coboundary::Exact { beta } => Some(beta),
            Coboundary::Obstructed { .. } => None,
        }
    }
}

type Row = BTreeMap<usize, Rational>;
/// A unit of the unknown and its polynomial in one equation.
type Column<'a> = (usize, &'a Vec<Rational>);

/// Incremental row echelon form; each pivot row has leading entry 1 in its
/// smallest column.
#[derive(Default, Clone)]
struct Echelon {
    pivots: BTreeMap<usize, (Row, Rational)>,
}

impl Echelon {
    /// Adds an equation; false if it is inconsistent with the earlier ones.
    fn push(&mut self, mut row: Row, mut rhs: Rational) -> bool {
        let mut cursor = 0;
        while let Some((&col, v)) = row.range(cursor..).next() {
            let v = v.clone();
            match self.pivots.get(&col) {
                Some((prow, prhs)) => {
                    for (c, a) in prow {
                        let e = row.entry(*c).or_insert_with(<Rational as Coeff>::zero);
                        *e = &*e - &(&v * a);
                        if Coeff::is_zero(e) {
                            row.remove(c);
                        }
                    }
                    rhs = &rhs - &(&v * prhs);
                }
                None => {
                    let inv = v.recip();
                    let row: Row = row.range(col..).map(|(c, a)| (*c, a * &inv)).collect();
                    self.pivots.insert(col, (row, rhs * inv));
                    return true;
                }
            }
            cursor = col + 1;
        }
        Coeff::is_zero(&rhs)
    }

    /// Back substitution with free variables set to zero.
    fn solve(&self) -> BTreeMap<usize, Rational> {
        let mut x: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&col, (row, rhs)) in self.pivots.iter().rev() {
            let mut v = rhs.clone();
            for (c, a) in row.range(col + 1..) {
                if let Some(xc) = x.get(c) {
                    v = &v - &(a * xc);
                }
            }
            if !Coeff::is_zero(&v) {
                x.insert(col, v);
            }
        }
        x
    }
}

/// Solves `δβ = c` modulo `q^qorder` in one joint system over all q-orders
/// (block triangular in q, eliminated order by order). Returns a solution
/// with all free coordinates zero, or the first q-order at which no
/// solution exists.
///
/// Unknowns whose differential reaches past the arity cap (arity-zero
/// components against a truncated μ) are first left out; if the system is
/// then unsolvable but becomes solvable with them on the smaller window,
/// the cap is reported as too small.
pub fn is_coboundary(
    a: &AInfinityStructure<Rational>,
    c: &Cochain<Rational>,
    qorder: usize,
) -> Result<CoboundaryReport> {
    if c.basis() != a.basis() {
        return Err(AinftyError::BasisMismatch);
    }
    let basis = a.basis().clone();
    let n = qorder.min(c.qorder()).min(a.qorder());
    let unknown_arity = c.arity().min(a.arity());
    let probe = AInfinityStructure::new(a.mu().truncated(a.arity(), n), a.is_deformation())?;

    // one column per basis cochain e_u of degree deg(c) - 1
    let mut units: Vec<(Tuple, usize, Cochain<Rational>)> = Vec::new();
    for d in 0..=unknown_arity {
        for t in basis.tuples(d) {
            let want = basis.degrees_sum(&t) + c.degree() - 1 - d as i64;
            for o in 0..basis.dim() {
                if basis.degree(o) == want {
                    let mut e = Cochain::zero(basis.clone(), c.degree() - 1, unknown_arity, n);
                    e.add_term(&t, o, 0, <Rational as Coeff>::one())?;
                    let img = probe.hochschild_differential(&e)?;
                    units.push((t.clone(), o, img));
                }
            }
        }
    }
    let full = c.arity().min(a.arity());
    let inner: Vec<&(Tuple, usize, Cochain<Rational>)> = units.iter().filter(|u| u.2.arity() >= full).collect();
    let first = solve_on(&probe, c, n, full, &inner, unknown_arity)?;
    if first.is_exact() || inner.len() == units.len() {
        return Ok(first);
    }
    let window = units.iter().map(|u| u.2.arity()).min().unwrap_or(full);
    let all: Vec<_> = units.iter().collect();
    let second = solve_on(&probe, &c.truncated(window, n), n, window, &all, unknown_arity)?;
    if second.is_exact() {
        if let Some(needed) = c.entries().map(|(t, _, _)| t.len()).filter(|&l| l > window).max() {
            return Err(AinftyError::ArityCapTooSmall { needed, window });
        }
    }
    Ok(second)
}

fn solve_on(
    probe: &AInfinityStructure<Rational>,
    c: &Cochain<Rational>,
    n: usize,
    window: usize,
    units: &[&(Tuple, usize, Cochain<Rational>)],
    unknown_arity: usize,
) -> Result<CoboundaryReport> {
    if let Some(needed) = c.entries().map(|(t, _, _)| t.len()).filter(|&l| l > window).max() {
        return Err(AinftyError::ArityCapTooSmall { needed, window });
    }
    // equation (tuple, output) -> [(unit, polynomial)]
    let mut columns_of: BTreeMap<(Tuple, usize), Vec<Column<'_>>> = BTreeMap::new();
    for (u, (_, _, img)) in units.iter().enumerate() {
        for (t, o, p) in img.entries() {
            if t.len() <= window {
                columns_of.entry((t.clone(), o)).or_default().push((u, p));
            }
        }
    }
    for (t, o, _) in c.entries() {
        columns_of.entry((t.clone(), o)).or_default();
    }

    let width = units.len();
    let mut system = Echelon::default();
    for k in 0..n {
        for ((t, o), cols) in &columns_of {
            let mut row = Row::new();
            for (u, p) in cols {
                for (j, x) in p.iter().enumerate().take(k + 1) {
                    if !Coeff::is_zero(x) {
                        row.insert((k - j) * width + u, x.clone());
                    }
                }
            }
            let rhs = c.coeff(t, *o, k);
            if row.is_empty() && Coeff::is_zero(&rhs) {
                continue;
            }
            if !system.push(row, rhs) {
                let partial = solve_on(probe, c, k, window, units, unknown_arity)?;
                let beta = partial.beta().cloned().expect("consistent below the first obstruction").with_qorder(n);
                let image = probe.hochschild_differential(&beta)?.truncated(window, n);
                let residual = c.truncated(window, n).sub(&image)?.q_part(k).truncated(window, 1);
                return Ok(report(probe, window, n, Coboundary::Obstructed { order: k, residual }));
            }
        }
    }
    let x = system.solve();
    let mut beta = Cochain::zero(probe.basis().clone(), c.degree() - 1, unknown_arity, n);
    for (col, v) in x {
        let (k, u) = (col / width, col % width);
        let (t, o, _) = units[u];
        beta.add_term(t, *o, k, v)?;
    }
    Ok(report(probe, window, n, Coboundary::Exact { beta }))
}

fn report(a: &AInfinityStructure<Rational>, window: usize, n: usize, outcome: Coboundary) -> CoboundaryReport {
    let top = a.top_arity().max(1);
    CoboundaryReport {
        outcome,
        equation_arity: window,
        valid_arity: (a.arity() + 1).saturating_sub(top).min(window),
        qorder: n,
    }
}
