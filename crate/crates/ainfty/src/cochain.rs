//! Hochschild cochains: sparse multilinear maps `A^{⊗d} -> A` with
//! q-truncated coefficients.
//!
//! Input tuples are stored as written, `[a_d, ..., a_1]`, so `a_1` is the
//! last entry. A cochain of degree `s` sends a tuple of arity `d` to degree
//! `sum |a_k| + s - d`; its reduced degree as a map on `T(A[1])` is `s - 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use schwarz_core::{Coeff, Rational, TruncatedSeries};

use crate::basis::GradedBasis;
use crate::error::{AinftyError, Result};

pub type Tuple = Vec<usize>;

pub(crate) fn poly_is_zero<C: Coeff>(p: &[C]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// `acc += sign * x`, truncated to `acc.len()`.
pub(crate) fn poly_add_assign<C: Coeff>(acc: &mut [C], x: &[C], negate: bool) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a = if negate { a.sub(b) } else { a.add(b) };
        }
    }
}

/// `acc += sign * x * y`, truncated to `acc.len()`.
pub(crate) fn poly_mul_add<C: Coeff>(acc: &mut [C], x: &[C], y: &[C], negate: bool) {
    let n = acc.len();
    for (i, a) in x.iter().enumerate().take(n) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate().take(n - i) {
            if b.is_zero() {
                continue;
            }
            let p = a.mul(b);
            acc[i + j] = if negate { acc[i + j].sub(&p) } else { acc[i + j].add(&p) };
        }
    }
}

pub(crate) fn poly_mul<C: Coeff>(x: &[C], y: &[C], n: usize) -> Vec<C> {
    let mut out = vec![C::zero(); n];
    poly_mul_add(&mut out, x, y, false);
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<C: Coeff = Rational> {
    basis: Arc<GradedBasis>,
    degree: i64,
    arity: usize,
    qorder: usize,
    entries: BTreeMap<Tuple, BTreeMap<usize, Vec<C>>>,
}

impl<C: Coeff> Cochain<C> {
    /// The zero cochain of degree `degree`, exact through arity `arity` and
    /// modulo `q^qorder`.
    pub fn zero(basis: Arc<GradedBasis>, degree: i64, arity: usize, qorder: usize) -> Self {
        Cochain { basis, degree, arity, qorder, entries: BTreeMap::new() }
    }

    /// The identity map in arity one (degree 1, reduced degree 0).
    pub fn identity(basis: Arc<GradedBasis>, arity: usize, qorder: usize) -> Self {
        let mut out = Self::zero(basis.clone(), 1, arity, qorder);
        if arity >= 1 && qorder >= 1 {
            for i in 0..basis.dim() {
                out.add_term(&[i], i, 0, C::one()).expect("identity is well formed");
            }
        }
        out
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Degree as a map `T(A[1]) -> A[1]`.
    pub fn reduced_degree(&self) -> i64 {
        self.degree - 1
    }

    /// Components of arity at most this are exact.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn qorder(&self) -> usize {
        self.qorder
    }

    pub fn output_degree(&self, inputs: &[usize]) -> i64 {
        self.basis.degrees_sum(inputs) + self.degree - inputs.len() as i64
    }

    /// Adds `coeff` (a polynomial in q, truncated to the q-order) to the
    /// entry `inputs -> output`.
    pub fn insert(&mut self, inputs: &[usize], output: usize, coeff: &[C]) -> Result<()> {
        for &i in inputs.iter().chain(std::iter::once(&output)) {
            self.basis.check_index(i)?;
        }
        if inputs.len() > self.arity {
            return Err(AinftyError::Arity { arity: inputs.len(), cap: self.arity });
        }
        if poly_is_zero(&coeff[..coeff.len().min(self.qorder)]) {
            return Ok(());
        }
        let expected = self.output_degree(inputs);
        if self.basis.degree(output) != expected {
            return Err(AinftyError::Degree {
                inputs: inputs.to_vec(),
                output,
                expected,
                found: self.basis.degree(output),
            });
        }
        self.add_unchecked(inputs, output, coeff, false);
        Ok(())
    }

    pub fn insert_series(&mut self, inputs: &[usize], output: usize, s: &TruncatedSeries<C>) -> Result<()> {
        if s.terms().any(|(e, _)| e < 0) {
            return Err(AinftyError::Parse("negative powers of q".into()));
        }
        let n = s.order().max(0) as usize;
        if n < self.qorder {
            // a coefficient known to lower order lowers the cochain's order
            self.truncate_q_in_place(n);
        }
        let coeff: Vec<C> = (0..self.qorder).map(|k| s.coeff(k as i64)).collect();
        self.insert(inputs, output, &coeff)
    }

    pub fn add_term(&mut self, inputs: &[usize], output: usize, power: usize, c: C) -> Result<()> {
        if power >= self.qorder {
            return Ok(());
        }
        let mut coeff = vec![C::zero(); power + 1];
        coeff[power] = c;
        self.insert(inputs, output, &coeff)
    }

    pub(crate) fn add_unchecked(&mut self, inputs: &[usize], output: usize, coeff: &[C], negate: bool) {
        let n = self.qorder;
        let outs = self.entries.entry(inputs.to_vec()).or_default();
        let slot = outs.entry(output).or_insert_with(|| vec![C::zero(); n]);
        poly_add_assign(slot, coeff, negate);
        if poly_is_zero(slot) {
            outs.remove(&output);
            if outs.is_empty() {
                self.entries.remove(inputs);
            }
        }
    }

    /// Accumulates `sign * x * y` into an entry; no degree check.
    pub(crate) fn mul_add_unchecked(&mut self, inputs: &[usize], output: usize, x: &[C], y: &[C], negate: bool) {
        let n = self.qorder;
        let outs = self.entries.entry(inputs.to_vec()).or_default();
        let slot = outs.entry(output).or_insert_with(|| vec![C::zero(); n]);
        poly_mul_add(slot, x, y, negate);
    }

    /// Drops entries that became zero through cancellation.
    pub(crate) fn prune(&mut self) {
        self.entries.retain(|_, outs| {
            outs.retain(|_, c| !poly_is_zero(c));
            !outs.is_empty()
        });
    }

    pub fn get(&self, inputs: &[usize], output: usize) -> Option<&[C]> {
        self.entries.get(inputs).and_then(|o| o.get(&output)).map(|v| v.as_slice())
    }

    /// Coefficient of `q^power` in an entry.
    pub fn coeff(&self, inputs: &[usize], output: usize, power: usize) -> C {
        self.get(inputs, output).and_then(|p| p.get(power).cloned()).unwrap_or_else(C::zero)
    }

    /// The entries on one input tuple.
    pub fn outputs(&self, inputs: &[usize]) -> Option<&BTreeMap<usize, Vec<C>>> {
        self.entries.get(inputs)
    }

    /// All nonzero entries `(inputs, output, coefficients)` in order.
    pub fn entries(&self) -> impl Iterator<Item = (&Tuple, usize, &Vec<C>)> + '_ {
        self.entries.iter().flat_map(|(t, outs)| outs.iter().map(move |(&o, c)| (t, o, c)))
    }

    pub fn num_entries(&self) -> usize {
        self.entries.values().map(|o| o.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest arity carrying a nonzero entry.
    pub fn max_arity(&self) -> Option<usize> {
        self.entries.keys().map(|t| t.len()).max()
    }

    pub fn has_arity_zero(&self) -> bool {
        self.entries.contains_key(&Vec::new())
    }

    /// First nonzero entry and power, for diagnostics.
    pub fn first_nonzero(&self) -> Option<(Tuple, usize, usize, C)> {
        self.entries()
            .find_map(|(t, o, c)| c.iter().position(|x| !x.is_zero()).map(|k| (t.clone(), o, k, c[k].clone())))
    }

    /// Smallest power of q with a nonzero coefficient.
    pub fn q_valuation(&self) -> Option<usize> {
        self.entries().filter_map(|(_, _, c)| c.iter().position(|x| !x.is_zero())).min()
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(AinftyError::BasisMismatch);
        }
        if self.degree != other.degree {
            return Err(AinftyError::CochainDegree { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.truncated(self.arity.min(other.arity), self.qorder.min(other.qorder));
        for (t, o, c) in other.entries() {
            if t.len() <= out.arity {
                out.add_unchecked(t, o, c, negate);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map_coeffs(|c| c.mul(s))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(r))
    }

    fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(self.basis.clone(), self.degree, self.arity, self.qorder);
        for (t, o, c) in self.entries() {
            let v: Vec<C> = c.iter().map(&f).collect();
            out.add_unchecked(t, o, &v, false);
        }
        out
    }

    /// Restricts to arity at most `arity` and q-order `qorder` (neither can
    /// grow).
    pub fn truncated(&self, arity: usize, qorder: usize) -> Self {
        let arity = arity.min(self.arity);
        let qorder = qorder.min(self.qorder);
        let mut out = Self::zero(self.basis.clone(), self.degree, arity, qorder);
        for (t, o, c) in self.entries() {
            if t.len() <= arity {
                out.add_unchecked(t, o, &c[..qorder], false);
            }
        }
        out
    }

    /// Raises the q-order of a cochain whose coefficients are exact
    /// polynomials of lower degree (for instance a single `q^m` part).
    pub fn with_qorder(&self, qorder: usize) -> Self {
        let mut out = Self::zero(self.basis.clone(), self.degree, self.arity, qorder);
        for (t, o, c) in self.entries() {
            out.add_unchecked(t, o, c, false);
        }
        out
    }

    fn truncate_q_in_place(&mut self, n: usize) {
        *self = self.truncated(self.arity, n);
    }

    /// Keeps the entries whose input tuple satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&[usize]) -> bool) -> Self {
        let mut out = Self::zero(self.basis.clone(), self.degree, self.arity, self.qorder);
        for (t, o, c) in self.entries() {
            if keep(t) {
                out.add_unchecked(t, o, c, false);
            }
        }
        out
    }

    /// The coefficient of `q^m`, as a q-constant cochain.
    pub fn q_part(&self, m: usize) -> Self {
        let mut out = Self::zero(self.basis.clone(), self.degree, self.arity, self.qorder);
        for (t, o, c) in self.entries() {
            if let Some(x) = c.get(m) {
                if !x.is_zero() {
                    out.add_unchecked(t, o, std::slice::from_ref(x), false);
                }
            }
        }
        out
    }

    /// Multiplication by `q^k`.
    pub fn shift_q(&self, k: usize) -> Self {
        let mut out = Self::zero(self.basis.clone(), self.degree, self.arity, self.qorder);
        if k >= self.qorder {
            return out;
        }
        for (t, o, c) in self.entries() {
            let mut v = vec![C::zero(); k];
            v.extend_from_slice(&c[..self.qorder - k]);
            out.add_unchecked(t, o, &v, false);
        }
        out
    }

    /// `d/dq`, which lowers the q-order by one.
    pub fn derivative(&self) -> Self {
        let n = self.qorder.saturating_sub(1);
        let mut out = Self::zero(self.basis.clone(), self.degree, self.arity, n);
        for (t, o, c) in self.entries() {
            let v: Vec<C> = (0..n).map(|k| c[k + 1].scale_int(k as i64 + 1)).collect();
            out.add_unchecked(t, o, &v, false);
        }
        out
    }

    /// The insertion product
    /// `(x ∘ y)(a_d..a_1) = sum ± x(a_d, .., y(a_{i+j}..a_{i+1}), a_i, .., a_1)`
    /// with sign `(-1)^{||y|| (||a_1|| + .. + ||a_i||)}`, including
    /// insertions of an arity-zero part of `y`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.basis != inner.basis {
            return Err(AinftyError::BasisMismatch);
        }
        let curved = inner.has_arity_zero();
        let arity = if curved { self.arity.saturating_sub(1) } else { self.arity }.min(inner.arity);
        let qorder = self.qorder.min(inner.qorder);
        let mut out = Self::zero(self.basis.clone(), self.degree + inner.degree - 1, arity, qorder);
        let odd_inner = inner.reduced_degree().rem_euclid(2) == 1;

        let mut by_output: BTreeMap<usize, Vec<(&Tuple, &Vec<C>)>> = BTreeMap::new();
        for (t, o, c) in inner.entries() {
            by_output.entry(o).or_default().push((t, c));
        }
        let mut tuple = Vec::with_capacity(arity + 1);
        for (t, outs) in &self.entries {
            let p = t.len();
            // dagger[k] = reduced degrees to the right of slot k
            let mut dagger = vec![0i64; p];
            for k in (0..p.saturating_sub(1)).rev() {
                dagger[k] = dagger[k + 1] + self.basis.reduced(t[k + 1]);
            }
            for k in 0..p {
                let Some(list) = by_output.get(&t[k]) else { continue };
                let negate = odd_inner && dagger[k].rem_euclid(2) == 1;
                for (s, cin) in list {
                    if p - 1 + s.len() > arity {
                        continue;
                    }
                    tuple.clear();
                    tuple.extend_from_slice(&t[..k]);
                    tuple.extend_from_slice(s);
                    tuple.extend_from_slice(&t[k + 1..]);
                    for (&o, cout) in outs {
                        out.mul_add_unchecked(&tuple, o, cout, cin, negate);
                    }
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Graded commutator `x ∘ y - (-1)^{||x|| ||y||} y ∘ x`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let a = self.compose(other)?;
        let b = other.compose(self)?;
        if (self.reduced_degree() * other.reduced_degree()).rem_euclid(2) == 1 {
            a.add(&b)
        } else {
            a.sub(&b)
        }
    }

    /// Equality of the parts both cochains know exactly.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let arity = self.arity.min(other.arity);
        let qorder = self.qorder.min(other.qorder);
        self.basis == other.basis
            && self.degree == other.degree
            && self.truncated(arity, qorder).entries == other.truncated(arity, qorder).entries
    }

    pub fn entry_series(&self, inputs: &[usize], output: usize) -> TruncatedSeries<C> {
        let coeffs = match self.get(inputs, output) {
            Some(c) => c.to_vec(),
            None => vec![C::zero(); self.qorder],
        };
        TruncatedSeries::from_coeffs("q", 0, self.qorder as i64, coeffs)
    }
}

impl fmt::Display for Cochain<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (t, o, _) in self.entries() {
            let names: Vec<&str> = t.iter().map(|&i| self.basis.name(i)).collect();
            writeln!(f, "({}) -> {}: {}", names.join(", "), self.basis.name(o), self.entry_series(t, o))?;
        }
        Ok(())
    }
}
