//! A∞ morphisms `F = (F^d)_{d ≥ 1}` between structures on the same graded
//! basis, stored as a degree-1 cochain (reduced degree 0).

use std::sync::Arc;

use schwarz_core::{Coeff, Rational};

use crate::basis::GradedBasis;
use crate::cochain::{poly_add_assign, poly_is_zero, poly_mul, Cochain, Tuple};
use crate::error::{AinftyError, Result};
use crate::structure::AInfinityStructure;

#[derive(Clone, Debug, PartialEq)]
pub struct AInfinityMorphism<C: Coeff = Rational> {
    map: Cochain<C>,
}

type Matrix<C> = Vec<Vec<Vec<C>>>;

impl<C: Coeff> AInfinityMorphism<C> {
    pub fn new(map: Cochain<C>) -> Result<Self> {
        if map.degree() != 1 {
            return Err(AinftyError::CochainDegree { expected: 1, found: map.degree() });
        }
        if map.has_arity_zero() {
            return Err(AinftyError::Curved("morphisms have no arity-zero term".into()));
        }
        Ok(AInfinityMorphism { map })
    }

    pub fn identity(basis: Arc<GradedBasis>, arity: usize, qorder: usize) -> Self {
        AInfinityMorphism { map: Cochain::identity(basis, arity, qorder) }
    }

    pub fn map(&self) -> &Cochain<C> {
        &self.map
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        self.map.basis()
    }

    pub fn arity(&self) -> usize {
        self.map.arity()
    }

    pub fn qorder(&self) -> usize {
        self.map.qorder()
    }

    /// `F - id`.
    pub fn deviation(&self) -> Cochain<C> {
        let id = Cochain::identity(self.basis().clone(), self.arity(), self.qorder());
        self.map.sub(&id).expect("same space")
    }

    pub fn is_identity(&self) -> bool {
        self.deviation().is_zero()
    }

    /// `F ≡ id` modulo `q^k`.
    pub fn is_identity_mod(&self, k: usize) -> bool {
        self.deviation().q_valuation().is_none_or(|v| v >= k)
    }

    /// The insertion map `γ ↦ F ∘ γ`,
    /// `sum ± F(a_d, .., γ(a_{i+j}..a_{i+1}), .., a_1)`.
    pub fn back(&self, gamma: &Cochain<C>) -> Result<Cochain<C>> {
        self.map.compose(gamma)
    }

    /// `γ ↦ sum γ^k(F^{i_k}(..), .., F^{i_1}(..))` over all splittings of the
    /// inputs into consecutive blocks.
    pub fn forth(&self, gamma: &Cochain<C>) -> Result<Cochain<C>> {
        if self.basis() != gamma.basis() {
            return Err(AinftyError::BasisMismatch);
        }
        let arity = self.arity().min(gamma.arity());
        let qorder = self.qorder().min(gamma.qorder());
        let mut out = Cochain::zero(self.basis().clone(), gamma.degree(), arity, qorder);
        let index = self.by_output();
        for (b, o, c) in gamma.entries() {
            self.expand(&index, b, None, |t, coeff| out.mul_add_unchecked(t, o, coeff, c, false), arity, qorder);
        }
        out.prune();
        Ok(out)
    }

    fn by_output(&self) -> Vec<Vec<(&Tuple, &Vec<C>)>> {
        let mut index = vec![Vec::new(); self.basis().dim()];
        for (t, o, c) in self.map.entries() {
            index[o].push((t, c));
        }
        index
    }

    /// Enumerates `F^{i_k}(block_k) ⊗ .. ⊗ F^{i_1}(block_1)` hitting the
    /// tuple `b`, calling `emit(blocks concatenated, product)` for each
    /// combination of total arity at most `arity` (exactly `exact` if set).
    fn expand(
        &self,
        index: &[Vec<(&Tuple, &Vec<C>)>],
        b: &[usize],
        exact: Option<usize>,
        mut emit: impl FnMut(&[usize], &[C]),
        arity: usize,
        qorder: usize,
    ) {
        if b.is_empty() {
            if exact.is_none_or(|d| d == 0) {
                let mut one = vec![C::zero(); qorder];
                if qorder > 0 {
                    one[0] = C::one();
                }
                emit(&[], &one);
            }
            return;
        }
        let max_len = exact.unwrap_or(arity).min(arity);
        let mut tuple = Vec::with_capacity(max_len);
        let mut one = vec![C::zero(); qorder];
        if qorder > 0 {
            one[0] = C::one();
        }
        #[allow(clippy::too_many_arguments)]
        fn rec<C: Coeff>(
            index: &[Vec<(&Tuple, &Vec<C>)>],
            b: &[usize],
            pos: usize,
            tuple: &mut Vec<usize>,
            prod: &[C],
            max_len: usize,
            exact: Option<usize>,
            qorder: usize,
            emit: &mut dyn FnMut(&[usize], &[C]),
        ) {
            if pos == b.len() {
                if exact.is_none_or(|d| d == tuple.len()) {
                    emit(tuple, prod);
                }
                return;
            }
            let remaining = b.len() - pos - 1;
            for (block, c) in &index[b[pos]] {
                if tuple.len() + block.len() + remaining > max_len {
                    continue;
                }
                let next = poly_mul(prod, c, qorder);
                if poly_is_zero(&next) {
                    continue;
                }
                let len = tuple.len();
                tuple.extend_from_slice(block);
                rec(index, b, pos + 1, tuple, &next, max_len, exact, qorder, emit);
                tuple.truncate(len);
            }
        }
        rec(index, b, 0, &mut tuple, &one, max_len, exact, qorder, &mut emit);
    }

    /// The arity-one part as a matrix `m[output][input]`.
    fn linear_part(&self) -> Matrix<C> {
        let n = self.basis().dim();
        let q = self.qorder();
        let mut m = vec![vec![vec![C::zero(); q]; n]; n];
        for (t, o, c) in self.map.entries() {
            if t.len() == 1 {
                m[o][t[0]] = c.clone();
            }
        }
        m
    }

    /// Inverse of the arity-one part over q-truncated series.
    fn linear_inverse(&self) -> Result<Matrix<C>> {
        let m = self.linear_part();
        let n = m.len();
        let q = self.qorder();
        if q == 0 {
            return Ok(vec![vec![Vec::new(); n]; n]);
        }
        let m0: Vec<Vec<C>> = m.iter().map(|row| row.iter().map(|c| c[0].clone()).collect()).collect();
        let inv0 = invert_matrix(&m0).ok_or(AinftyError::NotInvertible)?;
        // X_k = inv0 (δ_{k0} - sum_{l ≥ 1} M_l X_{k-l})
        let mut x: Vec<Vec<Vec<C>>> = Vec::with_capacity(q);
        for k in 0..q {
            let mut rhs = vec![vec![C::zero(); n]; n];
            if k == 0 {
                for (i, row) in rhs.iter_mut().enumerate() {
                    row[i] = C::one();
                }
            }
            for l in 1..=k {
                for i in 0..n {
                    for j in 0..n {
                        let mut s = C::zero();
                        for r in 0..n {
                            let a = &m[i][r][l];
                            if !a.is_zero() {
                                s = s.add(&a.mul(&x[k - l][r][j]));
                            }
                        }
                        rhs[i][j] = rhs[i][j].sub(&s);
                    }
                }
            }
            x.push(mat_mul(&inv0, &rhs));
        }
        Ok((0..n).map(|i| (0..n).map(|j| (0..q).map(|k| x[k][i][j].clone()).collect()).collect()).collect())
    }

    /// The unique `γ` with `forth(γ) = y`, built arity by arity using the
    /// inverse of `F^1`.
    pub fn solve_forth(&self, y: &Cochain<C>) -> Result<Cochain<C>> {
        if self.basis() != y.basis() {
            return Err(AinftyError::BasisMismatch);
        }
        let inv = self.linear_inverse()?;
        let arity = self.arity().min(y.arity());
        let qorder = self.qorder().min(y.qorder());
        let dim = self.basis().dim();
        // rows of the inverse: a -> [(b, G[a][b])]
        let rows: Vec<Vec<(usize, Vec<C>)>> = (0..dim)
            .map(|a| {
                (0..dim)
                    .filter(|&b| !poly_is_zero(&inv[a][b][..qorder]))
                    .map(|b| (b, inv[a][b][..qorder].to_vec()))
                    .collect()
            })
            .collect();
        let index = self.by_output();
        let mut gamma = Cochain::zero(self.basis().clone(), y.degree(), arity, qorder);
        if let Some(outs) = y.outputs(&[]) {
            for (&o, c) in outs {
                gamma.add_unchecked(&[], o, c, false);
            }
        }
        for d in 1..=arity {
            // z = y_d - (terms of forth(γ) from components of arity < d)
            let mut z = Cochain::zero(self.basis().clone(), y.degree(), arity, qorder);
            for (t, o, c) in y.entries() {
                if t.len() == d {
                    z.add_unchecked(t, o, c, false);
                }
            }
            for (b, o, c) in gamma.entries() {
                self.expand(&index, b, Some(d), |t, coeff| z.mul_add_unchecked(t, o, coeff, c, true), arity, qorder);
            }
            z.prune();
            let mut new = Vec::new();
            for (a, o, c) in z.entries() {
                expand_rows(&rows, a, c, qorder, &mut |b, coeff| new.push((b.to_vec(), o, coeff.to_vec())));
            }
            for (b, o, c) in new {
                gamma.add_unchecked(&b, o, &c, false);
            }
        }
        gamma.prune();
        Ok(gamma)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        Ok(AInfinityMorphism { map: inner.forth(&self.map)? })
    }

    pub fn inverse(&self) -> Result<Self> {
        let id = Cochain::identity(self.basis().clone(), self.arity(), self.qorder());
        Ok(AInfinityMorphism { map: self.solve_forth(&id)? })
    }

    /// The structure `μ̃` on the target making `F: (A, μ) -> (A, μ̃)` a
    /// morphism: `forth(μ̃) = back(μ)`.
    pub fn pushforward(&self, source: &AInfinityStructure<C>) -> Result<AInfinityStructure<C>> {
        let mu = self.solve_forth(&self.back(source.mu())?)?;
        AInfinityStructure::new(mu, source.is_deformation())
    }

    /// The structure `μ` on the source making `F: (A, μ) -> (A, μ̃)` a
    /// morphism.
    pub fn pullback(&self, target: &AInfinityStructure<C>) -> Result<AInfinityStructure<C>> {
        self.inverse()?.pushforward(target)
    }

    /// `back(μ) - forth(μ̃)`, zero exactly when `F` is a morphism.
    pub fn morphism_residual(
        &self,
        source: &AInfinityStructure<C>,
        target: &AInfinityStructure<C>,
    ) -> Result<Cochain<C>> {
        self.back(source.mu())?.sub(&self.forth(target.mu())?)
    }

    /// Transports the pre-connection `∂_q + α` on the source to the target:
    /// the unique `α̃` with `forth(α̃) = back(α) - ∂_q F`.
    pub fn transport_connection(&self, alpha: &Cochain<C>) -> Result<Cochain<C>> {
        if alpha.degree() != 1 {
            return Err(AinftyError::CochainDegree { expected: 1, found: alpha.degree() });
        }
        let rhs = self.back(alpha)?.sub(&self.map.derivative())?;
        self.solve_forth(&rhs)
    }
}

fn expand_rows<C: Coeff>(
    rows: &[Vec<(usize, Vec<C>)>],
    a: &[usize],
    c: &[C],
    qorder: usize,
    emit: &mut dyn FnMut(&[usize], &[C]),
) {
    fn rec<C: Coeff>(
        rows: &[Vec<(usize, Vec<C>)>],
        a: &[usize],
        pos: usize,
        tuple: &mut Vec<usize>,
        prod: &[C],
        qorder: usize,
        emit: &mut dyn FnMut(&[usize], &[C]),
    ) {
        if pos == a.len() {
            emit(tuple, prod);
            return;
        }
        for (b, g) in &rows[a[pos]] {
            let next = poly_mul(prod, g, qorder);
            if poly_is_zero(&next) {
                continue;
            }
            tuple.push(*b);
            rec(rows, a, pos + 1, tuple, &next, qorder, emit);
            tuple.pop();
        }
    }
    let mut tuple = Vec::with_capacity(a.len());
    let mut start = vec![C::zero(); qorder];
    poly_add_assign(&mut start, c, false);
    rec(rows, a, 0, &mut tuple, &start, qorder, emit);
}

fn mat_mul<C: Coeff>(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = a.len();
    let mut out = vec![vec![C::zero(); n]; n];
    for i in 0..n {
        for r in 0..n {
            if a[i][r].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[r][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][r].mul(&b[r][j]));
                }
            }
        }
    }
    out
}

/// Gauss-Jordan inversion; pivots must be units of the coefficient ring.
fn invert_matrix<C: Coeff>(m: &[Vec<C>]) -> Option<Vec<Vec<C>>> {
    let n = m.len();
    let mut a: Vec<Vec<C>> = m.to_vec();
    let mut inv: Vec<Vec<C>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect()).collect();
    for col in 0..n {
        let (p, pinv) = (col..n).find_map(|r| a[r][col].inverse().map(|x| (r, x)))?;
        a.swap(col, p);
        inv.swap(col, p);
        for j in 0..n {
            a[col][j] = a[col][j].mul(&pinv);
            inv[col][j] = inv[col][j].mul(&pinv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                    inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
                }
            }
        }
    }
    Some(inv)
}

/// The automorphism `exp` of the coderivation of a degree-1 cochain `c`
/// with `c ≡ 0 mod q`: components `sum_n R^n(id) / n!` with
/// `R(x) = x ∘ c`, a finite sum modulo `q^N`.
pub fn exp_cocycle<C: Coeff>(c: &Cochain<C>) -> Result<AInfinityMorphism<C>> {
    if c.degree() != 1 {
        return Err(AinftyError::CochainDegree { expected: 1, found: c.degree() });
    }
    if c.has_arity_zero() {
        return Err(AinftyError::Curved("exponentiated cochains have no arity-zero term".into()));
    }
    if c.q_valuation() == Some(0) {
        return Err(AinftyError::QOrderZero);
    }
    let mut map = Cochain::identity(c.basis().clone(), c.arity(), c.qorder());
    let mut term = map.clone();
    for n in 1..c.qorder().max(1) {
        term = term.compose(c)?.scale(&C::one().div_int(n as i64));
        if term.is_zero() {
            break;
        }
        map = map.add(&term)?;
    }
    AInfinityMorphism::new(map)
}
