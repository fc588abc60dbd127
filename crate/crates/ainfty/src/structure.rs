use std::sync::Arc;

use schwarz_core::{Coeff, Rational};

use crate::basis::GradedBasis;
use crate::cochain::Cochain;
use crate::error::{AinftyError, Result};

/// An A∞ structure `μ = (μ^d)` on a graded basis, stored as a degree-2
/// cochain exact through its arity cap and modulo `q^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfinityStructure<C: Coeff = Rational> {
    mu: Cochain<C>,
    deformation: bool,
}

/// Nonzero values of the A∞ relations, exact through `arity`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport<C: Coeff = Rational> {
    pub residual: Cochain<C>,
    pub arity: usize,
}

impl<C: Coeff> ResidualReport<C> {
    pub fn is_clean(&self) -> bool {
        self.residual.is_zero()
    }
}

impl<C: Coeff> AInfinityStructure<C> {
    /// `deformation` requires the curvature to vanish at `q = 0`.
    pub fn new(mu: Cochain<C>, deformation: bool) -> Result<Self> {
        if mu.degree() != 2 {
            return Err(AinftyError::CochainDegree { expected: 2, found: mu.degree() });
        }
        if deformation {
            if let Some(outs) = mu.outputs(&[]) {
                if outs.values().any(|c| !c[0].is_zero()) {
                    return Err(AinftyError::NotADeformation);
                }
            }
        }
        Ok(AInfinityStructure { mu, deformation })
    }

    /// The A∞ structure of a graded associative algebra, `μ²(a_2, a_1) =
    /// (-1)^{|a_1|} a_2 a_1`, with `product(i, j)` the expansion of
    /// `b_i b_j` in the basis.
    pub fn from_algebra(
        basis: Arc<GradedBasis>,
        arity: usize,
        qorder: usize,
        product: impl Fn(usize, usize) -> Vec<(usize, C)>,
    ) -> Result<Self> {
        let mut mu = Cochain::zero(basis.clone(), 2, arity, qorder);
        if arity >= 2 {
            for i in 0..basis.dim() {
                for j in 0..basis.dim() {
                    for (k, c) in product(i, j) {
                        let c = if basis.degree(j).rem_euclid(2) == 1 { c.neg() } else { c };
                        mu.add_term(&[i, j], k, 0, c)?;
                    }
                }
            }
        }
        Self::new(mu, true)
    }

    pub fn mu(&self) -> &Cochain<C> {
        &self.mu
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        self.mu.basis()
    }

    pub fn arity(&self) -> usize {
        self.mu.arity()
    }

    pub fn qorder(&self) -> usize {
        self.mu.qorder()
    }

    pub fn is_deformation(&self) -> bool {
        self.deformation
    }

    pub fn is_curved(&self) -> bool {
        self.mu.has_arity_zero()
    }

    /// Largest arity with a nonzero operation.
    pub fn top_arity(&self) -> usize {
        self.mu.max_arity().unwrap_or(0)
    }

    /// `μ^2(e, a) = (-1)^{|a|} a`, `μ^2(a, e) = a`, and every other
    /// operation vanishes as soon as one input is `e`.
    pub fn is_strictly_unital(&self) -> bool {
        let basis = self.basis();
        let Some(e) = basis.unit() else { return false };
        let mut expected = Cochain::zero(basis.clone(), 2, self.arity(), self.qorder());
        if self.arity() >= 2 {
            for a in 0..basis.dim() {
                let sign = if basis.degree(a).rem_euclid(2) == 1 { C::one().neg() } else { C::one() };
                if a == e {
                    expected.add_term(&[e, e], e, 0, C::one()).expect("unit has degree 0");
                } else {
                    expected.add_term(&[e, a], a, 0, sign).expect("degree matches");
                    expected.add_term(&[a, e], a, 0, C::one()).expect("degree matches");
                }
            }
        }
        self.mu.filter(|t| t.contains(&e)) == expected
    }

    pub fn is_q_constant(&self) -> bool {
        self.mu.entries().all(|(_, _, c)| c[1..].iter().all(|x| x.is_zero()))
    }

    /// Evaluates `sum ± μ(.., μ(..), ..)` on all basis tuples through
    /// `arity` and modulo `q^qorder`.
    pub fn check_a_infinity(&self, arity: usize, qorder: usize) -> ResidualReport<C> {
        let residual = self.mu.compose(&self.mu).expect("same basis").truncated(arity, qorder);
        let arity = residual.arity();
        ResidualReport { residual, arity }
    }

    /// `(δγ) = (-1)^{||γ||} γ ∘ μ - μ ∘ γ`, i.e. both sums of the standard
    /// Hochschild differential with signs `(-1)^{||γ|| + ||a_1|| + .. +
    /// ||a_i||}` and `(-1)^{||γ|| (||a_1|| + .. + ||a_i||)}`.
    pub fn hochschild_differential(&self, gamma: &Cochain<C>) -> Result<Cochain<C>> {
        let first = gamma.compose(&self.mu)?;
        let first = if gamma.reduced_degree().rem_euclid(2) == 1 { first.neg() } else { first };
        first.sub(&self.mu.compose(gamma)?)
    }

    /// `∂_q μ`, a degree-2 cocycle representing the Kaledin class.
    pub fn kaledin_representative(&self) -> Result<Cochain<C>> {
        if !self.deformation {
            return Err(AinftyError::NotADeformation);
        }
        Ok(self.mu.derivative())
    }

    pub fn truncated(&self, arity: usize, qorder: usize) -> Self {
        AInfinityStructure { mu: self.mu.truncated(arity, qorder), deformation: self.deformation }
    }

    /// The `q^0` part, as a q-constant structure with the same caps.
    pub fn constant_part(&self) -> Self {
        AInfinityStructure { mu: self.mu.q_part(0), deformation: self.deformation }
    }
}
