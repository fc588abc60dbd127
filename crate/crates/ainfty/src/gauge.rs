use schwarz_core::Coeff;

use crate::cochain::Cochain;
use crate::error::{AinftyError, Result};
use crate::morphism::{exp_cocycle, AInfinityMorphism};
use crate::structure::AInfinityStructure;

/// Output of the gauge iteration: `morphism` maps the input deformation to
/// `structure`, which is q-constant, and carries `∂_q + α` to `∂_q +
/// connection` with `connection = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeResult<C: Coeff> {
    pub morphism: AInfinityMorphism<C>,
    pub structure: AInfinityStructure<C>,
    pub connection: Cochain<C>,
    pub steps: usize,
}

impl<C: Coeff> GaugeResult<C> {
    pub fn is_trivial(&self) -> bool {
        self.connection.is_zero() && self.structure.is_q_constant()
    }
}

/// `δα + ∂_q μ`, zero exactly when `∂_q + α` is a connection.
pub fn connection_residual<C: Coeff>(a: &AInfinityStructure<C>, alpha: &Cochain<C>) -> Result<Cochain<C>> {
    if alpha.degree() != 1 {
        return Err(AinftyError::CochainDegree { expected: 1, found: alpha.degree() });
    }
    a.hochschild_differential(alpha)?.add(&a.mu().derivative())
}

/// Repeatedly exponentiates `q^{m+1} α_m / (m+1)`, where `q^m α_m` is the
/// leading part of the current connection, and transports both the
/// structure and the connection, until the connection vanishes modulo the
/// q-order.
pub fn gauge_trivialize<C: Coeff>(a: &AInfinityStructure<C>, alpha: &Cochain<C>) -> Result<GaugeResult<C>> {
    if a.is_curved() {
        return Err(AinftyError::Curved("gauge trivialization needs an uncurved structure".into()));
    }
    let residual = connection_residual(a, alpha)?;
    if let Some((inputs, output, power, _)) = residual.first_nonzero() {
        return Err(AinftyError::NotAConnection { inputs, output, power });
    }
    let n = a.qorder();
    let mut mu = a.clone();
    let mut alpha = alpha.truncated(a.arity(), n);
    let mut morphism = AInfinityMorphism::identity(a.basis().clone(), a.arity(), n);
    let mut steps = 0;
    while let Some(m) = alpha.q_valuation() {
        let c = alpha.q_part(m).with_qorder(n).shift_q(m + 1).scale(&C::one().div_int(m as i64 + 1));
        let step = exp_cocycle(&c)?;
        alpha = step.transport_connection(&alpha)?;
        mu = step.pushforward(&mu)?;
        morphism = step.compose(&morphism)?;
        steps += 1;
        debug_assert!(alpha.q_valuation().is_none_or(|v| v > m));
    }
    Ok(GaugeResult { morphism, structure: mu, connection: alpha, steps })
}
