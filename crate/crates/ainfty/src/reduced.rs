use schwarz_core::Coeff;

use crate::cochain::Cochain;
use crate::error::{AinftyError, Result};
use crate::structure::AInfinityStructure;

/// Whether `γ` vanishes whenever the unit sits in one of the last `p`
/// input slots.
pub fn in_filtration<C: Coeff>(gamma: &Cochain<C>, p: usize) -> Result<bool> {
    let e = gamma.basis().unit().ok_or(AinftyError::NoUnit)?;
    Ok(gamma.entries().all(|(t, _, _)| !t[t.len().saturating_sub(p)..].contains(&e)))
}

/// `(h^p γ)^d(a_d, .., a_1) = (-1)^{||γ|| + ||a_1|| + .. + ||a_p||}
/// γ^{d+1}(a_d, .., a_{p+1}, e, a_p, .., a_1)`, and zero for `d < p`.
///
/// The `||γ||` in the sign matches the differential of
/// [`AInfinityStructure::hochschild_differential`]: with it,
/// `δ h^p γ + h^p δ γ ≡ γ` modulo `F^{p+1}` for `γ ∈ F^p`.
pub fn reduced_homotopy<C: Coeff>(a: &AInfinityStructure<C>, p: usize, gamma: &Cochain<C>) -> Result<Cochain<C>> {
    let e = a.basis().unit().ok_or(AinftyError::NoUnit)?;
    if !a.is_strictly_unital() {
        return Err(AinftyError::NoUnit);
    }
    if gamma.basis() != a.basis() {
        return Err(AinftyError::BasisMismatch);
    }
    if !in_filtration(gamma, p)? {
        return Err(AinftyError::NotInFiltration(p));
    }
    let basis = gamma.basis().clone();
    let odd = gamma.reduced_degree().rem_euclid(2) == 1;
    let mut out = Cochain::zero(basis.clone(), gamma.degree() - 1, gamma.arity().saturating_sub(1), gamma.qorder());
    for (t, o, c) in gamma.entries() {
        let Some(d) = t.len().checked_sub(1) else { continue };
        if d < p || t[d - p] != e {
            continue;
        }
        let tail = &t[d - p + 1..];
        let negate = odd ^ (basis.reduced_sum(tail).rem_euclid(2) == 1);
        let mut inputs = t[..d - p].to_vec();
        inputs.extend_from_slice(tail);
        out.add_unchecked(&inputs, o, c, negate);
    }
    Ok(out)
}
