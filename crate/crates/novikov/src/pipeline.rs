//! From two-point and three-point data to the specialized `f` and `g_k`.

use std::sync::Arc;

use schwarz_core::lefschetz::PencilSeriesData;
use schwarz_core::schwarzian::{schwarzian, Weighted};
use schwarz_core::{int, ratio, Rational, Series};

use crate::derivation::DerivationData;
use crate::element::NovikovElement;
use crate::error::{NovikovError, Result};
use crate::lattice::{ClassVector, LatticeSpec};
use crate::specialize::{pencil_data, specialize};

#[derive(Clone, Debug)]
pub struct MainResult {
    pub f_lambda: NovikovElement,
    pub g_lambda: Vec<NovikovElement>,
    /// `K(f_lambda)`, of `t`-weight 0.
    pub f: Series,
    /// `K(g_lambda_k)`.
    pub g: Vec<Series>,
    /// `(psi, eta)` when every class of `z1` lies in the span of `[dE]`
    /// and `[M]`; the checks on `f` and `g` were then run.
    pub pencil: Option<(Series, Series)>,
}

/// `g_lambda_k` flat through `q^{A_k}`, `f_lambda` solving
/// `S f = -8 z2` in degree 0, both known through level `cap`.
pub fn theorem_main_pipeline(z1: &DerivationData, z2: &NovikovElement, cap: i64) -> Result<MainResult> {
    let lattice = z1.lattice();
    if z2.degree() != 4 {
        return Err(NovikovError::Degree { expected: 4, found: z2.degree() });
    }
    let g_lambda = lattice
        .a_basis
        .iter()
        .map(|a| z1.solve_flat(&NovikovElement::monomial(lattice, a, int(1), 0)?, cap))
        .collect::<Result<Vec<_>>>()?;
    let target = z2.scale(&int(-8)).truncate(cap - 3);
    let f_lambda = z1.solve_schwarzian(&target, 0)?;
    let f = weight_zero(specialize(&f_lambda)?)?;
    let g = g_lambda.iter().map(|x| specialize(x).and_then(weight_zero)).collect::<Result<Vec<_>>>()?;
    let pencil = pencil_data(z1)?;
    if let Some((psi, eta)) = &pencil {
        for (k, gk) in g.iter().enumerate() {
            if !gk.agrees_with(&Series::one("q", gk.order())) {
                return Err(NovikovError::Check(format!("K(g_{}) is not 1", k + 1)));
            }
        }
        let z2q = specialize(z2)?.series;
        let residual = schwarz_equation_residual(&f, &z2q, psi, eta)?;
        if !residual.is_zero() {
            return Err(NovikovError::Check(format!("f misses the Schwarzian equation: {residual}")));
        }
    }
    Ok(MainResult { f_lambda, g_lambda, f, g, pencil })
}

fn weight_zero(w: Weighted) -> Result<Series> {
    if w.t_pow != 0 {
        return Err(NovikovError::Degree { expected: 0, found: 2 * w.t_pow });
    }
    Ok(w.series)
}

/// `S f + 8 z2 psi^2 + h' + h^2/2` with `h = eta - psi'/psi`.
pub fn schwarz_equation_residual(f: &Series, z2: &Series, psi: &Series, eta: &Series) -> Result<Series> {
    let h = eta.try_sub(&psi.derivative().try_div(psi)?)?;
    let terms = schwarzian(f)?
        .try_add(&z2.try_mul(&psi.try_mul(psi)?)?.scale_rational(&int(8)))?
        .try_add(&h.derivative())?
        .try_add(&h.try_mul(&h)?.scale_rational(&ratio(1, 2)))?;
    Ok(terms)
}

/// Pencil data as Novikov data on the rank-2 lattice with coordinates
/// `(m, e)`: `z1 = psi^-1 (q^-1 [dE] + eta [M])` and `z2 = K^-1(z2)`.
/// Both are known through level `cap`.
pub fn embed_pencil_data(data: &PencilSeriesData, cap: i64) -> Result<(DerivationData, NovikovElement)> {
    let lattice = Arc::new(LatticeSpec::standard(0));
    let psi_inv = data.psi.invert()?;
    let m_part = psi_inv.try_mul(&data.eta)?;
    let need = |s: &Series, e: i64, what: &str| -> Result<Rational> {
        s.get(e).ok_or_else(|| NovikovError::Precision(format!("{what} unknown at q^{e}")))
    };
    let mut z1_terms = Vec::new();
    for level in -1..=cap {
        let class =
            ClassVector { de: need(&psi_inv, level + 1, "psi^-1")?, m: need(&m_part, level, "psi^-1 eta")?, d: vec![] };
        if !class.is_zero() {
            z1_terms.push((vec![1, level], class));
        }
    }
    let z1 = DerivationData::new(&lattice, cap, z1_terms)?;
    let mut z2 = NovikovElement::zero(&lattice, 4, cap)?;
    for level in 0..=cap {
        z2.add_term(&[2, level], need(&data.z2, level, "z2")?)?;
    }
    Ok((z1, z2))
}
