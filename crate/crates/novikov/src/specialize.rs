//! Collapsing the Novikov ring to `t`-graded power series.

use schwarz_core::schwarzian::Weighted;
use schwarz_core::{Coeff, Series};

use crate::bfield::{BField, LSeries};
use crate::derivation::DerivationData;
use crate::element::NovikovElement;
use crate::error::Result;
use crate::laurent::LaurentPoly;

/// `K(q^A) = t^{m(A)} q^{e(A)}`. The series has order `cap + 1`.
pub fn specialize(f: &NovikovElement) -> Result<Weighted> {
    let lattice = f.lattice();
    let order = f.cap() + 1;
    let lo = f.valuation().unwrap_or(0).min(0);
    let mut s = Series::zero("q", lo, order.max(lo));
    for (a, c) in f.terms() {
        let e = lattice.level(a);
        s = s.try_add(&Series::monomial("q", e, c.clone(), order))?;
    }
    Ok(Weighted { t_pow: f.degree() / 2, series: s })
}

/// `K_B(q^A) = t^{m(A)} q^{e(A)} q_1^{D_1 A} .. q_r^{D_r A} exp(B . A)`.
pub fn specialize_b(f: &NovikovElement, field: &BField) -> Result<(i64, LSeries)> {
    let lattice = f.lattice();
    let order = f.cap() + 1;
    let lo = f.valuation().unwrap_or(0).min(0);
    let mut s = LSeries::zero("q", lo, order.max(lo));
    for (a, c) in f.terms() {
        let e = lattice.level(a);
        let mono = LSeries::monomial("q", e, LaurentPoly::monomial(&lattice.divisors(a), c.clone()), order);
        let twist = field.pair(lattice, a).truncate(order - e).exp()?;
        s = s.try_add(&mono.try_mul(&twist)?)?;
    }
    Ok((f.degree() / 2, s))
}

/// When every class of `z` lies in the span of `[dE]` and `[M]`, the
/// series `(psi, eta)` with `q^-1 [dE] = psi K(z) - eta [M]`.
pub fn pencil_data(z: &DerivationData) -> Result<Option<(Series, Series)>> {
    if !z.classes_in_span() {
        return Ok(None);
    }
    let lattice = z.lattice();
    let order = z.cap() + 1;
    let mut de = Series::zero("q", -1, order);
    let mut m = Series::zero("q", -1, order);
    for (a, c) in z.terms() {
        let e = lattice.level(a);
        de = de.try_add(&Series::monomial("q", e, c.de.clone(), order))?;
        m = m.try_add(&Series::monomial("q", e, c.m.clone(), order))?;
    }
    let psi = de.shift(1).invert()?;
    let eta = psi.try_mul(&m)?;
    Ok(Some((psi.normalized(), eta.normalized())))
}

/// Converts a rational series to one with constant Laurent coefficients.
pub fn lift(s: &Series) -> LSeries {
    s.map_coeffs(LaurentPoly::from_rational)
}
