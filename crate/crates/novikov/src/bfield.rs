//! B-field twists: normalizing the twisted two-point series and the change
//! of variables that undoes the twist.

use schwarz_core::{int, Coeff, Rational, Series, TruncatedSeries};

use crate::derivation::DerivationData;
use crate::error::{NovikovError, Result};
use crate::lattice::{ClassVector, LatticeSpec};
use crate::laurent::LaurentPoly;

/// Series in `q` over `Q[q_1^{+-1}, .., q_r^{+-1}]`.
pub type LSeries = TruncatedSeries<LaurentPoly>;

/// `B = b [dE] + b_1 D_1 + .. + b_r D_r`, all without constant term.
#[derive(Clone, Debug, PartialEq)]
pub struct BField {
    pub b: LSeries,
    pub b_d: Vec<LSeries>,
}

fn no_constant(s: &LSeries, what: &str) -> Result<()> {
    if s.var() != "q" {
        return Err(NovikovError::Derivation(format!("{what} is not a series in q")));
    }
    if s.valuation().is_some_and(|v| v < 1) {
        return Err(NovikovError::Derivation(format!("{what} has a term below q^1")));
    }
    Ok(())
}

impl BField {
    pub fn new(b: LSeries, b_d: Vec<LSeries>) -> Result<Self> {
        no_constant(&b, "b")?;
        for (k, s) in b_d.iter().enumerate() {
            no_constant(s, &format!("b_{}", k + 1))?;
        }
        Ok(Self { b, b_d })
    }

    pub fn zero(r: usize, order: i64) -> Self {
        Self { b: LSeries::zero("q", 0, order), b_d: vec![LSeries::zero("q", 0, order); r] }
    }

    pub fn order(&self) -> i64 {
        self.b_d.iter().map(|s| s.order()).fold(self.b.order(), i64::min)
    }

    pub fn is_zero(&self) -> bool {
        self.b.is_zero() && self.b_d.iter().all(|s| s.is_zero())
    }

    /// `B . A = e(A) b + sum D_k(A) b_k`.
    pub fn pair(&self, lattice: &LatticeSpec, a: &[i64]) -> LSeries {
        let mut out = self.b.scale_rational(&int(lattice.level(a)));
        for (k, s) in self.b_d.iter().enumerate() {
            out = &out + &s.scale_rational(&int(lattice.divisor(k, a)));
        }
        out
    }

    /// The coefficient of `q^k` as a class vector (with zero `[M]` part).
    pub fn coeff_class(&self, k: i64) -> ClassVector<LaurentPoly> {
        ClassVector { de: self.b.coeff(k), m: LaurentPoly::zero(), d: self.b_d.iter().map(|s| s.coeff(k)).collect() }
    }

    pub fn truncate(&self, order: i64) -> Self {
        Self { b: self.b.truncate(order), b_d: self.b_d.iter().map(|s| s.truncate(order)).collect() }
    }
}

/// A class vector with series coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassSeries {
    pub de: LSeries,
    pub m: LSeries,
    pub d: Vec<LSeries>,
}

impl ClassSeries {
    pub fn zero(r: usize, lo: i64, order: i64) -> Self {
        let z = LSeries::zero("q", lo, order);
        Self { de: z.clone(), m: z.clone(), d: vec![z; r] }
    }

    pub fn coeff(&self, k: i64) -> ClassVector<LaurentPoly> {
        ClassVector { de: self.de.coeff(k), m: self.m.coeff(k), d: self.d.iter().map(|s| s.coeff(k)).collect() }
    }

    fn components(&self) -> impl Iterator<Item = &LSeries> {
        [&self.de, &self.m].into_iter().chain(&self.d)
    }

    pub fn order(&self) -> i64 {
        self.components().map(|s| s.order()).min().expect("two components")
    }

    pub fn is_zero(&self) -> bool {
        self.components().all(|s| s.is_zero())
    }

    fn add_scaled(&mut self, class: &ClassVector, s: &LSeries) -> Result<()> {
        self.de = self.de.try_add(&s.scale_rational(&class.de))?;
        self.m = self.m.try_add(&s.scale_rational(&class.m))?;
        for (dk, ck) in self.d.iter_mut().zip(&class.d) {
            *dk = dk.try_add(&s.scale_rational(ck))?;
        }
        Ok(())
    }
}

/// `z_B = sum_A z_A Q^A exp(B . A)` to the given order.
pub fn twisted_sum(z: &DerivationData, field: &BField, order: i64) -> Result<ClassSeries> {
    let lattice = z.lattice();
    let mut out = ClassSeries::zero(lattice.r(), -1, order);
    for (a, class) in z.terms() {
        let e = lattice.level(a);
        if e >= order {
            continue;
        }
        let mono = LSeries::monomial("q", e, LaurentPoly::monomial(&lattice.divisors(a), int(1)), order);
        let twist = field.pair(lattice, a).truncate(order - e).exp()?;
        out.add_scaled(class, &mono.try_mul(&twist)?)?;
    }
    Ok(out)
}

/// `Phi_k(X) = X - (1/k)(X . A*) [dE]`.
pub fn phi<C: Coeff>(lattice: &LatticeSpec, k: &Rational, x: &ClassVector<C>) -> ClassVector<C> {
    let pairing = lattice.pair(x, &lattice.a_star);
    let mut out = x.clone();
    out.de = out.de.sub(&pairing.scale(&k.recip()));
    out
}

/// A B-field satisfying `q^-1 [dE] + d_q B = psi z_B - eta [M]`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedBField {
    pub field: BField,
    pub psi: LSeries,
    pub eta: LSeries,
}

/// Builds the `psi = 1` normalization order by order, so that the defining
/// relation holds through `q^cap`. Needs `z` known through level `cap`.
pub fn b_field_normalize(z: &DerivationData, cap: i64) -> Result<NormalizedBField> {
    let lattice = z.lattice();
    if z.cap() < cap {
        return Err(NovikovError::Precision(format!("derivation data known through level {} < {cap}", z.cap())));
    }
    let r = lattice.r();
    let mut field = BField::zero(r, cap + 2);
    let mut eta = LSeries::zero("q", 0, cap + 1);
    for k in 1..=cap + 1 {
        let current = field.truncate(k + 1);
        let residual = twisted_sum(z, &current, k)?.coeff(k - 1);
        let eta_k = residual.m.clone();
        let mut x = residual;
        x.m = LaurentPoly::zero();
        let bk = phi(lattice, &int(-1 - k), &x).map(|c| c.div_int(k));
        eta = eta.try_add(&LSeries::monomial("q", k - 1, eta_k, cap + 1))?;
        field.b = field.b.try_add(&LSeries::monomial("q", k, bk.de, cap + 2))?;
        for (s, c) in field.b_d.iter_mut().zip(bk.d) {
            *s = s.try_add(&LSeries::monomial("q", k, c, cap + 2))?;
        }
    }
    Ok(NormalizedBField { field, psi: LSeries::one("q", cap + 2), eta })
}

/// `-d_q Omega_B - psi z_B + eta [M]`, which vanishes through the returned
/// order exactly when the normalization condition holds there.
pub fn normalization_residual(z: &DerivationData, nb: &NormalizedBField, order: i64) -> Result<ClassSeries> {
    let zb = twisted_sum(z, &nb.field, order)?;
    let psi = &nb.psi;
    let q_inv = LSeries::monomial("q", -1, LaurentPoly::one(), order);
    Ok(ClassSeries {
        de: q_inv.try_add(&nb.field.b.derivative())?.try_sub(&psi.try_mul(&zb.de)?)?,
        m: nb.eta.try_sub(&psi.try_mul(&zb.m)?)?,
        d: nb
            .field
            .b_d
            .iter()
            .zip(&zb.d)
            .map(|(b, zd)| b.derivative().try_sub(&psi.try_mul(zd)?))
            .collect::<Result<_, _>>()?,
    })
}

/// `(B, psi, eta) -> (B(gamma) + log(gamma/q) [dE], psi(gamma) gamma', eta(gamma) gamma')`
/// for `gamma` in `q + q^2 (...)`.
pub fn beta_change(nb: &NormalizedBField, gamma: &LSeries) -> Result<NormalizedBField> {
    if gamma.valuation() != Some(1) || gamma.coeff(1) != LaurentPoly::one() {
        return Err(NovikovError::Derivation("gamma must start with q".into()));
    }
    let dgamma = gamma.derivative();
    let log_ratio = gamma.shift(-1).log()?;
    let field = BField {
        b: nb.field.b.compose(gamma)?.try_add(&log_ratio)?,
        b_d: nb.field.b_d.iter().map(|s| s.compose(gamma)).collect::<Result<_, _>>()?,
    };
    Ok(NormalizedBField {
        field,
        psi: nb.psi.compose(gamma)?.try_mul(&dgamma)?,
        eta: nb.eta.compose(gamma)?.try_mul(&dgamma)?,
    })
}

/// The substitution `q -> g = q e^phi`, `q_k -> g_k = e^{phi_k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChangeOfVariables {
    pub phi: Series,
    pub phi_d: Vec<Series>,
}

impl ChangeOfVariables {
    pub fn g(&self) -> Result<Series> {
        Ok(self.phi.exp()?.shift(1))
    }

    pub fn g_d(&self) -> Result<Vec<Series>> {
        self.phi_d.iter().map(|p| p.exp().map_err(Into::into)).collect()
    }

    /// `sum c q^n q^d -> sum c q^n exp(n phi + d . phi_k)`. The order of
    /// `x` is preserved up to the order of `phi`.
    pub fn apply(&self, x: &LSeries) -> Result<Series> {
        let order = x.order().min(x.valuation().unwrap_or(0).min(0) + self.phi.order());
        let lo = x.valuation().unwrap_or(0).min(0);
        let mut out = Series::zero(x.var(), lo, order.max(lo));
        let r = self.phi_d.len();
        for (n, poly) in x.terms() {
            if n >= order {
                break;
            }
            let rel = order - n;
            for (d, c) in poly.terms_padded(r) {
                if d.len() > r {
                    return Err(NovikovError::Derivation("Laurent exponent beyond the B-field rank".into()));
                }
                let mut exponent = self.phi.scale_rational(&int(n)).truncate(rel);
                for (p, dk) in self.phi_d.iter().zip(&d) {
                    exponent = exponent.try_add(&p.scale_rational(&int(*dk)).truncate(rel))?;
                }
                out = out.try_add(&exponent.exp()?.scale_rational(c).shift(n))?;
            }
        }
        Ok(out)
    }
}

/// Solves `phi = -b(q e^phi, e^{phi_k})`, `phi_k = -b_k(..)` order by
/// order. Each pass fixes one more coefficient; the result has order
/// `min(cap + 1, order of B)`.
pub fn change_of_variables(field: &BField, cap: i64) -> Result<ChangeOfVariables> {
    let order = (cap + 1).min(field.order());
    let r = field.b_d.len();
    let mut cv = ChangeOfVariables { phi: Series::zero("q", 0, order), phi_d: vec![Series::zero("q", 0, order); r] };
    for _ in 0..order {
        let next = ChangeOfVariables {
            phi: -cv.apply(&field.b.truncate(order))?,
            phi_d: field.b_d.iter().map(|b| cv.apply(&b.truncate(order)).map(|s| -s)).collect::<Result<_>>()?,
        };
        if next == cv {
            break;
        }
        cv = next;
    }
    Ok(cv)
}
