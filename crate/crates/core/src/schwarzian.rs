//! The Schwarzian derivative and the order-by-order solvers around it.

use crate::error::{Result, SeriesError};
use crate::ring::{ratio, Coeff, Rational};
use crate::series::TruncatedSeries;

type Series = TruncatedSeries<Rational>;

/// `S f = (f''/f')' - (f''/f')^2 / 2`. Needs `f'` invertible; the order
/// drops by three.
pub fn schwarzian(f: &Series) -> Result<Series> {
    let d1 = f.derivative();
    match d1.valuation() {
        Some(0) => {}
        _ => return Err(SeriesError::Domain("schwarzian: f' is not a unit".into())),
    }
    let r = d1.derivative().try_mul(&d1.invert()?)?;
    let half = ratio(1, 2);
    Ok(&r.derivative() - &(&r * &r).scale_rational(&half))
}

/// The inputs of `S f + g = 0` with `f = a1 q + a2 q^2 + ...`.
#[derive(Clone, Debug)]
pub struct SchwarzianProblem {
    pub g: Series,
    pub a1: Rational,
    pub a2: Rational,
}

impl SchwarzianProblem {
    pub fn new(g: Series, a1: Rational, a2: Rational) -> Result<Self> {
        if a1.is_zero() {
            return Err(SeriesError::Domain("a1 must be nonzero".into()));
        }
        Ok(Self { g, a1, a2 })
    }
}

fn power_series_coeffs(s: &Series, what: &str) -> Result<Vec<Rational>> {
    if let Some(v) = s.valuation() {
        if v < 0 {
            return Err(SeriesError::Domain(format!("{what}: negative exponent q^{v}")));
        }
    }
    Ok((0..s.order().max(0)).map(|e| s.coeff(e)).collect())
}

/// Solves `S f + g = 0` for `f = a1 q + a2 q^2 + ...`. With `u = f''/f'`
/// the equation is the Riccati recursion `u' = u^2/2 - g`, after which
/// `f = a1 * integral(exp(integral u))`. For `g` of order `N` the result
/// has order `N + 3`.
pub fn solve_schwarzian(p: &SchwarzianProblem) -> Result<Series> {
    if p.a1.is_zero() {
        return Err(SeriesError::Domain("a1 must be nonzero".into()));
    }
    let var = p.g.var().to_string();
    let g = power_series_coeffs(&p.g, "solve_schwarzian")?;
    let n = g.len();
    let half = ratio(1, 2);
    let mut u: Vec<Rational> = Vec::with_capacity(n + 1);
    u.push(p.a2.clone() * Rational::from_int(2) / &p.a1);
    for m in 0..n {
        let mut conv = Rational::zero();
        for k in 0..=m {
            conv += &u[k] * &u[m - k];
        }
        u.push((conv * &half - &g[m]) / Rational::from_int(m as i64 + 1));
    }
    let u = Series::from_coeffs(&var, 0, n as i64 + 1, u);
    let p_series = u.antiderivative(&Rational::zero())?.exp()?.scale_rational(&p.a1);
    p_series.antiderivative(&Rational::zero())
}

/// A basis `(s0, s1)` of solutions of `s'' + h s' - (k/2) s = 0` with
/// `s0 = 1 + O(q^2)` and `s1 = q + O(q^2)`. Order: `min(Nh, Nk) + 2`.
pub fn solve_ode2(h: &Series, k: &Series) -> Result<(Series, Series)> {
    if h.var() != k.var() {
        return Err(SeriesError::VariableMismatch { left: h.var().into(), right: k.var().into() });
    }
    let hc = power_series_coeffs(h, "solve_ode2")?;
    let kc = power_series_coeffs(k, "solve_ode2")?;
    let n = hc.len().min(kc.len());
    let half = ratio(1, 2);
    let solve = |s0: i64, s1: i64| {
        let mut s: Vec<Rational> = vec![Rational::from_int(s0), Rational::from_int(s1)];
        for m in 0..n {
            let mut rhs = Rational::zero();
            for j in 0..=m {
                rhs -= &hc[j] * &s[m - j + 1] * Rational::from_int((m - j + 1) as i64);
                rhs += &kc[j] * &s[m - j] * &half;
            }
            s.push(rhs / Rational::from_int(((m + 1) * (m + 2)) as i64));
        }
        Series::from_coeffs(h.var(), 0, n as i64 + 2, s)
    };
    Ok((solve(1, 0), solve(0, 1)))
}

/// `g = k + h' + h^2/2`, the inhomogeneous term that the ratio of two
/// solutions of `s'' + h s' - (k/2) s = 0` satisfies.
pub fn ode_reduce(h: &Series, k: &Series) -> Result<Series> {
    let h2 = h.try_mul(h)?.scale_rational(&ratio(1, 2));
    k.try_add(&h.derivative())?.try_add(&h2)
}

/// `f / (a + b f)`. Fails when `a = 0`.
pub fn mobius(f: &Series, a: &Rational, b: &Rational) -> Result<Series> {
    if a.is_zero() {
        return Err(SeriesError::Domain("mobius: a must be nonzero".into()));
    }
    let denom = &Series::constant(f.var(), a.clone(), f.order()) + &f.scale_rational(b);
    f.try_div(&denom)
}

/// A series carrying a power of an auxiliary variable `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Weighted {
    pub t_pow: i64,
    pub series: Series,
}

/// The twisted derivation `t psi^-1 (d/dq + w eta)` acting on elements of
/// `t^w Q[[q]]`.
#[derive(Clone, Debug)]
pub struct TwistedDerivation {
    psi_inv: Series,
    eta: Series,
}

impl TwistedDerivation {
    /// Fails unless `psi(0) = 1`.
    pub fn new(psi: &Series, eta: &Series) -> Result<Self> {
        if psi.get(0) != Some(Rational::one()) || psi.valuation() != Some(0) {
            return Err(SeriesError::Domain("psi must have constant term 1".into()));
        }
        Ok(Self { psi_inv: psi.invert()?, eta: eta.clone() })
    }

    pub fn apply(&self, x: &Weighted) -> Result<Weighted> {
        let twist = self.eta.try_mul(&x.series)?.scale_rational(&Rational::from_int(x.t_pow));
        let inner = x.series.derivative().try_add(&twist)?;
        Ok(Weighted { t_pow: x.t_pow + 1, series: self.psi_inv.try_mul(&inner)? })
    }

    /// The Schwarzian built from this derivation, applied to `f` of
    /// `t`-weight `t_pow`. The result has weight 2.
    pub fn schwarzian(&self, f: &Series, t_pow: i64) -> Result<Weighted> {
        let d1 = self.apply(&Weighted { t_pow, series: f.clone() })?;
        let d2 = self.apply(&d1)?;
        let r = Weighted { t_pow: d2.t_pow - d1.t_pow, series: d2.series.try_div(&d1.series)? };
        let dr = self.apply(&r)?;
        let r2 = r.series.try_mul(&r.series)?.scale_rational(&ratio(1, 2));
        Ok(Weighted { t_pow: dr.t_pow, series: dr.series.try_sub(&r2)? })
    }
}

/// Schwarzian of `f` (of even weight `weight`, i.e. `t`-power `weight/2`)
/// for the derivation `t psi^-1 (d/dq + (i/2) eta)` on weight-`i` elements.
pub fn weighted_schwarzian(f: &Series, psi: &Series, eta: &Series, weight: i64) -> Result<Weighted> {
    if weight % 2 != 0 {
        return Err(SeriesError::Domain(format!("odd weight {weight}")));
    }
    TwistedDerivation::new(psi, eta)?.schwarzian(f, weight / 2)
}
