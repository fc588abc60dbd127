//! q-expansions of Eisenstein series and the level-9 eta quotient, and the
//! identities tying them to the Schwarzian equation of the cubic pencil.

use crate::error::{Result, SeriesError};
use crate::ring::{int, ratio, Coeff, Rational};
use crate::schwarzian::schwarzian;
use crate::series::TruncatedSeries;

type Series = TruncatedSeries<Rational>;

const VAR: &str = "q";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionKind {
    Eisenstein2,
    Eisenstein4,
    EtaQuotient,
    Assembled,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModularExpansion {
    pub series: Series,
    pub kind: ExpansionKind,
}

/// `sigma_k(n)`, the sum of `d^k` over divisors `d` of `n`.
pub fn divisor_sigma(n: u64, k: u32) -> u128 {
    let mut total = 0u128;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += (d as u128).pow(k);
            let e = n / d;
            if e != d {
                total += (e as u128).pow(k);
            }
        }
        d += 1;
    }
    total
}

/// `E_2 = 1 - 24 sum sigma_1(n) q^n` or `E_4 = 1 + 240 sum sigma_3(n) q^n`.
pub fn eisenstein(weight: u32, order: i64) -> Result<ModularExpansion> {
    if order < 1 {
        return Err(SeriesError::Domain(format!("order {order} < 1")));
    }
    let (scale, k, kind) = match weight {
        2 => (-24i64, 1, ExpansionKind::Eisenstein2),
        4 => (240, 3, ExpansionKind::Eisenstein4),
        w => return Err(SeriesError::Domain(format!("unsupported weight {w}"))),
    };
    let coeffs = (0..order)
        .map(|n| {
            if n == 0 {
                int(1)
            } else {
                Rational::from_integer((divisor_sigma(n as u64, k) as i128 * scale as i128).into())
            }
        })
        .collect();
    Ok(ModularExpansion { series: Series::from_coeffs(VAR, 0, order, coeffs), kind })
}

fn e2(order: i64) -> Series {
    eisenstein(2, order).expect("weight 2 is supported").series
}

fn e4(order: i64) -> Series {
    eisenstein(4, order).expect("weight 4 is supported").series
}

/// `12 q E_2' - E_2^2 + E_4` through `order`; identically zero.
pub fn verify_ramanujan(order: i64) -> Result<Series> {
    let e2 = e2(order.max(1));
    let lhs = e2.derivative().shift(1).scale_rational(&int(12));
    lhs.try_sub(&e2.try_mul(&e2)?)?.try_add(&e4(order.max(1)))
}

/// `prod_{n >= 1} (1 - q^n)` to the given order.
pub fn euler_product(order: i64) -> Series {
    let n = order.max(0) as usize;
    let mut c = vec![Rational::zero(); n];
    if n > 0 {
        c[0] = int(1);
    }
    for step in 1..n {
        for e in (step..n).rev() {
            let prev = c[e - step].clone();
            c[e] -= prev;
        }
    }
    Series::from_coeffs(VAR, 0, order, c)
}

/// `u = q^-1 (P(q) / P(q^9))^3` with `P` the Euler product. Order `N`.
pub fn eta_quotient_u(order: i64) -> Result<Series> {
    let m = order + 1;
    let p = euler_product(m);
    let p9 = euler_product(m / 9 + 1).substitute_power(9)?.truncate(m);
    let ratio = p.try_div(&p9)?;
    Ok(ratio.pow(3)?.shift(-1))
}

/// `f = 1 / (u + 3)`, where `1/f` is the level-9 hauptmodul.
pub fn eta_quotient_hauptmodul(order: i64) -> Result<ModularExpansion> {
    if order < 2 {
        return Err(SeriesError::Domain(format!("order {order} < 2")));
    }
    let u = eta_quotient_u(order - 1)?;
    let f = (&u + &Series::constant(VAR, int(3), u.order())).invert()?;
    Ok(ModularExpansion { series: f.truncate(order), kind: ExpansionKind::EtaQuotient })
}

/// The series attached to the cubic pencil.
#[derive(Clone, Debug)]
pub struct CubicPencilData {
    /// `psi'/psi = (E_2(q^3) - 1) / (2q)`.
    pub psi_ratio: Series,
    /// `eta = -psi'/psi`.
    pub eta: Series,
    /// `alpha = (E_2(q^3) - 9 E_2(q^9)) / (8q)`.
    pub alpha: Series,
    /// `4 z2 psi^2 = alpha^2 - alpha' + 2 alpha psi'/psi`.
    pub four_z2_psi2: Series,
}

/// All four series known at least through `order`.
pub fn cubic_pencil_data(order: i64) -> Result<CubicPencilData> {
    if order < 4 {
        return Err(SeriesError::Domain(format!("order {order} < 4")));
    }
    let m = order / 3 + 2;
    let e2_3 = e2(m).substitute_power(3)?;
    let e2_9 = e2(m).substitute_power(9)?;
    let one = Series::one(VAR, e2_3.order());
    let psi_ratio = (&e2_3 - &one).shift(-1).scale_rational(&ratio(1, 2));
    let eta = -&psi_ratio;
    let alpha = (&e2_3 - &e2_9.scale_rational(&int(9))).shift(-1).scale_rational(&ratio(1, 8));
    let cross = (&alpha * &psi_ratio).scale_rational(&int(2));
    let four_z2_psi2 = &(&(&alpha * &alpha) - &alpha.derivative()) + &cross;
    Ok(CubicPencilData {
        psi_ratio: psi_ratio.truncate(order + 2),
        eta: eta.truncate(order + 2),
        alpha: alpha.truncate(order + 2),
        four_z2_psi2: four_z2_psi2.truncate(order + 1),
    })
}

/// `(E_4(q^3) - 1) / (2 q^2)`, known through `order`.
pub fn e4_target(order: i64) -> Result<Series> {
    let e4_3 = e4(order / 3 + 2).substitute_power(3)?;
    let one = Series::one(VAR, e4_3.order());
    Ok((&e4_3 - &one).shift(-2).scale_rational(&ratio(1, 2)).truncate(order))
}

/// Residuals of the two forms of the cubic Schwarzian identity.
#[derive(Clone, Debug)]
pub struct E4Check {
    /// `8 z2 psi^2 + h' + h^2/2 - (E_4(q^3) - 1)/(2q^2)` with `h = eta - psi'/psi`.
    pub assembled: Series,
    /// `S f + (E_4(q^3) - 1)/(2q^2)` with `f` from the eta quotient.
    pub direct: Series,
}

impl E4Check {
    pub fn is_zero(&self) -> bool {
        self.assembled.is_zero() && self.direct.is_zero()
    }

    /// First exponent at which either residual is nonzero.
    pub fn first_nonzero(&self) -> Option<i64> {
        match (self.assembled.valuation(), self.direct.valuation()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

fn assembled_g(data: &CubicPencilData) -> Result<Series> {
    let h = data.eta.try_sub(&data.psi_ratio)?;
    let k = data.four_z2_psi2.scale_rational(&int(2));
    crate::schwarzian::ode_reduce(&h, &k)
}

/// Checks the identity through `order` for `f` from the eta quotient.
pub fn verify_e4_equation(order: i64) -> Result<E4Check> {
    verify_e4_with(order, |f| Ok(f.clone()))
}

/// As [`verify_e4_equation`], with `f` first passed through `transform`
/// (for instance a Mobius map, which must leave the residual at zero).
pub fn verify_e4_with(order: i64, transform: impl Fn(&Series) -> Result<Series>) -> Result<E4Check> {
    if order < 7 {
        return Err(SeriesError::Domain(format!("order {order} < 7")));
    }
    let target = e4_target(order)?;
    let data = cubic_pencil_data(order)?;
    let assembled = assembled_g(&data)?.try_sub(&target)?.truncate(order);
    let f = transform(&eta_quotient_hauptmodul(order + 3)?.series)?;
    let direct = schwarzian(&f)?.try_add(&target)?.truncate(order);
    Ok(E4Check { assembled, direct })
}

/// The residual `S t + (216 t^3 + 1) / (2 t^2 (27 t^3 - 1)^2) (t')^2 - 1/(2q^2)`.
/// Its order is three less than that of `t`.
pub fn picard_fuchs_residual(t: &Series) -> Result<Series> {
    let n = t.order();
    let c = |k: i64| Series::constant(t.var(), int(k), n + 4);
    let t2 = t.try_mul(t)?;
    let t3 = t2.try_mul(t)?;
    let num = &t3.scale_rational(&int(216)) + &c(1);
    let w = &t3.scale_rational(&int(27)) - &c(1);
    let den = t2.try_mul(&w.try_mul(&w)?)?.scale_rational(&int(2));
    let dt = t.derivative();
    let coeff = num.try_div(&den)?;
    let pole = Series::monomial(t.var(), -2, ratio(1, 2), n + 4);
    schwarzian(t)?.try_add(&coeff.try_mul(&dt.try_mul(&dt)?)?)?.try_sub(&pole)
}

/// The Picard-Fuchs residual with `t = f`, through `order`.
pub fn verify_picard_fuchs(order: i64) -> Result<Series> {
    if order < 7 {
        return Err(SeriesError::Domain(format!("order {order} < 7")));
    }
    let f = eta_quotient_hauptmodul(order + 3)?.series;
    Ok(picard_fuchs_residual(&f)?.truncate(order))
}

/// `f` via the Schwarzian equation `S f + (E_4(q^3) - 1)/(2q^2) = 0`
/// with `f = q + 0 q^2 + ...`.
pub fn cubic_f_from_schwarzian(order: i64) -> Result<Series> {
    let g = e4_target(order - 3)?;
    let p = crate::schwarzian::SchwarzianProblem::new(g, int(1), int(0))?;
    Ok(crate::schwarzian::solve_schwarzian(&p)?.truncate(order))
}
