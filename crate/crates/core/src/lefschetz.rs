//! The quintic threefold pipeline: the twisted I-function on
//! `CP^1 x CP^4`, the functions `g, k, l1, l2`, the mirror map, and the
//! series `psi, eta, z2` read off from the `hbar^-2` part of the
//! corrected I-function.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::error::SeriesError;
use crate::ring::{factorial, harmonic, int, Coeff, Rational};
use crate::schwarzian::{ode_reduce, solve_ode2, solve_schwarzian, SchwarzianProblem};
use crate::series::TruncatedSeries;

type Series = TruncatedSeries<Rational>;

pub const DEFAULT_HBAR_CAP: u32 = 6;
pub const DEFAULT_D2_MAX: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid truncation: {0}")]
    Caps(String),
    #[error("unexpected shape in {part}: {detail}")]
    Shape { part: String, detail: String },
    #[error("cross-check mismatch at q^{exponent}")]
    CrossCheck { exponent: i64 },
}

type Result<T> = std::result::Result<T, LefschetzError>;

/// An element of `Q[x1, x2]/(x1^2, x2^5)` with polynomial dependence on
/// `hbar^-1`, optionally truncated above `hbar^-cap`.
///
/// Terms are keyed by `(a, b, c)` for `x1^a x2^b hbar^-c`.
#[derive(Clone, Debug)]
pub struct CohomologyElement {
    terms: BTreeMap<(u8, u8, u32), Rational>,
    hbar_cap: Option<u32>,
}

impl CohomologyElement {
    pub fn monomial(a: u8, b: u8, c: u32, coeff: Rational) -> Self {
        let mut e = Self { terms: BTreeMap::new(), hbar_cap: None };
        e.insert(a, b, c, coeff);
        e
    }

    pub fn x1() -> Self {
        Self::monomial(1, 0, 0, int(1))
    }

    pub fn x2() -> Self {
        Self::monomial(0, 1, 0, int(1))
    }

    pub fn hbar_inv() -> Self {
        Self::monomial(0, 0, 1, int(1))
    }

    /// Drops every term above `hbar^-cap`; later products respect the cap.
    pub fn with_cap(mut self, cap: u32) -> Self {
        let cap = self.hbar_cap.map_or(cap, |c| c.min(cap));
        self.terms.retain(|&(_, _, c), _| c <= cap);
        self.hbar_cap = Some(cap);
        self
    }

    pub fn hbar_cap(&self) -> Option<u32> {
        self.hbar_cap
    }

    fn insert(&mut self, a: u8, b: u8, c: u32, coeff: Rational) {
        if a > 1 || b > 4 || self.hbar_cap.is_some_and(|cap| c > cap) || coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b, c)).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(a, b, c));
        }
    }

    pub fn coeff(&self, a: u8, b: u8, c: u32) -> Rational {
        self.terms.get(&(a, b, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u8, u8, u32), &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// The part multiplying `hbar^-c`.
    pub fn hbar_part(&self, c: u32) -> Self {
        let mut out = Self { terms: BTreeMap::new(), hbar_cap: self.hbar_cap };
        for (&(a, b, cc), v) in &self.terms {
            if cc == c {
                out.insert(a, b, cc, v.clone());
            }
        }
        out
    }

    fn combined_cap(&self, other: &Self) -> Option<u32> {
        match (self.hbar_cap, other.hbar_cap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

impl PartialEq for CohomologyElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Coeff for CohomologyElement {
    fn zero() -> Self {
        Self { terms: BTreeMap::new(), hbar_cap: None }
    }
    fn one() -> Self {
        Self::monomial(0, 0, 0, int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.hbar_cap = self.combined_cap(other);
        out.terms.retain(|&(_, _, c), _| out.hbar_cap.is_none_or(|cap| c <= cap));
        for (&(a, b, c), v) in &other.terms {
            out.insert(a, b, c, v.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self { terms: BTreeMap::new(), hbar_cap: self.combined_cap(other) };
        for (&(a1, b1, c1), v1) in &self.terms {
            for (&(a2, b2, c2), v2) in &other.terms {
                out.insert(a1 + a2, b1 + b2, c1 + c2, v1 * v2);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.scale(&int(-1))
    }
    fn scale(&self, r: &Rational) -> Self {
        let mut out = Self { terms: BTreeMap::new(), hbar_cap: self.hbar_cap };
        for (&(a, b, c), v) in &self.terms {
            out.insert(a, b, c, v * r);
        }
        out
    }
    /// Invertible when the constant term is nonzero and the rest is
    /// nilpotent: every other term involves `x1` or `x2`, or the element
    /// carries an `hbar` cap.
    fn inverse(&self) -> Option<Self> {
        let c0 = self.coeff(0, 0, 0);
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let mut nil = self.scale(&inv0);
        nil.insert(0, 0, 0, int(-1));
        if self.hbar_cap.is_none() && nil.terms.keys().any(|&(a, b, _)| a == 0 && b == 0) {
            return None;
        }
        let minus_nil = nil.neg();
        let mut total = Self::one();
        let mut power = Self::one();
        loop {
            power = power.mul(&minus_nil);
            if power.is_zero() {
                break;
            }
            total = total.add(&power);
        }
        Some(total.scale(&inv0))
    }
}

/// Bivariate power series in `(y1, y2)` truncated at `y1^(D1+1)` and
/// `y2^(D2+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<C: Coeff = Rational> {
    d1_max: usize,
    d2_max: usize,
    cells: Vec<C>,
}

impl<C: Coeff> BiSeries<C> {
    pub fn zero(d1_max: usize, d2_max: usize) -> Self {
        Self { d1_max, d2_max, cells: vec![C::zero(); (d1_max + 1) * (d2_max + 1)] }
    }

    pub fn constant(d1_max: usize, d2_max: usize, c: C) -> Self {
        let mut s = Self::zero(d1_max, d2_max);
        s.cells[0] = c;
        s
    }

    /// `y1^d1 * s(y2)` for a one-variable series `s`, with its coefficients
    /// mapped into `C` by `lift`.
    pub fn from_y2_series(
        d1_max: usize,
        d2_max: usize,
        d1: usize,
        s: &Series,
        lift: impl Fn(&Rational) -> C,
    ) -> Result<Self> {
        if s.order() <= d2_max as i64 {
            return Err(LefschetzError::Caps(format!("series of order {} cannot fill y2 degree {d2_max}", s.order())));
        }
        let mut out = Self::zero(d1_max, d2_max);
        if d1 <= d1_max {
            for d2 in 0..=d2_max {
                out.set(d1, d2, lift(&s.coeff(d2 as i64)));
            }
        }
        Ok(out)
    }

    pub fn d1_max(&self) -> usize {
        self.d1_max
    }

    pub fn d2_max(&self) -> usize {
        self.d2_max
    }

    fn idx(&self, d1: usize, d2: usize) -> usize {
        d1 * (self.d2_max + 1) + d2
    }

    pub fn get(&self, d1: usize, d2: usize) -> &C {
        &self.cells[self.idx(d1, d2)]
    }

    pub fn set(&mut self, d1: usize, d2: usize, c: C) {
        let i = self.idx(d1, d2);
        self.cells[i] = c;
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!((self.d1_max, self.d2_max), (other.d1_max, other.d2_max), "BiSeries shape mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other);
        let cells = self.cells.iter().zip(&other.cells).map(|(a, b)| a.add(b)).collect();
        Self { cells, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        Self { cells: self.cells.iter().map(f).collect(), ..*self }
    }

    /// Multiplies every coefficient by `c` (on the left).
    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| c.mul(x))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut out = Self::zero(self.d1_max, self.d2_max);
        for i1 in 0..=self.d1_max {
            for i2 in 0..=self.d2_max {
                let a = self.get(i1, i2);
                if a.is_zero() {
                    continue;
                }
                for j1 in 0..=self.d1_max - i1 {
                    for j2 in 0..=self.d2_max - i2 {
                        let b = other.get(j1, j2);
                        if b.is_zero() {
                            continue;
                        }
                        let k = out.idx(i1 + j1, i2 + j2);
                        out.cells[k] = out.cells[k].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|c| c.is_zero())
    }

    /// `exp(x) = sum x^n / n!`, valid when the constant coefficient is
    /// nilpotent so that the sum terminates.
    pub fn exp(&self) -> Result<Self> {
        let bound = self.d1_max + self.d2_max + 64;
        let mut total = Self::constant(self.d1_max, self.d2_max, C::one());
        let mut power = total.clone();
        for n in 1..=bound {
            power = power.mul(self).map(|c| c.div_int(n as i64));
            if power.is_zero() {
                return Ok(total);
            }
            total = total.add(&power);
        }
        Err(LefschetzError::Caps("exp: exponent is not nilpotent".into()))
    }

    /// The one-variable series in `y2` of coefficients at `y1^d1`, after
    /// applying `pick` to each coefficient.
    pub fn y2_column(&self, d1: usize, pick: impl Fn(&C) -> Rational) -> Series {
        let coeffs = (0..=self.d2_max).map(|d2| pick(self.get(d1, d2))).collect();
        Series::from_coeffs("y2", 0, self.d2_max as i64 + 1, coeffs)
    }
}

/// `I = (x1 + 5 x2) sum (y1/hbar)^d1 y2^d2 prod_{i<=d1+5d2}((x1+5x2)/hbar + i)
/// / (prod_{i<=d1}(x1/hbar + i)^2 prod_{i<=d2}(x2/hbar + i)^5)`.
pub fn i_function(d1_max: usize, d2_max: usize, hbar_cap: u32) -> Result<BiSeries<CohomologyElement>> {
    Ok(BiSeries::constant(d1_max, d2_max, hyperplane_class()).mul(&i_function_unit(d1_max, d2_max, hbar_cap)?))
}

fn hyperplane_class() -> CohomologyElement {
    CohomologyElement::x1().add(&CohomologyElement::x2().scale_int(5))
}

/// The I-function without its `(x1 + 5 x2)` prefactor.
fn i_function_unit(d1_max: usize, d2_max: usize, hbar_cap: u32) -> Result<BiSeries<CohomologyElement>> {
    if d1_max > 2 {
        return Err(LefschetzError::Caps(format!("d1_max {d1_max} > 2")));
    }
    let cap = |e: CohomologyElement| e.with_cap(hbar_cap);
    let hinv = CohomologyElement::hbar_inv();
    let y_over_h = cap(hyperplane_class().mul(&hinv));
    let x1_over_h = cap(CohomologyElement::x1().mul(&hinv));
    let x2_over_h = cap(CohomologyElement::x2().mul(&hinv));
    let plus = |e: &CohomologyElement, i: usize| e.add(&CohomologyElement::from_int(i as i64));
    let mut out = BiSeries::zero(d1_max, d2_max);
    for d1 in 0..=d1_max {
        for d2 in 0..=d2_max {
            let mut num = cap(CohomologyElement::one());
            for i in 1..=d1 + 5 * d2 {
                num = num.mul(&plus(&y_over_h, i));
            }
            let mut den = cap(CohomologyElement::one());
            for i in 1..=d1 {
                let f = plus(&x1_over_h, i);
                den = den.mul(&f).mul(&f);
            }
            for i in 1..=d2 {
                let f = plus(&x2_over_h, i);
                let f2 = f.mul(&f);
                den = den.mul(&f2).mul(&f2).mul(&f);
            }
            let den_inv = den.inverse().ok_or_else(|| LefschetzError::Shape {
                part: "I-function denominator".into(),
                detail: format!("not invertible at ({d1}, {d2})"),
            })?;
            let mut term = num.mul(&den_inv);
            for _ in 0..d1 {
                term = term.mul(&hinv);
            }
            out.set(d1, d2, term);
        }
    }
    Ok(out)
}

/// `(5d)! / (d!)^5`.
pub fn quintic_weight(d: u64) -> Rational {
    Rational::new(factorial(5 * d), factorial(d).pow(5))
}

/// The functions `g, k/y1, l1, l2` as series in `y2`.
#[derive(Clone, Debug, PartialEq)]
pub struct GklSeries {
    pub g: Series,
    pub k_over_y1: Series,
    pub l1: Series,
    pub l2: Series,
}

/// The four generating series `e^g`, `e^g k / y1`, `e^g l1`, `e^g l2`.
#[derive(Clone, Debug, PartialEq)]
pub struct GklGenerators {
    pub eg: Series,
    pub eg_k: Series,
    pub eg_l1: Series,
    pub eg_l2: Series,
}

/// Closed forms for the generating series through `y2^d2_max`.
pub fn gkl_generators(d2_max: usize) -> GklGenerators {
    let order = d2_max as i64 + 1;
    let column = |f: &dyn Fn(u64) -> Rational| {
        Series::from_coeffs("y2", 0, order, (0..order as u64).map(|d| quintic_weight(d) * f(d)).collect())
    };
    GklGenerators {
        eg: column(&|_| int(1)),
        eg_k: column(&|d| int(5 * d as i64 + 1)),
        eg_l1: column(&|d| harmonic(5 * d)),
        eg_l2: column(&|d| (harmonic(5 * d) - harmonic(d)) * int(5)),
    }
}

impl GklGenerators {
    pub fn to_series(&self) -> Result<GklSeries> {
        let inv = self.eg.invert()?;
        Ok(GklSeries {
            g: self.eg.log()?,
            k_over_y1: self.eg_k.try_mul(&inv)?,
            l1: self.eg_l1.try_mul(&inv)?,
            l2: self.eg_l2.try_mul(&inv)?,
        })
    }
}

pub fn gkl_series(d2_max: usize) -> Result<GklSeries> {
    if d2_max < 1 {
        return Err(LefschetzError::Caps("d2_max must be at least 1".into()));
    }
    gkl_generators(d2_max).to_series()
}

/// Reads the generating series off I: `e^g` from the `x1 hbar^0` column
/// at `y1^0`, `e^g k` from the `x1 hbar^-1` column at `y1^1`, and the
/// `e^g l_i` from the `hbar^-1` part at `y1^0`, which equals
/// `(x1 + 5 x2)(L1 x1 + L2 x2)`.
pub fn gkl_from_i_function(i_fn: &BiSeries<CohomologyElement>) -> Result<GklGenerators> {
    if i_fn.d1_max() < 1 {
        return Err(LefschetzError::Caps("need y1 degree at least 1".into()));
    }
    let eg = i_fn.y2_column(0, |c| c.coeff(1, 0, 0));
    let eg_k = i_fn.y2_column(1, |c| c.coeff(1, 0, 1));
    let eg_l2 = i_fn.y2_column(0, |c| c.coeff(0, 2, 1) / int(5));
    let x1x2 = i_fn.y2_column(0, |c| c.coeff(1, 1, 1));
    let eg_l1 = (&x1x2 - &eg_l2).scale_rational(&Rational::new(1.into(), 5.into()));
    Ok(GklGenerators { eg, eg_k, eg_l1, eg_l2 })
}

/// `y1 / q1` and `y2` as series in `q2`.
#[derive(Clone, Debug, PartialEq)]
pub struct MirrorMap {
    pub y1_over_q1: Series,
    pub y2: Series,
}

impl MirrorMap {
    fn from_gkl(gkl: &GklSeries) -> Result<Self> {
        let forward = gkl.l2.exp()?.shift(1);
        let y2 = forward.revert()?.rename("q2");
        let l1_of_q = gkl.l1.compose(&y2.rename("y2"))?.rename("q2");
        Ok(Self { y1_over_q1: (-&l1_of_q).exp()?, y2 })
    }
}

/// Inverts `q2 = y2 e^{l2(y2)}` and sets `y1 = q1 e^{-l1(y2(q2))}`.
pub fn mirror_map(d2_max: usize) -> Result<MirrorMap> {
    MirrorMap::from_gkl(&gkl_series(d2_max)?)
}

/// `psi`, `eta`, `z2` as series in `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct PencilSeriesData {
    pub psi: Series,
    pub eta: Series,
    pub z2: Series,
}

/// Intermediate results of the extraction, kept for inspection.
#[derive(Clone, Debug)]
pub struct QuinticPipeline {
    pub gkl: GklSeries,
    pub mirror: MirrorMap,
    /// The corrected I-function `e^{-g - (k + l1 x1 + l2 x2)/hbar} I`.
    pub corrected: BiSeries<CohomologyElement>,
    pub data: PencilSeriesData,
}

fn shape_error(part: &str, detail: String) -> LefschetzError {
    LefschetzError::Shape { part: part.into(), detail }
}

/// Runs the full extraction at y2-degree `d2_max` and `hbar` cap
/// `hbar_cap` (at least 2).
pub fn run_pipeline(d2_max: usize, hbar_cap: u32) -> Result<QuinticPipeline> {
    if hbar_cap < 2 {
        return Err(LefschetzError::Caps(format!("hbar_cap {hbar_cap} < 2; the hbar^-2 part is needed")));
    }
    let gkl = gkl_series(d2_max)?;
    let i_fn = i_function(2, d2_max, hbar_cap)?;
    let lift = |r: &Rational| CohomologyElement::from_rational(r).with_cap(hbar_cap);
    let times = |s: &Series, class: CohomologyElement, d1: usize| -> Result<BiSeries<CohomologyElement>> {
        Ok(BiSeries::from_y2_series(2, d2_max, d1, s, lift)?.scale(&class.with_cap(hbar_cap)))
    };
    let hinv = CohomologyElement::hbar_inv();
    let exponent = times(&gkl.g, CohomologyElement::one(), 0)?
        .add(&times(&gkl.k_over_y1, hinv.clone(), 1)?)
        .add(&times(&gkl.l1, CohomologyElement::x1().mul(&hinv), 0)?)
        .add(&times(&gkl.l2, CohomologyElement::x2().mul(&hinv), 0)?)
        .neg();
    let corrected = exponent.exp()?.mul(&i_fn);
    check_low_hbar_parts(&corrected)?;

    let mirror = MirrorMap::from_gkl(&gkl)?;
    let y2_of_q2 = mirror.y2.rename("y2");
    let in_q2 = |s: &Series| -> Result<Series> { Ok(s.compose(&y2_of_q2)?.rename("q2")) };
    let e_l1 = &mirror.y1_over_q1;

    let (x2x2, x1x2) = read_degree_one(&corrected)?;
    let a_q = in_q2(&x2x2)?.try_mul(e_l1)?;
    let b_q = in_q2(&x1x2)?.try_mul(e_l1)?;
    let c_q = in_q2(&read_degree_two(&corrected)?)?.try_mul(&e_l1.try_mul(e_l1)?)?;

    let to_q = |s: &Series| -> Result<Series> { Ok(s.rename("q").substitute_power(5)?) };
    let psi = to_q(&a_q)?.invert()?.scale_rational(&int(25));
    let eta = psi.try_mul(&to_q(&b_q)?)?.shift(-1).scale_rational(&Rational::new(1.into(), 5.into()));
    let z2 = to_q(&c_q)?.shift(-2);
    Ok(QuinticPipeline { gkl, mirror, corrected, data: PencilSeriesData { psi, eta, z2 } })
}

/// The `hbar^0` part must be `x1 + 5 x2` and the `hbar^-1` part zero.
fn check_low_hbar_parts(j: &BiSeries<CohomologyElement>) -> Result<()> {
    for d1 in 0..=j.d1_max() {
        for d2 in 0..=j.d2_max() {
            let c = j.get(d1, d2);
            let h0 = c.hbar_part(0);
            let expect = if (d1, d2) == (0, 0) { hyperplane_class() } else { CohomologyElement::zero() };
            if h0 != expect {
                return Err(shape_error("hbar^0", format!("unexpected term at y1^{d1} y2^{d2}")));
            }
            if !c.hbar_part(1).is_zero() {
                return Err(shape_error("hbar^-1", format!("nonzero at y1^{d1} y2^{d2}")));
            }
        }
    }
    Ok(())
}

/// Coefficients of `x2^2 hbar^-2` and `x1 x2 hbar^-2` at `y1^1`.
fn read_degree_one(j: &BiSeries<CohomologyElement>) -> Result<(Series, Series)> {
    for d2 in 0..=j.d2_max() {
        for ((a, b, c), _) in j.get(1, d2).hbar_part(2).terms() {
            if !matches!((a, b, c), (0, 2, 2) | (1, 1, 2)) {
                return Err(shape_error("y1 hbar^-2", format!("stray x1^{a} x2^{b} at y2^{d2}")));
            }
        }
    }
    Ok((j.y2_column(1, |c| c.coeff(0, 2, 2)), j.y2_column(1, |c| c.coeff(1, 1, 2))))
}

/// The scalar `z` with `hbar^-2` part `z (x1 + 5 x2)` at `y1^2`.
fn read_degree_two(j: &BiSeries<CohomologyElement>) -> Result<Series> {
    for d2 in 0..=j.d2_max() {
        let part = j.get(2, d2).hbar_part(2);
        let z = part.coeff(1, 0, 2);
        let expect =
            CohomologyElement::monomial(1, 0, 2, z.clone()).add(&CohomologyElement::monomial(0, 1, 2, z * int(5)));
        if part != expect {
            return Err(shape_error("y1^2 hbar^-2", format!("not a multiple of x1 + 5 x2 at y2^{d2}")));
        }
    }
    Ok(j.y2_column(2, |c| c.coeff(1, 0, 2)))
}

pub fn extract_pencil_data(d2_max: usize) -> Result<PencilSeriesData> {
    Ok(run_pipeline(d2_max, DEFAULT_HBAR_CAP)?.data)
}

/// `h = eta - psi'/psi` and `k = 8 z2 psi^2`, the coefficients of the
/// second-order equation whose solution ratio is `f`.
pub fn ode_coefficients(data: &PencilSeriesData) -> Result<(Series, Series)> {
    let psi_ratio = data.psi.derivative().try_div(&data.psi)?;
    let h = data.eta.try_sub(&psi_ratio)?;
    let k = data.z2.try_mul(&data.psi.try_mul(&data.psi)?)?.scale_rational(&int(8));
    Ok((h, k))
}

/// Solves `S f + 8 z2 psi^2 + h' + h^2/2 = 0` with `f = q + 0 q^2 + ...`.
pub fn solve_from_pencil_data(data: &PencilSeriesData) -> Result<Series> {
    let (h, k) = ode_coefficients(data)?;
    let g = ode_reduce(&h, &k)?;
    Ok(solve_schwarzian(&SchwarzianProblem::new(g, int(1), int(0))?)?)
}

/// The same `f` as the ratio `s1/s0` of solutions of
/// `s'' + h s' - (k/2) s = 0`.
pub fn solve_from_pencil_data_ode(data: &PencilSeriesData) -> Result<Series> {
    let (h, k) = ode_coefficients(data)?;
    let (s0, s1) = solve_ode2(&h, &k)?;
    Ok(s1.try_div(&s0)?)
}

/// `y2(q^5)^(1/5)`.
pub fn fifth_root_of_mirror(mirror: &MirrorMap) -> Result<Series> {
    Ok(mirror.y2.rename("q").substitute_power(5)?.nth_root(5)?)
}

/// The quintic `f`, cross-checked against `y2(q^5)^(1/5)` on the orders
/// both are known.
pub fn quintic_f(d2_max: usize) -> Result<Series> {
    let run = run_pipeline(d2_max, DEFAULT_HBAR_CAP)?;
    let f = solve_from_pencil_data(&run.data)?;
    let root = fifth_root_of_mirror(&run.mirror)?;
    if let Some(e) = f.first_difference(&root) {
        return Err(LefschetzError::CrossCheck { exponent: e });
    }
    Ok(f)
}

/// Smallest `d2_max` giving every quintic series through `q^(order-1)`.
pub fn d2_for_order(order: i64) -> usize {
    (((order - 1).max(1) + 4) / 5).max(1) as usize
}
