//! Truncated formal Laurent series in one variable.
//!
//! A series stores dense coefficients for exponents in `min_exp..order`.
//! Everything at or above `order` is unknown. Each operation returns the
//! largest order it can vouch for; the rule is documented per method.
//!
//! The operator impls (`&a + &b` and friends) panic on a variable mismatch.
//! Use the `try_*` methods when the operands come from untrusted input.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Result, SeriesError};
use crate::ring::{format_rational, Coeff, Rational};

#[derive(Clone, Debug)]
pub struct TruncatedSeries<C: Coeff = Rational> {
    var: Arc<str>,
    min_exp: i64,
    order: i64,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    /// Builds a series from dense coefficients starting at `min_exp`.
    /// Coefficients past `order` are dropped; missing ones are zero.
    pub fn from_coeffs(var: &str, min_exp: i64, order: i64, mut coeffs: Vec<C>) -> Self {
        if min_exp > order {
            coeffs.clear();
        }
        let min_exp = min_exp.min(order);
        let len = (order - min_exp) as usize;
        coeffs.resize(len, C::zero());
        Self { var: Arc::from(var), min_exp, order, coeffs }
    }

    /// Builds a series from sparse `(exponent, coefficient)` pairs.
    pub fn from_terms<I>(var: &str, min_exp: i64, order: i64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, C)>,
    {
        let mut s = Self::zero(var, min_exp, order);
        for (e, c) in terms {
            if e < s.min_exp || e >= order {
                return Err(SeriesError::Domain(format!("exponent {e} outside {}..{order}", s.min_exp)));
            }
            let slot = &mut s.coeffs[(e - s.min_exp) as usize];
            *slot = slot.add(&c);
        }
        Ok(s)
    }

    /// The zero series known on `min_exp..order`.
    pub fn zero(var: &str, min_exp: i64, order: i64) -> Self {
        Self::from_coeffs(var, min_exp, order, Vec::new())
    }

    pub fn monomial(var: &str, exp: i64, coeff: C, order: i64) -> Self {
        let mut s = Self::zero(var, exp.min(0), order);
        if exp < order {
            s.coeffs[(exp - s.min_exp) as usize] = coeff;
        }
        s
    }

    pub fn one(var: &str, order: i64) -> Self {
        Self::monomial(var, 0, C::one(), order)
    }

    /// The variable itself, `q`.
    pub fn var_series(var: &str, order: i64) -> Self {
        Self::monomial(var, 1, C::one(), order)
    }

    pub fn constant(var: &str, c: C, order: i64) -> Self {
        Self::monomial(var, 0, c, order)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Truncation order: coefficients are known for exponents below it.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of `q^e`. Zero below `min_exp`.
    ///
    /// # Panics
    /// If `e >= order`, since that coefficient is unknown.
    pub fn coeff(&self, e: i64) -> C {
        self.get(e).unwrap_or_else(|| panic!("coefficient of {}^{e} unknown (order {})", self.var, self.order))
    }

    /// Coefficient of `q^e`, or `None` past the truncation order.
    pub fn get(&self, e: i64) -> Option<C> {
        if e >= self.order {
            None
        } else if e < self.min_exp {
            Some(C::zero())
        } else {
            Some(self.coeffs[(e - self.min_exp) as usize].clone())
        }
    }

    fn at(&self, e: i64) -> Option<&C> {
        if e < self.min_exp || e >= self.order {
            None
        } else {
            Some(&self.coeffs[(e - self.min_exp) as usize])
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Exponent of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms().next().map(|(e, _)| e)
    }

    /// Valuation, or the order when every known coefficient vanishes.
    fn valuation_bound(&self) -> i64 {
        self.valuation().unwrap_or(self.order)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Lowers the truncation order to `min(order, n)`.
    pub fn truncate(&self, n: i64) -> Self {
        if n >= self.order {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        let min_exp = self.min_exp.min(n);
        coeffs.truncate((n - min_exp).max(0) as usize);
        Self::from_coeffs(&self.var, min_exp, n, coeffs)
    }

    /// Same coefficients under another variable name.
    pub fn rename(&self, var: &str) -> Self {
        Self { var: Arc::from(var), ..self.clone() }
    }

    /// Drops stored leading zeros.
    pub fn normalized(&self) -> Self {
        let v = self.valuation().unwrap_or(self.order).max(self.min_exp);
        let start = (v - self.min_exp) as usize;
        Self { var: self.var.clone(), min_exp: v, order: self.order, coeffs: self.coeffs[start..].to_vec() }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(SeriesError::VariableMismatch { left: self.var.to_string(), right: other.var.to_string() });
        }
        Ok(())
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            var: self.var.clone(),
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Order: the smaller of the two.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.add(b))
    }

    /// Order: the smaller of the two.
    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.sub(b))
    }

    fn combine(&self, other: &Self, op: impl Fn(&C, &C) -> C) -> Result<Self> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let min_exp = self.min_exp.min(other.min_exp).min(order);
        let zero = C::zero();
        let coeffs = (min_exp..order).map(|e| op(self.at(e).unwrap_or(&zero), other.at(e).unwrap_or(&zero))).collect();
        Ok(Self::from_coeffs(&self.var, min_exp, order, coeffs))
    }

    /// Cauchy product. Order: `min(Na + vb, Nb + va)` with `v` the
    /// valuations (the order stands in for the valuation of a series that
    /// is zero to its precision).
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.mul_capped(other, i64::MAX))
    }

    /// Product with the order additionally capped at `cap`.
    pub fn mul_capped(&self, other: &Self, cap: i64) -> Self {
        let order = (self.order + other.valuation_bound()).min(other.order + self.valuation_bound()).min(cap);
        let min_exp = (self.min_exp + other.min_exp).min(order);
        let len = (order - min_exp) as usize;
        let mut coeffs = vec![C::zero(); len];
        let a: Vec<(i64, &C)> = self.terms().collect();
        let b: Vec<(i64, &C)> = other.terms().collect();
        for &(ea, ca) in &a {
            if ea + other.min_exp >= order {
                break;
            }
            for &(eb, cb) in &b {
                let e = ea + eb;
                if e >= order {
                    break;
                }
                let slot = &mut coeffs[(e - min_exp) as usize];
                *slot = slot.add(&ca.mul(cb));
            }
        }
        Self::from_coeffs(&self.var, min_exp, order, coeffs)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_coeffs(|x| x.scale(r))
    }

    /// Multiplication by `q^k`, exact.
    pub fn shift(&self, k: i64) -> Self {
        Self { var: self.var.clone(), min_exp: self.min_exp + k, order: self.order + k, coeffs: self.coeffs.clone() }
    }

    /// Multiplicative inverse. For `a = c q^v (1 + ...)` known to order `N`
    /// the inverse is known to order `N - 2v`.
    pub fn invert(&self) -> Result<Self> {
        let v = self.valuation().ok_or(SeriesError::ZeroSeries { order: self.order })?;
        let lead_inv = self.coeff(v).inverse().ok_or(SeriesError::NotInvertible { exponent: v })?;
        let n = self.order - v;
        let unit: Vec<C> = (v..self.order).map(|e| self.coeff(e)).collect();
        let mut inv: Vec<C> = Vec::with_capacity(n as usize);
        for k in 0..n as usize {
            let mut acc = if k == 0 { C::one() } else { C::zero() };
            for j in 1..=k {
                acc = acc.sub(&unit[j].mul(&inv[k - j]));
            }
            inv.push(acc.mul(&lead_inv));
        }
        Ok(Self::from_coeffs(&self.var, -v, self.order - 2 * v, inv))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        self.try_mul(&other.invert()?)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::one(&self.var, self.order - self.valuation_bound()));
        }
        let mut sq = if n < 0 { self.invert()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut result: Option<Self> = None;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => sq.clone(),
                    Some(r) => &r * &sq,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = &sq * &sq;
        }
        Ok(result.expect("nonzero exponent"))
    }

    /// Termwise `d/dq`. Order drops by one.
    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| c.scale_int(self.min_exp + i as i64)).collect();
        Self::from_coeffs(&self.var, self.min_exp - 1, self.order - 1, coeffs)
    }

    /// Antiderivative with constant term `constant`. Order rises by one.
    /// Fails if the `q^-1` coefficient is nonzero or unknown.
    pub fn antiderivative(&self, constant: &C) -> Result<Self> {
        match self.get(-1) {
            None => return Err(SeriesError::Precision("residue coefficient unknown; cannot integrate".into())),
            Some(c) if !c.is_zero() => return Err(SeriesError::Domain("nonzero q^-1 coefficient".into())),
            _ => {}
        }
        let min_exp = (self.min_exp + 1).min(0);
        let order = self.order + 1;
        let coeffs = (min_exp..order)
            .map(|e| if e == 0 { constant.clone() } else { self.at(e - 1).map_or(C::zero(), |c| c.div_int(e)) })
            .collect();
        Ok(Self::from_coeffs(&self.var, min_exp, order, coeffs))
    }

    fn require_power_series(&self, what: &str) -> Result<()> {
        if let Some(v) = self.valuation() {
            if v < 0 {
                return Err(SeriesError::Domain(format!("{what}: negative exponent q^{v}")));
            }
        }
        Ok(())
    }

    /// Formal exponential; needs zero constant term. Order is preserved.
    pub fn exp(&self) -> Result<Self> {
        self.require_power_series("exp")?;
        if self.order <= 0 {
            return Err(SeriesError::Precision("exp needs order >= 1".into()));
        }
        if !self.coeff(0).is_zero() {
            return Err(SeriesError::Domain("exp: nonzero constant term".into()));
        }
        let n = self.order as usize;
        let a: Vec<C> = (0..self.order).map(|e| self.coeff(e)).collect();
        let mut out: Vec<C> = Vec::with_capacity(n);
        out.push(C::one());
        for m in 1..n {
            let mut acc = C::zero();
            for k in 1..=m {
                if !a[k].is_zero() {
                    acc = acc.add(&a[k].scale_int(k as i64).mul(&out[m - k]));
                }
            }
            out.push(acc.div_int(m as i64));
        }
        Ok(Self::from_coeffs(&self.var, 0, self.order, out))
    }

    /// Formal logarithm; needs constant term 1. Order is preserved.
    pub fn log(&self) -> Result<Self> {
        self.require_power_series("log")?;
        if self.order <= 0 || self.coeff(0) != C::one() {
            return Err(SeriesError::Domain("log: constant term must be 1".into()));
        }
        let ratio = self.derivative().try_mul(&self.invert()?)?;
        ratio.antiderivative(&C::zero())
    }

    /// The `n`-th root whose leading coefficient is 1. Input must be
    /// `q^(kn) (1 + ...)`. For order `N` the result has order
    /// `k + N - kn`.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(SeriesError::Domain("zeroth root".into()));
        }
        let v = self.valuation().ok_or(SeriesError::ZeroSeries { order: self.order })?;
        if v.rem_euclid(n as i64) != 0 {
            return Err(SeriesError::Domain(format!("valuation {v} not divisible by {n}")));
        }
        if self.coeff(v) != C::one() {
            return Err(SeriesError::Domain("nth_root: leading coefficient must be 1".into()));
        }
        let k = v / n as i64;
        let unit = self.shift(-v);
        let lg = unit.log()?;
        let root = lg.scale_rational(&Rational::new(1.into(), (n as i64).into())).exp()?;
        Ok(root.shift(k))
    }

    /// Substitution `q -> q^k` for `k >= 1`; exact, order becomes `k N`.
    pub fn substitute_power(&self, k: i64) -> Result<Self> {
        if k < 1 {
            return Err(SeriesError::Domain(format!("substitution power {k} < 1")));
        }
        let mut s = Self::zero(&self.var, self.min_exp * k, self.order * k);
        for (e, c) in self.terms() {
            s.coeffs[(e * k - s.min_exp) as usize] = c.clone();
        }
        Ok(s)
    }

    /// `outer(inner(q))`. The inner series must have positive valuation.
    /// Order: `min(v No, min over nonzero a_n (n v + Ni - v))`, where `v` is
    /// the inner valuation. Negative powers in `outer` are allowed when the
    /// inner leading coefficient is invertible.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_var(inner)?;
        let v = inner.valuation().ok_or(SeriesError::ZeroSeries { order: inner.order })?;
        if v < 1 {
            return Err(SeriesError::Domain("compose: inner series must have zero constant term".into()));
        }
        let mut target = v.saturating_mul(self.order);
        for (n, _) in self.terms() {
            if n != 0 {
                target = target.min(n * v + inner.order - v);
            }
        }
        let lo = self.min_exp.min(0);
        let mut power = if lo < 0 { inner.pow(lo)? } else { Self::one(&self.var, target) };
        let mut acc = Self::zero(&self.var, lo * v, target);
        for n in lo..self.order {
            if n * v >= target && n >= 0 {
                break;
            }
            if n > lo {
                power = power.mul_capped(inner, target);
            }
            if let Some(c) = self.at(n) {
                if !c.is_zero() {
                    acc = acc.try_add(&power.scale(c))?;
                }
            }
        }
        Ok(acc)
    }

    /// Compositional inverse of `a1 q + a2 q^2 + ...`, by Lagrange
    /// inversion. Order is preserved.
    pub fn revert(&self) -> Result<Self> {
        let v = self.valuation().ok_or(SeriesError::ZeroSeries { order: self.order })?;
        if v != 1 {
            return Err(SeriesError::Domain(format!("revert: series must start at q^1, starts at q^{v}")));
        }
        // h = q / f, known to relative order N - 1
        let h = self.shift(-1).invert()?;
        let n_max = self.order;
        let mut out = Self::zero(&self.var, 0, n_max);
        let mut power = Self::one(&self.var, h.order);
        for n in 1..n_max {
            power = power.mul_capped(&h, n_max - 1);
            let c = power
                .get(n - 1)
                .ok_or_else(|| SeriesError::Precision(format!("revert: coefficient {n} out of reach")))?;
            out.coeffs[n as usize] = c.div_int(n);
        }
        Ok(out)
    }

    /// Index of the first exponent where both series are known and differ.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let order = self.order.min(other.order);
        let lo = self.min_exp.min(other.min_exp);
        let zero = C::zero();
        (lo..order).find(|&e| self.at(e).unwrap_or(&zero) != other.at(e).unwrap_or(&zero))
    }

    /// Equality up to the smaller of the two truncation orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.var == other.var && self.first_difference(other).is_none()
    }
}

impl<C: Coeff> PartialEq for TruncatedSeries<C> {
    /// Equal when variable and order agree and every known coefficient
    /// matches; stored zeros are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.order == other.order && self.first_difference(other).is_none()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<C: Coeff> $trait<&TruncatedSeries<C>> for &TruncatedSeries<C> {
            type Output = TruncatedSeries<C>;
            fn $method(self, rhs: &TruncatedSeries<C>) -> TruncatedSeries<C> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Coeff> $trait<TruncatedSeries<C>> for TruncatedSeries<C> {
            type Output = TruncatedSeries<C>;
            fn $method(self, rhs: TruncatedSeries<C>) -> TruncatedSeries<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<C: Coeff> Neg for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn neg(self) -> TruncatedSeries<C> {
        self.map_coeffs(|c| c.neg())
    }
}

impl<C: Coeff> Neg for TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn neg(self) -> TruncatedSeries<C> {
        -&self
    }
}

impl TruncatedSeries<Rational> {
    /// Builds a rational series from integer coefficients, starting at
    /// `min_exp`.
    pub fn from_ints(var: &str, min_exp: i64, order: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(var, min_exp, order, coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }
}

impl fmt::Display for TruncatedSeries<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == Rational::one();
            match e {
                0 => write!(f, "{}", format_rational(&mag))?,
                _ => {
                    if !unit {
                        write!(f, "{}*", format_rational(&mag))?;
                    }
                    if e == 1 {
                        write!(f, "{}", self.var)?;
                    } else {
                        write!(f, "{}^{}", self.var, e)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order)
    }
}
