//! Laurent polynomials in `q_1, .., q_r` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use schwarz_core::ring::format_rational;
use schwarz_core::{int, Coeff, Rational};

/// Exponent vectors are stored without trailing zeros so that polynomials
/// in different numbers of variables compare and multiply consistently.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<Vec<i64>, Rational>,
}

fn canonical(mut e: Vec<i64>) -> Vec<i64> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    canonical((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

impl LaurentPoly {
    pub fn monomial(exps: &[i64], c: Rational) -> Self {
        let mut p = Self::default();
        p.add_term(exps.to_vec(), c);
        p
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(&[], c)
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = canonical(exps);
        let slot = self.terms.entry(key.clone()).or_insert_with(|| int(0));
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, exps: &[i64]) -> Rational {
        self.terms.get(&canonical(exps.to_vec())).cloned().unwrap_or_else(|| int(0))
    }

    /// `(exponents, coefficient)` with exponents padded to `n` variables.
    pub fn terms_padded(&self, n: usize) -> impl Iterator<Item = (Vec<i64>, &Rational)> + '_ {
        self.terms.iter().map(move |(e, c)| {
            let mut v = e.clone();
            v.resize(n.max(v.len()), 0);
            (v, c)
        })
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant term when this is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(int(0)),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }
}

impl Coeff for LaurentPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(add_exps(ea, eb), ca * cb);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::default();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect() }
    }
    /// Only monomials are units.
    fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(&e.iter().map(|x| -x).collect::<Vec<_>>(), c.recip()))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| if x == 1 { format!("q{}", i + 1) } else { format!("q{}^{x}", i + 1) })
                    .collect();
                if vars.is_empty() {
                    format_rational(c)
                } else {
                    format!("{}*{}", format_rational(c), vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
