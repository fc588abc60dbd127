//! Coefficient rings.
//!
//! Series are generic over a commutative `Q`-algebra: ring operations,
//! scaling by a rational, and a partial inverse. Rationals are the default.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::SeriesError;

/// Exact rational numbers, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// A commutative `Q`-algebra usable as series coefficients.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplication by a rational scalar.
    fn scale(&self, r: &Rational) -> Self;
    /// Multiplicative inverse, when it exists in the ring.
    fn inverse(&self) -> Option<Self>;

    fn from_rational(r: &Rational) -> Self {
        Self::one().scale(r)
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn scale_int(&self, n: i64) -> Self {
        self.scale(&int(n))
    }

    /// Exact division by a nonzero integer.
    fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero");
        self.scale(&Rational::new(BigInt::one(), BigInt::from(n)))
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` (optionally signed) into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, SeriesError> {
    let t = s.trim();
    let bad = || SeriesError::Parse(format!("not a rational: {s:?}"));
    if t.is_empty() || t.contains(char::is_whitespace) {
        return Err(bad());
    }
    match t.split_once('/') {
        None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Harmonic number `1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: u64) -> Rational {
    (1..=n).fold(<Rational as Zero>::zero(), |acc, i| acc + ratio(1, i as i64))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
