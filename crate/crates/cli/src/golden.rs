//! Reference series embedded for `--verify`. Coefficients between the
//! listed exponents are zero; nothing is claimed beyond `through`.

use schwarz_core::{int, Rational, Series};

#[derive(Clone, Copy, Debug)]
pub struct Golden {
    pub name: &'static str,
    pub var: &'static str,
    pub terms: &'static [(i64, i64)],
    pub through: i64,
}

/// The level-9 hauptmodul reciprocal of the cubic pencil.
pub const CUBIC_F: Golden =
    Golden { name: "f", var: "q", terms: &[(1, 1), (4, -5), (7, 32), (10, -198), (13, 1214)], through: 13 };

pub const QUINTIC_PSI: Golden =
    Golden { name: "psi", var: "q", terms: &[(0, 1), (5, -496), (10, -335007), (15, -365737016)], through: 15 };

pub const QUINTIC_ETA: Golden =
    Golden { name: "eta", var: "q", terms: &[(4, 940), (9, 856700), (14, 1097543500)], through: 14 };

pub const QUINTIC_Z2: Golden =
    Golden { name: "z2", var: "q", terms: &[(3, 600), (8, 1508700), (13, 3364924200)], through: 13 };

pub const QUINTIC_F: Golden =
    Golden { name: "f", var: "q", terms: &[(1, 1), (6, -154), (11, -13127), (16, -17106304)], through: 16 };

/// `y1 / q1` of the quintic mirror map.
pub const MIRROR_Y1: Golden =
    Golden { name: "y1/q1", var: "q2", terms: &[(0, 1), (1, -274), (2, -50747), (3, -56404664)], through: 3 };

/// As tabulated; the `q2^4` coefficient disagrees with the computation by a
/// factor of ten.
pub const MIRROR_Y2: Golden =
    Golden { name: "y2", var: "q2", terms: &[(1, 1), (2, -770), (3, 171525), (4, -8162300)], through: 4 };

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub name: &'static str,
    pub var: &'static str,
    pub exponent: i64,
    pub expected: Rational,
    pub found: Rational,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: mismatch at {}^{}: expected {}, computed {}",
            self.name, self.var, self.exponent, self.expected, self.found
        )
    }
}

impl Golden {
    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.iter().find(|(k, _)| *k == e).map_or_else(|| int(0), |(_, c)| int(*c))
    }

    /// Compares every exponent from 0 through `through` that `s` knows.
    /// Returns the last exponent compared.
    pub fn check(&self, s: &Series) -> Result<i64, Box<Mismatch>> {
        let last = self.through.min(s.order() - 1);
        for e in 0..=last {
            let found = s.coeff(e);
            let expected = self.coeff(e);
            if found != expected {
                return Err(Box::new(Mismatch { name: self.name, var: self.var, exponent: e, expected, found }));
            }
        }
        Ok(last)
    }
}
