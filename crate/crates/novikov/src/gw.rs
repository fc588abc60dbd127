//! The GW data file: a lattice together with two-point and three-point
//! coefficient lists.

use std::sync::Arc;

use schwarz_core::ring::format_rational;
use schwarz_core::{parse_rational, Rational};
use serde::{Deserialize, Serialize};

use crate::derivation::DerivationData;
use crate::element::NovikovElement;
use crate::error::{NovikovError, Result};
use crate::lattice::{ClassVector, LatticeSpec, Point, DEFAULT_SUPPORT_BOUND};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassJson {
    #[serde(rename = "dE")]
    pub de: String,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "D", default)]
    pub d: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Z1Entry {
    #[serde(rename = "A")]
    pub a: Point,
    pub class: ClassJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Z2Entry {
    #[serde(rename = "A")]
    pub a: Point,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GwFile {
    pub rank: usize,
    pub m: Vec<i64>,
    pub e: Vec<i64>,
    #[serde(rename = "A_star")]
    pub a_star: Point,
    #[serde(rename = "A_basis")]
    pub a_basis: Vec<Point>,
    #[serde(rename = "D_basis")]
    pub d_basis: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support_bound: Option<i64>,
    pub z1: Vec<Z1Entry>,
    #[serde(default)]
    pub z2: Vec<Z2Entry>,
}

/// Parsed and validated GW data; the coefficient lists are taken to be
/// complete, so any cap may be requested.
#[derive(Clone, Debug)]
pub struct GwData {
    pub lattice: Arc<LatticeSpec>,
    pub z1: Vec<(Point, ClassVector)>,
    pub z2: Vec<(Point, Rational)>,
}

fn parse(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| NovikovError::Parse(e.to_string()))
}

impl GwFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| NovikovError::Parse(e.to_string()))
    }

    pub fn into_data(self) -> Result<GwData> {
        let mut lattice = LatticeSpec::new(self.m, self.e, self.a_star, self.a_basis, self.d_basis)?;
        if lattice.rank != self.rank {
            return Err(NovikovError::Lattice(format!("rank {} but vectors of length {}", self.rank, lattice.rank)));
        }
        lattice = lattice.with_support_bound(self.support_bound.unwrap_or(DEFAULT_SUPPORT_BOUND));
        lattice.validate()?;
        let z1 = self
            .z1
            .into_iter()
            .map(|t| {
                let d = t.class.d.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
                Ok((t.a, ClassVector { de: parse(&t.class.de)?, m: parse(&t.class.m)?, d }))
            })
            .collect::<Result<Vec<_>>>()?;
        let z2 = self.z2.into_iter().map(|t| Ok((t.a, parse(&t.coeff)?))).collect::<Result<Vec<_>>>()?;
        Ok(GwData { lattice: Arc::new(lattice), z1, z2 })
    }
}

impl GwData {
    pub fn from_json(text: &str) -> Result<Self> {
        GwFile::from_json(text)?.into_data()
    }

    /// `(z1, z2)` known through level `cap`.
    pub fn elements(&self, cap: i64) -> Result<(DerivationData, NovikovElement)> {
        let z1 = DerivationData::new(&self.lattice, cap, self.z1.iter().cloned())?;
        let z2 = NovikovElement::from_terms(&self.lattice, 4, cap, self.z2.iter().cloned())?;
        Ok((z1, z2))
    }

    pub fn to_file(&self) -> GwFile {
        let l = &self.lattice;
        GwFile {
            rank: l.rank,
            m: l.m.clone(),
            e: l.e.clone(),
            a_star: l.a_star.clone(),
            a_basis: l.a_basis.clone(),
            d_basis: l.d_basis.clone(),
            support_bound: Some(l.support_bound),
            z1: self
                .z1
                .iter()
                .map(|(a, c)| Z1Entry {
                    a: a.clone(),
                    class: ClassJson {
                        de: format_rational(&c.de),
                        m: format_rational(&c.m),
                        d: c.d.iter().map(format_rational).collect(),
                    },
                })
                .collect(),
            z2: self.z2.iter().map(|(a, c)| Z2Entry { a: a.clone(), coeff: format_rational(c) }).collect(),
        }
    }
}
