//! The shared series interchange format:
//! `{"var": "q", "min_exp": m, "order": N, "terms": [{"exp": k, "coeff": "p/q"}]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SeriesError};
use crate::ring::{format_rational, parse_rational, Rational};
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: i64,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub var: String,
    pub min_exp: i64,
    pub order: i64,
    pub terms: Vec<TermJson>,
}

impl From<&TruncatedSeries<Rational>> for SeriesJson {
    fn from(s: &TruncatedSeries<Rational>) -> Self {
        let n = s.normalized();
        SeriesJson {
            var: s.var().to_string(),
            min_exp: n.min_exp(),
            order: s.order(),
            terms: s.terms().map(|(exp, c)| TermJson { exp, coeff: format_rational(c) }).collect(),
        }
    }
}

impl TryFrom<&SeriesJson> for TruncatedSeries<Rational> {
    type Error = SeriesError;

    /// Rejects duplicate exponents and exponents outside `min_exp..order`.
    fn try_from(j: &SeriesJson) -> Result<Self> {
        if j.min_exp > j.order {
            return Err(SeriesError::Parse(format!("min_exp {} exceeds order {}", j.min_exp, j.order)));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if !seen.insert(t.exp) {
                return Err(SeriesError::Parse(format!("duplicate exponent {}", t.exp)));
            }
            if t.exp < j.min_exp || t.exp >= j.order {
                return Err(SeriesError::Parse(format!("exponent {} outside {}..{}", t.exp, j.min_exp, j.order)));
            }
            terms.push((t.exp, parse_rational(&t.coeff)?));
        }
        TruncatedSeries::from_terms(&j.var, j.min_exp, j.order, terms)
    }
}

pub fn series_to_json(s: &TruncatedSeries<Rational>) -> serde_json::Value {
    serde_json::to_value(SeriesJson::from(s)).expect("series JSON is always serializable")
}

pub fn series_from_json(v: &serde_json::Value) -> Result<TruncatedSeries<Rational>> {
    let j: SeriesJson = serde_json::from_value(v.clone()).map_err(|e| SeriesError::Parse(e.to_string()))?;
    TruncatedSeries::try_from(&j)
}
