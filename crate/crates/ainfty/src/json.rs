//! Algebra files:
//! `{"basis": [{"name": "e", "degree": 0}, ..], "unit": 0, "arity_cap": D,
//!   "qorder": N, "entries": [{"arity": d, "inputs": [..], "output": j,
//!   "coeff_series": {..}}]}`.

use std::sync::Arc;

use schwarz_core::json::{series_to_json, SeriesJson};
use schwarz_core::{Rational, Series};
use serde::{Deserialize, Serialize};

use crate::basis::GradedBasis;
use crate::cochain::Cochain;
use crate::error::{AinftyError, Result};
use crate::structure::AInfinityStructure;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisElementJson {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub arity: usize,
    pub inputs: Vec<usize>,
    pub output: usize,
    pub coeff_series: SeriesJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub basis: Vec<BasisElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qorder: Option<usize>,
    pub entries: Vec<EntryJson>,
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| AinftyError::Parse(e.to_string()))
    }

    /// Builds the structure; `arity` and `qorder` override the file's caps.
    /// A file without an arity cap lists the whole structure, so the cap
    /// is `2m - 1` for the largest entry arity `m`: every relation that
    /// can involve the entries is then checked. Without a q-order, the
    /// smallest series order is used.
    pub fn into_structure(&self, arity: Option<usize>, qorder: Option<usize>) -> Result<AInfinityStructure> {
        let basis =
            Arc::new(GradedBasis::new(self.basis.iter().map(|b| (b.name.clone(), b.degree)).collect(), self.unit)?);
        let mut series = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            if e.inputs.len() != e.arity {
                return Err(AinftyError::Parse(format!(
                    "entry {:?} -> {} declares arity {}",
                    e.inputs, e.output, e.arity
                )));
            }
            let s = Series::try_from(&e.coeff_series)?;
            if s.var() != "q" {
                return Err(AinftyError::Parse(format!("coefficient series in '{}', expected 'q'", s.var())));
            }
            series.push(s);
        }
        let arity = arity
            .or(self.arity_cap)
            .unwrap_or_else(|| (2 * self.entries.iter().map(|e| e.arity).max().unwrap_or(0)).saturating_sub(1));
        let qorder =
            qorder.or(self.qorder).or_else(|| series.iter().map(|s| s.order().max(0) as usize).min()).unwrap_or(1);
        let mut mu = Cochain::zero(basis, 2, arity, qorder);
        for (e, s) in self.entries.iter().zip(&series) {
            if e.arity > arity {
                continue;
            }
            mu.insert_series(&e.inputs, e.output, s)?;
        }
        AInfinityStructure::new(mu, true)
    }

    pub fn from_structure(a: &AInfinityStructure) -> Self {
        let basis = a.basis();
        AlgebraFile {
            basis: (0..basis.dim())
                .map(|i| BasisElementJson { name: basis.name(i).to_string(), degree: basis.degree(i) })
                .collect(),
            unit: basis.unit(),
            arity_cap: Some(a.arity()),
            qorder: Some(a.qorder()),
            entries: entries_json(a.mu()),
        }
    }
}

fn entries_json(c: &Cochain<Rational>) -> Vec<EntryJson> {
    c.entries()
        .map(|(t, o, _)| EntryJson {
            arity: t.len(),
            inputs: t.clone(),
            output: o,
            coeff_series: SeriesJson::from(&c.entry_series(t, o)),
        })
        .collect()
}

/// A cochain as `{"degree", "arity", "qorder", "entries": [..]}`.
pub fn cochain_to_json(c: &Cochain<Rational>) -> serde_json::Value {
    serde_json::json!({
        "degree": c.degree(),
        "arity": c.arity(),
        "qorder": c.qorder(),
        "entries": c.entries().map(|(t, o, _)| serde_json::json!({
            "arity": t.len(),
            "inputs": t,
            "output": o,
            "coeff_series": series_to_json(&c.entry_series(t, o)),
        })).collect::<Vec<_>>(),
    })
}
