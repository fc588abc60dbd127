use serde::{Deserialize, Serialize};

use crate::error::{AinftyError, Result};

/// A finite graded basis, optionally with a strict unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBasis {
    names: Vec<String>,
    degrees: Vec<i64>,
    unit: Option<usize>,
}

impl GradedBasis {
    pub fn new(elements: Vec<(String, i64)>, unit: Option<usize>) -> Result<Self> {
        let (names, degrees): (Vec<_>, Vec<_>) = elements.into_iter().unzip();
        if let Some(u) = unit {
            if u >= names.len() {
                return Err(AinftyError::Index { index: u, size: names.len() });
            }
            if degrees[u] != 0 {
                return Err(AinftyError::Parse(format!("unit '{}' must have degree 0", names[u])));
            }
        }
        Ok(GradedBasis { names, degrees, unit })
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_pairs(elements: &[(&str, i64)], unit: Option<usize>) -> Result<Self> {
        Self::new(elements.iter().map(|&(n, d)| (n.to_string(), d)).collect(), unit)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// `||a|| = |a| - 1`.
    pub fn reduced(&self, i: usize) -> i64 {
        self.degrees[i] - 1
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(AinftyError::Index { index: i, size: self.dim() })
        }
    }

    pub fn degrees_sum(&self, tuple: &[usize]) -> i64 {
        tuple.iter().map(|&i| self.degrees[i]).sum()
    }

    /// Sum of reduced degrees of a tuple.
    pub fn reduced_sum(&self, tuple: &[usize]) -> i64 {
        tuple.iter().map(|&i| self.reduced(i)).sum()
    }

    /// All tuples of length `d`, in lexicographic order.
    pub fn tuples(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..d {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..self.dim()).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        out
    }
}
