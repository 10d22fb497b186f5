use serde::{Deserialize, Serialize};

use super::RestrictedLieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::is_zero_vec;

/// On-disk JSON form of an algebra.
///
/// Only brackets with `i < j` are listed; omitted pairs are zero. Integers are
/// reduced mod p on load and unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub p: u32,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    pub pmap: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub v: Vec<i64>,
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    /// Checks the document shape, then builds and validates the algebra.
    pub fn build(&self) -> Result<RestrictedLieAlgebra> {
        let n = self.dim;
        if self.pmap.len() != n {
            return Err(Error::Malformed(format!(
                "pmap has {} rows, expected {n}",
                self.pmap.len()
            )));
        }
        if let Some(row) = self.pmap.iter().position(|r| r.len() != n) {
            return Err(Error::Malformed(format!(
                "pmap row {row} does not have {n} entries"
            )));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(Error::Malformed(format!(
                    "{} labels given for dimension {n}",
                    labels.len()
                )));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for b in &self.brackets {
            if b.i >= b.j || b.j >= n {
                return Err(Error::Malformed(format!(
                    "bracket ({}, {}) must satisfy i < j < dim",
                    b.i, b.j
                )));
            }
            if b.v.len() != n {
                return Err(Error::Malformed(format!(
                    "bracket ({}, {}) does not have {n} entries",
                    b.i, b.j
                )));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(Error::Malformed(format!(
                    "bracket ({}, {}) listed twice",
                    b.i, b.j
                )));
            }
        }
        let mut builder = RestrictedLieAlgebra::builder(self.p, n);
        for b in &self.brackets {
            builder = builder.bracket(b.i, b.j, &b.v);
        }
        for (i, row) in self.pmap.iter().enumerate() {
            builder = builder.pmap(i, row);
        }
        if let Some(labels) = &self.labels {
            builder = builder.labels(labels.iter().cloned());
        }
        builder.build()
    }
}

impl RestrictedLieAlgebra {
    pub fn from_json(text: &str) -> Result<Self> {
        AlgebraDocument::parse(text)?.build()
    }

    pub fn to_document(&self) -> AlgebraDocument {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = self.structure_constants(i, j);
                if !is_zero_vec(c) {
                    brackets.push(BracketEntry {
                        i,
                        j,
                        v: c.iter().map(|&x| x as i64).collect(),
                    });
                }
            }
        }
        AlgebraDocument {
            p: self.p(),
            dim: n,
            labels: self.labels().map(<[String]>::to_vec),
            brackets,
            pmap: self
                .pmap_table()
                .iter()
                .map(|r| r.iter().map(|&x| x as i64).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_document().to_json()
    }
}
