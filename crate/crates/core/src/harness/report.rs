use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

/// Why an instance is excluded from the square-zero existence statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExceptionTag {
    Torus,
    DimOne,
    HeisenbergChar2,
}

impl ExceptionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Torus => "torus",
            Self::DimOne => "dim-1",
            Self::HeisenbergChar2 => "h1-char-2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Exception(ExceptionTag),
    Budget,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pass => f.write_str("pass"),
            Self::Fail => f.write_str("fail"),
            Self::Budget => f.write_str("budget"),
            Self::Exception(t) => write!(f, "exception:{}", t.as_str()),
        }
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pass" => Self::Pass,
            "fail" => Self::Fail,
            "budget" => Self::Budget,
            "exception:torus" => Self::Exception(ExceptionTag::Torus),
            "exception:dim-1" => Self::Exception(ExceptionTag::DimOne),
            "exception:h1-char-2" => Self::Exception(ExceptionTag::HeisenbergChar2),
            other => return Err(Error::Malformed(format!("unknown verdict `{other}`"))),
        })
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub algebra_id: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub invariants: BTreeMap<String, Value>,
}

impl InstanceReport {
    pub fn new(algebra_id: impl Into<String>, verdict: Verdict) -> Self {
        Self {
            algebra_id: algebra_id.into(),
            verdict,
            witness: None,
            invariants: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.invariants.insert(key.to_string(), value.into());
        self
    }

    pub fn with_witness(mut self, witness: Vec<Vec<u32>>) -> Self {
        self.witness = Some(witness);
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub exception: usize,
    pub budget: usize,
    pub total: usize,
}

impl Summary {
    pub fn tally(instances: &[InstanceReport]) -> Self {
        let mut s = Self::default();
        for i in instances {
            match i.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Exception(_) => s.exception += 1,
                Verdict::Budget => s.budget += 1,
            }
        }
        s.total = instances.len();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub claim: String,
    pub population: Value,
    pub instances: Vec<InstanceReport>,
    pub summary: Summary,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    claim: &'a str,
    algebra_id: &'a str,
    verdict: String,
    invariants: String,
}

impl TheoremReport {
    pub fn new(
        claim: impl Into<String>,
        population: Value,
        instances: Vec<InstanceReport>,
    ) -> Self {
        let summary = Summary::tally(&instances);
        Self {
            claim: claim.into(),
            population,
            instances,
            summary,
        }
    }

    /// No failures and no instance cut short by the budget.
    pub fn is_success(&self) -> bool {
        self.summary.fail == 0 && self.summary.budget == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// One row per instance; invariants as compact JSON.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for i in &self.instances {
            w.serialize(CsvRow {
                claim: &self.claim,
                algebra_id: &i.algebra_id,
                verdict: i.verdict.to_string(),
                invariants: serde_json::to_string(&i.invariants).expect("invariants serialize"),
            })
            .expect("in-memory CSV write cannot fail");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV is UTF-8")
    }

    /// Header plus a single row with the verdict counts.
    pub fn summary_csv(&self) -> String {
        let s = &self.summary;
        format!(
            "claim,pass,fail,exception,budget,total\n{},{},{},{},{},{}\n",
            self.claim, s.pass, s.fail, s.exception, s.budget, s.total
        )
    }

    pub fn summary_line(&self) -> String {
        let s = &self.summary;
        format!(
            "{}: {} instances, {} pass, {} exception, {} fail, {} budget",
            self.claim, s.total, s.pass, s.exception, s.fail, s.budget
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> TheoremReport {
        TheoremReport::new(
            "demo",
            json!({"kind": "catalog"}),
            vec![
                InstanceReport::new("a", Verdict::Pass).with_witness(vec![vec![0, 1], vec![0, 0]]),
                InstanceReport::new("b", Verdict::Exception(ExceptionTag::HeisenbergChar2))
                    .with("dim", 3),
                InstanceReport::new("c", Verdict::Budget),
            ],
        )
    }

    #[test]
    fn summary_counts_and_round_trip() {
        let r = sample();
        assert_eq!(
            r.summary,
            Summary {
                pass: 1,
                fail: 0,
                exception: 1,
                budget: 1,
                total: 3
            }
        );
        assert!(!r.is_success());
        let back = TheoremReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"exception:h1-char-2\""));
    }

    #[test]
    fn verdict_strings() {
        for v in [
            "pass",
            "fail",
            "budget",
            "exception:torus",
            "exception:dim-1",
            "exception:h1-char-2",
        ] {
            assert_eq!(v.parse::<Verdict>().unwrap().to_string(), v);
        }
        assert!("exception:other".parse::<Verdict>().is_err());
    }

    #[test]
    fn csv_quotes_json() {
        let csv = sample().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("claim,algebra_id,verdict,invariants"));
        assert_eq!(
            lines.nth(1),
            Some("demo,b,exception:h1-char-2,\"{\"\"dim\"\":3}\"")
        );
    }
}
