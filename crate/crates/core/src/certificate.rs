//! Machine-checkable verdicts shared by every checker in the crate.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::cube_core::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undecidable,
}

impl Verdict {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Undecidable => 2,
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

/// `λ_axis + shift` was required as an `axis` coordinate but no point has it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MissingShift {
    pub point: Vector,
    pub axis: usize,
    pub shift: i64,
}

/// The slab `offset ≤ x_axis ≤ offset + 1`, with an integer offset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlabRef {
    pub axis: usize,
    pub offset: i64,
}

/// One step of the maximality search: which family was applied, which of its
/// clauses was tried and what happened.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub depth: usize,
    pub family: usize,
    pub clause: String,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Pair { first: Vector, second: Vector },
    Point { point: Vector },
    Points { points: Vec<Vector> },
    MissingShifts { missing: Vec<MissingShift> },
    EmptySlabs { slabs: Vec<SlabRef> },
    GroupElement { coords: Vec<u64> },
    Residues { values: Vec<u64> },
    Trace { nodes: u64, truncated: bool, steps: Vec<TraceStep> },
    Value { value: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub check: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default)]
    pub details: Map<String, Value>,
    /// Set when the verdict comes from a finite search rather than an exact
    /// decision procedure.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub evidence_only: bool,
}

impl Certificate {
    pub fn new(check: impl Into<String>, verdict: Verdict) -> Self {
        Certificate {
            check: check.into(),
            verdict,
            witness: None,
            details: Map::new(),
            evidence_only: false,
        }
    }

    pub fn pass(check: impl Into<String>) -> Self {
        Self::new(check, Verdict::Pass)
    }

    pub fn fail(check: impl Into<String>, witness: Witness) -> Self {
        Self::new(check, Verdict::Fail).with_witness(witness)
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_owned(), value.into());
        self
    }

    pub fn evidence_only(mut self) -> Self {
        self.evidence_only = true;
        self
    }

    pub fn is_pass(&self) -> bool {
        self.verdict.is_pass()
    }

    /// The witness point of a FAIL verdict, if it is a single vector.
    pub fn witness_point(&self) -> Option<&Vector> {
        match &self.witness {
            Some(Witness::Point { point }) => Some(point),
            _ => None,
        }
    }

    /// Combines several verdicts: any FAIL wins, then any UNDECIDABLE.
    pub fn conjunction(check: impl Into<String>, parts: Vec<Certificate>) -> Certificate {
        let verdict = if parts.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if parts.iter().any(|c| c.verdict == Verdict::Undecidable) {
            Verdict::Undecidable
        } else {
            Verdict::Pass
        };
        let evidence_only = parts.iter().any(|c| c.evidence_only);
        let parts = serde_json::to_value(&parts).expect("certificates serialize");
        let mut out = Certificate::new(check, verdict).with_detail("parts", parts);
        out.evidence_only = evidence_only;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let c = Certificate::fail(
            "orthogonal",
            Witness::Pair {
                first: Vector::integer(&[0, 0]),
                second: Vector::integer(&[0, 0]),
            },
        )
        .with_detail("pairs_checked", 1);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["witness"]["kind"], "pair");
        assert!(v.get("evidence_only").is_none());
        let back: Certificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn conjunction_precedence() {
        let p = Certificate::pass("a");
        let u = Certificate::new("b", Verdict::Undecidable);
        let f = Certificate::new("c", Verdict::Fail);
        assert_eq!(Certificate::conjunction("x", vec![p.clone(), p.clone()]).verdict, Verdict::Pass);
        assert_eq!(Certificate::conjunction("x", vec![p.clone(), u.clone()]).verdict, Verdict::Undecidable);
        assert_eq!(Certificate::conjunction("x", vec![u, f, p]).verdict, Verdict::Fail);
        assert_eq!(Verdict::Undecidable.exit_code(), 2);
    }
}
