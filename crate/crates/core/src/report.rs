//! Structured pass/fail evidence shared by every verifier and pipeline.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Adjacent vertices with equal weighted degree. Witness: edge, u, v.
    EqualSums,
    /// Weight outside `1..=k`. Witness: edge, weight.
    WeightOutOfRange,
    /// Weighting does not cover exactly the edges it should. Witness: edge.
    WeightingMismatch,
    /// Edge missing from every part or listed twice. Witness: edge.
    Coverage,
    /// Part index outside `0..p`. Witness: edge, part.
    PartOutOfRange,
    /// K2-component inside a part. Witness: edge.
    IsolatedEdge,
    /// Colouring is not proper or uses too many colours. Witness: edge or colour count.
    Colouring,
    /// Independent set has an inner edge. Witness: edge.
    NotIndependent,
    /// Vertex outside the independent set with no neighbour in it. Witness: vertex.
    NotDominating,
    /// Independent-set vertex with degree above alpha. Witness: vertex.
    IndependentDegree,
    /// Remainder vertex below `alpha + (d_R(v)+1)/2`. Witness: vertex.
    RemainderDegree,
    /// Sum separation between remainder and independent set broken. Witness: vertex.
    SumSeparation,
    /// Anchor edge weight left `{1, 2}`. Witness: edge.
    AnchorWeight,
    /// A finalised vertex sum moved later on. Witness: vertex.
    FrozenSumChanged,
    /// Fewer reachable sums than backward neighbours plus one. Witness: vertex.
    ReachableSums,
    /// Degree condition of a vertex bipartition or edge subset. Witness: vertex.
    DegreeCondition,
    /// Solver proved no weighting exists. Witness: edge when known.
    Unsatisfiable,
    /// Solver ran out of budget. Witness: nodes explored.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witnesses: Vec<usize>,
}

/// `passed` holds exactly when `violations` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    passed: bool,
    violations: Vec<Violation>,
    context: BTreeMap<String, String>,
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self::new()
    }
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport {
            passed: true,
            violations: Vec::new(),
            context: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn context(&self) -> &BTreeMap<String, String> {
        &self.context
    }

    pub fn push(&mut self, kind: ViolationKind, witnesses: impl Into<Vec<usize>>) {
        self.violations.push(Violation {
            kind,
            witnesses: witnesses.into(),
        });
        self.passed = false;
    }

    pub fn set_context(&mut self, key: impl Into<String>, value: impl ToString) {
        self.context.insert(key.into(), value.to_string());
    }

    pub fn with_context(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.set_context(key, value);
        self
    }

    /// Appends the violations of `other`; context keys are kept from both,
    /// `other` winning on clashes.
    pub fn absorb(&mut self, other: VerificationReport) {
        for v in other.violations {
            self.push(v.kind, v.witnesses);
        }
        self.context.extend(other.context);
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.passed { "PASSED" } else { "FAILED" })?;
        for (k, v) in &self.context {
            writeln!(f, "  {k}: {v}")?;
        }
        for v in &self.violations {
            writeln!(f, "  violation {:?} {:?}", v.kind, v.witnesses)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_tracks_violations() {
        let mut r = VerificationReport::new().with_context("graph", "K3");
        assert!(r.passed());
        r.push(ViolationKind::EqualSums, [0, 0, 1]);
        assert!(!r.passed());
        let json = r.to_json();
        assert!(json.contains("\"passed\": false"));
        assert!(json.contains("\"equal_sums\""));
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
