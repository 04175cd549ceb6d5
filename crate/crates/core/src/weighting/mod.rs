//! Edge weightings, weighted degrees and the neighbour-sum-distinguishing
//! verifiers.

mod local;
mod solver;

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::report::{VerificationReport, ViolationKind};

pub use local::{local_search, LocalSearchRun};
pub use solver::{solve_exact, SolveOutcome, SolverRun, DEFAULT_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightingError {
    #[error("weighting covers {weights} edges but the graph has {edges}")]
    Mismatch { weights: usize, edges: usize },
    #[error("edge {edge}: weight {weight} outside 1..={k}")]
    OutOfRange { edge: usize, weight: u32, k: u32 },
    #[error("maximum weight must be at least 1")]
    ZeroMaxWeight,
    #[error("line {line}: malformed weighting entry {text:?}")]
    Malformed { line: usize, text: String },
}

/// Assignment edge id → weight in `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWeighting {
    k: u32,
    weights: Vec<u32>,
}

impl EdgeWeighting {
    pub fn new(k: u32, weights: Vec<u32>) -> Result<Self, WeightingError> {
        if k == 0 {
            return Err(WeightingError::ZeroMaxWeight);
        }
        if let Some((edge, &weight)) = weights.iter().enumerate().find(|(_, &w)| w == 0 || w > k) {
            return Err(WeightingError::OutOfRange { edge, weight, k });
        }
        Ok(EdgeWeighting { k, weights })
    }

    /// Every edge weighted `weight`.
    pub fn constant(edge_count: usize, weight: u32, k: u32) -> Self {
        assert!(weight >= 1 && weight <= k, "weight {weight} outside 1..={k}");
        EdgeWeighting {
            k,
            weights: vec![weight; edge_count],
        }
    }

    pub fn max_weight(&self) -> u32 {
        self.k
    }

    pub fn weight(&self, e: usize) -> u32 {
        self.weights[e]
    }

    pub fn set(&mut self, e: usize, w: u32) {
        assert!(w >= 1 && w <= self.k, "weight {w} outside 1..={}", self.k);
        self.weights[e] = w;
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Weighted degree per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumProfile(Vec<u64>);

impl SumProfile {
    pub fn sum(&self, v: usize) -> u64 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

fn check_cover(graph: &Graph, weighting: &EdgeWeighting) -> Result<(), WeightingError> {
    if weighting.len() != graph.edge_count() {
        return Err(WeightingError::Mismatch {
            weights: weighting.len(),
            edges: graph.edge_count(),
        });
    }
    Ok(())
}

pub fn vertex_sums(graph: &Graph, weighting: &EdgeWeighting) -> Result<SumProfile, WeightingError> {
    check_cover(graph, weighting)?;
    let mut sums = vec![0u64; graph.vertex_count()];
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        let w = u64::from(weighting.weight(e));
        sums[u] += w;
        sums[v] += w;
    }
    Ok(SumProfile(sums))
}

/// Passes iff every edge joins vertices of distinct weighted degree. Each
/// failing edge is reported with witnesses `[edge, u, v]`.
pub fn verify_nsd(graph: &Graph, weighting: &EdgeWeighting) -> Result<VerificationReport, WeightingError> {
    let sums = vertex_sums(graph, weighting)?;
    let mut report = VerificationReport::new().with_context("max_weight", weighting.max_weight());
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        if sums.sum(u) == sums.sum(v) {
            report.push(ViolationKind::EqualSums, [e, u, v]);
        }
    }
    Ok(report)
}

/// NSD check under the all-ones weighting.
pub fn is_locally_irregular(graph: &Graph) -> VerificationReport {
    let ones = EdgeWeighting::constant(graph.edge_count(), 1, 1);
    verify_nsd(graph, &ones).expect("all-ones weighting covers the graph")
}

/// Parses `edge-id weight` lines (blank and `#` lines skipped). Values are
/// returned raw so that range problems can be reported by a verifier.
pub fn parse_weighting_file(text: &str) -> Result<Vec<(usize, u32)>, WeightingError> {
    parse_pairs(text)
        .map(|entry| {
            let (line, e, w) = entry?;
            u32::try_from(w).map(|w| (e, w)).map_err(|_| WeightingError::Malformed {
                line,
                text: format!("{e} {w}"),
            })
        })
        .collect()
}

/// Writes `edge-id weight` lines for the given pairs.
pub fn format_weighting_file(entries: impl IntoIterator<Item = (usize, u32)>) -> String {
    let mut out = String::new();
    for (e, w) in entries {
        writeln!(out, "{e} {w}").unwrap();
    }
    out
}

/// Shared `a b` line reader for the weighting and partition file formats.
pub(crate) fn parse_pairs(text: &str) -> impl Iterator<Item = Result<(usize, usize, u64), WeightingError>> + '_ {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(line, l)| {
            let malformed = || WeightingError::Malformed {
                line,
                text: l.to_string(),
            };
            let mut it = l.split_whitespace();
            match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => Ok((
                    line,
                    a.parse().map_err(|_| malformed())?,
                    b.parse().map_err(|_| malformed())?,
                )),
                _ => Err(malformed()),
            }
        })
}
