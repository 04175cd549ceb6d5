//! Decomposition pipelines: chromatic recursion with K2-component repair,
//! the random vertex bipartition and two-part split for regular graphs,
//! and the peel-and-split pipeline for arbitrary graphs.

mod chromatic;
mod general;
mod lll;
mod regular;
mod repair;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{isolated_edges, EdgeSet, Graph, GraphError};
use crate::mis::MisError;
use crate::report::{VerificationReport, ViolationKind};
use crate::weighting::{local_search, parse_pairs, solve_exact, verify_nsd, EdgeWeighting, SolveOutcome, WeightingError, DEFAULT_BUDGET};

pub use chromatic::{ceil_log3, chromatic_decompose, decompose_by_chromatic, ChromaticDecomposition};
pub use general::{
    analytic_part_bound, decompose_general, paper_part_bound, peel_decompose, select_edge_subset, AnalyticBound,
    EdgeSubset, GeneralPipelineParams, HStrategy, LocallyIrregularDecomposer, PeelOutcome, Profile, PAPER_M, PAPER_T,
};
pub use lll::{check_bipartition_conditions, lll_bipartition, LllOutcome, VertexBipartition};
pub use regular::{regular_decompose, regular_decompose_two, RegularRoute};
pub use repair::{count_monochromatic_k2, repair_monochromatic_k2, RepairOutcome};

#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error("graph has isolated edges {0:?}")]
    IsolatedEdges(Vec<usize>),
    #[error("graph is not regular")]
    NotRegular,
    #[error("degree {degree} not supported: {reason}")]
    Degree { degree: usize, reason: &'static str },
    #[error("minimum degree {found} below required {required}")]
    MinDegree { required: u64, found: usize },
    #[error("colouring with {colours} colours does not fit 3^{k}")]
    ColouringTooLarge { colours: usize, k: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{procedure}: resample cap {cap} exceeded; still violated at {violating:?}")]
    ResampleCap {
        procedure: &'static str,
        cap: usize,
        violating: Vec<usize>,
    },
    #[error("paper-faithful profile does not run probabilistic steps; analytic bound is {bound} parts")]
    PaperProfile { bound: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Mis(#[from] MisError),
    #[error(transparent)]
    Weighting(#[from] WeightingError),
}

impl DecomposeError {
    /// Input does not satisfy the pipeline's hypotheses.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            DecomposeError::IsolatedEdges(_)
                | DecomposeError::NotRegular
                | DecomposeError::Degree { .. }
                | DecomposeError::MinDegree { .. }
                | DecomposeError::ColouringTooLarge { .. }
                | DecomposeError::Invalid(_)
                | DecomposeError::PaperProfile { .. }
                | DecomposeError::Graph(_)
        )
    }

    /// A resample cap or search budget ran out.
    pub fn is_cap(&self) -> bool {
        matches!(self, DecomposeError::ResampleCap { .. })
    }
}

pub(crate) fn require_no_isolated_edges(graph: &Graph) -> Result<(), DecomposeError> {
    let isolated = isolated_edges(graph);
    if isolated.is_empty() {
        Ok(())
    } else {
        Err(DecomposeError::IsolatedEdges(isolated.to_vec()))
    }
}

/// Assignment edge id → part index in `0..part_count`. Parts may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    parts: Vec<usize>,
    count: usize,
}

impl EdgePartition {
    pub fn new(parts: Vec<usize>, count: usize) -> Result<Self, DecomposeError> {
        if let Some(e) = parts.iter().position(|&p| p >= count) {
            return Err(DecomposeError::Invalid(format!(
                "edge {e} assigned to part {} of {count}",
                parts[e]
            )));
        }
        Ok(EdgePartition { parts, count })
    }

    /// Builds a partition from explicit edge lists; every edge of
    /// `0..edge_count` must appear exactly once.
    pub fn from_parts(edge_count: usize, lists: &[Vec<usize>]) -> Result<Self, DecomposeError> {
        let mut parts = vec![usize::MAX; edge_count];
        for (p, list) in lists.iter().enumerate() {
            for &e in list {
                if e >= edge_count || parts[e] != usize::MAX {
                    return Err(DecomposeError::Invalid(format!("edge {e} listed twice or out of range")));
                }
                parts[e] = p;
            }
        }
        if let Some(e) = parts.iter().position(|&p| p == usize::MAX) {
            return Err(DecomposeError::Invalid(format!("edge {e} not covered")));
        }
        Ok(EdgePartition {
            parts,
            count: lists.len(),
        })
    }

    pub fn part_count(&self) -> usize {
        self.count
    }

    pub fn edge_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, e: usize) -> usize {
        self.parts[e]
    }

    pub fn assignments(&self) -> &[usize] {
        &self.parts
    }

    /// Edge ids of part `p`, ascending.
    pub fn edges_of(&self, p: usize) -> Vec<usize> {
        (0..self.parts.len()).filter(|&e| self.parts[e] == p).collect()
    }

    pub fn edge_set(&self, p: usize) -> EdgeSet {
        EdgeSet::from_ids(self.parts.len(), self.edges_of(p))
    }

    /// `edge-id part-index` lines.
    pub fn to_file(&self) -> String {
        let mut out = String::new();
        for (e, p) in self.parts.iter().enumerate() {
            writeln!(out, "{e} {p}").unwrap();
        }
        out
    }
}

/// Raw `edge-id part-index` entries; coverage is checked by the verifier.
pub fn parse_partition_file(text: &str) -> Result<Vec<(usize, usize)>, WeightingError> {
    parse_pairs(text)
        .map(|entry| {
            let (line, e, p) = entry?;
            usize::try_from(p).map(|p| (e, p)).map_err(|_| WeightingError::Malformed {
                line,
                text: format!("{e} {p}"),
            })
        })
        .collect()
}

/// One part of a pipeline result.
#[derive(Clone, Debug)]
pub struct PartResult {
    /// Edge ids of the host graph, ascending.
    pub edges: Vec<usize>,
    /// How the part was produced and weighted.
    pub strategy: String,
    /// Weight of `edges[i]` at index `i`; `None` when no weighting was found.
    pub weighting: Option<EdgeWeighting>,
    pub certificate: VerificationReport,
    pub solver_nodes: u64,
}

impl PartResult {
    /// `(host edge id, weight)` pairs.
    pub fn weighted_edges(&self) -> Vec<(usize, u32)> {
        match &self.weighting {
            Some(w) => self.edges.iter().enumerate().map(|(i, &e)| (e, w.weight(i))).collect(),
            None => Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub partition: EdgePartition,
    pub parts: Vec<PartResult>,
    pub metadata: BTreeMap<String, String>,
}

impl PipelineResult {
    pub fn part_count(&self) -> usize {
        self.partition.part_count()
    }

    pub fn all_certified(&self) -> bool {
        self.parts.iter().all(|p| p.certificate.passed())
    }

    pub fn any_budget_exhausted(&self) -> bool {
        self.parts.iter().any(|p| p.certificate.has(ViolationKind::BudgetExhausted))
    }

    /// Re-checks the result against `graph` from scratch: exact cover,
    /// weights in `1..=3`, no isolated edges and NSD in every part.
    pub fn audit(&self, graph: &Graph) -> VerificationReport {
        let mut report = VerificationReport::new();
        let mut seen = vec![0usize; graph.edge_count()];
        for part in &self.parts {
            for &e in &part.edges {
                seen[e] += 1;
            }
        }
        for (e, &count) in seen.iter().enumerate() {
            if count != 1 || self.partition.edge_count() != graph.edge_count() {
                report.push(ViolationKind::Coverage, [e]);
            }
        }
        for (p, part) in self.parts.iter().enumerate() {
            if self.partition.edges_of(p) != part.edges {
                report.push(ViolationKind::Coverage, [p]);
            }
            let sub = graph.edge_subgraph_from_ids(&part.edges);
            for e in isolated_edges(&sub).iter() {
                report.push(ViolationKind::IsolatedEdge, [part.edges[e]]);
            }
            match &part.weighting {
                Some(w) if w.max_weight() <= 3 => match verify_nsd(&sub, w) {
                    Ok(r) => report.absorb(r),
                    Err(_) => report.push(ViolationKind::WeightingMismatch, [p]),
                },
                Some(_) => report.push(ViolationKind::WeightOutOfRange, [p]),
                None if part.edges.is_empty() => {}
                None => report.push(ViolationKind::WeightingMismatch, [p]),
            }
        }
        report
    }

    pub(crate) fn assemble(
        edge_count: usize,
        parts: Vec<PartResult>,
        metadata: BTreeMap<String, String>,
    ) -> Result<Self, DecomposeError> {
        let lists: Vec<Vec<usize>> = parts.iter().map(|p| p.edges.clone()).collect();
        let partition = EdgePartition::from_parts(edge_count, &lists)?;
        Ok(PipelineResult {
            partition,
            parts,
            metadata,
        })
    }
}

/// Checks raw partition entries and per-part weighting entries against
/// `graph`: every edge in exactly one part, part indices below
/// `weightings.len()`, each weighting covering exactly its part with weights
/// in `1..=k`, and every part NSD. Witnesses use host edge ids.
pub fn verify_decomposition(
    graph: &Graph,
    partition: &[(usize, usize)],
    weightings: &[Vec<(usize, u32)>],
    k: u32,
) -> VerificationReport {
    let m = graph.edge_count();
    let p = weightings.len();
    let mut report = VerificationReport::new()
        .with_context("edges", m)
        .with_context("parts", p);
    let mut part_of = vec![None; m];
    for &(e, part) in partition {
        if e >= m {
            report.push(ViolationKind::Coverage, [e]);
        } else if part >= p {
            report.push(ViolationKind::PartOutOfRange, [e, part]);
        } else if part_of[e].replace(part).is_some() {
            report.push(ViolationKind::Coverage, [e]);
        }
    }
    for (e, part) in part_of.iter().enumerate() {
        if part.is_none() {
            report.push(ViolationKind::Coverage, [e]);
        }
    }
    for (i, entries) in weightings.iter().enumerate() {
        let edges: Vec<usize> = (0..m).filter(|&e| part_of[e] == Some(i)).collect();
        let mut weights: BTreeMap<usize, u32> = BTreeMap::new();
        let mut well_formed = true;
        for &(e, w) in entries {
            if part_of.get(e).copied().flatten() != Some(i) || weights.insert(e, w).is_some() {
                report.push(ViolationKind::WeightingMismatch, [e]);
                well_formed = false;
            }
            if w == 0 || w > k {
                report.push(ViolationKind::WeightOutOfRange, [e, w as usize]);
                well_formed = false;
            }
        }
        for &e in &edges {
            if !weights.contains_key(&e) {
                report.push(ViolationKind::WeightingMismatch, [e]);
                well_formed = false;
            }
        }
        if !well_formed {
            continue;
        }
        let sub = graph.edge_subgraph_from_ids(&edges);
        let weighting = EdgeWeighting::new(k, edges.iter().map(|e| weights[e]).collect()).expect("weights checked above");
        let nsd = verify_nsd(&sub, &weighting).expect("weighting covers the part");
        for v in nsd.violations() {
            let (local, u, w) = (v.witnesses[0], v.witnesses[1], v.witnesses[2]);
            report.push(v.kind, [edges[local], u, w]);
        }
    }
    report
}

/// Solver settings shared by the pipelines that call the exact solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: DEFAULT_BUDGET }
    }
}

/// Weights every edge list with the exact solver, in parallel.
pub(crate) fn weigh_parts(
    graph: &Graph,
    lists: Vec<(Vec<usize>, String)>,
    options: SolveOptions,
) -> Vec<PartResult> {
    lists
        .into_par_iter()
        .map(|(edges, strategy)| weigh_part(graph, edges, strategy, options))
        .collect()
}

/// Exact nodes spent before handing a part to local search.
const EXACT_PROBE: u64 = 100_000;

/// Staged search: a short exact probe settles small parts and UNSAT cases,
/// local search handles large dense parts, and the remaining budget goes
/// back to the exact solver. Every weighting is re-verified.
fn weigh_part(graph: &Graph, mut edges: Vec<usize>, strategy: String, options: SolveOptions) -> PartResult {
    edges.sort_unstable();
    let sub = graph.edge_subgraph_from_ids(&edges);
    let probe = options.budget.min(EXACT_PROBE);
    let mut run = solve_exact(&sub, 3, probe).expect("k = 3 is valid");
    let mut nodes = run.nodes;
    let mut solver = "exact";
    if run.outcome == SolveOutcome::BudgetExhausted && options.budget > probe {
        let local = local_search(&sub, 3, options.budget - probe, edges.len() as u64);
        nodes += local.steps;
        if let Some(w) = local.weighting {
            run.outcome = SolveOutcome::Found(w);
            solver = "local-search";
        } else if options.budget > nodes {
            run = solve_exact(&sub, 3, options.budget - nodes).expect("k = 3 is valid");
            nodes += run.nodes;
        }
    }
    let mut certificate = VerificationReport::new()
        .with_context("edges", edges.len())
        .with_context("solver", solver)
        .with_context("solver_nodes", nodes);
    let weighting = match run.outcome {
        SolveOutcome::Found(w) => {
            certificate.absorb(verify_nsd(&sub, &w).expect("solver output covers the part"));
            Some(w)
        }
        SolveOutcome::Unsat { witness } => {
            let witness: Vec<usize> = witness.map(|e| edges[e]).into_iter().collect();
            certificate.push(ViolationKind::Unsatisfiable, witness);
            None
        }
        SolveOutcome::BudgetExhausted => {
            certificate.push(ViolationKind::BudgetExhausted, [nodes as usize]);
            None
        }
    };
    PartResult {
        edges,
        strategy,
        weighting,
        certificate,
        solver_nodes: nodes,
    }
}
