//! NSD `{1,2,3}`-weighting of graphs that carry a maximal independent set
//! `I` and a constant `alpha` with
//!
//! * `d(v) <= alpha` for every `v` in `I`, and
//! * `d(v) >= alpha + (d_R(v) + 1) / 2` for every `v` in `R = V \ I`.
//!
//! Every edge starts at weight 2. The components of `G[R]` are processed
//! one at a time along a BFS order; each vertex picks a sum distinct from
//! its backward neighbours by shifting backward edges by ±1 while the
//! anchor edge (into `I`) of the backward neighbour absorbs the opposite
//! shift. Remainder sums end up at least `2*alpha + 1`, independent-set sums
//! at most `2*alpha`.

use std::collections::VecDeque;
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::report::{VerificationReport, ViolationKind};
use crate::weighting::{verify_nsd, EdgeWeighting};

/// Exact rational threshold.
pub type Alpha = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MisError {
    #[error("alpha must be at least 1, got {0}")]
    AlphaBelowOne(Alpha),
    #[error("vertex set sized for {got} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("preconditions failed:\n{0}")]
    Preconditions(VerificationReport),
    #[error("internal invariant violated:\n{0}")]
    Invariant(VerificationReport),
}

/// Independence, domination and both degree conditions, one violation per
/// offending edge or vertex.
pub fn check_preconditions(graph: &Graph, independent: &VertexSet, alpha: Alpha) -> VerificationReport {
    let mut report = VerificationReport::new().with_context("alpha", alpha);
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        if independent.contains(u) && independent.contains(v) {
            report.push(ViolationKind::NotIndependent, [e]);
        }
    }
    for v in 0..graph.vertex_count() {
        let d = graph.degree(v) as i64;
        if independent.contains(v) {
            if Alpha::from_integer(d) > alpha {
                report.push(ViolationKind::IndependentDegree, [v]);
            }
        } else {
            if graph.degree_into(v, independent) == 0 {
                report.push(ViolationKind::NotDominating, [v]);
            }
            let d_r = d - graph.degree_into(v, independent) as i64;
            // 2 d(v) >= 2 alpha + d_R(v) + 1
            if Alpha::from_integer(2 * d) < alpha * 2 + d_r + 1 {
                report.push(ViolationKind::RemainderDegree, [v]);
            }
        }
    }
    report
}

/// A graph together with a certified independent set and anchor edges.
#[derive(Clone, Debug)]
pub struct MisInstance<'g> {
    graph: &'g Graph,
    independent: VertexSet,
    alpha: Alpha,
    /// Lowest-id edge from each remainder vertex into the independent set.
    anchors: Vec<Option<usize>>,
}

impl<'g> MisInstance<'g> {
    pub fn new(graph: &'g Graph, independent: VertexSet, alpha: Alpha) -> Result<Self, MisError> {
        if independent.universe() != graph.vertex_count() {
            return Err(MisError::SizeMismatch {
                expected: graph.vertex_count(),
                got: independent.universe(),
            });
        }
        if alpha < Alpha::from_integer(1) {
            return Err(MisError::AlphaBelowOne(alpha));
        }
        let report = check_preconditions(graph, &independent, alpha);
        if !report.passed() {
            return Err(MisError::Preconditions(report));
        }
        let anchors = (0..graph.vertex_count())
            .map(|v| {
                if independent.contains(v) {
                    None
                } else {
                    graph
                        .neighbours(v)
                        .iter()
                        .filter(|&&(w, _)| independent.contains(w))
                        .map(|&(_, e)| e)
                        .min()
                }
            })
            .collect();
        Ok(MisInstance {
            graph,
            independent,
            alpha,
            anchors,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn independent(&self) -> &VertexSet {
        &self.independent
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn anchor(&self, v: usize) -> Option<usize> {
        self.anchors[v]
    }

    /// BFS orders of the components of `G[R]`, by lowest vertex.
    fn remainder_orders(&self) -> Vec<Vec<usize>> {
        let g = self.graph;
        let mut seen = vec![false; g.vertex_count()];
        let mut orders = Vec::new();
        for start in 0..g.vertex_count() {
            if seen[start] || self.independent.contains(start) {
                continue;
            }
            seen[start] = true;
            let mut order = Vec::new();
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &(w, _) in g.neighbours(v) {
                    if !seen[w] && !self.independent.contains(w) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            orders.push(order);
        }
        orders
    }
}

/// One paired move: `edge` (backward edge) shifted by `delta`, `anchor`
/// shifted by `-delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairedMove {
    pub edge: usize,
    pub anchor: usize,
    pub delta: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub component: usize,
    pub position: usize,
    pub vertex: usize,
    /// Number of distinct sums reachable at this step.
    pub reachable: usize,
    pub target_sum: u64,
    pub moves: Vec<PairedMove>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "component {} step {} vertex {} reachable {} -> s={}",
            self.component, self.position, self.vertex, self.reachable, self.target_sum
        )?;
        for m in &self.moves {
            write!(f, " [e{}{:+} e{}{:+}]", m.edge, m.delta, m.anchor, -m.delta)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct MisWeighting {
    pub weighting: EdgeWeighting,
    pub sums: Vec<u64>,
    /// Smallest sum over the remainder (`None` when it is empty).
    pub min_remainder_sum: Option<u64>,
    /// Largest sum over the independent set (`None` when it is empty).
    pub max_independent_sum: Option<u64>,
    pub trace: Vec<TraceStep>,
    /// Final checks: NSD, weight ranges and the sum separation.
    pub certificate: VerificationReport,
}

struct State<'a> {
    graph: &'a Graph,
    weights: Vec<u32>,
}

impl State<'_> {
    fn sum(&self, v: usize) -> u64 {
        self.graph
            .neighbours(v)
            .iter()
            .map(|&(_, e)| u64::from(self.weights[e]))
            .sum()
    }
}

pub fn weight_by_mis(instance: &MisInstance<'_>) -> Result<MisWeighting, MisError> {
    let report = check_preconditions(instance.graph, &instance.independent, instance.alpha);
    if !report.passed() {
        return Err(MisError::Preconditions(report));
    }
    let g = instance.graph;
    let mut state = State {
        graph: g,
        weights: vec![2; g.edge_count()],
    };
    let mut invariants = VerificationReport::new();
    let mut trace = Vec::new();
    let mut position = vec![usize::MAX; g.vertex_count()];
    let mut frozen: Vec<(usize, u64)> = Vec::new();

    for (component, order) in instance.remainder_orders().into_iter().enumerate() {
        for (j, &v) in order.iter().enumerate() {
            position[v] = j;
            if j > 0 {
                let step = settle_vertex(instance, &mut state, &position, component, j, v, &mut invariants);
                trace.push(step);
            }
            frozen.push((v, state.sum(v)));
            for &(u, s) in &frozen {
                if state.sum(u) != s {
                    invariants.push(ViolationKind::FrozenSumChanged, [u]);
                }
            }
        }
    }

    let weighting = EdgeWeighting::new(3, state.weights).expect("weights stay within 1..=3");
    let outcome = certify(instance, weighting, trace);
    invariants.absorb(outcome.certificate.clone());
    if !invariants.passed() {
        return Err(MisError::Invariant(invariants));
    }
    Ok(outcome)
}

fn settle_vertex(
    instance: &MisInstance<'_>,
    state: &mut State<'_>,
    position: &[usize],
    component: usize,
    j: usize,
    v: usize,
    invariants: &mut VerificationReport,
) -> TraceStep {
    let g = instance.graph;
    let mut raising = Vec::new();
    let mut lowering = Vec::new();
    let mut backward_sums = Vec::new();
    for &(u, e) in g.neighbours(v) {
        if instance.independent.contains(u) || position[u] >= j {
            continue;
        }
        let anchor = instance.anchors[u].expect("remainder vertices have anchors");
        if state.weights[e] != 2 {
            invariants.push(ViolationKind::AnchorWeight, [e]);
        }
        match state.weights[anchor] {
            2 => raising.push((e, anchor)),
            1 => lowering.push((e, anchor)),
            _ => invariants.push(ViolationKind::AnchorWeight, [anchor]),
        }
        backward_sums.push(state.sum(u));
    }

    let base = state.sum(v) as i64;
    let lo = -(lowering.len() as i64);
    let hi = raising.len() as i64;
    let reachable = (hi - lo + 1) as usize;
    if reachable < backward_sums.len() + 1 {
        invariants.push(ViolationKind::ReachableSums, [v]);
    }
    // Fewest moves first, then the smaller sum.
    let shift = (lo..=hi)
        .filter(|&a| !backward_sums.contains(&((base + a) as u64)))
        .min_by_key(|&a| (a.abs(), base + a))
        .expect("reachable sums outnumber backward neighbours");

    let chosen: &[(usize, usize)] = if shift > 0 {
        &raising[..shift as usize]
    } else {
        &lowering[..(-shift) as usize]
    };
    let delta: i32 = if shift > 0 { 1 } else { -1 };
    let mut moves = Vec::with_capacity(chosen.len());
    for &(edge, anchor) in chosen {
        let u = g.other_endpoint(edge, v);
        let before = state.sum(u);
        state.weights[edge] = (state.weights[edge] as i32 + delta) as u32;
        state.weights[anchor] = (state.weights[anchor] as i32 - delta) as u32;
        if state.sum(u) != before {
            invariants.push(ViolationKind::FrozenSumChanged, [u]);
        }
        if !(1..=2).contains(&state.weights[anchor]) {
            invariants.push(ViolationKind::AnchorWeight, [anchor]);
        }
        moves.push(PairedMove { edge, anchor, delta });
    }

    TraceStep {
        component,
        position: j,
        vertex: v,
        reachable,
        target_sum: (base + shift) as u64,
        moves,
    }
}

fn certify(instance: &MisInstance<'_>, weighting: EdgeWeighting, trace: Vec<TraceStep>) -> MisWeighting {
    let g = instance.graph;
    let mut report = verify_nsd(g, &weighting).expect("weighting covers the graph");
    report.set_context("alpha", instance.alpha);
    let sums: Vec<u64> = {
        let mut s = vec![0u64; g.vertex_count()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            s[u] += u64::from(weighting.weight(e));
            s[v] += u64::from(weighting.weight(e));
        }
        s
    };
    let twice_alpha = instance.alpha * 2;
    let mut min_remainder_sum = None;
    let mut max_independent_sum = None;
    for (v, &s) in sums.iter().enumerate() {
        let exact = Alpha::from_integer(s as i64);
        if instance.independent.contains(v) {
            max_independent_sum = max_independent_sum.max(Some(s));
            if exact > twice_alpha {
                report.push(ViolationKind::SumSeparation, [v]);
            }
            for &(_, e) in g.neighbours(v) {
                if weighting.weight(e) > 2 {
                    report.push(ViolationKind::AnchorWeight, [e]);
                }
            }
        } else {
            min_remainder_sum = Some(min_remainder_sum.map_or(s, |m: u64| m.min(s)));
            if exact < twice_alpha + 1 {
                report.push(ViolationKind::SumSeparation, [v]);
            }
        }
    }
    if let Some(s) = min_remainder_sum {
        report.set_context("min_remainder_sum", s);
    }
    if let Some(s) = max_independent_sum {
        report.set_context("max_independent_sum", s);
    }
    MisWeighting {
        weighting,
        sums,
        min_remainder_sum,
        max_independent_sum,
        trace,
        certificate: report,
    }
}
