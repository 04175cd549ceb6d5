//! Exact backtracking search for NSD weightings.
//!
//! Components are solved independently. Within a component, edges are
//! assigned in BFS order from its lowest vertex; whenever a vertex receives
//! its last incident weight its sum is frozen and compared with every
//! already-frozen neighbour.

use std::collections::VecDeque;

use super::{EdgeWeighting, WeightingError};
use crate::graph::{component_labels, isolated_edges, Graph};

/// Backtrack-tree node cap used when callers have no better figure.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Found(EdgeWeighting),
    /// No weighting exists. `witness` names an isolated edge when that is
    /// the reason.
    Unsat { witness: Option<usize> },
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverRun {
    pub outcome: SolveOutcome,
    /// Backtrack-tree nodes visited (one per tentative weight assignment).
    pub nodes: u64,
}

impl SolverRun {
    pub fn weighting(&self) -> Option<&EdgeWeighting> {
        match &self.outcome {
            SolveOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

pub fn solve_exact(graph: &Graph, k: u32, budget: u64) -> Result<SolverRun, WeightingError> {
    if k == 0 {
        return Err(WeightingError::ZeroMaxWeight);
    }
    if let Some(e) = isolated_edges(graph).iter().next() {
        return Ok(SolverRun {
            outcome: SolveOutcome::Unsat { witness: Some(e) },
            nodes: 0,
        });
    }

    let mut search = Search {
        graph,
        k,
        budget,
        nodes: 0,
        weights: vec![0; graph.edge_count()],
        sums: vec![0; graph.vertex_count()],
        remaining: (0..graph.vertex_count()).map(|v| graph.degree(v)).collect(),
    };

    for order in component_edge_orders(graph) {
        match search.run(&order, 0) {
            Ok(true) => {}
            Ok(false) => {
                return Ok(SolverRun {
                    outcome: SolveOutcome::Unsat { witness: None },
                    nodes: search.nodes,
                })
            }
            Err(Exhausted) => {
                return Ok(SolverRun {
                    outcome: SolveOutcome::BudgetExhausted,
                    nodes: search.nodes,
                })
            }
        }
    }

    let weighting = EdgeWeighting::new(k, search.weights).expect("search assigns weights in range");
    Ok(SolverRun {
        outcome: SolveOutcome::Found(weighting),
        nodes: search.nodes,
    })
}

/// Edge orders, one per component with edges: BFS from the component's
/// lowest vertex, each dequeued vertex contributing its not-yet-listed edges.
fn component_edge_orders(graph: &Graph) -> Vec<Vec<usize>> {
    let labels = component_labels(graph);
    let mut listed = vec![false; graph.edge_count()];
    let mut visited = vec![false; graph.vertex_count()];
    let mut orders = Vec::new();
    for start in 0..graph.vertex_count() {
        if visited[start] || graph.degree(start) == 0 {
            continue;
        }
        debug_assert!(labels[start] == labels[graph.neighbours(start)[0].0]);
        let mut order = Vec::new();
        let mut queue = VecDeque::from([start]);
        visited[start] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, e) in graph.neighbours(v) {
                if !listed[e] {
                    listed[e] = true;
                    order.push(e);
                }
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        orders.push(order);
    }
    orders
}

struct Exhausted;

struct Search<'g> {
    graph: &'g Graph,
    k: u32,
    budget: u64,
    nodes: u64,
    weights: Vec<u32>,
    sums: Vec<u64>,
    remaining: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, order: &[usize], idx: usize) -> Result<bool, Exhausted> {
        let Some(&e) = order.get(idx) else {
            return Ok(true);
        };
        let (u, v) = self.graph.endpoints(e);
        self.remaining[u] -= 1;
        self.remaining[v] -= 1;
        for w in 1..=self.k {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.remaining[u] += 1;
                self.remaining[v] += 1;
                return Err(Exhausted);
            }
            self.weights[e] = w;
            self.sums[u] += u64::from(w);
            self.sums[v] += u64::from(w);
            if self.frozen_ok(u) && self.frozen_ok(v) && self.run(order, idx + 1)? {
                return Ok(true);
            }
            self.sums[u] -= u64::from(w);
            self.sums[v] -= u64::from(w);
        }
        self.weights[e] = 0;
        self.remaining[u] += 1;
        self.remaining[v] += 1;
        Ok(false)
    }

    /// A vertex that is not yet frozen is always fine; a frozen one must
    /// differ from every frozen neighbour.
    fn frozen_ok(&self, x: usize) -> bool {
        self.remaining[x] > 0
            || self
                .graph
                .neighbours(x)
                .iter()
                .all(|&(y, _)| self.remaining[y] > 0 || self.sums[y] != self.sums[x])
    }
}
