//! Min-conflicts local search for NSD weightings. Incomplete: it never
//! proves UNSAT, so callers fall back to [`super::solve_exact`].

use rand::seq::SliceRandom;
use rand::Rng;

use super::EdgeWeighting;
use crate::graph::Graph;
use crate::rng;

/// Probability of taking a random candidate move instead of the best one.
const NOISE: f64 = 0.15;

#[derive(Clone, Debug)]
pub struct LocalSearchRun {
    pub weighting: Option<EdgeWeighting>,
    pub steps: u64,
}

/// Edge ids in conflict, with O(1) insert, remove and uniform pick.
struct ConflictSet {
    items: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl ConflictSet {
    fn new(m: usize) -> Self {
        ConflictSet {
            items: Vec::new(),
            pos: vec![None; m],
        }
    }

    fn set(&mut self, e: usize, on: bool) {
        match (self.pos[e], on) {
            (None, true) => {
                self.pos[e] = Some(self.items.len());
                self.items.push(e);
            }
            (Some(i), false) => {
                let last = self.items.pop().expect("non-empty");
                if last != e {
                    self.items[i] = last;
                    self.pos[last] = Some(i);
                }
                self.pos[e] = None;
            }
            _ => {}
        }
    }
}

/// Repeatedly picks a random edge whose endpoints share a sum and changes
/// the weight of one edge at either endpoint, preferring the change that
/// leaves the fewest conflicts. Stops after `max_steps` moves.
pub fn local_search(graph: &Graph, k: u32, max_steps: u64, seed: u64) -> LocalSearchRun {
    let m = graph.edge_count();
    let mut rng = rng::stream(seed, "local-search");
    let mut weights: Vec<u32> = (0..m).map(|_| rng.gen_range(1..=k)).collect();
    let mut sums = vec![0u64; graph.vertex_count()];
    for (e, &w) in weights.iter().enumerate() {
        let (u, v) = graph.endpoints(e);
        sums[u] += u64::from(w);
        sums[v] += u64::from(w);
    }
    let mut conflicts = ConflictSet::new(m);
    for e in 0..m {
        let (u, v) = graph.endpoints(e);
        conflicts.set(e, sums[u] == sums[v]);
    }

    let mut steps = 0;
    let mut candidates = Vec::new();
    while let Some(&e) = conflicts.items.choose(&mut rng) {
        if steps >= max_steps {
            return LocalSearchRun { weighting: None, steps };
        }
        steps += 1;
        let (u, v) = graph.endpoints(e);
        candidates.clear();
        for &x in &[u, v] {
            for &(_, f) in graph.neighbours(x) {
                for w in 1..=k {
                    if w != weights[f] {
                        candidates.push((f, w));
                    }
                }
            }
        }
        if candidates.is_empty() {
            // k = 1 leaves nothing to change.
            return LocalSearchRun { weighting: None, steps };
        }
        let (f, w) = if rng.gen_bool(NOISE) {
            *candidates.choose(&mut rng).expect("non-empty")
        } else {
            let mut best = i64::MAX;
            let mut ties = Vec::new();
            for &(f, w) in &candidates {
                let delta = conflict_delta(graph, &sums, &weights, f, w);
                if delta < best {
                    best = delta;
                    ties.clear();
                }
                if delta == best {
                    ties.push((f, w));
                }
            }
            *ties.choose(&mut rng).expect("candidates are non-empty")
        };

        let (a, b) = graph.endpoints(f);
        let old = u64::from(weights[f]);
        weights[f] = w;
        for x in [a, b] {
            sums[x] = sums[x] - old + u64::from(w);
        }
        for x in [a, b] {
            for &(y, g) in graph.neighbours(x) {
                conflicts.set(g, sums[x] == sums[y]);
            }
        }
    }
    let weighting = EdgeWeighting::new(k, weights).expect("weights stay in range");
    LocalSearchRun {
        weighting: Some(weighting),
        steps,
    }
}

/// Change in the number of conflicting edges if `f` took weight `w`.
fn conflict_delta(graph: &Graph, sums: &[u64], weights: &[u32], f: usize, w: u32) -> i64 {
    let (a, b) = graph.endpoints(f);
    let shift = |x: usize| {
        if x == a || x == b {
            sums[x] - u64::from(weights[f]) + u64::from(w)
        } else {
            sums[x]
        }
    };
    let mut delta = 0i64;
    for x in [a, b] {
        for &(y, g) in graph.neighbours(x) {
            // f itself is seen from both ends; count it once.
            if g == f && x == b {
                continue;
            }
            let before = sums[x] == sums[y];
            let after = shift(x) == shift(y);
            delta += i64::from(after) - i64::from(before);
        }
    }
    delta
}
