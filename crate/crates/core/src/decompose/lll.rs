use std::collections::BTreeSet;

use log::debug;
use rand::Rng;

use super::DecomposeError;
use crate::graph::{Graph, VertexSet};
use crate::report::{VerificationReport, ViolationKind};
use crate::rng;

/// Side 0 or 1 for every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexBipartition {
    side: Vec<u8>,
}

impl VertexBipartition {
    pub fn from_sides(side: Vec<u8>) -> Self {
        assert!(side.iter().all(|&s| s <= 1), "sides must be 0 or 1");
        VertexBipartition { side }
    }

    pub fn side(&self, v: usize) -> u8 {
        self.side[v]
    }

    pub fn sides(&self) -> &[u8] {
        &self.side
    }

    pub fn set(&self, s: u8) -> VertexSet {
        VertexSet::from_ids(self.side.len(), (0..self.side.len()).filter(|&v| self.side[v] == s))
    }

    pub fn count(&self, s: u8) -> usize {
        self.side.iter().filter(|&&x| x == s).count()
    }
}

#[derive(Clone, Debug)]
pub struct LllOutcome {
    pub bipartition: VertexBipartition,
    pub resamples: usize,
}

/// Every vertex needs at least `2 + r` neighbours on its own side and at
/// least 2 on the other side. Violations carry the vertex.
pub fn check_bipartition_conditions(graph: &Graph, bipartition: &VertexBipartition, r: usize) -> VerificationReport {
    let mut report = VerificationReport::new()
        .with_context("side0", bipartition.count(0))
        .with_context("side1", bipartition.count(1));
    for v in 0..graph.vertex_count() {
        if !satisfied(graph, bipartition.sides(), r, v) {
            report.push(ViolationKind::DegreeCondition, [v]);
        }
    }
    report
}

fn satisfied(graph: &Graph, side: &[u8], r: usize, v: usize) -> bool {
    let same = graph.neighbours(v).iter().filter(|&&(w, _)| side[w] == side[v]).count();
    let other = graph.degree(v) - same;
    same >= 2 + r && other >= 2
}

/// Regular degree accepted by the two-part pipeline, or why not.
pub(crate) fn supported_degree(graph: &Graph) -> Result<usize, DecomposeError> {
    let d = graph.regular_degree().ok_or(DecomposeError::NotRegular)?;
    if d < 14 {
        return Err(DecomposeError::Degree {
            degree: d,
            reason: "the two-part pipeline needs d >= 14",
        });
    }
    if d == 15 || d == 17 {
        return Err(DecomposeError::Degree {
            degree: d,
            reason: "d = 15 and d = 17 are excluded",
        });
    }
    Ok(d)
}

/// Fair coin per vertex, then resample the coins of `{v} ∪ N(v)` for the
/// lowest violating vertex until every vertex meets the conditions of
/// [`check_bipartition_conditions`]. `cap` defaults to `10^4 · n`.
pub fn lll_bipartition(graph: &Graph, seed: u64, cap: Option<usize>) -> Result<LllOutcome, DecomposeError> {
    let d = supported_degree(graph)?;
    let r = d % 2;
    let n = graph.vertex_count();
    let cap = cap.unwrap_or(10_000 * n);
    let mut rng = rng::stream(seed, "lll-bipartition");
    let mut side: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
    let mut violated: BTreeSet<usize> = (0..n).filter(|&v| !satisfied(graph, &side, r, v)).collect();
    let mut resamples = 0;

    while let Some(&v) = violated.iter().next() {
        if resamples >= cap {
            return Err(DecomposeError::ResampleCap {
                procedure: "lll_bipartition",
                cap,
                violating: violated.into_iter().collect(),
            });
        }
        resamples += 1;
        let mut touched = BTreeSet::from([v]);
        side[v] = rng.gen_range(0..=1);
        for &(w, _) in graph.neighbours(v) {
            side[w] = rng.gen_range(0..=1);
            touched.insert(w);
        }
        // A vertex's condition reads its own coin and its neighbours'.
        let mut affected = touched.clone();
        for &x in &touched {
            affected.extend(graph.neighbours(x).iter().map(|&(y, _)| y));
        }
        for x in affected {
            if satisfied(graph, &side, r, x) {
                violated.remove(&x);
            } else {
                violated.insert(x);
            }
        }
    }
    debug!("lll_bipartition: {resamples} resamples on n = {n}, d = {d}");
    Ok(LllOutcome {
        bipartition: VertexBipartition { side },
        resamples,
    })
}
