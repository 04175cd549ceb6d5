use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use log::{debug, warn};
use rand::Rng;

use super::chromatic::{ceil_log3, chromatic_plan};
use super::{require_no_isolated_edges, weigh_parts, DecomposeError, PipelineResult, SolveOptions};
use crate::graph::{degeneracy_ordering, isolated_edges, EdgeSet, Graph, VertexSet};
use crate::rng;
use crate::weighting::is_locally_irregular;

/// Minimum degree targeted for H at full scale.
pub const PAPER_T: u64 = 10_000_000_000;
/// Degree slack at full scale.
pub const PAPER_M: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Runs the pipeline with the configured `t` and `m`.
    Desk,
    /// Full-scale constants; nothing is run, only the analytic bound is
    /// reported.
    PaperFaithful,
}

/// External decomposer of high-minimum-degree graphs into locally irregular
/// parts. Returns edge lists covering every edge of `graph` exactly once,
/// or `None` when it cannot handle the input.
pub trait LocallyIrregularDecomposer: Send + Sync {
    fn name(&self) -> &str;
    fn decompose(&self, graph: &Graph) -> Option<Vec<Vec<usize>>>;
}

/// How the high-degree part H is split.
#[derive(Clone, Default)]
pub enum HStrategy {
    #[default]
    Chromatic,
    /// Plugged-in decomposer; falls back to the chromatic split when its
    /// output is missing or not locally irregular.
    LocallyIrregular(Arc<dyn LocallyIrregularDecomposer>),
}

impl fmt::Debug for HStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HStrategy::Chromatic => f.write_str("Chromatic"),
            HStrategy::LocallyIrregular(d) => write!(f, "LocallyIrregular({})", d.name()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeneralPipelineParams {
    /// Minimum degree kept in H.
    pub t: u64,
    /// Extra slack; vertices are peeled below degree `t + m`.
    pub m: u64,
    /// Resample cap for the edge-subset step; defaults to `10^4 · n`.
    pub subset_cap: Option<usize>,
    pub solve: SolveOptions,
    pub h_strategy: HStrategy,
    pub profile: Profile,
}

impl Default for GeneralPipelineParams {
    fn default() -> Self {
        GeneralPipelineParams {
            t: 3,
            m: 2,
            subset_cap: None,
            solve: SolveOptions::default(),
            h_strategy: HStrategy::Chromatic,
            profile: Profile::Desk,
        }
    }
}

impl GeneralPipelineParams {
    pub fn paper() -> Self {
        GeneralPipelineParams {
            t: PAPER_T,
            m: PAPER_M,
            profile: Profile::PaperFaithful,
            ..Self::default()
        }
    }

    pub fn peel_threshold(&self) -> u64 {
        self.t + self.m
    }
}

/// Part-count bound: 3 parts for H plus `⌈log3 P⌉` for F.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyticBound {
    pub h_parts: usize,
    pub f_parts: usize,
    pub total: usize,
}

pub fn analytic_part_bound(t: u64, m: u64) -> AnalyticBound {
    let f_parts = ceil_log3(t + m);
    AnalyticBound {
        h_parts: 3,
        f_parts,
        total: 3 + f_parts,
    }
}

pub fn paper_part_bound() -> AnalyticBound {
    analytic_part_bound(PAPER_T, PAPER_M)
}

#[derive(Clone, Debug)]
pub struct EdgeSubset {
    pub edges: EdgeSet,
    /// Edge chosen at each vertex.
    pub choice: Vec<usize>,
    pub resamples: usize,
}

/// Picks one edge `e_v` among the `δ` lowest-id edges at each vertex so
/// that `S = {e_v}` has `1 <= d_S(v) <= d(v) - t` everywhere.
///
/// Bad event at `v`: fewer than `t + 1` neighbours `u` have `e_u ≠ uv`;
/// it is repaired by redrawing `e_u` for every `u ∈ N(v)`.
pub fn select_edge_subset(
    graph: &Graph,
    t: u64,
    m: u64,
    seed: u64,
    cap: Option<usize>,
) -> Result<EdgeSubset, DecomposeError> {
    if t < 1 || m < 1 {
        return Err(DecomposeError::Invalid(format!("t = {t} and m = {m} must be positive")));
    }
    let n = graph.vertex_count();
    let delta = graph.min_degree();
    if n > 0 && (delta as u64) < t + m {
        return Err(DecomposeError::MinDegree {
            required: t + m,
            found: delta,
        });
    }
    let t = t as usize;
    let cap = cap.unwrap_or(10_000 * n);
    let mut rng = rng::stream(seed, "edge-subset");
    let draw = |rng: &mut rand_chacha::ChaCha8Rng, v: usize| graph.neighbours(v)[rng.gen_range(0..delta)];

    // target[v]: the neighbour reached by e_v. hits[x]: #{u : e_u = ux}.
    let mut choice = vec![0usize; n];
    let mut target = vec![0usize; n];
    let mut hits = vec![0usize; n];
    for v in 0..n {
        let (w, e) = draw(&mut rng, v);
        choice[v] = e;
        target[v] = w;
        hits[w] += 1;
    }
    let bad = |hits: &[usize], x: usize| graph.degree(x) - hits[x] < t + 1;
    let mut violated: BTreeSet<usize> = (0..n).filter(|&x| bad(&hits, x)).collect();
    let mut resamples = 0;
    while let Some(&v) = violated.iter().next() {
        if resamples >= cap {
            return Err(DecomposeError::ResampleCap {
                procedure: "select_edge_subset",
                cap,
                violating: violated.into_iter().collect(),
            });
        }
        resamples += 1;
        let mut affected = BTreeSet::new();
        for &(u, _) in graph.neighbours(v) {
            hits[target[u]] -= 1;
            affected.insert(target[u]);
            let (w, e) = draw(&mut rng, u);
            choice[u] = e;
            target[u] = w;
            hits[w] += 1;
            affected.insert(w);
        }
        for x in affected {
            if bad(&hits, x) {
                violated.insert(x);
            } else {
                violated.remove(&x);
            }
        }
    }

    let edges = EdgeSet::from_ids(graph.edge_count(), choice.iter().copied());
    for v in 0..n {
        let d_s = graph.neighbours(v).iter().filter(|&&(_, e)| edges.contains(e)).count();
        if d_s < 1 || d_s + t > graph.degree(v) {
            return Err(DecomposeError::Internal(format!("edge subset degree {d_s} at vertex {v}")));
        }
    }
    debug!("select_edge_subset: {resamples} resamples");
    Ok(EdgeSubset {
        edges,
        choice,
        resamples,
    })
}

#[derive(Clone, Debug)]
pub struct PeelOutcome {
    /// High-degree part; every vertex of `core` keeps degree `>= t` in it.
    pub h: EdgeSet,
    /// Low-degeneracy part without K2-components.
    pub f: EdgeSet,
    /// Vertices surviving the peeling.
    pub core: VertexSet,
    /// Edges moved from H to F to absorb K2-components of F.
    pub moved: Vec<usize>,
    pub subset_resamples: usize,
}

/// Splits `graph` into H (empty or of minimum degree `>= t` on its
/// vertices) and F (degeneracy `< t + m`, no K2-components).
///
/// Vertices of residual degree below `t + m` are peeled repeatedly; edges
/// touching a peeled vertex go to F and the rest to H. Each K2-component
/// of F then takes one edge of the subset from [`select_edge_subset`] at
/// its H-endpoint, unless an edge at that endpoint was already moved.
pub fn peel_decompose(
    graph: &Graph,
    params: &GeneralPipelineParams,
    seed: u64,
) -> Result<PeelOutcome, DecomposeError> {
    require_no_isolated_edges(graph)?;
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let threshold = params.peel_threshold() as usize;

    let mut residual: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (residual[v], v)).collect();
    let mut core = VertexSet::full(n);
    while let Some(&(deg, v)) = queue.iter().next() {
        if deg >= threshold {
            break;
        }
        queue.remove(&(deg, v));
        core.remove(v);
        for &(w, _) in graph.neighbours(v) {
            if core.contains(w) {
                queue.remove(&(residual[w], w));
                residual[w] -= 1;
                queue.insert((residual[w], w));
            }
        }
    }

    let mut h = EdgeSet::new(m);
    let mut f = EdgeSet::new(m);
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        if core.contains(u) && core.contains(v) {
            h.insert(e);
        } else {
            f.insert(e);
        }
    }

    let mut moved = Vec::new();
    let mut subset_resamples = 0;
    if !core.is_empty() {
        let (core_graph, _, origin) = graph.induced_subgraph(&core);
        let subset = select_edge_subset(&core_graph, params.t, params.m, seed, params.subset_cap)?;
        subset_resamples = subset.resamples;
        let s = EdgeSet::from_ids(m, subset.edges.iter().map(|e| origin[e]));

        let f_graph = graph.edge_subgraph(&f);
        let mut touched = vec![false; n];
        for local in isolated_edges(&f_graph.0).iter() {
            let e = f_graph.1[local];
            let (u, v) = graph.endpoints(e);
            let x = match (core.contains(u), core.contains(v)) {
                (true, false) => u,
                (false, true) => v,
                _ => return Err(DecomposeError::Internal(format!("K2-component {e} of F has no core endpoint"))),
            };
            if touched[x] {
                continue;
            }
            let pick = graph
                .neighbours(x)
                .iter()
                .map(|&(_, g)| g)
                .filter(|&g| s.contains(g) && h.contains(g))
                .min()
                .ok_or_else(|| DecomposeError::Internal(format!("no subset edge at core vertex {x}")))?;
            h.remove(pick);
            f.insert(pick);
            moved.push(pick);
            touched[x] = true;
            let (a, b) = graph.endpoints(pick);
            touched[a] = true;
            touched[b] = true;
        }
    }

    let outcome = PeelOutcome {
        h,
        f,
        core,
        moved,
        subset_resamples,
    };
    check_peel(graph, &outcome, params)?;
    Ok(outcome)
}

fn check_peel(graph: &Graph, outcome: &PeelOutcome, params: &GeneralPipelineParams) -> Result<(), DecomposeError> {
    let f_graph = graph.edge_subgraph(&outcome.f).0;
    if !isolated_edges(&f_graph).is_empty() {
        return Err(DecomposeError::Internal("F has a K2-component".into()));
    }
    let degeneracy = degeneracy_ordering(&f_graph).degeneracy;
    if degeneracy as u64 >= params.peel_threshold() {
        return Err(DecomposeError::Internal(format!("F has degeneracy {degeneracy}")));
    }
    let h_graph = graph.edge_subgraph(&outcome.h).0;
    if let Some(v) = outcome.core.iter().find(|&v| (h_graph.degree(v) as u64) < params.t) {
        return Err(DecomposeError::Internal(format!("H degree {} at {v}", h_graph.degree(v))));
    }
    Ok(())
}

/// H/F split followed by a chromatic split of each side and the exact
/// solver on every part. H is split by `params.h_strategy`; F by the
/// chromatic recursion with `⌈log3 c⌉` parts, `c <= degeneracy(F) + 1`.
pub fn decompose_general(
    graph: &Graph,
    params: &GeneralPipelineParams,
    seed: u64,
) -> Result<PipelineResult, DecomposeError> {
    if params.profile == Profile::PaperFaithful {
        return Err(DecomposeError::PaperProfile {
            bound: paper_part_bound().total,
        });
    }
    if params.t < 2 || params.m < 1 {
        return Err(DecomposeError::Invalid(format!(
            "need t >= 2 and m >= 1, got t = {} and m = {}",
            params.t, params.m
        )));
    }
    require_no_isolated_edges(graph)?;
    let peel = peel_decompose(graph, params, seed)?;

    let paper = paper_part_bound();
    let desk = analytic_part_bound(params.t, params.m);
    let mut metadata = BTreeMap::new();
    for (key, value) in [
        ("strategy", "general".to_string()),
        ("t", params.t.to_string()),
        ("m", params.m.to_string()),
        ("seed", seed.to_string()),
        ("peel_threshold", params.peel_threshold().to_string()),
        ("core_vertices", peel.core.len().to_string()),
        ("h_edges", peel.h.len().to_string()),
        ("f_edges", peel.f.len().to_string()),
        ("moved_edges", peel.moved.len().to_string()),
        ("subset_resamples", peel.subset_resamples.to_string()),
        ("analytic_bound", paper.total.to_string()),
        ("analytic_bound_h", paper.h_parts.to_string()),
        ("analytic_bound_f", paper.f_parts.to_string()),
        ("f_part_bound", desk.f_parts.max(1).to_string()),
    ] {
        metadata.insert(key.to_string(), value);
    }

    let (h_graph, h_origin) = graph.edge_subgraph(&peel.h);
    let h_lists = match &params.h_strategy {
        HStrategy::Chromatic => chromatic_plan(&h_graph, "h", &mut metadata)?,
        HStrategy::LocallyIrregular(plugin) => match plugin.decompose(&h_graph).filter(|lists| {
            super::EdgePartition::from_parts(h_graph.edge_count(), lists).is_ok()
                && lists
                    .iter()
                    .all(|l| is_locally_irregular(&h_graph.edge_subgraph_from_ids(l)).passed())
        }) {
            Some(lists) => {
                metadata.insert("h_strategy".to_string(), plugin.name().to_string());
                lists
                    .into_iter()
                    .enumerate()
                    .map(|(i, l)| (l, format!("{}:{}", plugin.name(), i + 1)))
                    .collect()
            }
            None => {
                warn!("{} gave no valid locally irregular split; using the chromatic split", plugin.name());
                metadata.insert("h_strategy".to_string(), "chromatic-fallback".to_string());
                chromatic_plan(&h_graph, "h", &mut metadata)?
            }
        },
    };
    let (f_graph, f_origin) = graph.edge_subgraph(&peel.f);
    let f_lists = chromatic_plan(&f_graph, "f", &mut metadata)?;
    if f_lists.len() > desk.f_parts.max(1) {
        return Err(DecomposeError::Internal(format!("F needed {} parts", f_lists.len())));
    }

    let lists: Vec<(Vec<usize>, String)> = h_lists
        .into_iter()
        .map(|(l, tag)| (l.into_iter().map(|e| h_origin[e]).collect(), tag))
        .chain(f_lists.into_iter().map(|(l, tag)| (l.into_iter().map(|e| f_origin[e]).collect(), tag)))
        .collect();
    let parts = weigh_parts(graph, lists, params.solve);
    PipelineResult::assemble(graph.edge_count(), parts, metadata)
}
