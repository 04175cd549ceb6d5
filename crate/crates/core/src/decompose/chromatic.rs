use std::collections::BTreeMap;

use super::repair::{check_witness, repair_monochromatic_k2};
use super::{require_no_isolated_edges, weigh_parts, DecomposeError, EdgePartition, PipelineResult, SolveOptions};
use crate::graph::{degeneracy_ordering, dsatur_colouring, isolated_edges, Graph, ProperColouring};

/// Smallest `k` with `3^k >= c`.
pub fn ceil_log3(c: u64) -> usize {
    let mut k = 0;
    let mut power: u64 = 1;
    while power < c {
        power = power.saturating_mul(3);
        k += 1;
    }
    k
}

#[derive(Clone, Debug)]
pub struct ChromaticDecomposition {
    pub partition: EdgePartition,
    /// Proper colouring of each part with colours `0..3`.
    pub witnesses: Vec<ProperColouring>,
    /// Repair moves per recursion level, outermost first.
    pub repair_moves: Vec<usize>,
    /// Edge count of the graph repaired at each level.
    pub repair_edges: Vec<usize>,
}

/// Splits `graph` into `k` parts (some possibly empty), each 3-colourable
/// and without K2-components, from a proper colouring with at most `3^k`
/// colours.
///
/// At each level the edges whose endpoint colours agree mod 3 stay for the
/// next level (coloured by `c / 3`), the rest form a part coloured by
/// `c mod 3`; the two classes are then repaired so neither has a
/// K2-component.
pub fn chromatic_decompose(
    graph: &Graph,
    colouring: &ProperColouring,
    k: usize,
) -> Result<ChromaticDecomposition, DecomposeError> {
    require_no_isolated_edges(graph)?;
    if k == 0 {
        return Err(DecomposeError::Invalid("k must be at least 1".into()));
    }
    let limit = 3usize.checked_pow(k as u32).unwrap_or(usize::MAX);
    check_witness(graph, colouring, limit).map_err(|_| DecomposeError::ColouringTooLarge {
        colours: colouring.colour_count(),
        k,
    })?;

    let m = graph.edge_count();
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut witnesses: Vec<ProperColouring> = vec![ProperColouring::from_vec(vec![0; graph.vertex_count()]); k];
    let mut repair_moves = Vec::new();
    let mut repair_edges = Vec::new();
    let mut current: Vec<usize> = (0..m).collect();
    let mut colours = colouring.as_slice().to_vec();

    for level in (2..=k).rev() {
        if current.is_empty() {
            break;
        }
        let sub = graph.edge_subgraph_from_ids(&current);
        let classes: Vec<usize> = sub
            .edges()
            .iter()
            .map(|&(u, v)| usize::from(colours[u] % 3 != colours[v] % 3))
            .collect();
        let split = EdgePartition::new(classes, 2)?;
        let red = ProperColouring::from_vec(colours.iter().map(|c| c / 3).collect());
        let blue = ProperColouring::from_vec(colours.iter().map(|c| c % 3).collect());
        let red_bound = 3usize.checked_pow(level as u32 - 1).unwrap_or(usize::MAX);
        let repaired = repair_monochromatic_k2(&sub, &split, [red_bound, 3], Some([red, blue]))?;
        repair_moves.push(repaired.moves);
        repair_edges.push(sub.edge_count());

        let [red, blue] = repaired.witnesses;
        parts[level - 1] = repaired.partition.edges_of(1).into_iter().map(|e| current[e]).collect();
        witnesses[level - 1] = blue;
        current = repaired.partition.edges_of(0).into_iter().map(|e| current[e]).collect();
        colours = red.into_vec();
    }
    witnesses[0] = ProperColouring::from_vec(colours);
    parts[0] = current;

    for (p, edges) in parts.iter().enumerate() {
        let sub = graph.edge_subgraph_from_ids(edges);
        check_witness(&sub, &witnesses[p], 3)
            .map_err(|err| DecomposeError::Internal(format!("part {p} witness: {err}")))?;
        if !isolated_edges(&sub).is_empty() {
            return Err(DecomposeError::Internal(format!("part {p} has a K2-component")));
        }
    }
    Ok(ChromaticDecomposition {
        partition: EdgePartition::from_parts(m, &parts)?,
        witnesses,
        repair_moves,
        repair_edges,
    })
}

/// The smaller of the DSATUR and smallest-last colourings; the latter never
/// exceeds degeneracy + 1 colours.
pub(crate) fn best_colouring(graph: &Graph) -> ProperColouring {
    let dsatur = dsatur_colouring(graph);
    let smallest_last = degeneracy_ordering(graph).colouring(graph);
    if smallest_last.colour_count() < dsatur.colour_count() {
        smallest_last
    } else {
        dsatur
    }
}

/// Edge lists of a chromatic split with `⌈log3 c⌉` parts, where `c` is the
/// colour count of [`best_colouring`]. Empty graphs give no parts.
pub(crate) fn chromatic_plan(
    graph: &Graph,
    label: &str,
    metadata: &mut BTreeMap<String, String>,
) -> Result<Vec<(Vec<usize>, String)>, DecomposeError> {
    if graph.edge_count() == 0 {
        return Ok(Vec::new());
    }
    let colouring = best_colouring(graph);
    let colours = colouring.colour_count();
    let k = ceil_log3(colours as u64).max(1);
    let split = chromatic_decompose(graph, &colouring, k)?;
    metadata.insert(format!("{label}_colours"), colours.to_string());
    metadata.insert(format!("{label}_parts"), k.to_string());
    metadata.insert(format!("{label}_repair_moves"), format!("{:?}", split.repair_moves));
    Ok((0..k)
        .map(|p| (split.partition.edges_of(p), format!("{label}:{}/{k}", p + 1)))
        .collect())
}

/// Chromatic split followed by the exact solver on every part.
pub fn decompose_by_chromatic(graph: &Graph, options: SolveOptions) -> Result<PipelineResult, DecomposeError> {
    require_no_isolated_edges(graph)?;
    let mut metadata = BTreeMap::new();
    metadata.insert("strategy".to_string(), "chromatic".to_string());
    let lists = chromatic_plan(graph, "chromatic", &mut metadata)?;
    let parts = weigh_parts(graph, lists, options);
    PipelineResult::assemble(graph.edge_count(), parts, metadata)
}
