use std::collections::BTreeMap;

use super::chromatic::decompose_by_chromatic;
use super::lll::{check_bipartition_conditions, lll_bipartition, supported_degree};
use super::{require_no_isolated_edges, weigh_parts, DecomposeError, PartResult, PipelineResult, SolveOptions};
use crate::graph::{euler_split, Graph};
use crate::mis::{weight_by_mis, Alpha, MisInstance};

/// Which pipeline [`regular_decompose`] uses for a given degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularRoute {
    /// Complete graph with `d <= 9`, weighted as a single part.
    Complete,
    Chromatic,
    TwoPart,
}

impl RegularRoute {
    pub fn select(graph: &Graph) -> Result<(RegularRoute, usize), DecomposeError> {
        let d = graph.regular_degree().ok_or(DecomposeError::NotRegular)?;
        if graph.vertex_count() > 0 && d <= 1 {
            return Err(DecomposeError::Degree {
                degree: d,
                reason: "regular pipelines need d >= 2",
            });
        }
        let route = match d {
            _ if d <= 9 && graph.is_complete() => RegularRoute::Complete,
            0..=13 | 15 | 17 => RegularRoute::Chromatic,
            _ => RegularRoute::TwoPart,
        };
        Ok((route, d))
    }

    /// Part-count promise for degree `d` along this route.
    pub fn promise(self, d: usize) -> usize {
        match self {
            RegularRoute::Complete => 1,
            RegularRoute::Chromatic if d <= 9 => 2,
            RegularRoute::Chromatic => 3,
            RegularRoute::TwoPart => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RegularRoute::Complete => "complete",
            RegularRoute::Chromatic => "chromatic",
            RegularRoute::TwoPart => "two-part",
        }
    }
}

/// Two-part decomposition of a `d`-regular graph, `d >= 14`,
/// `d ∉ {15, 17}`.
///
/// A random vertex bipartition (V0, V1) is drawn; the cross edges are split
/// evenly at every vertex by an Euler tour, and part `s` is `G[Vs]` plus its
/// half of the cross edges. In part `s` the opposite side is a maximal
/// independent set, so the part is weighted by [`weight_by_mis`] with
/// `alpha = (d - 2 - r) / 2`, `r = d mod 2`.
pub fn regular_decompose_two(graph: &Graph, seed: u64, cap: Option<usize>) -> Result<PipelineResult, DecomposeError> {
    let d = supported_degree(graph)?;
    let r = d % 2;
    let lll = lll_bipartition(graph, seed, cap)?;
    let sides = lll.bipartition.sides();
    let conditions = check_bipartition_conditions(graph, &lll.bipartition, r);
    if !conditions.passed() {
        return Err(DecomposeError::Internal(format!("bipartition conditions failed: {conditions}")));
    }

    let cross: Vec<usize> = (0..graph.edge_count())
        .filter(|&e| {
            let (u, v) = graph.endpoints(e);
            sides[u] != sides[v]
        })
        .collect();
    let split = euler_split(&graph.edge_subgraph_from_ids(&cross))?;
    let mut lists: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        if sides[u] == sides[v] {
            lists[usize::from(sides[u])].push(e);
        }
    }
    for (local, &e) in cross.iter().enumerate() {
        let s = usize::from(!split.first.contains(local));
        lists[s].push(e);
    }

    let alpha = Alpha::new((d - 2 - r) as i64, 2);
    let mut parts = Vec::with_capacity(2);
    for (s, mut edges) in lists.into_iter().enumerate() {
        edges.sort_unstable();
        let sub = graph.edge_subgraph_from_ids(&edges);
        let independent = lll.bipartition.set(1 - s as u8);
        let instance = MisInstance::new(&sub, independent, alpha)
            .map_err(|err| DecomposeError::Internal(format!("part {s}: {err}")))?;
        let weighted = weight_by_mis(&instance).map_err(|err| DecomposeError::Internal(format!("part {s}: {err}")))?;
        let mut certificate = weighted.certificate;
        certificate.set_context("alpha", alpha);
        certificate.set_context("edges", edges.len());
        parts.push(PartResult {
            edges,
            strategy: format!("mis:side{s}"),
            weighting: Some(weighted.weighting),
            certificate,
            solver_nodes: 0,
        });
    }

    let mut metadata = BTreeMap::new();
    metadata.insert("strategy".to_string(), "two-part".to_string());
    metadata.insert("degree".to_string(), d.to_string());
    metadata.insert("alpha".to_string(), alpha.to_string());
    metadata.insert("seed".to_string(), seed.to_string());
    metadata.insert("lll_resamples".to_string(), lll.resamples.to_string());
    metadata.insert("side0".to_string(), lll.bipartition.count(0).to_string());
    metadata.insert("side1".to_string(), lll.bipartition.count(1).to_string());
    PipelineResult::assemble(graph.edge_count(), parts, metadata)
}

/// Decomposes a `d`-regular graph, `d >= 2`, into at most 2 parts, or 3
/// when `d ∈ {10, 11, 12, 13, 15, 17}`. See [`RegularRoute`].
pub fn regular_decompose(graph: &Graph, seed: u64, options: SolveOptions) -> Result<PipelineResult, DecomposeError> {
    let (route, d) = RegularRoute::select(graph)?;
    require_no_isolated_edges(graph)?;
    let mut result = match route {
        RegularRoute::Complete => {
            let parts = weigh_parts(graph, vec![((0..graph.edge_count()).collect(), "complete".to_string())], options);
            let mut metadata = BTreeMap::new();
            metadata.insert("strategy".to_string(), "complete".to_string());
            PipelineResult::assemble(graph.edge_count(), parts, metadata)?
        }
        RegularRoute::Chromatic => decompose_by_chromatic(graph, options)?,
        RegularRoute::TwoPart => regular_decompose_two(graph, seed, None)?,
    };
    result.metadata.insert("route".to_string(), route.name().to_string());
    result.metadata.insert("degree".to_string(), d.to_string());
    result.metadata.insert("promised_parts".to_string(), route.promise(d).to_string());
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use crate::report::ViolationKind;

    #[test]
    fn k15_two_parts() {
        let g = generators::complete(15);
        let result = regular_decompose_two(&g, 3, None).unwrap();
        assert_eq!(result.part_count(), 2);
        assert!(result.all_certified(), "{:?}", result.parts[0].certificate);
        assert!(result.audit(&g).passed());
        for part in &result.parts {
            assert!(part.weighting.as_ref().unwrap().weights().iter().all(|w| (1..=3).contains(w)));
        }
    }

    #[test]
    fn random_regular_sixteen() {
        let g = generators::random_regular(32, 16, 4).unwrap();
        let result = regular_decompose_two(&g, 4, None).unwrap();
        assert_eq!(result.part_count(), 2);
        assert!(result.all_certified());
        assert!(result.audit(&g).passed());
    }

    #[test]
    fn low_degree_is_rejected_by_two_part() {
        assert!(matches!(
            regular_decompose_two(&generators::cycle(5), 0, None),
            Err(DecomposeError::Degree { degree: 2, .. })
        ));
    }

    #[test]
    fn dispatcher_examples() {
        let c5 = regular_decompose(&generators::cycle(5), 0, SolveOptions::default()).unwrap();
        assert_eq!(c5.part_count(), 1);
        assert!(c5.all_certified());

        let k12 = regular_decompose(&generators::complete(12), 0, SolveOptions::default()).unwrap();
        assert_eq!(k12.metadata["route"], "chromatic");
        assert_eq!(k12.part_count(), 3);
        assert!(k12.all_certified());

        let k15 = regular_decompose(&generators::complete(15), 0, SolveOptions::default()).unwrap();
        assert_eq!(k15.part_count(), 2);
        assert!(k15.all_certified());

        let k9 = regular_decompose(&generators::complete(9), 0, SolveOptions::default()).unwrap();
        assert_eq!(k9.part_count(), 1);
        assert!(k9.all_certified());
    }

    #[test]
    fn dispatcher_rejects_irregular_and_matchings() {
        assert!(matches!(
            regular_decompose(&generators::path(4), 0, SolveOptions::default()),
            Err(DecomposeError::NotRegular)
        ));
        let matching = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(regular_decompose(&matching, 0, SolveOptions::default()).is_err());
    }

    #[test]
    fn no_budget_failures_on_small_regular() {
        let g = generators::random_regular(20, 6, 1).unwrap();
        let result = regular_decompose(&g, 1, SolveOptions::default()).unwrap();
        assert!(result.part_count() <= 2);
        assert!(result.parts.iter().all(|p| !p.certificate.has(ViolationKind::BudgetExhausted)));
    }
}
