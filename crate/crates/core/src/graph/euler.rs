use super::{bipartition, EdgeSet, Graph, GraphError};

/// Two complementary edge sets of a bipartite graph whose degrees split
/// evenly at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerSplit {
    pub first: EdgeSet,
    pub second: EdgeSet,
}

/// Splits the edges of a bipartite graph into two parts with
/// `d_first(v) ∈ [(d(v)-1)/2, (d(v)+1)/2]` at every vertex.
///
/// Odd-degree vertices are joined to one auxiliary vertex; every component
/// of the augmented graph is walked along an Eulerian circuit (from the
/// auxiliary vertex when it belongs to the component, otherwise from the
/// component's lowest vertex) and edges are coloured alternately, starting
/// with `first` on each circuit.
pub fn euler_split(graph: &Graph) -> Result<EulerSplit, GraphError> {
    bipartition(graph)?;

    let n = graph.vertex_count();
    let m = graph.edge_count();
    let aux = n;
    let mut adjacency: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|v| graph.neighbours(v).to_vec())
        .collect();
    adjacency.push(Vec::new());
    let mut edge_count = m;
    for v in 0..n {
        if graph.degree(v) % 2 == 1 {
            adjacency[v].push((aux, edge_count));
            adjacency[aux].push((v, edge_count));
            edge_count += 1;
        }
    }

    let mut used = vec![false; edge_count];
    let mut cursor = vec![0usize; n + 1];
    let mut first = EdgeSet::new(m);

    let starts = std::iter::once(aux).chain(0..n);
    for start in starts {
        if cursor[start] >= adjacency[start].len() || all_used(&adjacency[start], &used) {
            continue;
        }
        let circuit = eulerian_circuit(start, &adjacency, &mut used, &mut cursor);
        for (position, &e) in circuit.iter().enumerate() {
            if position % 2 == 0 && e < m {
                first.insert(e);
            }
        }
    }

    let second = first.complement();
    Ok(EulerSplit { first, second })
}

fn all_used(adj: &[(usize, usize)], used: &[bool]) -> bool {
    adj.iter().all(|&(_, e)| used[e])
}

/// Iterative Hierholzer. The returned edge sequence is a closed walk
/// through `start` covering every edge of its component exactly once.
fn eulerian_circuit(
    start: usize,
    adjacency: &[Vec<(usize, usize)>],
    used: &mut [bool],
    cursor: &mut [usize],
) -> Vec<usize> {
    let mut circuit = Vec::new();
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    while let Some(&(v, _)) = stack.last() {
        let adj = &adjacency[v];
        while cursor[v] < adj.len() && used[adj[cursor[v]].1] {
            cursor[v] += 1;
        }
        if let Some(&(w, e)) = adj.get(cursor[v]) {
            used[e] = true;
            stack.push((w, Some(e)));
        } else {
            let (_, incoming) = stack.pop().expect("stack is non-empty");
            if let Some(e) = incoming {
                circuit.push(e);
            }
        }
    }
    circuit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    fn split_degree(graph: &Graph, part: &EdgeSet, v: usize) -> usize {
        graph
            .neighbours(v)
            .iter()
            .filter(|&&(_, e)| part.contains(e))
            .count()
    }

    fn assert_balanced(graph: &Graph, split: &EulerSplit) {
        for v in 0..graph.vertex_count() {
            let d = graph.degree(v) as f64;
            for part in [&split.first, &split.second] {
                let dp = split_degree(graph, part, v) as f64;
                assert!((d - 1.0) / 2.0 <= dp && dp <= (d + 1.0) / 2.0, "vertex {v}");
            }
        }
    }

    #[test]
    fn four_cycle_splits_into_perfect_matchings() {
        // Both alternations of a C4 circuit give two perfect matchings.
        let c4 = generators::cycle(4);
        let split = euler_split(&c4).unwrap();
        assert_eq!(split.first.len(), 2);
        for v in 0..4 {
            assert_eq!(split_degree(&c4, &split.first, v), 1);
        }
        let matchings = [vec![0, 2], vec![1, 3]];
        assert!(matchings.contains(&split.first.to_vec()));
    }

    #[test]
    fn star_centre_gets_two_each() {
        let star = generators::star(4);
        let split = euler_split(&star).unwrap();
        assert_eq!(split_degree(&star, &split.first, 0), 2);
        assert_eq!(split_degree(&star, &split.second, 0), 2);
        assert_balanced(&star, &split);
    }

    #[test]
    fn single_edge_goes_to_one_side() {
        let k2 = generators::complete(2);
        let split = euler_split(&k2).unwrap();
        assert_eq!(split.first.len() + split.second.len(), 1);
        assert_balanced(&k2, &split);
    }

    #[test]
    fn disconnected_even_components() {
        let g = Graph::from_edges(
            10,
            [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 4)],
        )
        .unwrap();
        let split = euler_split(&g).unwrap();
        assert_balanced(&g, &split);
    }

    #[test]
    fn rejects_odd_cycle() {
        assert!(matches!(
            euler_split(&generators::cycle(5)),
            Err(GraphError::NotBipartite { .. })
        ));
    }

    #[test]
    fn random_bipartite_graphs_are_balanced() {
        for seed in 0..30 {
            let g = generators::random_bipartite(12, 17, 0.3, seed);
            let split = euler_split(&g).unwrap();
            assert_balanced(&g, &split);
        }
    }
}
