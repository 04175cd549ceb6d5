use std::collections::VecDeque;

use super::{EdgeSet, Graph, GraphError, VertexSet};

/// Component label per vertex; labels are numbered in order of each
/// component's lowest vertex.
pub fn component_labels(graph: &Graph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in graph.neighbours(v) {
                if label[w] == usize::MAX {
                    label[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// Maximal connected vertex sets, ordered by lowest member.
pub fn connected_components(graph: &Graph) -> Vec<VertexSet> {
    let labels = component_labels(graph);
    let count = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
    let mut comps = vec![VertexSet::new(graph.vertex_count()); count];
    for (v, &l) in labels.iter().enumerate() {
        comps[l].insert(v);
    }
    comps
}

/// Edges forming a two-vertex component.
pub fn isolated_edges(graph: &Graph) -> EdgeSet {
    EdgeSet::from_ids(
        graph.edge_count(),
        graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| graph.degree(u) == 1 && graph.degree(v) == 1)
            .map(|(e, _)| e),
    )
}

/// Proper 2-colouring by BFS, or the vertex where an odd cycle closed.
pub fn bipartition(graph: &Graph) -> Result<Vec<u8>, GraphError> {
    let n = graph.vertex_count();
    let mut side = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in graph.neighbours(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return Err(GraphError::NotBipartite { vertex: w });
                }
            }
        }
    }
    Ok(side)
}
