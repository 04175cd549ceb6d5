use std::collections::{BTreeSet, HashSet};

use super::{Graph, VertexSet};

/// Vertex colouring with colours `0..colour_count()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperColouring {
    colours: Vec<usize>,
}

impl ProperColouring {
    pub fn from_vec(colours: Vec<usize>) -> Self {
        ProperColouring { colours }
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colours
    }

    /// One more than the largest colour used (0 for no vertices).
    pub fn colour_count(&self) -> usize {
        self.colours.iter().map(|&c| c + 1).max().unwrap_or(0)
    }

    /// First monochromatic edge, if any.
    pub fn conflict(&self, graph: &Graph) -> Option<usize> {
        if self.colours.len() != graph.vertex_count() {
            return Some(usize::MAX);
        }
        graph
            .edges()
            .iter()
            .position(|&(u, v)| self.colours[u] == self.colours[v])
    }

    pub fn is_proper(&self, graph: &Graph) -> bool {
        self.conflict(graph).is_none()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.colours
    }
}

/// DSATUR: repeatedly colour the uncoloured vertex seeing the most distinct
/// neighbour colours (ties: most uncoloured neighbours, then lowest index)
/// with the smallest colour absent from its neighbourhood.
pub fn dsatur_colouring(graph: &Graph) -> ProperColouring {
    let n = graph.vertex_count();
    let mut colour = vec![usize::MAX; n];
    let mut seen: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    let mut free_degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();

    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v] == usize::MAX)
            .max_by(|&a, &b| {
                seen[a]
                    .len()
                    .cmp(&seen[b].len())
                    .then(free_degree[a].cmp(&free_degree[b]))
                    .then(b.cmp(&a))
            })
            .expect("an uncoloured vertex remains");
        let c = (0..).find(|c| !seen[v].contains(c)).unwrap();
        colour[v] = c;
        for &(w, _) in graph.neighbours(v) {
            if colour[w] == usize::MAX {
                seen[w].insert(c);
                free_degree[w] -= 1;
            }
        }
    }
    ProperColouring { colours: colour }
}

/// First-fit colouring along `order`.
pub fn greedy_colouring(graph: &Graph, order: &[usize]) -> ProperColouring {
    let mut colour = vec![usize::MAX; graph.vertex_count()];
    let mut taken = Vec::new();
    for &v in order {
        taken.clear();
        taken.extend(
            graph
                .neighbours(v)
                .iter()
                .map(|&(w, _)| colour[w])
                .filter(|&c| c != usize::MAX),
        );
        taken.sort_unstable();
        let mut c = 0;
        for &t in &taken {
            if t == c {
                c += 1;
            } else if t > c {
                break;
            }
        }
        colour[v] = c;
    }
    ProperColouring { colours: colour }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    /// Vertices in removal order.
    pub order: Vec<usize>,
    pub degeneracy: usize,
}

impl DegeneracyOrdering {
    /// Greedy colouring along the reverse removal order; uses at most
    /// `degeneracy + 1` colours.
    pub fn colouring(&self, graph: &Graph) -> ProperColouring {
        let reversed: Vec<usize> = self.order.iter().rev().copied().collect();
        greedy_colouring(graph, &reversed)
    }
}

/// Repeatedly removes a vertex of minimum residual degree (lowest index on
/// ties). The degeneracy is the largest residual degree seen at removal.
pub fn degeneracy_ordering(graph: &Graph) -> DegeneracyOrdering {
    let n = graph.vertex_count();
    let mut residual: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (residual[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    while let Some((d, v)) = queue.pop_first() {
        degeneracy = degeneracy.max(d);
        removed[v] = true;
        order.push(v);
        for &(w, _) in graph.neighbours(v) {
            if !removed[w] {
                queue.remove(&(residual[w], w));
                residual[w] -= 1;
                queue.insert((residual[w], w));
            }
        }
    }
    DegeneracyOrdering { order, degeneracy }
}

/// Scans `order`, keeping every vertex with no neighbour kept so far.
pub fn greedy_maximal_independent_set(graph: &Graph, order: &[usize]) -> VertexSet {
    let mut set = VertexSet::new(graph.vertex_count());
    for &v in order {
        if !graph.neighbours(v).iter().any(|&(w, _)| set.contains(w)) {
            set.insert(v);
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use proptest::prelude::*;

    #[test]
    fn dsatur_small_cases() {
        assert_eq!(dsatur_colouring(&generators::cycle(5)).colour_count(), 3);
        assert_eq!(dsatur_colouring(&generators::cycle(6)).colour_count(), 2);
        assert_eq!(dsatur_colouring(&generators::complete(4)).colour_count(), 4);
        assert_eq!(dsatur_colouring(&generators::petersen()).colour_count(), 3);
    }

    #[test]
    fn degeneracy_examples() {
        let tree = Graph::from_edges(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        assert_eq!(degeneracy_ordering(&tree).degeneracy, 1);
        assert_eq!(degeneracy_ordering(&generators::cycle(4)).degeneracy, 2);
        assert_eq!(degeneracy_ordering(&generators::complete(5)).degeneracy, 4);
        assert_eq!(degeneracy_ordering(&Graph::empty(3)).degeneracy, 0);
    }

    #[test]
    fn maximal_independent_sets() {
        let k3 = generators::complete(3);
        assert_eq!(greedy_maximal_independent_set(&k3, &[2, 0, 1]).to_vec(), vec![2]);
        let c4 = generators::cycle(4);
        assert_eq!(greedy_maximal_independent_set(&c4, &[0, 1, 2, 3]).to_vec(), vec![0, 2]);
        let empty = Graph::empty(4);
        assert_eq!(greedy_maximal_independent_set(&empty, &[3, 1, 0, 2]).len(), 4);
    }

    proptest! {
        #[test]
        fn colourings_are_proper_and_bounded(n in 1usize..30, p in 0.0f64..1.0, seed in 0u64..1000) {
            let g = generators::gnp(n, p, seed);
            let ds = dsatur_colouring(&g);
            prop_assert!(ds.is_proper(&g));
            prop_assert!(ds.colour_count() <= g.max_degree() + 1);

            let deg = degeneracy_ordering(&g);
            let mut sorted = deg.order.clone();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (0..n).collect::<Vec<_>>());
            let greedy = deg.colouring(&g);
            prop_assert!(greedy.is_proper(&g));
            prop_assert!(greedy.colour_count() <= deg.degeneracy + 1);
        }

        #[test]
        fn mis_is_independent_and_dominating(n in 1usize..30, p in 0.0f64..1.0, seed in 0u64..1000) {
            let g = generators::gnp(n, p, seed);
            let order: Vec<usize> = (0..n).rev().collect();
            let set = greedy_maximal_independent_set(&g, &order);
            for &(u, v) in g.edges() {
                prop_assert!(!(set.contains(u) && set.contains(v)));
            }
            for v in 0..n {
                prop_assert!(set.contains(v) || g.neighbours(v).iter().any(|&(w, _)| set.contains(w)));
            }
        }
    }
}
