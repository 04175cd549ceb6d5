//! Simple undirected graphs with dense vertex indices and stable edge ids,
//! plus the classical subroutines every decomposition pipeline consumes.

mod colouring;
mod euler;
pub mod generators;
mod io;
mod traversal;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

pub use colouring::{
    degeneracy_ordering, dsatur_colouring, greedy_colouring, greedy_maximal_independent_set,
    DegeneracyOrdering, ProperColouring,
};
pub use euler::{euler_split, EulerSplit};
pub use io::{parse_edge_list, serialize_edge_list};
pub use traversal::{bipartition, component_labels, connected_components, isolated_edges};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed entry {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("missing vertex-count header")]
    MissingHeader,
    #[error("graph is not bipartite (odd cycle through vertex {vertex})")]
    NotBipartite { vertex: usize },
    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),
    #[error("pairing model gave up after {attempts} restarts")]
    RejectionCapExceeded { attempts: usize },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edge ids are assigned in insertion order and never change; every
/// derived structure (weightings, partitions, edge sets) is a flat array
/// indexed by them.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from a list of vertex pairs. Pairs are normalised to
    /// `(min, max)`; edge ids follow the iteration order.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut graph = Graph::empty(n);
        let mut seen = HashSet::new();
        for (idx, (a, b)) in pairs.into_iter().enumerate() {
            let line = idx + 1;
            if a == b {
                return Err(GraphError::SelfLoop { line, vertex: a });
            }
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { line, vertex, n });
                }
            }
            let (u, v) = (a.min(b), a.max(b));
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
            graph.push_edge(u, v);
        }
        Ok(graph)
    }

    fn push_edge(&mut self, u: usize, v: usize) -> usize {
        let id = self.edges.len();
        self.edges.push((u, v));
        self.adjacency[u].push((v, id));
        self.adjacency[v].push((u, id));
        id
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e`, smaller index first.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbour, edge id)` pairs incident with `v`, in edge-id order.
    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn other_endpoint(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v, "vertex {v} is not an endpoint of edge {e}");
            a
        }
    }

    /// Id of the edge `{u, v}`, if present.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let (probe, target) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[probe]
            .iter()
            .find(|&&(w, _)| w == target)
            .map(|&(_, e)| e)
    }

    /// Common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn is_complete(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// Spanning subgraph keeping only the edges of `keep`.
    ///
    /// Returns the subgraph together with the map from its edge ids to the
    /// edge ids of `self`; kept edges preserve their relative order.
    pub fn edge_subgraph(&self, keep: &EdgeSet) -> (Graph, Vec<usize>) {
        let mut sub = Graph::empty(self.n);
        let mut origin = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if keep.contains(e) {
                sub.push_edge(u, v);
                origin.push(e);
            }
        }
        (sub, origin)
    }

    /// Spanning subgraph on an explicit list of edge ids (in the given order).
    pub fn edge_subgraph_from_ids(&self, ids: &[usize]) -> Graph {
        let mut sub = Graph::empty(self.n);
        for &e in ids {
            let (u, v) = self.edges[e];
            sub.push_edge(u, v);
        }
        sub
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()`.
    ///
    /// Returns the subgraph, the original id of each new vertex, and the
    /// original id of each new edge.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<usize>, Vec<usize>) {
        let vertices = keep.to_vec();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut sub = Graph::empty(vertices.len());
        let mut origin = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if keep.contains(u) && keep.contains(v) {
                sub.push_edge(local[u], local[v]);
                origin.push(e);
            }
        }
        (sub, vertices, origin)
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.adjacency[v]
            .iter()
            .filter(|&&(w, _)| set.contains(w))
            .count()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

macro_rules! id_set {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name {
            members: Vec<bool>,
        }

        impl $name {
            /// Empty set over the id universe `0..universe`.
            pub fn new(universe: usize) -> Self {
                Self { members: vec![false; universe] }
            }

            pub fn full(universe: usize) -> Self {
                Self { members: vec![true; universe] }
            }

            pub fn from_ids<I: IntoIterator<Item = usize>>(universe: usize, ids: I) -> Self {
                let mut set = Self::new(universe);
                for id in ids {
                    set.insert(id);
                }
                set
            }

            pub fn universe(&self) -> usize {
                self.members.len()
            }

            pub fn contains(&self, id: usize) -> bool {
                self.members.get(id).copied().unwrap_or(false)
            }

            /// Returns whether the id was newly inserted.
            pub fn insert(&mut self, id: usize) -> bool {
                !std::mem::replace(&mut self.members[id], true)
            }

            pub fn remove(&mut self, id: usize) -> bool {
                std::mem::replace(&mut self.members[id], false)
            }

            pub fn len(&self) -> usize {
                self.members.iter().filter(|&&b| b).count()
            }

            pub fn is_empty(&self) -> bool {
                !self.members.iter().any(|&b| b)
            }

            /// Members in increasing order.
            pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
                self.members
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &b)| b.then_some(i))
            }

            pub fn complement(&self) -> Self {
                Self { members: self.members.iter().map(|&b| !b).collect() }
            }

            pub fn to_vec(&self) -> Vec<usize> {
                self.iter().collect()
            }
        }
    };
}

id_set!(
    /// Membership over vertex ids of a fixed graph.
    VertexSet
);
id_set!(
    /// Membership over edge ids of a fixed graph.
    EdgeSet
);
