//! Two-colour edge partitions without monochromatic K2-components.
//!
//! Classes are indexed 0 and 1. Each class carries a proper vertex colouring
//! of its edge subgraph that is kept valid after every move, so the colour
//! bounds are maintained rather than re-derived.

use std::collections::BTreeSet;

use log::{debug, warn};

use super::{require_no_isolated_edges, DecomposeError, EdgePartition};
use crate::graph::{dsatur_colouring, EdgeSet, Graph, ProperColouring};

#[derive(Clone, Debug)]
pub struct RepairOutcome {
    pub partition: EdgePartition,
    /// Proper colouring of each class's edge subgraph within its bound.
    pub witnesses: [ProperColouring; 2],
    /// Committed moves, each lowering the K2-component count.
    pub moves: usize,
    /// Moves that came from the local-search fallback rather than the
    /// three standard cases.
    pub fallback_moves: usize,
}

/// Edges forming a K2-component of their own class.
pub fn count_monochromatic_k2(graph: &Graph, partition: &EdgePartition) -> usize {
    let mut degree = [vec![0usize; graph.vertex_count()], vec![0usize; graph.vertex_count()]];
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        let c = partition.part_of(e);
        degree[c][u] += 1;
        degree[c][v] += 1;
    }
    graph
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, &(u, v))| {
            let c = partition.part_of(e);
            degree[c][u] == 1 && degree[c][v] == 1
        })
        .count()
}

#[derive(Clone)]
struct State<'g> {
    graph: &'g Graph,
    class: Vec<usize>,
    degree: [Vec<usize>; 2],
    colour: [Vec<usize>; 2],
    bound: [usize; 2],
}

impl<'g> State<'g> {
    fn is_k2(&self, e: usize) -> bool {
        let c = self.class[e];
        let (u, v) = self.graph.endpoints(e);
        self.degree[c][u] == 1 && self.degree[c][v] == 1
    }

    fn k2_edges(&self) -> Vec<usize> {
        (0..self.graph.edge_count()).filter(|&e| self.is_k2(e)).collect()
    }

    fn class_edges(&self, c: usize, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph
            .neighbours(v)
            .iter()
            .copied()
            .filter(move |&(_, e)| self.class[e] == c)
    }

    /// Vertices and edge count of the class-`c` component of `start`,
    /// ignoring edge `skip`.
    fn component(&self, c: usize, start: usize, skip: Option<usize>) -> (Vec<bool>, usize) {
        let mut seen = vec![false; self.graph.vertex_count()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut half_edges = 0;
        while let Some(x) = stack.pop() {
            for (y, e) in self.class_edges(c, x) {
                if Some(e) == skip {
                    continue;
                }
                half_edges += 1;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (seen, half_edges / 2)
    }

    /// Moves `e` into class `to` and restores a proper colouring there.
    fn flip(&mut self, e: usize, to: usize) -> bool {
        let from = self.class[e];
        if from == to {
            return true;
        }
        let (u, v) = self.graph.endpoints(e);
        self.degree[from][u] -= 1;
        self.degree[from][v] -= 1;
        self.degree[to][u] += 1;
        self.degree[to][v] += 1;
        self.class[e] = to;
        self.admit(to, e)
    }

    fn admit(&mut self, c: usize, e: usize) -> bool {
        let (u, v) = self.graph.endpoints(e);
        if self.colour[c][u] != self.colour[c][v] {
            return true;
        }
        for x in [u, v] {
            let used: BTreeSet<usize> = self.class_edges(c, x).map(|(y, _)| self.colour[c][y]).collect();
            if let Some(free) = (0..self.bound[c]).find(|k| !used.contains(k)) {
                self.colour[c][x] = free;
                return true;
            }
        }
        // `e` is a bridge of its class component: permute colours on one side.
        let (side, _) = self.component(c, v, Some(e));
        if !side[u] {
            let old = self.colour[c][v];
            let new = (old + 1) % self.bound[c];
            for (x, inside) in side.iter().enumerate() {
                if *inside {
                    let k = &mut self.colour[c][x];
                    if *k == old {
                        *k = new;
                    } else if *k == new {
                        *k = old;
                    }
                }
            }
            return true;
        }
        let sub = self.class_subgraph(c);
        let fresh = dsatur_colouring(&sub);
        if fresh.colour_count() <= self.bound[c] {
            self.colour[c] = fresh.into_vec();
            return true;
        }
        false
    }

    fn class_subgraph(&self, c: usize) -> Graph {
        let keep = EdgeSet::from_ids(self.graph.edge_count(), (0..self.class.len()).filter(|&e| self.class[e] == c));
        self.graph.edge_subgraph(&keep).0
    }

    /// Applies all flips; keeps them only if every flip is colourable and
    /// the K2-component count drops below `before`.
    fn attempt(&mut self, flips: &[(usize, usize)], before: usize) -> bool {
        let snapshot = self.clone();
        let ok = flips.iter().all(|&(e, to)| self.flip(e, to)) && self.k2_edges().len() < before;
        if !ok {
            *self = snapshot;
        }
        ok
    }

    /// The standard moves for K2-component `e`, in order of preference.
    fn standard_moves(&self, e: usize) -> Vec<Vec<(usize, usize)>> {
        let x = self.class[e];
        let y = 1 - x;
        let (u, v) = self.graph.endpoints(e);
        let mut moves = Vec::new();

        let (from_u, _) = self.component(y, u, None);
        if !from_u[v] {
            moves.push(vec![(e, y)]);
        }

        let mut sizes = Vec::new();
        for p in [u, v] {
            for (w, f) in self.class_edges(y, p) {
                sizes.push((f, w, self.component(y, w, Some(f)).1));
            }
        }
        if let Some(&(f, _, _)) = sizes.iter().find(|&&(_, _, k)| k == 0) {
            moves.push(vec![(f, x)]);
        } else if !sizes.is_empty() && sizes.iter().all(|&(_, _, k)| k >= 2) {
            for &(f, _, _) in &sizes {
                moves.push(vec![(f, x)]);
            }
        }

        let deg = |a| self.graph.degree(a);
        if deg(u) == 2 && deg(v) == 2 {
            for (w, f) in self.class_edges(y, u) {
                if let Some(g) = self.graph.find_edge(w, v) {
                    if self.class[g] != y {
                        continue;
                    }
                    if deg(w) == 2 {
                        // Isolated triangle: make it monochromatic.
                        moves.push(vec![(e, y)]);
                    } else {
                        moves.push(vec![(e, y), (f, x)]);
                        moves.push(vec![(e, y), (g, x)]);
                    }
                }
            }
        }
        moves
    }

    fn fallback_moves(&self, e: usize) -> Vec<Vec<(usize, usize)>> {
        let (u, v) = self.graph.endpoints(e);
        let mut vertices = BTreeSet::from([u, v]);
        for p in [u, v] {
            vertices.extend(self.graph.neighbours(p).iter().map(|&(w, _)| w));
        }
        let near: BTreeSet<usize> = vertices
            .iter()
            .flat_map(|&a| self.graph.neighbours(a).iter().map(|&(_, f)| f))
            .collect();
        let near: Vec<usize> = near.into_iter().collect();
        let flip = |f: usize| (f, 1 - self.class[f]);
        let mut moves: Vec<Vec<(usize, usize)>> = near.iter().map(|&f| vec![flip(f)]).collect();
        for (i, &f) in near.iter().enumerate() {
            for &g in &near[i + 1..] {
                moves.push(vec![flip(f), flip(g)]);
            }
        }
        moves
    }
}

/// Recolours edges of a two-class partition until neither class has a
/// K2-component, keeping class `c` properly coloured with `bounds[c]`
/// colours throughout.
///
/// `witnesses` are proper colourings of the two class subgraphs; when
/// absent they are computed with DSATUR and must fit the bounds.
pub fn repair_monochromatic_k2(
    graph: &Graph,
    partition: &EdgePartition,
    bounds: [usize; 2],
    witnesses: Option<[ProperColouring; 2]>,
) -> Result<RepairOutcome, DecomposeError> {
    if partition.part_count() != 2 || partition.edge_count() != graph.edge_count() {
        return Err(DecomposeError::Invalid("repair needs a two-class partition of every edge".into()));
    }
    if bounds.iter().any(|&b| b < 3) {
        return Err(DecomposeError::Invalid(format!("colour bounds {bounds:?} must be at least 3")));
    }
    require_no_isolated_edges(graph)?;

    let n = graph.vertex_count();
    let mut state = State {
        graph,
        class: partition.assignments().to_vec(),
        degree: [vec![0; n], vec![0; n]],
        colour: [Vec::new(), Vec::new()],
        bound: bounds,
    };
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        state.degree[state.class[e]][u] += 1;
        state.degree[state.class[e]][v] += 1;
    }
    let witnesses = match witnesses {
        Some(w) => w,
        None => [0, 1].map(|c| dsatur_colouring(&state.class_subgraph(c))),
    };
    for (c, w) in witnesses.into_iter().enumerate() {
        check_witness(&state.class_subgraph(c), &w, bounds[c])?;
        state.colour[c] = w.into_vec();
    }

    let m = graph.edge_count();
    let mut moves = 0;
    let mut fallback_moves = 0;
    loop {
        let k2 = state.k2_edges();
        if k2.is_empty() {
            break;
        }
        if moves >= m * m {
            return Err(DecomposeError::Internal(format!("repair exceeded {} moves", m * m)));
        }
        let before = k2.len();
        let standard = k2
            .iter()
            .any(|&e| state.standard_moves(e).iter().any(|flips| state.attempt(flips, before)));
        if !standard {
            warn!("repair: no standard move applies to K2-components {k2:?}; using local search");
            let committed = k2
                .iter()
                .any(|&e| state.fallback_moves(e).iter().any(|flips| state.attempt(flips, before)));
            if !committed {
                return Err(DecomposeError::Internal(format!("repair stalled on K2-components {k2:?}")));
            }
            fallback_moves += 1;
        }
        moves += 1;
    }
    debug!("repair finished after {moves} moves ({fallback_moves} fallback)");

    let witnesses = [0, 1].map(|c| ProperColouring::from_vec(state.colour[c].clone()));
    for (c, w) in witnesses.iter().enumerate() {
        check_witness(&state.class_subgraph(c), w, bounds[c])
            .map_err(|err| DecomposeError::Internal(format!("repair broke class {c} colouring: {err}")))?;
    }
    Ok(RepairOutcome {
        partition: EdgePartition::new(state.class, 2)?,
        witnesses,
        moves,
        fallback_moves,
    })
}

pub(crate) fn check_witness(graph: &Graph, colouring: &ProperColouring, bound: usize) -> Result<(), DecomposeError> {
    if let Some(e) = colouring.conflict(graph) {
        return Err(DecomposeError::Invalid(format!("colouring is not proper (edge {e})")));
    }
    if colouring.colour_count() > bound {
        return Err(DecomposeError::Invalid(format!(
            "colouring uses {} colours, bound is {bound}",
            colouring.colour_count()
        )));
    }
    Ok(())
}
