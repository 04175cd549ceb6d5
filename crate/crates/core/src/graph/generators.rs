//! Named graph families and seeded random generators.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Graph, GraphError};
use crate::rng;

const REGULAR_RESTART_CAP: usize = 1000;

pub fn complete(n: usize) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, pairs).expect("complete graph is simple")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is simple")
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let pairs = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::from_edges(a + b, pairs).expect("complete bipartite graph is simple")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("Petersen graph is simple")
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng::stream(seed, "gnp");
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edges(n, pairs).expect("G(n,p) is simple")
}

/// Random bipartite graph between `0..a` and `a..a+b`, each cross pair
/// present with probability `p`.
pub fn random_bipartite(a: usize, b: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng::stream(seed, "random_bipartite");
    let mut pairs = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edges(a + b, pairs).expect("bipartite graph is simple")
}

/// Uniform random recursive tree: vertex `i` attaches to a uniform earlier
/// vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = rng::stream(seed, "random_tree");
    Graph::from_edges(n, (1..n).map(|i| (rng.gen_range(0..i), i))).expect("tree is simple")
}

/// Random simple `d`-regular graph on `n` vertices from the pairing model.
///
/// Points are matched one pair at a time; a pair that would create a loop
/// or a parallel edge is rejected and redrawn, and the whole pairing is
/// restarted when no admissible pair remains. Edges are returned sorted.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    if (n * d) % 2 == 1 {
        return Err(GraphError::Infeasible(format!("n*d = {} is odd", n * d)));
    }
    if d >= n {
        return Err(GraphError::Infeasible(format!("degree {d} needs more than {n} vertices")));
    }
    if d == n - 1 {
        return Ok(complete(n));
    }

    let mut rng = rng::stream(seed, "random_regular");
    for _ in 0..REGULAR_RESTART_CAP {
        if let Some(mut pairs) = try_pairing(n, d, &mut rng) {
            pairs.sort_unstable();
            return Graph::from_edges(n, pairs);
        }
    }
    Err(GraphError::RejectionCapExceeded {
        attempts: REGULAR_RESTART_CAP,
    })
}

fn try_pairing<R: Rng>(n: usize, d: usize, rng: &mut R) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    points.shuffle(rng);
    let mut present: HashSet<(usize, usize)> = HashSet::with_capacity(n * d / 2);
    let mut pairs = Vec::with_capacity(n * d / 2);

    while !points.is_empty() {
        let mut chosen = None;
        for _ in 0..64 {
            let i = rng.gen_range(0..points.len());
            let j = rng.gen_range(0..points.len());
            let (u, v) = (points[i].min(points[j]), points[i].max(points[j]));
            if u != v && !present.contains(&(u, v)) {
                chosen = Some((i, j));
                break;
            }
        }
        let (i, j) = match chosen {
            Some(ij) => ij,
            None => {
                // Random probing keeps failing: list what is still admissible.
                let mut open: Vec<usize> = points.clone();
                open.sort_unstable();
                open.dedup();
                let admissible: Vec<(usize, usize)> = open
                    .iter()
                    .enumerate()
                    .flat_map(|(a, &u)| open[a + 1..].iter().map(move |&v| (u, v)))
                    .filter(|pair| !present.contains(pair))
                    .collect();
                let &(u, v) = admissible.choose(rng)?;
                let i = points.iter().position(|&p| p == u).unwrap();
                let j = points.iter().position(|&p| p == v).unwrap();
                (i, j)
            }
        };
        let (u, v) = (points[i].min(points[j]), points[i].max(points[j]));
        present.insert((u, v));
        pairs.push((u, v));
        let (hi, lo) = (i.max(j), i.min(j));
        points.swap_remove(hi);
        points.swap_remove(lo);
    }
    Some(pairs)
}
