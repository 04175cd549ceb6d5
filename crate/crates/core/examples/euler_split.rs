//! Even split of a bipartite graph's edges along Euler tours.

use nsd_decomp::graph::{euler_split, generators};

fn main() {
    let graph = generators::random_bipartite(8, 10, 0.4, 1);
    let split = euler_split(&graph).expect("bipartite input");
    for v in 0..graph.vertex_count() {
        let first = graph.neighbours(v).iter().filter(|&&(_, e)| split.first.contains(e)).count();
        println!("vertex {v:2}: degree {:2}, first {first}, second {}", graph.degree(v), graph.degree(v) - first);
    }
    println!("odd cycle: {:?}", euler_split(&generators::cycle(5)).unwrap_err());
}
