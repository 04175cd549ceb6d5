//! Random regular graphs of degree 14 and up split into two weighted parts,
//! and the dispatcher's choice of route for other degrees.

use nsd_decomp::decompose::{check_bipartition_conditions, lll_bipartition, regular_decompose, regular_decompose_two, SolveOptions};
use nsd_decomp::graph::generators;

fn main() {
    let graph = generators::random_regular(32, 16, 4).expect("feasible");
    let lll = lll_bipartition(&graph, 4, None).unwrap();
    println!(
        "bipartition {} + {} after {} resamples, conditions hold: {}",
        lll.bipartition.count(0),
        lll.bipartition.count(1),
        lll.resamples,
        check_bipartition_conditions(&graph, &lll.bipartition, 0).passed()
    );

    let result = regular_decompose_two(&graph, 4, None).unwrap();
    for (i, part) in result.parts.iter().enumerate() {
        println!("part {i}: {} edges, certified {}", part.edges.len(), part.certificate.passed());
    }
    println!("metadata {:?}", result.metadata);

    for d in [2, 5, 11, 14] {
        let graph = generators::complete(d + 1);
        let result = regular_decompose(&graph, 1, SolveOptions::default()).unwrap();
        println!("K{}: route {}, {} parts", d + 1, result.metadata["route"], result.part_count());
    }
}
