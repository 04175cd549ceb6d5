//! Peel-and-split pipeline at desk scale (t = 3, m = 2).

use nsd_decomp::decompose::{decompose_general, peel_decompose, GeneralPipelineParams};
use nsd_decomp::graph::{generators, Graph};

fn main() {
    let params = GeneralPipelineParams::default();
    // K8 with a pendant vertex hanging off each of its vertices.
    let mut pairs = generators::complete(8).edges().to_vec();
    pairs.extend((0..8).map(|v| (v, v + 8)));
    let graph = Graph::from_edges(16, pairs).unwrap();

    let peel = peel_decompose(&graph, &params, 3).unwrap();
    println!(
        "core {} vertices, H {} edges, F {} edges, moved {:?}",
        peel.core.len(),
        peel.h.len(),
        peel.f.len(),
        peel.moved
    );

    let result = decompose_general(&graph, &params, 3).unwrap();
    for part in &result.parts {
        println!("{:>12}: {:2} edges, certified {}", part.strategy, part.edges.len(), part.certificate.passed());
    }
    println!("analytic bound at full scale: {}", result.metadata["analytic_bound"]);
}
