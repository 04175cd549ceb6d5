//! Splitting K9 into two 3-colourable parts without K2-components, then
//! weighting each part.

use nsd_decomp::decompose::{chromatic_decompose, decompose_by_chromatic, SolveOptions};
use nsd_decomp::graph::{dsatur_colouring, generators, isolated_edges, ProperColouring};

fn main() {
    let graph = generators::complete(9);
    let colouring = ProperColouring::from_vec((0..9).collect());
    let split = chromatic_decompose(&graph, &colouring, 2).expect("9 colours fit 3^2");
    println!("repair moves per level: {:?}", split.repair_moves);
    for p in 0..split.partition.part_count() {
        let part = graph.edge_subgraph(&split.partition.edge_set(p)).0;
        println!(
            "part {p}: {} edges, witness colours {}, dsatur colours {}, isolated edges {}",
            part.edge_count(),
            split.witnesses[p].colour_count(),
            dsatur_colouring(&part).colour_count(),
            isolated_edges(&part).len()
        );
    }

    let result = decompose_by_chromatic(&graph, SolveOptions::default()).unwrap();
    println!("weighted parts: {}, all certified: {}", result.part_count(), result.all_certified());
}
