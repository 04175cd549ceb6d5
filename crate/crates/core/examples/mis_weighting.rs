//! Weighting driven by a maximal independent set: remainder sums end up
//! above 2·alpha, independent-set sums at or below it.

use nsd_decomp::graph::{generators, greedy_maximal_independent_set, Graph};
use nsd_decomp::mis::{check_preconditions, weight_by_mis, Alpha, MisInstance};

fn run(name: &str, graph: &Graph, order: &[usize], alpha: Alpha) {
    let independent = greedy_maximal_independent_set(graph, order);
    println!("{name}: I = {:?}, alpha = {alpha}", independent.to_vec());
    let report = check_preconditions(graph, &independent, alpha);
    if !report.passed() {
        print!("  preconditions {report}");
        return;
    }
    let instance = MisInstance::new(graph, independent, alpha).expect("preconditions hold");
    let result = weight_by_mis(&instance).expect("invariants hold");
    println!("  weights {:?}, sums {:?}", result.weighting.weights(), result.sums);
    for step in &result.trace {
        println!("  {step}");
    }
    println!("  certified: {}", result.certificate.passed());
}

fn main() {
    let k23 = generators::complete_bipartite(2, 3);
    run("K2,3", &k23, &[2, 3, 4, 0, 1], Alpha::from_integer(2));
    run("K2,3 (alpha too small)", &k23, &[2, 3, 4, 0, 1], Alpha::from_integer(1));
    // Path 2-0-1-3 with its two leaves independent.
    let path = Graph::from_edges(4, [(0, 1), (0, 2), (1, 3)]).unwrap();
    run("P4", &path, &[2, 3, 0, 1], Alpha::from_integer(1));
}
