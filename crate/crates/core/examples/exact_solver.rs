//! Exact 3-weighting of small graphs, and two graphs with no weighting.

use nsd_decomp::graph::{generators, Graph};
use nsd_decomp::weighting::{solve_exact, vertex_sums, SolveOutcome, DEFAULT_BUDGET};

fn show(name: &str, graph: &Graph, k: u32) {
    let run = solve_exact(graph, k, DEFAULT_BUDGET).expect("k >= 1");
    match &run.outcome {
        SolveOutcome::Found(w) => {
            let sums = vertex_sums(graph, w).unwrap();
            println!("{name} k={k}: weights {:?} sums {:?} ({} nodes)", w.weights(), sums.as_slice(), run.nodes);
        }
        SolveOutcome::Unsat { witness } => println!("{name} k={k}: no weighting (witness {witness:?})"),
        SolveOutcome::BudgetExhausted => println!("{name} k={k}: budget exhausted"),
    }
}

fn main() {
    show("K3", &generators::complete(3), 3);
    show("K3", &generators::complete(3), 2);
    show("K2", &generators::complete(2), 3);
    show("C5", &generators::cycle(5), 3);
    show("Petersen", &generators::petersen(), 3);
    show("K7", &generators::complete(7), 3);
}
