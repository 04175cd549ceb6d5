//! Random regular graphs and the edge-list format.

use nsd_decomp::graph::{generators, parse_edge_list, serialize_edge_list};

fn main() {
    let graph = generators::random_regular(40, 14, 3).expect("feasible");
    println!("n = {}, m = {}, regular degree {:?}", graph.vertex_count(), graph.edge_count(), graph.regular_degree());
    let text = serialize_edge_list(&graph);
    assert_eq!(parse_edge_list(&text).unwrap(), graph);
    println!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("n*d odd: {}", generators::random_regular(5, 3, 0).unwrap_err());
}
