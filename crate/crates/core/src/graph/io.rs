use std::collections::HashSet;

use super::{Graph, GraphError};

/// Parses the edge-list format: a vertex-count line followed by one `u v`
/// line per edge. Blank lines and lines starting with `#` are skipped.
/// Edge ids follow file order.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(GraphError::MissingHeader)?;
    let n: usize = header.parse().map_err(|_| GraphError::Malformed {
        line: header_line,
        text: header.to_string(),
    })?;

    let mut graph = Graph::empty(n);
    let mut seen = HashSet::new();
    for (line, text) in lines {
        let malformed = || GraphError::Malformed {
            line,
            text: text.to_string(),
        };
        let mut tokens = text.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (
                a.parse::<usize>().map_err(|_| malformed())?,
                b.parse::<usize>().map_err(|_| malformed())?,
            ),
            _ => return Err(malformed()),
        };
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

/// Canonical text form: vertex count, then `u v` with `u < v` per edge in
/// edge-id order, newline separated.
pub fn serialize_edge_list(graph: &Graph) -> String {
    let mut out = graph.vertex_count().to_string();
    for &(u, v) in graph.edges() {
        out.push('\n');
        out.push_str(&format!("{u} {v}"));
    }
    out
}
