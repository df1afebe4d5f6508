//! Text file format for graphs and paths.
//!
//! Graph files are UTF-8 text. The first non-comment line is the header
//! `n m directed|undirected weighted|unweighted`, followed by `m` edge lines
//! `u v w` (`w` omitted for unweighted graphs). Lines starting with `#` are
//! comments. `save_graph` always writes the canonical form — edges sorted by
//! `(u, v)` — so load/save round-trips are byte-identical.
//!
//! Path files are a single line of space-separated vertex ids from `s` to `t`.

use super::{Graph, GraphError, Weight};
use std::path::Path;

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines
        .next()
        .ok_or_else(|| GraphError::MalformedHeader("empty file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(GraphError::MalformedHeader(format!(
            "expected `n m directed|undirected weighted|unweighted`, got `{header}`"
        )));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| GraphError::MalformedHeader(format!("bad vertex count `{}`", fields[0])))?;
    let m: usize = fields[1]
        .parse()
        .map_err(|_| GraphError::MalformedHeader(format!("bad edge count `{}`", fields[1])))?;
    let directed = match fields[2] {
        "directed" => true,
        "undirected" => false,
        other => {
            return Err(GraphError::MalformedHeader(format!(
                "expected directed|undirected, got `{other}`"
            )))
        }
    };
    let weighted = match fields[3] {
        "weighted" => true,
        "unweighted" => false,
        other => {
            return Err(GraphError::MalformedHeader(format!(
                "expected weighted|unweighted, got `{other}`"
            )))
        }
    };

    let mut edges = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let expect = if weighted { 3 } else { 2 };
        if parts.len() != expect {
            return Err(GraphError::MalformedEdge {
                line: line_no,
                msg: format!("expected {expect} fields, got {}", parts.len()),
            });
        }
        let u: usize = parts[0].parse().map_err(|_| GraphError::MalformedEdge {
            line: line_no,
            msg: format!("bad vertex id `{}`", parts[0]),
        })?;
        let v: usize = parts[1].parse().map_err(|_| GraphError::MalformedEdge {
            line: line_no,
            msg: format!("bad vertex id `{}`", parts[1]),
        })?;
        let w: Weight = if weighted {
            if parts[2].starts_with('-') {
                return Err(GraphError::NegativeWeight { line: line_no });
            }
            parts[2].parse().map_err(|_| GraphError::MalformedEdge {
                line: line_no,
                msg: format!("bad weight `{}`", parts[2]),
            })?
        } else {
            1
        };
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCountMismatch {
            header: m,
            found: edges.len(),
        });
    }
    Graph::new(n, directed, weighted, edges)
}

/// Canonical text form: header, then edges sorted by `(u, v)`.
pub fn graph_to_string(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} {} {} {}\n",
        g.n(),
        g.m(),
        if g.directed() { "directed" } else { "undirected" },
        if g.weighted() { "weighted" } else { "unweighted" },
    ));
    for &(u, v, w) in g.edges() {
        if g.weighted() {
            out.push_str(&format!("{u} {v} {w}\n"));
        } else {
            out.push_str(&format!("{u} {v}\n"));
        }
    }
    out
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn save_graph(g: &Graph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    std::fs::write(path, graph_to_string(g))?;
    Ok(())
}

pub fn load_path(path: impl AsRef<Path>) -> Result<Vec<usize>, GraphError> {
    let text = std::fs::read_to_string(path)?;
    let ids: Result<Vec<usize>, _> = text.split_whitespace().map(|t| t.parse()).collect();
    ids.map_err(|_| GraphError::InvalidPath("non-numeric vertex id".into()))
}

pub fn save_path(vertices: &[usize], path: impl AsRef<Path>) -> Result<(), GraphError> {
    let line: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
    std::fs::write(path, line.join(" ") + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_triangle() {
        let g = parse_graph("3 3 directed weighted\n0 1 2\n1 2 3\n2 0 4\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.w_max(), 4);
    }

    #[test]
    fn out_of_range_edge_is_distinct_error() {
        let err = parse_graph("3 1 directed weighted\n5 0 1\n").unwrap_err();
        assert!(matches!(err, GraphError::VertexOutOfRange { id: 5, n: 3 }));
    }

    #[test]
    fn negative_weight_is_distinct_error() {
        let err = parse_graph("2 1 directed weighted\n0 1 -4\n").unwrap_err();
        assert!(matches!(err, GraphError::NegativeWeight { line: 2 }));
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let g = parse_graph("# a triangle\n3 3 undirected unweighted\n\n0 1\n1 2\n# mid\n0 2\n");
        assert!(g.is_ok());
    }

    #[test]
    fn round_trip_is_canonical_and_stable() {
        // Unsorted input; saving canonicalizes, and load(save(x)) == save(x).
        let text = "4 4 undirected weighted\n2 3 7\n0 1 1\n1 2 2\n0 3 5\n";
        let g = parse_graph(text).unwrap();
        let canon = graph_to_string(&g);
        let g2 = parse_graph(&canon).unwrap();
        assert_eq!(graph_to_string(&g2), canon);
        let mut sorted = g.edges().to_vec();
        sorted.sort_unstable();
        assert_eq!(g.edges(), &sorted[..]);
    }
}
