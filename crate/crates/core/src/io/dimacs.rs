//! DIMACS `.col` export.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::latin::LatinSquareGraph;

/// Writes the graph as a DIMACS edge file. Vertices are numbered
/// `(row - 1) * n + col`; edges are listed once with `u < v`, sorted.
pub fn export_dimacs(graph: &LatinSquareGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "c cyclic Latin square graph of order {}",
        graph.order()
    );
    let _ = writeln!(
        out,
        "p edge {} {}",
        graph.vertex_count(),
        graph.edge_count()
    );
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// A graph read back from DIMACS text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Reads a DIMACS edge file. Comment lines are skipped; edge endpoints must
/// lie in `1..=vertices` and the edge count must match the header.
pub fn parse_dimacs(text: &str) -> Result<DimacsGraph> {
    let err = |line: usize, message: String| Error::Parse {
        line,
        column: 1,
        message,
    };
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let mut fields = raw.split_whitespace();
        match fields.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(err(line_no, "duplicate problem line".into()));
                }
                if fields.next() != Some("edge") {
                    return Err(err(line_no, "expected `p edge <vertices> <edges>`".into()));
                }
                let mut num = || -> Result<usize> {
                    fields
                        .next()
                        .and_then(|f| f.parse().ok())
                        .ok_or_else(|| err(line_no, "bad number in problem line".into()))
                };
                header = Some((num()?, num()?));
            }
            Some("e") => {
                let (vertices, _) =
                    header.ok_or_else(|| err(line_no, "edge before problem line".into()))?;
                let mut endpoint = || -> Result<usize> {
                    fields
                        .next()
                        .and_then(|f| f.parse().ok())
                        .filter(|&v| v >= 1 && v <= vertices)
                        .ok_or_else(|| err(line_no, "bad edge endpoint".into()))
                };
                edges.push((endpoint()?, endpoint()?));
            }
            Some(other) => return Err(err(line_no, format!("unknown line type `{other}`"))),
        }
    }
    let (vertices, count) = header.ok_or_else(|| err(0, "missing problem line".into()))?;
    if edges.len() != count {
        return Err(err(
            0,
            format!("header declares {count} edges, found {}", edges.len()),
        ));
    }
    Ok(DimacsGraph { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::build_graph;

    #[test]
    fn order_two_is_k4() {
        let text = export_dimacs(&build_graph(2).unwrap());
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[1], "p edge 4 6");
        assert_eq!(
            &lines[2..],
            &["e 1 2", "e 1 3", "e 1 4", "e 2 3", "e 2 4", "e 3 4"]
        );
    }

    #[test]
    fn headers() {
        let text = export_dimacs(&build_graph(5).unwrap());
        assert!(text.lines().any(|l| l == "p edge 25 150"));
        let text = export_dimacs(&build_graph(1).unwrap());
        assert_eq!(text.lines().filter(|l| l.starts_with('e')).count(), 0);
        assert!(text.lines().any(|l| l == "p edge 1 0"));
    }

    #[test]
    fn parse_back() {
        let g = build_graph(4).unwrap();
        let parsed = parse_dimacs(&export_dimacs(&g)).unwrap();
        assert_eq!(parsed.vertices, 16);
        assert_eq!(parsed.edges, g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_dimacs("p edge 2 2\ne 1 2\n").is_err());
        assert!(matches!(
            parse_dimacs("p edge 2 1\nx\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
