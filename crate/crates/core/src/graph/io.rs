//! Edge-list text format and its JSON mirror.
//!
//! Text: a header line `n m`, then `m` lines `tail head weight [length]` with
//! 0-based vertices; a missing length means 1. Blank lines and lines starting
//! with `#` are ignored.

use super::{DirectedGraph, Edge};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Text,
    Json,
}

/// Serializable form of a graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<Edge>,
}

impl From<&DirectedGraph> for GraphRecord {
    fn from(g: &DirectedGraph) -> Self {
        GraphRecord {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }
}

/// Parses the text edge-list format. Strong connectivity is not required here;
/// callers that need it check [`DirectedGraph::is_strongly_connected`].
pub fn parse_edge_list(text: &str) -> Result<DirectedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "empty input".into(),
    })?;
    let head: Vec<usize> = parse_fields(hline, header)?;
    if head.len() != 2 {
        return Err(Error::Parse {
            line: hline,
            message: "expected `n m`".into(),
        });
    }
    let (n, m) = (head[0], head[1]);
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(Error::Parse {
                line,
                message: "expected `tail head weight [length]`".into(),
            });
        }
        let tail = parse_one::<usize>(line, parts[0])?;
        let head = parse_one::<usize>(line, parts[1])?;
        let weight = parse_one::<f64>(line, parts[2])?;
        let length = match parts.get(3) {
            Some(s) => parse_one::<f64>(line, s)?,
            None => 1.0,
        };
        edges.push(Edge {
            tail,
            head,
            weight,
            length,
        });
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    DirectedGraph::with_any_connectivity(n, edges)
}

fn parse_fields<T: std::str::FromStr>(line: usize, l: &str) -> Result<Vec<T>> {
    l.split_whitespace().map(|s| parse_one(line, s)).collect()
}

fn parse_one<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse `{s}`"),
    })
}

/// Writes the text edge-list format. Lengths are always written.
pub fn to_edge_list(g: &DirectedGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        out.push_str(&format!("{} {} {} {}\n", e.tail, e.head, e.weight, e.length));
    }
    out
}

pub fn read_graph(text: &str, format: GraphFormat) -> Result<DirectedGraph> {
    match format {
        GraphFormat::Text => parse_edge_list(text),
        GraphFormat::Json => {
            let rec: GraphRecord = serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))?;
            DirectedGraph::with_any_connectivity(rec.n, rec.edges)
        }
    }
}

pub fn write_graph(g: &DirectedGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Text => to_edge_list(g),
        GraphFormat::Json => {
            serde_json::to_string_pretty(&GraphRecord::from(g)).expect("graph records always serialize")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_length_is_one() {
        let g = parse_edge_list("2 2\n0 1 2.5\n1 0 1 3\n").unwrap();
        assert_eq!(g.edge(0).length, 1.0);
        assert_eq!(g.edge(1).length, 3.0);
        assert_eq!(g.edge(0).weight, 2.5);
    }

    #[test]
    fn rejects_wrong_edge_count() {
        assert!(matches!(
            parse_edge_list("2 3\n0 1 1\n1 0 1\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn text_and_json_agree() {
        let g = parse_edge_list("# comment\n3 3\n0 1 1 0.5\n1 2 2\n2 0 3\n").unwrap();
        let t = read_graph(&write_graph(&g, GraphFormat::Text), GraphFormat::Text).unwrap();
        let j = read_graph(&write_graph(&g, GraphFormat::Json), GraphFormat::Json).unwrap();
        assert_eq!(t, g);
        assert_eq!(j, g);
    }
}
