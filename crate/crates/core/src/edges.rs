//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! a b
//! b c
//! vertex d
//! ```
//!
//! Vertices are numbered in order of first mention. A `#` opens a comment
//! only at the start of a line or after whitespace, so labels such as `z#1`
//! are allowed. Repeated edges are
//! accepted and collapse to one.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: self-loop at `{label}`")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: expected `u v` or `vertex w`, got `{text}`")]
    Unparseable { line: usize, text: String },
}

pub fn parse_edge_list<'a>(text: &'a str) -> Result<Graph, EdgeListError> {
    let mut index: HashMap<&'a str, usize> = HashMap::new();
    let mut labels: Vec<&'a str> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let unparseable = || EdgeListError::Unparseable {
            line: lineno + 1,
            text: raw.to_string(),
        };
        let mut id = |l: &'a str| -> usize {
            *index.entry(l).or_insert_with(|| {
                labels.push(l);
                labels.len() - 1
            })
        };
        match tokens.as_slice() {
            ["vertex", w] => {
                id(w);
            }
            [u, v] => {
                if u == v {
                    return Err(EdgeListError::SelfLoop {
                        line: lineno + 1,
                        label: u.to_string(),
                    });
                }
                let (a, b) = (id(u), id(v));
                edges.push((a, b));
            }
            _ => return Err(unparseable()),
        }
    }

    let mut g = Graph::from_unique_labels(labels.into_iter().map(String::from).collect());
    for (u, v) in edges {
        g.add_edge(u, v).expect("distinct interned vertices");
    }
    Ok(g)
}

/// A `#` starts a comment at the beginning of a line or after whitespace;
/// inside a token it is part of the label, as in `z#1`.
fn strip_comment(line: &str) -> &str {
    let bytes = line.as_bytes();
    let cut = (0..bytes.len())
        .find(|&i| bytes[i] == b'#' && (i == 0 || bytes[i - 1].is_ascii_whitespace()));
    cut.map_or(line, |i| &line[..i])
}

/// Writes `g` as an edge list: every vertex is declared with a `vertex`
/// line first, so parsing the output restores the exact vertex order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for l in g.labels() {
        let _ = writeln!(out, "vertex {l}");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    out
}
