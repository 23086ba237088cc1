//! Reading graphs from files or standard input.

use std::fs;
use std::io::{self, Read};
use std::path::Path;

use burst_core::graph6::HEADER;
use burst_core::{parse_edge_list, parse_graph6, Graph};
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Auto,
    Graph6,
    Edges,
}

pub fn read_input(path: &str) -> Result<Vec<u8>, String> {
    if path == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

/// Resolves `auto` by file extension, then by looking at the first
/// meaningful line.
pub fn resolve_format(format: Format, path: &str, bytes: &[u8]) -> Format {
    if format != Format::Auto {
        return format;
    }
    let ext = Path::new(path)
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("g6" | "graph6") => return Format::Graph6,
        Some("edges" | "el" | "edgelist") => return Format::Edges,
        _ => {}
    }
    let first = bytes
        .split(|b| *b == b'\n')
        .map(|l| l.strip_suffix(b"\r").unwrap_or(l))
        .find(|l| !l.iter().all(u8::is_ascii_whitespace));
    match first {
        Some(l) if l.starts_with(HEADER) => Format::Graph6,
        Some(l) if l.iter().all(|b| (63..=126).contains(b)) => Format::Graph6,
        _ => Format::Edges,
    }
}

/// Non-blank lines of a graph6 stream, each with its 1-based line number.
fn graph6_lines(bytes: &[u8]) -> impl Iterator<Item = (usize, &[u8])> {
    bytes
        .split(|b| *b == b'\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix(b"\r").unwrap_or(l)))
        .filter(|(_, l)| !l.iter().all(u8::is_ascii_whitespace))
}

pub fn load_graphs(path: &str, format: Format) -> Result<Vec<Graph>, String> {
    let bytes = read_input(path)?;
    if bytes.iter().all(u8::is_ascii_whitespace) {
        return Err(format!("{path}: no graph found"));
    }
    match resolve_format(format, path, &bytes) {
        Format::Edges => {
            let text = std::str::from_utf8(&bytes).map_err(|e| format!("{path}: {e}"))?;
            parse_edge_list(text)
                .map(|g| vec![g])
                .map_err(|e| format!("{path}: {e}"))
        }
        _ => graph6_lines(&bytes)
            .map(|(line, rec)| parse_graph6(rec).map_err(|e| format!("{path}:{line}: {e}")))
            .collect(),
    }
}

pub fn load_one(path: &str, format: Format) -> Result<Graph, String> {
    let mut graphs = load_graphs(path, format)?;
    match graphs.len() {
        1 => Ok(graphs.pop().expect("one graph")),
        0 => Err(format!("{path}: no graph found")),
        k => Err(format!("{path}: expected one graph, found {k}")),
    }
}
