//! graph6 codec.
//!
//! A record is a size prefix `N(n)` followed by the upper triangle of the
//! adjacency matrix in column order (`(0,1), (0,2), (1,2), (0,3), ...`),
//! packed six bits per byte, most significant bit first, each byte offset
//! by 63. The final byte is zero-padded.

use thiserror::Error;

use crate::graph::Graph;

pub const HEADER: &[u8] = b">>graph6<<";

/// Largest order representable by the 8-byte size prefix.
pub const MAX_ORDER: usize = (1 << 36) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} outside the printable range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("malformed size prefix at offset {offset}")]
    BadSizePrefix { offset: usize },
    #[error("truncated bit stream at offset {offset}: need {expected} data bytes, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("unexpected trailing data at offset {offset}")]
    TrailingData { offset: usize },
    #[error("non-zero padding bits in final byte at offset {offset}")]
    NonZeroPadding { offset: usize },
    #[error("graph order {0} exceeds the graph6 limit")]
    TooLarge(usize),
}

/// Decodes a single graph6 record. A leading `>>graph6<<` header and a
/// trailing line terminator are accepted. Vertices are labelled `"0"`..
pub fn parse_graph6(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    let mut start = 0;
    if bytes.starts_with(HEADER) {
        start = HEADER.len();
    }
    let mut end = bytes.len();
    if end > start && bytes[end - 1] == b'\n' {
        end -= 1;
        if end > start && bytes[end - 1] == b'\r' {
            end -= 1;
        }
    }
    let rec = &bytes[start..end];
    if rec.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(i) = rec.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Graph6Error::InvalidByte {
            offset: start + i,
            byte: rec[i],
        });
    }

    let (n, prefix_len) = read_size(rec).map_err(|off| Graph6Error::BadSizePrefix {
        offset: start + off,
    })?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &rec[prefix_len..];
    if data.len() < expected {
        return Err(Graph6Error::Truncated {
            offset: start + rec.len(),
            expected,
            found: data.len(),
        });
    }
    if data.len() > expected {
        return Err(Graph6Error::TrailingData {
            offset: start + prefix_len + expected,
        });
    }
    let pad = expected * 6 - bits;
    if pad > 0 {
        let last = data[expected - 1] - 63;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding {
                offset: start + prefix_len + expected - 1,
            });
        }
    }

    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).expect("indices in range");
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Returns `(n, prefix length)`, or the offset of the problem.
fn read_size(rec: &[u8]) -> Result<(usize, usize), usize> {
    let six = |bs: &[u8]| {
        bs.iter()
            .fold(0usize, |acc, b| acc << 6 | (b - 63) as usize)
    };
    if rec[0] != 126 {
        return Ok(((rec[0] - 63) as usize, 1));
    }
    if rec.len() < 4 {
        return Err(rec.len());
    }
    if rec[1] != 126 {
        return Ok((six(&rec[1..4]), 4));
    }
    if rec.len() < 8 {
        return Err(rec.len());
    }
    Ok((six(&rec[2..8]), 8))
}

fn write_size(n: usize, out: &mut Vec<u8>) {
    let push6 = |out: &mut Vec<u8>, count: usize| {
        for k in (0..count).rev() {
            out.push((n >> (6 * k) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push6(out, 3);
    } else {
        out.push(126);
        out.push(126);
        push6(out, 6);
    }
}

/// Encodes `g` under its current vertex order. No trailing newline.
pub fn write_graph6(g: &Graph) -> Result<Vec<u8>, Graph6Error> {
    let n = g.n();
    if n > MAX_ORDER {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::with_capacity(8 + n * n / 12);
    write_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(out)
}

/// [`write_graph6`] as a `String`; graph6 output is always ASCII.
pub fn to_graph6_string(g: &Graph) -> Result<String, Graph6Error> {
    write_graph6(g).map(|b| String::from_utf8(b).expect("graph6 is ASCII"))
}
