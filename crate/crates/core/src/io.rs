//! graph6 and plain edge-list text formats.
//!
//! graph6 follows the public definition: `N(n)` then the upper triangle of the
//! adjacency matrix in column order (`x(0,1) x(0,2) x(1,2) x(0,3) ..`), packed
//! six bits per byte with zero padding, each byte offset by 63.

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("empty graph6 input")]
    Empty,
    #[error("byte {offset}: character {byte:#04x} outside the graph6 range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("byte {offset}: truncated vertex-count header")]
    TruncatedHeader { offset: usize },
    #[error("graph6 vertex count {0} exceeds capacity of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("expected {expected} adjacency bytes after header, found {found}")]
    Length { expected: usize, found: usize },
    #[error("byte {offset}: nonzero padding bits")]
    Padding { offset: usize },
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) as u8 & 63, (n >> 6) as u8 & 63, n as u8 & 63].map(|b| b + 63));
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph, FormatError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let (skip, text) = match text.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, text),
    };
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(FormatError::BadByte { offset: skip + offset, byte });
        }
    }
    let (n, body_start) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.get(1) == Some(&126) {
        // 8-byte form: only legal for n > 258047, far past capacity.
        if bytes.len() < 8 {
            return Err(FormatError::TruncatedHeader { offset: bytes.len() });
        }
        let n = bytes[2..8].iter().fold(0usize, |n, &b| n << 6 | (b - 63) as usize);
        (n, 8)
    } else {
        if bytes.len() < 4 {
            return Err(FormatError::TruncatedHeader { offset: bytes.len() });
        }
        let n = bytes[1..4].iter().fold(0usize, |n, &b| n << 6 | (b - 63) as usize);
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(FormatError::TooManyVertices(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() != expected {
        return Err(FormatError::Length { expected, found: body.len() });
    }
    if nbits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(FormatError::Padding { offset: skip + body_start + expected - 1 });
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

/// Edge-list text: first line `n`, then one `u v` pair per line.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Parses the edge-list format. Blank lines and `#` comments are skipped.
pub fn from_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line, msg: &str| FormatError::EdgeList { line, msg: msg.to_string() };
    let (line, first) = lines.next().ok_or_else(|| err(1, "missing vertex count"))?;
    let n: usize = first.parse().map_err(|_| err(line, "vertex count is not an integer"))?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let mut parts = l.split_whitespace().map(str::parse::<usize>);
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(err(line, "expected `u v`")),
        }
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        assert_eq!(to_graph6(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(to_graph6(&Graph::empty(0).unwrap()), "?");
        // Example from the graph6 format description: the 5-cycle-like graph
        // with edges 0-2, 0-4, 1-3, 3-4.
        let g = Graph::from_edge_list(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&Graph::complete(4).unwrap()), "C~");
    }

    #[test]
    fn large_header() {
        let g = Graph::complete(64).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(from_graph6(&s).unwrap(), g);
        let g = Graph::cycle(63).unwrap();
        assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn decode_errors() {
        assert_eq!(from_graph6(""), Err(FormatError::Empty));
        assert_eq!(from_graph6("A_x\u{1}"), Err(FormatError::BadByte { offset: 3, byte: 1 }));
        assert_eq!(from_graph6("A"), Err(FormatError::Length { expected: 1, found: 0 }));
        // n = 2 has one data bit; the remaining five must be zero.
        assert_eq!(from_graph6("A`"), Err(FormatError::Padding { offset: 1 }));
        assert_eq!(from_graph6("~?"), Err(FormatError::TruncatedHeader { offset: 2 }));
        assert_eq!(from_graph6("~?@@"), Err(FormatError::TooManyVertices(65)));
        assert_eq!(from_graph6(">>graph6<<A_\n").unwrap(), Graph::complete(2).unwrap());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert!(from_edge_list("3\n0 1 2\n").is_err());
        assert!(from_edge_list("").is_err());
        assert!(matches!(from_edge_list("2\n0 0\n"), Err(FormatError::Graph(GraphError::SelfLoop(0)))));
        let g = from_edge_list("# triangle\n3\n0 1\n1 2 # chord\n\n0 2\n").unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
    }
}
