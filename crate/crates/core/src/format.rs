//! Graph text formats: graph6 (compact, bit-exact) and edge lists.
//!
//! graph6 follows the standard 6-bit encoding: a size field (`n + 63`, or the
//! `126`-prefixed three-byte form for `n >= 63`), then the upper triangle of
//! the adjacency matrix in column order, packed six bits per byte with zero
//! padding. Parse errors carry the byte offset of the offending character.
//!
//! The edge-list dialect is one `u v` pair per line with 0-based indices and
//! `#` comments. An optional leading line holding a single integer fixes the
//! vertex count; the writer always emits it so graphs with isolated vertices
//! survive a round trip.

use crate::graph::{Graph, GraphError, MAX_VERTICES};

/// Supported text formats for [`parse_graph`] and [`serialize_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

/// Decodes `text` in the named format.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, GraphError> {
    match format {
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

/// Encodes `g` in the named format.
pub fn serialize_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => to_graph6(g),
        GraphFormat::EdgeList => to_edge_list(g),
    }
}

const G6_HEADER: &str = ">>graph6<<";

/// Decodes a graph6 line. A `>>graph6<<` header is accepted and skipped.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (body, base) = match trimmed.strip_prefix(G6_HEADER) {
        Some(rest) => (rest, G6_HEADER.len()),
        None => (trimmed, 0),
    };
    let bytes = body.as_bytes();
    let err = |offset: usize, msg: &str| GraphError::Parse {
        offset: base + offset,
        msg: msg.to_string(),
    };
    if bytes.is_empty() {
        return Err(err(0, "empty graph6 input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(
                i,
                &format!("byte {b:#04x} outside graph6 range 63..=126"),
            ));
        }
    }

    // Size field.
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // 8-byte size form encodes n >= 258048, beyond the supported cap.
            return Err(err(0, "graph6 size form for n >= 258048 is not supported"));
        }
        if bytes.len() < 4 {
            return Err(err(0, "truncated long size field"));
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        if n < 63 {
            return Err(err(1, "non-canonical long size field for n < 63"));
        }
        (n, 4)
    } else {
        (bytes[0] as usize - 63, 1)
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge { n });
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos != nbytes {
        return Err(err(
            pos,
            &format!(
                "expected {nbytes} data bytes for n={n}, found {}",
                bytes.len() - pos
            ),
        ));
    }

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut bit_idx = 0usize;
    // Column-order upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    let mut col = 1usize;
    let mut row = 0usize;
    while pos < bytes.len() {
        let chunk = bytes[pos] - 63;
        for k in 0..6 {
            let bit = (chunk >> (5 - k)) & 1;
            if bit_idx < nbits {
                if bit == 1 {
                    edges.push((row, col));
                }
                bit_idx += 1;
                row += 1;
                if row == col {
                    row = 0;
                    col += 1;
                }
            } else if bit == 1 {
                return Err(err(pos, "nonzero padding bit"));
            }
        }
        pos += 1;
    }
    Graph::from_edges(n, edges)
}

/// Encodes a graph as a single graph6 line (no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0u8;
    for col in 1..n {
        for row in 0..col {
            acc = (acc << 1) | u8::from(g.has_edge(row, col));
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decodes the edge-list dialect described in the module docs.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut max_seen: Option<usize> = None;
    let mut offset = 0usize;

    for raw_line in text.split('\n') {
        let line_offset = offset;
        offset += raw_line.len() + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let mut tokens = line.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        let parse_int = |tok: &str| -> Result<usize, GraphError> {
            tok.parse::<usize>().map_err(|_| GraphError::Parse {
                offset: line_offset + find_token(raw_line, tok),
                msg: format!("expected a nonnegative integer, found {tok:?}"),
            })
        };
        match tokens.next() {
            None => {
                // A bare integer is the vertex-count line; legal only once,
                // before any edge.
                let n = parse_int(first)?;
                if declared_n.is_some() || !edges.is_empty() {
                    return Err(GraphError::Parse {
                        offset: line_offset,
                        msg: "unexpected single-token line after edges or a second count".into(),
                    });
                }
                if n > MAX_VERTICES {
                    return Err(GraphError::TooLarge { n });
                }
                declared_n = Some(n);
            }
            Some(second) => {
                if tokens.next().is_some() {
                    return Err(GraphError::Parse {
                        offset: line_offset,
                        msg: "expected exactly two integers per edge line".into(),
                    });
                }
                let u = parse_int(first)?;
                let v = parse_int(second)?;
                if u == v {
                    return Err(GraphError::SelfLoop { vertex: u });
                }
                max_seen = Some(max_seen.map_or(u.max(v), |m: usize| m.max(u.max(v))));
                edges.push((u, v));
            }
        }
    }

    let n = match declared_n {
        Some(n) => {
            if let Some(m) = max_seen {
                if m >= n {
                    return Err(GraphError::OutOfRange { vertex: m, n });
                }
            }
            n
        }
        None => max_seen.map_or(0, |m| m + 1),
    };
    Graph::from_edges(n, edges)
}

fn find_token(line: &str, tok: &str) -> usize {
    line.find(tok).unwrap_or(0)
}

/// Encodes as the edge-list dialect, count line first, edges sorted.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&g.n().to_string());
    out.push('\n');
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
