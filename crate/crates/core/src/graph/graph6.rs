//! graph6 text encoding.
//!
//! The vertex count is written as one byte `n + 63` when `n <= 62`, otherwise
//! as `~` followed by three bytes holding `n` in 18 big-endian bits. The upper
//! triangle follows column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! zero-padded to a multiple of six bits, six bits per byte with offset 63.
//! The 8-byte form for `n > 258047` is not supported.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Encodes `g` as a single graph6 line (no trailing newline).
pub fn encode(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::Range(format!(
            "graph6 encoding supports n <= {MAX_VERTICES}, got {n}"
        )));
    }
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Decodes one graph6 line. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored; offsets refer to the trimmed text.
pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err(0, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(i, format!("byte {b:#04x} outside the graph6 range 63..=126")));
        }
    }
    let (n, body_start) = if bytes[0] == b'~' {
        if bytes.get(1) == Some(&b'~') {
            return Err(Error::Range(
                "graph6 8-byte vertex count form (n > 258047) is not supported".into(),
            ));
        }
        if bytes.len() < 4 {
            return Err(parse_err(bytes.len(), "truncated 4-byte vertex count"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        if n <= 62 {
            return Err(parse_err(0, format!("vertex count {n} must use the 1-byte form")));
        }
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::Range(format!("vertex count {n} outside 1..={MAX_VERTICES}")));
    }
    let nbits = n * (n - 1) / 2;
    let want = nbits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() != want {
        let at = body_start + body.len().min(want);
        return Err(parse_err(
            at,
            format!("expected {want} adjacency bytes for n = {n}, found {}", body.len()),
        ));
    }
    let mut g = Graph::new(n);
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[want - 1] - 63;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(parse_err(body_start + want - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Decodes a stream with one graph per non-empty line.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(decode).collect()
}
