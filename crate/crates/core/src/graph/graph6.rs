//! graph6 reader and writer.
//!
//! Marks are not part of the format: decoded graphs are unmarked and
//! encoding drops marks.

use super::{GraphError, MarkedGraph};
use thiserror::Error;

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;
const LONG_FORM: u8 = 126;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed graph6 header: {0}")]
    MalformedHeader(&'static str),
    #[error("graph6 body too short: need {needed} bytes, found {found}")]
    TruncatedBits { needed: usize, found: usize },
    #[error("graph6 padding bits are not zero")]
    NonCanonicalPadding,
    #[error("byte {0:#04x} outside the graph6 range")]
    InvalidByte(u8),
    #[error("{0} unexpected trailing bytes")]
    ExcessBytes(usize),
    #[error("graph is not subcubic: {0}")]
    NotSubcubic(GraphError),
}

fn check_byte(b: u8) -> Result<u8, Graph6Error> {
    if (BIAS..=LONG_FORM).contains(&b) {
        Ok(b - BIAS)
    } else {
        Err(Graph6Error::InvalidByte(b))
    }
}

fn decode_order(bytes: &[u8]) -> Result<(u64, usize), Graph6Error> {
    let first = *bytes.first().ok_or(Graph6Error::MalformedHeader("empty input"))?;
    if first != LONG_FORM {
        return Ok((check_byte(first)? as u64, 1));
    }
    let (width, offset) = if bytes.get(1) == Some(&LONG_FORM) {
        (6, 2)
    } else {
        (3, 1)
    };
    let digits = bytes
        .get(offset..offset + width)
        .ok_or(Graph6Error::MalformedHeader("order field cut short"))?;
    let mut n = 0u64;
    for &b in digits {
        n = (n << 6) | check_byte(b)? as u64;
    }
    let minimal = if width == 3 { n >= 63 } else { n >= 258_048 };
    if !minimal {
        return Err(Graph6Error::MalformedHeader("order field not minimal"));
    }
    Ok((n, offset + width))
}

fn encode_order(n: usize, out: &mut String) {
    let n = n as u64;
    let (prefix, width): (&[u8], u32) = if n <= 62 {
        (&[], 1)
    } else if n <= 258_047 {
        (&[LONG_FORM], 3)
    } else {
        (&[LONG_FORM, LONG_FORM], 6)
    };
    for &p in prefix {
        out.push(p as char);
    }
    for k in (0..width).rev() {
        out.push((((n >> (6 * k)) & 63) as u8 + BIAS) as char);
    }
}

/// Parses one graph6 line. An optional `>>graph6<<` header and trailing
/// line terminators are accepted.
pub fn graph6_decode(text: &str) -> Result<MarkedGraph, Graph6Error> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let (order, used) = decode_order(bytes)?;
    let body = &bytes[used..];
    let bits = (order as u128) * (order.saturating_sub(1) as u128) / 2;
    let needed = bits.div_ceil(6);
    if (body.len() as u128) < needed {
        return Err(Graph6Error::TruncatedBits {
            needed: usize::try_from(needed).unwrap_or(usize::MAX),
            found: body.len(),
        });
    }
    if body.len() as u128 > needed {
        return Err(Graph6Error::ExcessBytes(body.len() - needed as usize));
    }
    let n = order as usize;
    let mut g = MarkedGraph::new(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = check_byte(body[k / 6])?;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).map_err(Graph6Error::NotSubcubic)?;
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let last = check_byte(body[k / 6])?;
        if last & ((1u8 << (6 - k % 6)) - 1) != 0 {
            return Err(Graph6Error::NonCanonicalPadding);
        }
    }
    for &b in body {
        check_byte(b)?;
    }
    Ok(g)
}

/// Canonical graph6 encoding without header or line terminator.
pub fn graph6_encode(g: &MarkedGraph) -> String {
    let n = g.n();
    let mut out = String::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + BIAS) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + BIAS) as char);
    }
    out
}
