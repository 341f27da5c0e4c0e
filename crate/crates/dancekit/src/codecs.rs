//! Text parsing and serialization for Gauss sequences, PD codes and braid
//! words. These grammars are the external input interface; serializers
//! emit the canonical spacing the parsers round-trip.
//!
//! Grammars (whitespace-insensitive, case-insensitive where noted):
//! - Gauss: tokens `O<k>` / `U<k>` (case-insensitive), e.g. `O1U2O3U1O2U3`.
//! - PD: terms `X(a,b,c,d)` separated by whitespace, commas or semicolons.
//! - Braid: header `n=<strands>;` then letters `s<i>` (positive) /
//!   `S<i>` (negative) or signed integers `i` / `-i`, e.g. `n=2; 1 1 1`.

use crate::diagram::{BraidWord, GaussSequence, PdCode, Role, StrandEvent};
use crate::error::CodecError;

/// Schema version stamped on every machine-readable result object.
pub const SCHEMA_VERSION: u32 = 1;

fn syntax(position: usize, message: impl Into<String>) -> CodecError {
    CodecError::Syntax {
        position,
        message: message.into(),
    }
}

/// Parses the `O<k>`/`U<k>` token list grammar.
pub fn parse_gauss(text: &str) -> Result<GaussSequence, CodecError> {
    let bytes = text.as_bytes();
    let mut events = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let role = match b {
            b'O' | b'o' => Role::Over,
            b'U' | b'u' => Role::Under,
            _ => return Err(syntax(i, format!("expected 'O' or 'U', found {:?}", b as char))),
        };
        let start = i + 1;
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == start {
            return Err(syntax(start, "expected crossing number after role letter"));
        }
        let label: u32 = text[start..end]
            .parse()
            .map_err(|_| syntax(start, "crossing number out of range"))?;
        events.push(StrandEvent::new(label, role));
        i = end;
    }
    Ok(GaussSequence::new(events)?)
}

/// Canonical form: uppercase roles, no separators, e.g. `O1U2O3U1O2U3`.
pub fn serialize_gauss(seq: &GaussSequence) -> String {
    seq.events().iter().map(|ev| ev.to_string()).collect()
}

/// Parses the `X(a,b,c,d)` term grammar.
pub fn parse_pd(text: &str) -> Result<PdCode, CodecError> {
    let bytes = text.as_bytes();
    let mut tuples = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() || b == b',' || b == b';' {
            i += 1;
            continue;
        }
        if b != b'X' && b != b'x' {
            return Err(syntax(i, format!("expected 'X', found {:?}", b as char)));
        }
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() || bytes[i] != b'(' {
            return Err(syntax(i, "expected '(' after 'X'"));
        }
        i += 1;
        let mut tuple = [0u32; 4];
        for slot in 0..4 {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == start {
                return Err(syntax(start, "expected edge label"));
            }
            tuple[slot] = text[start..i]
                .parse()
                .map_err(|_| syntax(start, "edge label out of range"))?;
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let expected = if slot < 3 { b',' } else { b')' };
            if i >= bytes.len() || bytes[i] != expected {
                return Err(syntax(
                    i,
                    format!("expected {:?} in X(a,b,c,d) term", expected as char),
                ));
            }
            i += 1;
        }
        tuples.push(tuple);
    }
    Ok(PdCode::new(tuples)?)
}

/// Canonical form: `X(a,b,c,d)` terms joined by single spaces.
pub fn serialize_pd(pd: &PdCode) -> String {
    pd.tuples()
        .iter()
        .map(|t| format!("X({},{},{},{})", t[0], t[1], t[2], t[3]))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses the `n=<strands>; letters...` grammar.
pub fn parse_braid(text: &str) -> Result<BraidWord, CodecError> {
    let trimmed_start = text.len() - text.trim_start().len();
    let rest = text.trim_start();
    if !(rest.starts_with("n=") || rest.starts_with("N=")) {
        return Err(syntax(trimmed_start, "expected braid header 'n=<strands>;'"));
    }
    let body = &rest[2..];
    let semi = body
        .find(';')
        .ok_or_else(|| syntax(trimmed_start, "expected ';' after strand count"))?;
    let strands: usize = body[..semi]
        .trim()
        .parse()
        .map_err(|_| syntax(trimmed_start + 2, "invalid strand count"))?;
    let mut letters = Vec::new();
    for tok in body[semi + 1..].split_whitespace() {
        let letter: i32 = if let Some(idx) = tok.strip_prefix('s') {
            idx.parse()
                .map_err(|_| syntax(0, format!("invalid letter token {tok:?}")))?
        } else if let Some(idx) = tok.strip_prefix('S') {
            -idx
                .parse::<i32>()
                .map_err(|_| syntax(0, format!("invalid letter token {tok:?}")))?
        } else {
            tok.parse()
                .map_err(|_| syntax(0, format!("invalid letter token {tok:?}")))?
        };
        letters.push(letter);
    }
    Ok(BraidWord::new(strands, letters)?)
}

/// Canonical form: `n=<strands>;` then signed integers, e.g. `n=2; 1 1 1`.
pub fn serialize_braid(b: &BraidWord) -> String {
    if b.is_empty() {
        return format!("n={};", b.strands());
    }
    let letters = b
        .letters()
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    format!("n={}; {}", b.strands(), letters)
}
