//! Family files: a structured document `{"n": …, "sets": [[…], …]}` with
//! 1-based elements, or one 0/1 bitstring per line (first character is element 1).

use serde::Deserialize;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::family::{FamilyError, GroundSet, SetFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyFormat {
    Structured,
    Bitstrings,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("ParseError at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("ParseError: empty input")]
    Empty,
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Deserialize)]
struct FamilyDocument {
    n: usize,
    sets: Vec<Vec<usize>>,
}

/// Structured format if the first non-blank byte is `{`, bitstrings otherwise.
pub fn detect_format(text: &str) -> FamilyFormat {
    match text.trim_start().as_bytes().first() {
        Some(b'{') => FamilyFormat::Structured,
        _ => FamilyFormat::Bitstrings,
    }
}

pub fn parse_family(text: &str) -> Result<SetFamily, FormatError> {
    match detect_format(text) {
        FamilyFormat::Structured => parse_structured(text),
        FamilyFormat::Bitstrings => parse_bitstrings(text),
    }
}

pub fn parse_structured(text: &str) -> Result<SetFamily, FormatError> {
    let doc: FamilyDocument = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })?;
    Ok(SetFamily::from_lists(doc.n, &doc.sets)?)
}

pub fn parse_bitstrings(text: &str) -> Result<SetFamily, FormatError> {
    let mut n = None;
    let mut sets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.is_empty() {
            continue;
        }
        let width = line.chars().count();
        match n {
            None => n = Some(width),
            Some(w) if w != width => {
                return Err(FormatError::Syntax {
                    line: i + 1,
                    column: width.min(w) + 1,
                    message: format!("expected {w} characters, found {width}"),
                })
            }
            Some(_) => {}
        }
        let mut s = BitSet::empty(width);
        for (j, c) in line.chars().enumerate() {
            match c {
                '0' => {}
                '1' => s.insert(j + 1),
                other => {
                    return Err(FormatError::Syntax {
                        line: i + 1,
                        column: j + 1,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        sets.push(s);
    }
    let n = n.ok_or(FormatError::Empty)?;
    Ok(SetFamily::new(GroundSet::new(n)?, sets)?)
}

/// Canonical structured text, one set per line.
pub fn to_structured(f: &SetFamily) -> String {
    let mut out = format!("{{\n  \"n\": {},\n  \"sets\": [", f.n());
    for (i, s) in f.iter().enumerate() {
        out.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
        let items: Vec<String> = s.elements().map(|e| e.to_string()).collect();
        out.push_str(&items.join(", "));
        out.push(']');
    }
    out.push_str(if f.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    out
}

pub fn to_bitstrings(f: &SetFamily) -> String {
    let mut out = String::new();
    for s in f.iter() {
        out.push_str(&s.to_bitstring());
        out.push('\n');
    }
    out
}

pub fn write_family(f: &SetFamily, format: FamilyFormat) -> String {
    match format {
        FamilyFormat::Structured => to_structured(f),
        FamilyFormat::Bitstrings => to_bitstrings(f),
    }
}
