//! The `.dvo` text format.
//!
//! ```text
//! dvo 3
//! # comment
//! 0 0 0
//! 1 1 0
//! ```
//!
//! The first line that is neither blank nor a `#` comment is the header
//! `dvo <n>`; every later such line holds one voxel center as `n`
//! whitespace-separated integers.

use std::fmt::Write as _;

use ngap_core::cell::CENTER_LIMIT;
use ngap_core::DigitalObject;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct DvoError {
    /// 1-based line number; 0 when the problem is the missing header.
    pub line: usize,
    pub kind: DvoErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DvoErrorKind {
    #[error("missing header `dvo <n>`")]
    MissingHeader,
    #[error("malformed header {0:?}, expected `dvo <n>` with n >= 1")]
    BadHeader(String),
    #[error("expected {expected} coordinates, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("invalid integer {0:?}")]
    BadInteger(String),
    #[error("coordinate {0} exceeds the supported range (|x| <= 2^58)")]
    OutOfRange(i64),
    #[error("duplicate voxel, first given on line {0}")]
    Duplicate(usize),
}

fn err(line: usize, kind: DvoErrorKind) -> DvoError {
    DvoError { line, kind }
}

/// Parses a `.dvo` document.
pub fn parse(text: &str) -> Result<DigitalObject, DvoError> {
    let mut n = None;
    let mut centers: Vec<Vec<i64>> = Vec::new();
    let mut first_line = std::collections::HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let Some(n) = n else {
            n = Some(
                parse_header(body)
                    .ok_or_else(|| err(line, DvoErrorKind::BadHeader(body.to_string())))?,
            );
            continue;
        };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != n {
            return Err(err(
                line,
                DvoErrorKind::WrongArity {
                    expected: n,
                    found: tokens.len(),
                },
            ));
        }
        let center = tokens
            .iter()
            .map(|t| {
                let x: i64 = t
                    .parse()
                    .map_err(|_| err(line, DvoErrorKind::BadInteger(t.to_string())))?;
                if x.unsigned_abs() > CENTER_LIMIT as u64 {
                    return Err(err(line, DvoErrorKind::OutOfRange(x)));
                }
                Ok(x)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(&prev) = first_line.get(&center) {
            return Err(err(line, DvoErrorKind::Duplicate(prev)));
        }
        first_line.insert(center.clone(), line);
        centers.push(center);
    }
    let n = n.ok_or(err(0, DvoErrorKind::MissingHeader))?;
    Ok(DigitalObject::from_centers(n, centers).expect("centers validated while parsing"))
}

fn parse_header(body: &str) -> Option<usize> {
    let mut tokens = body.split_whitespace();
    let (Some("dvo"), Some(n), None) = (tokens.next(), tokens.next(), tokens.next()) else {
        return None;
    };
    let n: usize = n.parse().ok()?;
    (n >= 1).then_some(n)
}

/// Serializes `d` with voxels in lexicographic order.
///
/// Each entry of `comments` becomes a `# ` line right after the header.
pub fn write(d: &DigitalObject, comments: &[String]) -> String {
    let mut out = format!("dvo {}\n", d.n());
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for center in d.centers() {
        let row: Vec<String> = center.iter().map(i64::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
