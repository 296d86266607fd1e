//! Plain-text quiver formats.
//!
//! Arrow-list form: the first line holds the vertex count `n`; every further
//! line is `s t w` (0-based source, target, weight >= 1), one per arrow, listed
//! only in the positive direction. The writer emits arrows in row-major order
//! with single spaces and a trailing newline after every line. The reader
//! ignores blank lines and lines starting with `#`.
//!
//! Matrix form: the row-major exchange matrix as a JSON array of integer
//! arrays, e.g. `[[0,1],[-1,0]]`, written without whitespace.

use crate::error::QuiverError;
use crate::quiver::Quiver;

pub fn write_arrow_list(q: &Quiver) -> String {
    let mut out = format!("{}\n", q.n());
    for (s, t, w) in q.arrows() {
        out.push_str(&format!("{s} {t} {w}\n"));
    }
    out
}

pub fn write_matrix(q: &Quiver) -> String {
    serde_json::to_string(&q.to_matrix()).expect("integer matrix serializes")
}

/// Parses either form, choosing by the first non-blank character.
pub fn parse_quiver(text: &str) -> Result<Quiver, QuiverError> {
    if text.trim_start().starts_with('[') {
        parse_matrix(text)
    } else {
        parse_arrow_list(text)
    }
}

pub fn parse_matrix(text: &str) -> Result<Quiver, QuiverError> {
    let rows: Vec<Vec<i32>> = serde_json::from_str(text.trim())
        .map_err(|e| QuiverError::Parse { line: e.line(), msg: e.to_string() })?;
    Quiver::from_matrix(&rows)
}

pub fn parse_arrow_list(text: &str) -> Result<Quiver, QuiverError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines
        .next()
        .ok_or(QuiverError::Parse { line: 1, msg: "missing vertex count".into() })?;
    let n: usize = header
        .parse()
        .map_err(|_| QuiverError::Parse { line, msg: format!("bad vertex count {header:?}") })?;
    let mut arrows = Vec::new();
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(QuiverError::Parse { line, msg: "expected `s t w`".into() });
        }
        let bad = |f: &str| QuiverError::Parse { line, msg: format!("bad integer {f:?}") };
        let s: usize = fields[0].parse().map_err(|_| bad(fields[0]))?;
        let t: usize = fields[1].parse().map_err(|_| bad(fields[1]))?;
        let w: i32 = fields[2].parse().map_err(|_| bad(fields[2]))?;
        arrows.push((s, t, w));
    }
    Quiver::new(n, &arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_list_is_bit_exact() {
        let q = Quiver::new(3, &[(1, 2, 2), (0, 1, 1)]).unwrap();
        assert_eq!(write_arrow_list(&q), "3\n0 1 1\n1 2 2\n");
        assert_eq!(parse_quiver("# c\n3\n\n0 1 1\n1 2 2\n").unwrap(), q);
    }

    #[test]
    fn matrix_form() {
        let q = Quiver::new(2, &[(1, 0, 1)]).unwrap();
        assert_eq!(write_matrix(&q), "[[0,-1],[1,0]]");
        assert_eq!(parse_quiver(" [[0,-1],[1,0]]\n").unwrap(), q);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_quiver("").is_err());
        assert!(parse_quiver("x").is_err());
        assert!(parse_quiver("2\n0 1").is_err());
        assert!(parse_quiver("2\n0 1 1\n1 0 1\n").is_err());
        assert!(parse_quiver("[[0,1],[1,0]]").is_err());
    }
}
