//! Text format for subspace codes.
//!
//! ```text
//! q=2 v=7
//! 1000000,0100000,0010000
//! 1000110,0101011,0011111
//! ```
//!
//! The header names the field and ambient dimension and may carry claims
//! `N=<n> d=<d> K=<k1,k2,..>`. Each further line is one codeword given by
//! comma-separated rows of digits, coordinate 1 leftmost. Rows need not be
//! reduced; the parser canonicalizes them. `#` starts a comment, blank lines are
//! ignored. The zero subspace is written as a single all-zero row.
//!
//! [`emit_code`] writes only the header `q=.. v=..` and the canonical rows,
//! codewords sorted by (dimension, enumeration index), with a trailing newline.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use super::{CodeClaim, CodeError, SubspaceCode};
use crate::gf::FieldSpec;
use crate::grassmann::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header `q=<q> v=<v>`")]
    MissingHeader,
    #[error("malformed header token `{0}`")]
    BadHeader(String),
    #[error("row `{row}` has length {len}, expected {v}")]
    RowLength { row: String, len: usize, v: usize },
    #[error("invalid digit `{0}` for the field")]
    BadDigit(char),
    #[error("duplicate codeword (first given on line {first})")]
    Duplicate { first: usize },
    #[error("{0}")]
    Other(String),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses a code file, discarding header claims.
pub fn parse_code(text: &str) -> Result<SubspaceCode, ParseError> {
    parse_code_with_claim(text).map(|(c, _)| c)
}

/// Parses a code file and returns any parameter claims found in its header.
pub fn parse_code_with_claim(text: &str) -> Result<(SubspaceCode, CodeClaim), ParseError> {
    let mut header: Option<(FieldSpec, usize, CodeClaim)> = None;
    let mut words = Vec::new();
    let mut first_line: HashMap<Subspace, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((field, v, _)) = &header else {
            header = Some(parse_header(line, line_no)?);
            continue;
        };
        let (field, v) = (*field, *v);
        let mut rows = Vec::new();
        for tok in line.split(',') {
            let tok = tok.trim();
            if tok.chars().count() != v {
                return Err(err(line_no, ParseErrorKind::RowLength { row: tok.into(), len: tok.chars().count(), v }));
            }
            let row: Vec<u8> = tok
                .chars()
                .map(|ch| match ch.to_digit(10) {
                    Some(d) if d < field.q() as u32 => Ok(d as u8),
                    _ => Err(err(line_no, ParseErrorKind::BadDigit(ch))),
                })
                .collect::<Result<_, _>>()?;
            rows.push(row);
        }
        let s = Subspace::from_rows(field, v, &rows).map_err(|e| err(line_no, ParseErrorKind::Other(e.to_string())))?;
        if let Some(&first) = first_line.get(&s) {
            return Err(err(line_no, ParseErrorKind::Duplicate { first }));
        }
        first_line.insert(s.clone(), line_no);
        words.push(s);
    }
    let Some((field, v, claim)) = header else {
        return Err(err(0, ParseErrorKind::MissingHeader));
    };
    let code = SubspaceCode::new(field, v, words).map_err(|e| match e {
        CodeError::Duplicate { .. } => unreachable!("duplicates caught above"),
        other => err(0, ParseErrorKind::Other(other.to_string())),
    })?;
    Ok((code, claim))
}

fn parse_header(line: &str, line_no: usize) -> Result<(FieldSpec, usize, CodeClaim), ParseError> {
    let mut claim = CodeClaim::default();
    let mut q = None;
    let mut v = None;
    for tok in line.split_whitespace() {
        let bad = || err(line_no, ParseErrorKind::BadHeader(tok.into()));
        let (key, val) = tok.split_once('=').ok_or_else(bad)?;
        match key {
            "q" => q = Some(val.parse::<u32>().map_err(|_| bad())?),
            "v" => v = Some(val.parse::<usize>().map_err(|_| bad())?),
            "N" => claim.n = Some(val.parse().map_err(|_| bad())?),
            "d" => claim.d = Some(val.parse().map_err(|_| bad())?),
            "K" => {
                let dims: BTreeSet<usize> =
                    val.split(',').map(|x| x.parse::<usize>()).collect::<Result<_, _>>().map_err(|_| bad())?;
                claim.dims = Some(dims);
            }
            _ => return Err(bad()),
        }
    }
    let (Some(q), Some(v)) = (q, v) else {
        return Err(err(line_no, ParseErrorKind::MissingHeader));
    };
    let field = FieldSpec::new(q).map_err(|e| err(line_no, ParseErrorKind::Other(e.to_string())))?;
    if v == 0 || v > crate::grassmann::MAX_AMBIENT {
        return Err(err(line_no, ParseErrorKind::Other(format!("ambient dimension {v} out of range"))));
    }
    claim.q = Some(q);
    claim.v = Some(v);
    Ok((field, v, claim))
}

/// Canonical text of a code.
pub fn emit_code(c: &SubspaceCode) -> Result<String, CodeError> {
    let sorted = c.sorted()?;
    let mut out = String::new();
    writeln!(out, "q={} v={}", c.field().q(), c.ambient()).unwrap();
    for w in sorted.words() {
        writeln!(out, "{}", w.to_row_string()).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_canonicalizes() {
        let a = parse_code("q=2 v=4\n1100,0110\n").unwrap();
        let b = parse_code("q=2 v=4\n1010,0110 # reduced\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(emit_code(&a).unwrap(), "q=2 v=4\n1010,0110\n");
    }

    #[test]
    fn duplicate_names_line() {
        let e = parse_code("q=2 v=3\n100\n# c\n010\n100,000\n").unwrap_err();
        assert_eq!(e.line, 5);
        assert_eq!(e.kind, ParseErrorKind::Duplicate { first: 2 });
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(parse_code("100\n").unwrap_err().kind, ParseErrorKind::BadHeader("100".into()));
        assert_eq!(parse_code("").unwrap_err().kind, ParseErrorKind::MissingHeader);
        assert_eq!(parse_code("q=2 v=3\n120\n").unwrap_err().kind, ParseErrorKind::BadDigit('2'));
        assert!(matches!(parse_code("q=2 v=3\n10\n").unwrap_err().kind, ParseErrorKind::RowLength { .. }));
        assert!(matches!(parse_code("q=4 v=3\n").unwrap_err().kind, ParseErrorKind::Other(_)));
    }

    #[test]
    fn header_claims() {
        let (c, claim) = parse_code_with_claim("q=3 v=3 N=2 d=2 K=1\n120\n001\n").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(claim.n, Some(2));
        assert_eq!(claim.dims, Some([1].into_iter().collect()));
    }

    #[test]
    fn zero_subspace_roundtrip() {
        let c = parse_code("q=2 v=3\n000\n100\n").unwrap();
        assert_eq!(c.dimensions(), [0, 1].into_iter().collect());
        let text = emit_code(&c).unwrap();
        assert_eq!(text, "q=2 v=3\n000\n100\n");
        assert_eq!(parse_code(&text).unwrap(), c);
    }
}
