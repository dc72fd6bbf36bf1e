//! Plain-text matrix format.
//!
//! ```text
//! # optional comment lines
//! 3 4
//! 1100
//! 0110
//! 0011
//! ```

use super::{BinaryMatrix, BitVec};
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_matrix(text: &str) -> Result<BinaryMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
    let is_comment = |l: &str| l.trim_start().starts_with('#');

    let (hline, header) = loop {
        match lines.next() {
            None => return Err(parse_err(0, "missing `rows cols` header")),
            Some((_, l)) if l.trim().is_empty() || is_comment(l) => continue,
            Some(h) => break h,
        }
    };
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(parse_err(hline, "header must be `rows cols`"));
    }
    let rows: usize = dims[0].parse().map_err(|_| parse_err(hline, "bad row count"))?;
    let cols: usize = dims[1].parse().map_err(|_| parse_err(hline, "bad column count"))?;

    let mut data = Vec::with_capacity(rows);
    while data.len() < rows {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(0, format!("expected {rows} rows, got {}", data.len())))?;
        if is_comment(l) {
            continue;
        }
        let l = l.trim();
        if l.len() != cols {
            return Err(parse_err(ln, format!("row has {} characters, expected {cols}", l.len())));
        }
        let v = BitVec::parse_bitstring(l).ok_or_else(|| parse_err(ln, "row characters must be 0 or 1"))?;
        data.push(v);
    }
    for (ln, l) in lines {
        if !(l.trim().is_empty() || is_comment(l)) {
            return Err(parse_err(ln, "trailing data after matrix rows"));
        }
    }
    Ok(BinaryMatrix::from_rows(&data, cols))
}

/// Canonical rendering; `parse_matrix(&write_matrix(m)) == m`.
pub fn write_matrix(m: &BinaryMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        s.push_str(&m.row(r).to_bitstring());
        s.push('\n');
    }
    s
}
