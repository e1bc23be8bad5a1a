//! The "pcm v1" matrix text format.
//!
//! ```text
//! # optional comments
//! 2 3
//! 110
//! 011
//! ```

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVector};

pub fn parse(text: &str) -> Result<BitMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `<rows> <cols>` header".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse {
            line: hline,
            msg: format!("bad header {header:?}: {e}"),
        })?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header must be `<rows> <cols>`, got {header:?}"),
        });
    };

    let mut data = Vec::with_capacity(rows);
    for (line, body) in lines {
        if data.len() == rows {
            return Err(Error::Parse {
                line,
                msg: format!("more than {rows} rows"),
            });
        }
        if body.len() != cols {
            return Err(Error::Parse {
                line,
                msg: format!("expected {cols} columns, found {}", body.len()),
            });
        }
        let row: BitVector = body.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("row must contain only 0 and 1: {body:?}"),
        })?;
        data.push(row);
    }
    if data.len() != rows {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("expected {rows} rows, found {}", data.len()),
        });
    }
    BitMatrix::from_rows(cols, data)
}

pub fn format(m: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for row in m.row_iter() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

pub fn read(path: impl AsRef<Path>) -> Result<BitMatrix> {
    let text = fs::read_to_string(path)?;
    parse(&text)
}

pub fn write(path: impl AsRef<Path>, m: &BitMatrix) -> Result<()> {
    fs::write(path, format(m))?;
    Ok(())
}
