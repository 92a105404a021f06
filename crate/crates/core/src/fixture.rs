//! Plain-text path files: one path per line, vertex labels separated by
//! commas. Blank lines and anything after `#` are ignored. A row may be
//! wrapped in parentheses, so `(0,1,4,2,7,5,6,3,8)` and `0,1,4,2,7,5,6,3,8`
//! read the same.

use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::path::{PathError, VertexPath};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Path {
        line: usize,
        #[source]
        source: PathError,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A row of the file before validation, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRow {
    pub line: usize,
    pub labels: Vec<usize>,
}

pub fn parse_rows(text: &str) -> Result<Vec<RawRow>, FixtureError> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let body = match body.strip_prefix('(') {
            Some(inner) => inner
                .strip_suffix(')')
                .ok_or_else(|| FixtureError::Syntax {
                    line,
                    msg: "unbalanced parenthesis".into(),
                })?,
            None => body,
        };
        let labels = body
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>().map_err(|_| FixtureError::Syntax {
                    line,
                    msg: format!("bad vertex label {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(RawRow { line, labels });
    }
    Ok(rows)
}

/// Parses and validates every row as a [`VertexPath`].
pub fn parse_paths(text: &str) -> Result<Vec<VertexPath>, FixtureError> {
    parse_rows(text)?
        .into_iter()
        .map(|r| {
            VertexPath::new(r.labels).map_err(|source| FixtureError::Path {
                line: r.line,
                source,
            })
        })
        .collect()
}

pub fn read_paths(file: impl AsRef<Path>) -> Result<Vec<VertexPath>, FixtureError> {
    parse_paths(&std::fs::read_to_string(file)?)
}

pub fn write_paths<'a, W: Write>(
    mut out: W,
    paths: impl IntoIterator<Item = &'a VertexPath>,
) -> io::Result<()> {
    for p in paths {
        writeln!(out, "{p}")?;
    }
    Ok(())
}
