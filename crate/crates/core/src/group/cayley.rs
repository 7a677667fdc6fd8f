//! Text Cayley-table files.
//!
//! ```text
//! 3
//! e a b
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! Line 1 is the order `n`; the label line is optional (labels default to
//! `e0 .. e{n-1}`); then `n` rows of zero-based indices. Index 0 must be the
//! identity.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::Group;
use crate::error::{Error, Result};

pub fn from_cayley_file(path: impl AsRef<Path>) -> Result<Group> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_cayley(&text, path.display().to_string())
}

pub fn parse_cayley(text: &str, name: impl Into<String>) -> Result<Group> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let (first_line, first) = *lines.first().ok_or(Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    let n: usize = first.parse().map_err(|_| Error::Parse {
        line: first_line,
        message: format!("expected the group order, found {first:?}"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: first_line,
            message: "order must be positive".into(),
        });
    }
    let rest = &lines[1..];
    // the label line is present iff there are n + 1 remaining lines
    let (labels, rows) = match rest.len() {
        len if len == n + 1 => {
            let (_, label_line) = rest[0];
            let labels: Vec<String> = label_line.split_whitespace().map(str::to_owned).collect();
            if labels.len() != n {
                return Err(Error::Parse {
                    line: rest[0].0,
                    message: format!("expected {n} labels, found {}", labels.len()),
                });
            }
            (labels, &rest[1..])
        }
        len if len == n => ((0..n).map(|i| format!("e{i}")).collect(), rest),
        len => {
            return Err(Error::Parse {
                line: rest.last().map_or(first_line, |l| l.0),
                message: format!("expected {n} table rows, found {len} lines"),
            })
        }
    };
    let mut table = Vec::with_capacity(n * n);
    for &(line, row) in rows {
        let before = table.len();
        for tok in row.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line,
                message: format!("bad index {tok:?}"),
            })?;
            table.push(v);
        }
        if table.len() - before != n {
            return Err(Error::Parse {
                line,
                message: format!("expected {n} entries, found {}", table.len() - before),
            });
        }
    }
    Group::from_table(name, labels, table)
}

pub fn write_cayley(g: &Group) -> String {
    let n = g.order();
    let mut out = String::new();
    writeln!(out, "{n}").unwrap();
    writeln!(out, "{}", g.labels().join(" ")).unwrap();
    for a in 0..n {
        let row: Vec<String> = g.row(a).map(|v| v.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn write_cayley_file(g: &Group, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, write_cayley(g))?;
    Ok(())
}
