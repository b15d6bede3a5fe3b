//! Plain-text edge lists: one `u v` pair per line, 0-indexed.
//!
//! Lines starting with `#` and blank lines are ignored. An optional
//! `n <count>` line fixes the vertex count; otherwise it is one more than the
//! largest index seen.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let first = fields.next().expect("nonempty line");
        let second = fields.next().ok_or_else(|| Error::Parse {
            line: line_no,
            msg: format!("expected two fields, got `{line}`"),
        })?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("trailing fields in `{line}`"),
            });
        }
        let number = |s: &str| {
            s.parse::<usize>().map_err(|e| Error::Parse {
                line: line_no,
                msg: format!("`{s}`: {e}"),
            })
        };
        if first == "n" {
            if declared_n.is_some() || !edges.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "`n` header must come first and only once".into(),
                });
            }
            declared_n = Some(number(second)?);
            continue;
        }
        edges.push((number(first)?, number(second)?));
    }
    let n = match declared_n {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    Graph::new(n, edges)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text)
}

/// Serialize with an `n` header. Self-loop counts are not representable and are dropped.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}
