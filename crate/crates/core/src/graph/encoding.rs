//! Text and compact graph formats.
//!
//! Text: first non-comment line `n <count>`, then one `u v` arc per line;
//! lines starting with `#` and blank lines are ignored.
//!
//! Compact: `o<n>:<digits>`, one base-3 digit per vertex pair `(i, j)`,
//! `i < j`, pairs in lexicographic order; 0 = no arc, 1 = i->j, 2 = j->i.

use super::OrientedGraph;
use crate::error::{Error, Result};

pub fn to_compact(d: &OrientedGraph) -> String {
    let n = d.n();
    let mut s = format!("o{n}:");
    for i in 0..n {
        for j in i + 1..n {
            s.push(char::from(b'0' + d.pair_digit(i, j)));
        }
    }
    s
}

pub fn parse_compact(s: &str) -> Result<OrientedGraph> {
    let err = |msg: String| Error::Parse { line: 1, msg };
    let body = s
        .trim()
        .strip_prefix('o')
        .ok_or_else(|| err("compact graph must start with 'o'".into()))?;
    let (n_str, digits) = body
        .split_once(':')
        .ok_or_else(|| err("missing ':' in compact graph".into()))?;
    let n: usize = n_str
        .parse()
        .map_err(|_| err(format!("bad vertex count {n_str:?}")))?;
    let mut g = OrientedGraph::empty(n).map_err(|e| err(e.to_string()))?;
    let expected = n * (n - 1) / 2;
    if digits.len() != expected {
        return Err(err(format!(
            "expected {expected} digits for {n} vertices, found {}",
            digits.len()
        )));
    }
    let mut chars = digits.chars();
    for i in 0..n {
        for j in i + 1..n {
            match chars.next() {
                Some('0') => {}
                Some('1') => g.add_arc(i, j)?,
                Some('2') => g.add_arc(j, i)?,
                other => return Err(err(format!("invalid digit {other:?}"))),
            }
        }
    }
    Ok(g)
}

pub fn to_text(d: &OrientedGraph) -> String {
    let mut s = format!("n {}\n", d.n());
    for (u, v) in d.arcs() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn parse_text(s: &str) -> Result<OrientedGraph> {
    let mut graph: Option<OrientedGraph> = None;
    for (idx, raw) in s.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                let n = match fields.as_slice() {
                    ["n", count] => count
                        .parse::<usize>()
                        .map_err(|_| err(format!("bad vertex count {count:?}")))?,
                    _ => return Err(err(format!("expected `n <count>`, found {line:?}"))),
                };
                graph = Some(OrientedGraph::empty(n).map_err(|e| err(e.to_string()))?);
            }
            Some(g) => {
                let (u, v) = match fields.as_slice() {
                    [u, v] => (
                        u.parse::<usize>().map_err(|_| err(format!("bad vertex {u:?}")))?,
                        v.parse::<usize>().map_err(|_| err(format!("bad vertex {v:?}")))?,
                    ),
                    _ => return Err(err(format!("expected `u v`, found {line:?}"))),
                };
                g.add_arc(u, v).map_err(|e| err(e.to_string()))?;
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: s.lines().count().max(1),
        msg: "missing `n <count>` header".into(),
    })
}

/// Auto-detects the format: compact if the first meaningful token starts
/// with `o`, text otherwise.
pub fn parse_graph(s: &str) -> Result<OrientedGraph> {
    let first = s
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with('o') => parse_compact(l),
        _ => parse_text(s),
    }
}
