//! Plain-text edge-list instances.
//!
//! ```text
//! # optional comments
//! p 5 5
//! 0 1
//! 1 2
//! ```
//!
//! The header gives the vertex and edge counts; each further line is one
//! edge with 0-based endpoints.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    /// Comment lines without the leading `#` and one following space.
    pub comments: Vec<String>,
}

impl Instance {
    /// Value of a `key: value` comment.
    pub fn comment_value(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            let (k, v) = c.split_once(':')?;
            (k.trim() == key).then(|| v.trim())
        })
    }

    pub fn seed(&self) -> Option<u64> {
        self.comment_value("seed")?.parse().ok()
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|f| f.parse().map_err(|_| parse_err(line, format!("`{f}` is not a non-negative integer"))))
        .collect()
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut comments = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::new(0);
    let mut seen = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if let Some(c) = t.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            continue;
        }
        if t.is_empty() {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 3 || fields[0] != "p" {
                    return Err(parse_err(line, "expected header `p <n> <m>`"));
                }
                let nm = numbers(line, &fields[1..])?;
                header = Some((nm[0], nm[1]));
                g = Graph::new(nm[0]);
            }
            Some((n, m)) => {
                if fields.len() != 2 {
                    return Err(parse_err(line, "expected an edge `<u> <v>`"));
                }
                let uv = numbers(line, &fields)?;
                let (u, v) = (uv[0], uv[1]);
                if u >= n || v >= n {
                    return Err(parse_err(line, format!("vertex out of range for n = {n}")));
                }
                if u == v {
                    return Err(parse_err(line, format!("self-loop at {u}")));
                }
                if g.has_edge(u, v) {
                    return Err(parse_err(line, format!("duplicate edge {u} {v}")));
                }
                seen += 1;
                if seen > m {
                    return Err(parse_err(line, format!("more than the {m} declared edges")));
                }
                g.add_edge(u, v);
            }
        }
    }
    match header {
        None => Err(parse_err(text.lines().count().max(1), "missing header `p <n> <m>`")),
        Some((_, m)) if seen != m => Err(parse_err(
            text.lines().count(),
            format!("declared {m} edges, found {seen}"),
        )),
        Some(_) => Ok(Instance { graph: g, comments }),
    }
}

pub fn write_instance(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("p {} {}\n", g.n(), g.m()));
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u, e.v));
    }
    out
}

pub fn read_instance(path: &std::path::Path) -> Result<(Instance, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| parse_err(0, "input is not UTF-8"))?;
    Ok((parse_instance(text)?, bytes))
}

/// Hex SHA-256 of the raw input bytes.
pub fn input_digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
