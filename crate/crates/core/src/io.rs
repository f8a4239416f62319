//! Edge-list file formats.
//!
//! Plain graph:
//! ```text
//! n m
//! u v        (m lines, 0-indexed, written with u < v)
//! ```
//! Tripartite graphs carry a second line of `n` characters over `{A,B,C}`
//! before the edges. Weighted tripartite graphs use edge lines `u v w` with
//! `w` a signed decimal integer.

use crate::graph::{edge, Edge, Graph, Part, TripartiteGraph, WeightedTripartiteGraph};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: malformed line: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: self-loop")]
    SelfLoop { line: usize },
    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },
    #[error("line {line}: vertex out of range")]
    VertexOutOfRange { line: usize },
    #[error("line {line}: edge joins two vertices of the same part")]
    PartViolation { line: usize },
    #[error("unexpected end of file: expected {expected} edge lines, found {found}")]
    UnexpectedEof { expected: usize, found: usize },
}

fn malformed(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::MalformedLine {
        line,
        reason: reason.into(),
    }
}

struct Lines<'a> {
    iter: std::str::Lines<'a>,
    line_no: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        Lines {
            iter: text.lines(),
            line_no: 0,
        }
    }

    fn next_nonempty(&mut self) -> Option<(usize, &'a str)> {
        for line in self.iter.by_ref() {
            self.line_no += 1;
            if !line.trim().is_empty() {
                return Some((self.line_no, line.trim()));
            }
        }
        None
    }
}

fn parse_header(lines: &mut Lines) -> Result<(usize, usize), ParseError> {
    let (no, line) = lines
        .next_nonempty()
        .ok_or_else(|| malformed(1, "missing `n m` header"))?;
    let mut it = line.split_whitespace();
    let n: usize = it
        .next()
        .ok_or_else(|| malformed(no, "missing vertex count"))?
        .parse()
        .map_err(|_| malformed(no, "vertex count is not a number"))?;
    let m: usize = it
        .next()
        .ok_or_else(|| malformed(no, "missing edge count"))?
        .parse()
        .map_err(|_| malformed(no, "edge count is not a number"))?;
    if it.next().is_some() {
        return Err(malformed(no, "trailing tokens after `n m`"));
    }
    Ok((n, m))
}

fn parse_parts(lines: &mut Lines, n: usize) -> Result<Vec<Part>, ParseError> {
    let (no, line) = lines
        .next_nonempty()
        .ok_or_else(|| malformed(2, "missing part labeling line"))?;
    if line.chars().count() != n {
        return Err(malformed(
            no,
            format!("part labeling must have exactly {n} characters"),
        ));
    }
    line.chars()
        .map(|c| Part::from_char(c).ok_or_else(|| malformed(no, format!("invalid part `{c}`"))))
        .collect()
}

struct EdgeLine {
    line_no: usize,
    e: Edge,
    rest: Option<i64>,
}

fn parse_edge_line(
    no: usize,
    line: &str,
    n: usize,
    weighted: bool,
) -> Result<EdgeLine, ParseError> {
    let mut it = line.split_whitespace();
    let mut vertex = |what: &str| -> Result<u32, ParseError> {
        it.next()
            .ok_or_else(|| malformed(no, format!("missing {what}")))?
            .parse::<u32>()
            .map_err(|_| malformed(no, format!("{what} is not a vertex id")))
    };
    let u = vertex("first endpoint")?;
    let v = vertex("second endpoint")?;
    let rest = if weighted {
        let w = it
            .next()
            .ok_or_else(|| malformed(no, "missing edge weight"))?
            .parse::<i64>()
            .map_err(|_| malformed(no, "edge weight is not an integer"))?;
        Some(w)
    } else {
        None
    };
    if it.next().is_some() {
        return Err(malformed(no, "trailing tokens on edge line"));
    }
    if u == v {
        return Err(ParseError::SelfLoop { line: no });
    }
    if u as usize >= n || v as usize >= n {
        return Err(ParseError::VertexOutOfRange { line: no });
    }
    Ok(EdgeLine {
        line_no: no,
        e: edge(u, v),
        rest,
    })
}

fn parse_edges(
    lines: &mut Lines,
    n: usize,
    m: usize,
    weighted: bool,
    parts: Option<&[Part]>,
) -> Result<(Graph, BTreeMap<Edge, i64>), ParseError> {
    let mut g = Graph::empty(n);
    let mut weights = BTreeMap::new();
    for found in 0..m {
        let (no, line) = lines
            .next_nonempty()
            .ok_or(ParseError::UnexpectedEof { expected: m, found })?;
        let el = parse_edge_line(no, line, n, weighted)?;
        let (u, v) = el.e;
        if g.has_edge(u, v) {
            return Err(ParseError::DuplicateEdge { line: el.line_no });
        }
        if let Some(parts) = parts {
            if parts[u as usize] == parts[v as usize] {
                return Err(ParseError::PartViolation { line: el.line_no });
            }
        }
        g.add_edge(u, v);
        if let Some(w) = el.rest {
            weights.insert(el.e, w);
        }
    }
    if let Some((no, _)) = lines.next_nonempty() {
        return Err(malformed(no, "unexpected content after last edge"));
    }
    Ok((g, weights))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = Lines::new(text);
    let (n, m) = parse_header(&mut lines)?;
    let (g, _) = parse_edges(&mut lines, n, m, false, None)?;
    Ok(g)
}

pub fn parse_tripartite(text: &str) -> Result<TripartiteGraph, ParseError> {
    let mut lines = Lines::new(text);
    let (n, m) = parse_header(&mut lines)?;
    let parts = parse_parts(&mut lines, n)?;
    let (g, _) = parse_edges(&mut lines, n, m, false, Some(&parts))?;
    Ok(TripartiteGraph::new(g, parts).expect("parts validated during parse"))
}

pub fn parse_weighted_tripartite(text: &str) -> Result<WeightedTripartiteGraph, ParseError> {
    let mut lines = Lines::new(text);
    let (n, m) = parse_header(&mut lines)?;
    let parts = parse_parts(&mut lines, n)?;
    let (g, weights) = parse_edges(&mut lines, n, m, true, Some(&parts))?;
    let tg = TripartiteGraph::new(g, parts).expect("parts validated during parse");
    Ok(WeightedTripartiteGraph::new(tg, weights).expect("weights parsed per edge"))
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn format_tripartite(tg: &TripartiteGraph) -> String {
    let mut out = String::new();
    let g = tg.graph();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    let parts: String = tg.parts().iter().map(|p| p.as_char()).collect();
    let _ = writeln!(out, "{parts}");
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn format_weighted_tripartite(wg: &WeightedTripartiteGraph) -> String {
    let tg = wg.tripartite();
    let g = tg.graph();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    let parts: String = tg.parts().iter().map(|p| p.as_char()).collect();
    let _ = writeln!(out, "{parts}");
    for (u, v) in g.edges() {
        let w = wg.weight(u, v).expect("weight per edge");
        let _ = writeln!(out, "{u} {v} {w}");
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph, ParseError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<(), ParseError> {
    Ok(std::fs::write(path, format_graph(g))?)
}

pub fn read_tripartite(path: impl AsRef<Path>) -> Result<TripartiteGraph, ParseError> {
    parse_tripartite(&std::fs::read_to_string(path)?)
}

pub fn write_tripartite(tg: &TripartiteGraph, path: impl AsRef<Path>) -> Result<(), ParseError> {
    Ok(std::fs::write(path, format_tripartite(tg))?)
}

pub fn read_weighted_tripartite(
    path: impl AsRef<Path>,
) -> Result<WeightedTripartiteGraph, ParseError> {
    parse_weighted_tripartite(&std::fs::read_to_string(path)?)
}

pub fn write_weighted_tripartite(
    wg: &WeightedTripartiteGraph,
    path: impl AsRef<Path>,
) -> Result<(), ParseError> {
    Ok(std::fs::write(path, format_weighted_tripartite(wg))?)
}
