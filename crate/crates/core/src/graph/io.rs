//! Edge-list text format.
//!
//! ```text
//! # comment
//! n m
//! u v        (m lines, 1-indexed, u < v)
//! b v label  (boundaried graphs only)
//! ```

use std::fmt::Write as _;

use super::{BoundariedGraph, Graph};
use crate::error::{parse_err, Result};

pub fn write_graph(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "{} {}", u + 1, v + 1).unwrap();
    }
    s
}

pub fn write_boundaried(bg: &BoundariedGraph) -> String {
    let mut s = write_graph(bg.graph());
    for (l, v) in bg.labelled() {
        writeln!(s, "b {} {}", v + 1, l).unwrap();
    }
    s
}

/// Non-comment, non-blank lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

fn parse_vertex(tok: Option<&str>, line: usize, n: usize) -> Result<usize> {
    let v: usize = parse_num(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Parses a graph block from `lines`, consuming the header, the edges and any
/// following `b` lines. Returns the graph and the `(vertex, label)` pairs.
pub(crate) fn parse_block<'a, I>(lines: &mut std::iter::Peekable<I>) -> Result<(Graph, Vec<(usize, u32)>)>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let mut toks = header.split_whitespace();
    let n: usize = parse_num(toks.next(), hl, "vertex count")?;
    let m: usize = parse_num(toks.next(), hl, "edge count")?;
    if toks.next().is_some() {
        return Err(parse_err(hl, "trailing tokens in header"));
    }
    let mut g = Graph::new(n);
    for _ in 0..m {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| parse_err(hl, format!("expected {m} edge lines")))?;
        let mut toks = l.split_whitespace();
        let u = parse_vertex(toks.next(), ln, n)?;
        let v = parse_vertex(toks.next(), ln, n)?;
        if toks.next().is_some() {
            return Err(parse_err(ln, "trailing tokens in edge line"));
        }
        if u >= v {
            return Err(parse_err(ln, "edge endpoints must satisfy u < v"));
        }
        if !g.add_edge(u, v).map_err(|e| parse_err(ln, e.to_string()))? {
            return Err(parse_err(ln, "repeated edge"));
        }
    }
    let mut labels = Vec::new();
    while let Some(&(ln, l)) = lines.peek() {
        let mut toks = l.split_whitespace();
        if toks.next() != Some("b") {
            break;
        }
        let v = parse_vertex(toks.next(), ln, n)?;
        let label: u32 = parse_num(toks.next(), ln, "label")?;
        if toks.next().is_some() {
            return Err(parse_err(ln, "trailing tokens in boundary line"));
        }
        labels.push((v, label));
        lines.next();
    }
    Ok((g, labels))
}

fn expect_end<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<()> {
    match lines.next() {
        Some((ln, _)) => Err(parse_err(ln, "unexpected content")),
        None => Ok(()),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text).peekable();
    let (g, labels) = parse_block(&mut lines)?;
    if let Some((v, _)) = labels.first() {
        return Err(parse_err(0, format!("boundary line for vertex {} in a plain graph", v + 1)));
    }
    expect_end(&mut lines)?;
    Ok(g)
}

pub fn parse_boundaried(text: &str) -> Result<BoundariedGraph> {
    let mut lines = content_lines(text).peekable();
    let (g, labels) = parse_block(&mut lines)?;
    expect_end(&mut lines)?;
    BoundariedGraph::new(g, &labels)
}
