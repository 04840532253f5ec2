//! Decomposition text format: `s nodes width n`, then `b node v...` per bag
//! and `e a b` per tree edge, all 1-indexed.

use std::fmt::Write as _;

use super::TreeDecomposition;
use crate::error::{parse_err, Result};
use crate::graph::io::{content_lines, parse_num};

pub fn write_decomposition(td: &TreeDecomposition, n: usize) -> String {
    let mut s = String::new();
    let width = if td.nodes() == 0 { 0 } else { td.width() };
    writeln!(s, "s {} {} {}", td.nodes(), width, n).unwrap();
    for (i, bag) in td.bags().iter().enumerate() {
        write!(s, "b {}", i + 1).unwrap();
        for v in bag {
            write!(s, " {}", v + 1).unwrap();
        }
        s.push('\n');
    }
    for &(a, b) in td.tree_edges() {
        writeln!(s, "e {} {}", a + 1, b + 1).unwrap();
    }
    s
}

/// Parses a decomposition; returns it with the declared vertex count.
pub fn parse_decomposition(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("s") {
        return Err(parse_err(hl, "expected `s nodes width n` header"));
    }
    let nodes: usize = parse_num(toks.next(), hl, "node count")?;
    let width: usize = parse_num(toks.next(), hl, "width")?;
    let n: usize = parse_num(toks.next(), hl, "vertex count")?;
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; nodes];
    let mut edges = Vec::new();
    let node_id = |tok: Option<&str>, ln: usize| -> Result<usize> {
        let id: usize = parse_num(tok, ln, "node id")?;
        if id == 0 || id > nodes {
            return Err(parse_err(ln, format!("node {id} outside 1..={nodes}")));
        }
        Ok(id - 1)
    };
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("b") => {
                let id = node_id(toks.next(), ln)?;
                let mut bag = Vec::new();
                for t in toks {
                    let v: usize = parse_num(Some(t), ln, "vertex")?;
                    if v == 0 || v > n {
                        return Err(parse_err(ln, format!("vertex {v} outside 1..={n}")));
                    }
                    bag.push(v - 1);
                }
                if bags[id].replace(bag).is_some() {
                    return Err(parse_err(ln, "bag given twice"));
                }
            }
            Some("e") => {
                let a = node_id(toks.next(), ln)?;
                let b = node_id(toks.next(), ln)?;
                edges.push((a, b));
            }
            _ => return Err(parse_err(ln, "expected a `b` or `e` line")),
        }
    }
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_err(0, format!("bag {} missing", i + 1))))
        .collect::<Result<_>>()?;
    let td = TreeDecomposition::new(bags, edges);
    if nodes > 0 && td.width() != width {
        return Err(parse_err(hl, format!("declared width {width}, bags give {}", td.width())));
    }
    Ok((td, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_grid;
    use crate::td::heuristic_decomposition;

    #[test]
    fn round_trip() {
        let g = make_grid(3).unwrap();
        let td = heuristic_decomposition(&g);
        let text = write_decomposition(&td, g.n());
        let (back, n) = parse_decomposition(&text).unwrap();
        assert_eq!(n, 9);
        assert_eq!(back, td);
        assert_eq!(write_decomposition(&back, n), text);
    }

    #[test]
    fn rejects_bad_width() {
        assert!(parse_decomposition("s 1 0 2\nb 1 1 2\n").is_err());
        assert!(parse_decomposition("s 1 1 2\nb 1 1 3\n").is_err());
        assert!(parse_decomposition("s 0 0 0\n").is_ok());
    }
}
