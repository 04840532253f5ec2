//! Table text format.
//!
//! ```text
//! problem t max_rep_size rows
//! row members offset
//! labels l...
//! edges a-b...       (boundary edges as label pairs)
//! sig e...           (one entry per state, `_` for ⊥)
//! n m                (representative, boundaried graph format)
//! u v
//! b v label
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::signature::{state_space, SignatureClass};
use super::table::{ReplacementTable, TableRow};
use crate::error::{parse_err, Result};
use crate::graph::io::{content_lines, parse_block, parse_num, write_boundaried};
use crate::graph::BoundariedGraph;
use crate::problems::Problem;

pub fn write_table(table: &ReplacementTable) -> String {
    let mut s = String::new();
    writeln!(s, "{} {} {} {}", table.problem, table.t, table.max_rep_size, table.rows.len()).unwrap();
    for (class, row) in &table.rows {
        writeln!(s, "row {} {}", row.members, row.rep_offset).unwrap();
        let labels: Vec<String> = class.labels.iter().map(|l| l.to_string()).collect();
        writeln!(s, "labels {}", labels.join(" ")).unwrap();
        let edges: Vec<String> = class.boundary_edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        writeln!(s, "edges {}", edges.join(" ")).unwrap();
        let entries: Vec<String> =
            class.entries.iter().map(|e| e.map_or_else(|| "_".to_string(), |v| v.to_string())).collect();
        writeln!(s, "sig {}", entries.join(" ")).unwrap();
        s.push_str(&write_boundaried(&row.representative));
    }
    s
}

fn tagged<'a>(line: Option<(usize, &'a str)>, tag: &str, prev: usize) -> Result<(usize, Vec<&'a str>)> {
    let (ln, l) = line.ok_or_else(|| parse_err(prev, format!("expected `{tag}` line")))?;
    let mut toks = l.split_whitespace();
    if toks.next() != Some(tag) {
        return Err(parse_err(ln, format!("expected `{tag}` line")));
    }
    Ok((ln, toks.collect()))
}

pub fn parse_table(text: &str) -> Result<ReplacementTable> {
    let mut lines = content_lines(text).peekable();
    let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "empty table"))?;
    let mut toks = header.split_whitespace();
    let problem: Problem = toks
        .next()
        .ok_or_else(|| parse_err(hl, "missing problem"))?
        .parse()
        .map_err(|e: crate::Error| parse_err(hl, e.to_string()))?;
    let t: usize = parse_num(toks.next(), hl, "t")?;
    let max_rep_size: usize = parse_num(toks.next(), hl, "max_rep_size")?;
    let count: usize = parse_num(toks.next(), hl, "row count")?;
    if toks.next().is_some() {
        return Err(parse_err(hl, "trailing tokens in header"));
    }
    let mut rows = BTreeMap::new();
    let mut prev = hl;
    for _ in 0..count {
        let (rl, row) = tagged(lines.next(), "row", prev)?;
        if row.len() != 2 {
            return Err(parse_err(rl, "expected `row members offset`"));
        }
        let members: usize = parse_num(Some(row[0]), rl, "member count")?;
        let rep_offset: i64 = parse_num(Some(row[1]), rl, "offset")?;
        let (ll, labels) = tagged(lines.next(), "labels", rl)?;
        let labels = labels.iter().map(|tok| parse_num(Some(tok), ll, "label")).collect::<Result<Vec<u32>>>()?;
        let (el, edges) = tagged(lines.next(), "edges", ll)?;
        let boundary_edges = edges
            .iter()
            .map(|tok| {
                let (a, b) = tok.split_once('-').ok_or_else(|| parse_err(el, "expected `a-b`"))?;
                Ok((parse_num(Some(a), el, "label")?, parse_num(Some(b), el, "label")?))
            })
            .collect::<Result<Vec<(u32, u32)>>>()?;
        let (sl, sig) = tagged(lines.next(), "sig", el)?;
        let entries = sig
            .iter()
            .map(|&tok| if tok == "_" { Ok(None) } else { parse_num(Some(tok), sl, "entry").map(Some) })
            .collect::<Result<Vec<Option<i64>>>>()?;
        let expected = state_space(problem, labels.len()).map_err(|e| parse_err(sl, e.to_string()))?.len();
        if entries.len() != expected {
            return Err(parse_err(sl, format!("expected {expected} entries, found {}", entries.len())));
        }
        let (g, bl) = parse_block(&mut lines)?;
        let representative = BoundariedGraph::new(g, &bl).map_err(|e| parse_err(sl, e.to_string()))?;
        if representative.label_set() != labels {
            return Err(parse_err(sl, "representative labels differ from the row's"));
        }
        prev = sl;
        let class = SignatureClass { labels, boundary_edges, entries };
        if rows.insert(class, TableRow { representative, rep_offset, members }).is_some() {
            return Err(parse_err(rl, "duplicate row"));
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "content after the last row"));
    }
    Ok(ReplacementTable { problem, t, max_rep_size, rows })
}
