//! Minor operations and a small-instance grid-minor test.

use std::collections::HashSet;

use super::canon::{canonical_masks, CanonCode};
use super::small::{bits, components_in, edges_in, full};
use super::{make_grid, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorOp {
    Contract(usize, usize),
    DeleteEdge(usize, usize),
    DeleteVertex(usize),
}

/// Applies one minor operation. After a contraction of `uv` the merged vertex
/// takes the id `min(u, v)`; removed vertices shift higher ids down by one.
pub fn minor_op(g: &Graph, op: MinorOp) -> Result<Graph> {
    match op {
        MinorOp::DeleteVertex(v) => {
            if v >= g.n() {
                return Err(Error::MissingVertex(v));
            }
            Ok(g.remove_vertices(&[v]).0)
        }
        MinorOp::DeleteEdge(u, v) => {
            if !g.has_edge(u, v) {
                return Err(Error::MissingEdge(u, v));
            }
            let edges: Vec<_> = g
                .edges()
                .filter(|&e| e != (u.min(v), u.max(v)))
                .collect();
            Graph::from_edges(g.n(), &edges)
        }
        MinorOp::Contract(u, v) => {
            if !g.has_edge(u, v) {
                return Err(Error::MissingEdge(u, v));
            }
            let (keep, gone) = (u.min(v), u.max(v));
            let id = |w: usize| {
                let w = if w == gone { keep } else { w };
                if w > gone {
                    w - 1
                } else {
                    w
                }
            };
            let mut h = Graph::new(g.n() - 1);
            for (a, b) in g.edges() {
                let (a, b) = (id(a), id(b));
                if a != b {
                    h.add_edge(a, b)?;
                }
            }
            Ok(h)
        }
    }
}

pub const GRID_MINOR_BUDGET: usize = 14;

/// Whether `⊞_t` is a minor of `g`, for `t <= 3` and at most 14 vertices.
pub fn contains_grid_minor(g: &Graph, t: usize) -> Result<bool> {
    contains_grid_minor_with_budget(g, t, GRID_MINOR_BUDGET)
}

pub fn contains_grid_minor_with_budget(g: &Graph, t: usize, budget: usize) -> Result<bool> {
    if t == 0 || t > 3 {
        return Err(Error::InvalidParameter("grid-minor test supports 1 <= t <= 3".into()));
    }
    if g.n() > budget.min(16) {
        return Err(Error::TooLarge { what: "grid-minor instance", size: g.n(), budget });
    }
    if t == 1 {
        return Ok(g.n() >= 1);
    }
    let pattern = make_grid(t)?.masks();
    let mut search = MinorSearch {
        pattern,
        cyclomatic: (t - 1) * (t - 1),
        failed: HashSet::new(),
    };
    Ok(search.contains(g.masks()))
}

struct MinorSearch {
    pattern: Vec<u64>,
    cyclomatic: usize,
    failed: HashSet<CanonCode>,
}

fn strip_low_degree(mut adj: Vec<u64>) -> Vec<u64> {
    // vertices of degree <= 1 never help to model a graph of minimum degree 2
    loop {
        let alive = full(adj.len());
        let Some(v) = (0..adj.len()).find(|&v| (adj[v] & alive).count_ones() <= 1) else {
            return adj;
        };
        adj = delete(&adj, v);
    }
}

fn delete(adj: &[u64], v: usize) -> Vec<u64> {
    let low = (1u64 << v) - 1;
    adj.iter()
        .enumerate()
        .filter(|&(w, _)| w != v)
        .map(|(_, &row)| (row & low) | ((row >> 1) & !low))
        .collect()
}

fn contract(adj: &[u64], u: usize, v: usize) -> Vec<u64> {
    let (keep, gone) = (u.min(v), u.max(v));
    let mut a = adj.to_vec();
    a[keep] |= a[gone];
    for w in bits(a[gone]) {
        a[w] |= 1 << keep;
    }
    for row in a.iter_mut() {
        *row &= !(1u64 << gone);
    }
    a[keep] &= !(1u64 << keep);
    delete(&a, gone)
}

impl MinorSearch {
    fn contains(&mut self, adj: Vec<u64>) -> bool {
        let adj = strip_low_degree(adj);
        let n = adj.len();
        let np = self.pattern.len();
        if n < np {
            return false;
        }
        let all = full(n);
        let m = edges_in(&adj, all) as usize;
        let c = components_in(&adj, all) as usize;
        if m + c < n + self.cyclomatic {
            return false;
        }
        let (code, _) = canonical_masks(&adj, &vec![0; n]);
        if self.failed.contains(&code) {
            return false;
        }
        if has_subgraph(&adj, &self.pattern) {
            return true;
        }
        if n > np {
            for v in 0..n {
                if self.contains(delete(&adj, v)) {
                    return true;
                }
            }
            for u in 0..n {
                for v in bits(adj[u]) {
                    if v > u && self.contains(contract(&adj, u, v)) {
                        return true;
                    }
                }
            }
        }
        self.failed.insert(code);
        false
    }
}

/// Whether `pattern` is isomorphic to a (not necessarily induced) subgraph of `host`.
fn has_subgraph(host: &[u64], pattern: &[u64]) -> bool {
    let order = bfs_order(pattern);
    let mut image = vec![usize::MAX; pattern.len()];
    embed(host, pattern, &order, 0, &mut image, 0)
}

fn bfs_order(adj: &[u64]) -> Vec<usize> {
    let mut order = Vec::with_capacity(adj.len());
    let mut seen = 0u64;
    for s in 0..adj.len() {
        if seen >> s & 1 == 1 {
            continue;
        }
        seen |= 1 << s;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            for w in bits(adj[order[i]] & !seen) {
                seen |= 1 << w;
                order.push(w);
            }
            i += 1;
        }
    }
    order
}

fn embed(host: &[u64], pattern: &[u64], order: &[usize], k: usize, image: &mut [usize], used: u64) -> bool {
    if k == order.len() {
        return true;
    }
    let p = order[k];
    let need = pattern[p].count_ones();
    let mut cand = full(host.len()) & !used;
    for q in bits(pattern[p]) {
        if image[q] != usize::MAX {
            cand &= host[image[q]];
        }
    }
    for h in bits(cand) {
        if host[h].count_ones() < need {
            continue;
        }
        image[p] = h;
        if embed(host, pattern, order, k + 1, image, used | (1 << h)) {
            return true;
        }
        image[p] = usize::MAX;
    }
    false
}
