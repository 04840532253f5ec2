//! Exact treewidth by search over elimination orderings.
//!
//! For a set `S` of already-eliminated vertices, the neighbours of `v` in the
//! elimination graph are `Q(S, v)`: the vertices outside `S ∪ {v}` reachable
//! from `v` through `S`. The width of an ordering is the largest `|Q|` met
//! along it, so whether width `k` is achievable depends on `S` alone and
//! failed sets are memoised. Each component is solved separately, bounded
//! below by minor-min-width and above by min-fill.

use std::collections::HashSet;

use super::heuristic::min_fill_order;
use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::small::{bits, full, reach};
use crate::graph::Graph;

pub const EXACT_BUDGET: usize = 20;

/// Minimum width and an optimal decomposition. Graphs with more than
/// [`EXACT_BUDGET`] vertices are rejected; use
/// [`heuristic_decomposition`](super::heuristic_decomposition) instead.
pub fn exact_treewidth(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    exact_treewidth_with_budget(g, EXACT_BUDGET)
}

pub fn exact_treewidth_with_budget(g: &Graph, budget: usize) -> Result<(usize, TreeDecomposition)> {
    if g.n() > budget.min(64) {
        return Err(Error::TooLarge {
            what: "exact treewidth instance (use heuristic_decomposition)",
            size: g.n(),
            budget,
        });
    }
    let comps = g.components();
    let solved: Vec<(usize, TreeDecomposition)> = crate::par::map(&comps, |comp| {
        let (h, map) = g.induced_subgraph(comp);
        let (w, order) = component_order(&h.masks());
        (w, TreeDecomposition::from_elimination_order(&h, &order).lifted(&map))
    });
    let width = solved.iter().map(|(w, _)| *w).max().unwrap_or(0);
    let td = TreeDecomposition::join_forest(solved.into_iter().map(|(_, td)| td).collect());
    Ok((width, td))
}

/// A decomposition of width at most `k`, or `None` when `tw(g) > k`.
/// Components where min-fill already meets `k` are not searched; the others
/// must have at most 64 vertices.
pub fn decomposition_of_width(g: &Graph, k: usize) -> Result<Option<TreeDecomposition>> {
    let comps = g.components();
    let solved: Vec<Result<Option<TreeDecomposition>>> = crate::par::map(&comps, |comp| {
        let (h, map) = g.induced_subgraph(comp);
        let order = min_fill_order(&h);
        let td = TreeDecomposition::from_elimination_order(&h, &order);
        if td.width() <= k {
            return Ok(Some(td.lifted(&map)));
        }
        if h.n() > 64 {
            return Err(Error::TooLarge { what: "bounded-width decomposition component", size: h.n(), budget: 64 });
        }
        let adj = h.masks();
        if !treewidth_at_most_masks(&adj, k) {
            return Ok(None);
        }
        let order = decide(&adj, k).expect("treewidth test and search agree");
        Ok(Some(TreeDecomposition::from_elimination_order(&h, &order).lifted(&map)))
    });
    let mut parts = Vec::with_capacity(solved.len());
    for s in solved {
        match s? {
            Some(td) => parts.push(td),
            None => return Ok(None),
        }
    }
    Ok(Some(TreeDecomposition::join_forest(parts)))
}

/// Exact width of a connected graph and an ordering achieving it.
fn component_order(adj: &[u64]) -> (usize, Vec<usize>) {
    let n = adj.len();
    let g = masks_graph(adj);
    let heuristic = min_fill_order(&g);
    let ub = order_width(adj, &heuristic);
    let lb = minor_min_width(adj, full(n));
    for k in lb..ub {
        if let Some(order) = decide(adj, k) {
            return (k, order);
        }
    }
    (ub, heuristic)
}

/// Whether `tw <= k`, for graphs given as masks (at most 64 vertices).
pub(crate) fn treewidth_at_most_masks(adj: &[u64], k: usize) -> bool {
    let n = adj.len();
    if n <= k + 1 {
        return true;
    }
    let all = full(n);
    match k {
        0 => adj.iter().all(|&r| r == 0),
        1 => crate::graph::small::is_forest(adj, all),
        2 => series_parallel_reducible(adj),
        _ => {
            let mut left = all;
            while left != 0 {
                let comp = reach(adj, all, left & left.wrapping_neg());
                left &= !comp;
                if comp.count_ones() as usize > k + 1 {
                    let (sub, _) = sub_masks(adj, comp);
                    if minor_min_width(&sub, full(sub.len())) > k {
                        return false;
                    }
                    if order_width(&sub, &min_fill_order(&masks_graph(&sub))) > k && decide(&sub, k).is_none() {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Treewidth at most 2 test: repeatedly drop vertices of degree <= 1 and
/// suppress vertices of degree 2; the graph has treewidth <= 2 iff this
/// empties it.
fn series_parallel_reducible(adj: &[u64]) -> bool {
    let mut a = adj.to_vec();
    let mut alive = full(a.len());
    loop {
        let Some(v) = bits(alive).find(|&v| (a[v] & alive).count_ones() <= 2) else {
            return alive == 0;
        };
        let nb = a[v] & alive;
        alive &= !(1u64 << v);
        if nb.count_ones() == 2 {
            let mut it = bits(nb);
            let (x, y) = (it.next().unwrap(), it.next().unwrap());
            a[x] |= 1 << y;
            a[y] |= 1 << x;
        }
    }
}

fn sub_masks(adj: &[u64], mask: u64) -> (Vec<u64>, Vec<usize>) {
    let map: Vec<usize> = bits(mask).collect();
    let mut pos = [usize::MAX; 64];
    for (i, &v) in map.iter().enumerate() {
        pos[v] = i;
    }
    let sub = map
        .iter()
        .map(|&v| bits(adj[v] & mask).fold(0u64, |m, w| m | (1 << pos[w])))
        .collect();
    (sub, map)
}

fn masks_graph(adj: &[u64]) -> Graph {
    let mut g = Graph::new(adj.len());
    for (u, &row) in adj.iter().enumerate() {
        for w in bits(row) {
            if w > u {
                g.add_edge(u, w).expect("valid mask row");
            }
        }
    }
    g
}

/// `Q(S, v)`.
#[inline]
fn q_set(adj: &[u64], s: u64, v: usize) -> u64 {
    let vb = 1u64 << v;
    let r = reach(adj, s | vb, vb);
    let mut nb = 0;
    for u in bits(r) {
        nb |= adj[u];
    }
    nb & !s & !vb
}

/// Width of an elimination ordering.
pub(crate) fn order_width(adj: &[u64], order: &[usize]) -> usize {
    let mut s = 0u64;
    let mut w = 0;
    for &v in order {
        w = w.max(q_set(adj, s, v).count_ones() as usize);
        s |= 1 << v;
    }
    w
}

/// Minor-min-width: contract a minimum-degree vertex into its
/// minimum-degree neighbour, recording the largest minimum degree seen.
pub(crate) fn minor_min_width(adj: &[u64], mask: u64) -> usize {
    let mut a: Vec<u64> = adj.iter().map(|&r| r & mask).collect();
    let mut alive = mask;
    let mut lb = 0;
    while alive.count_ones() > 1 {
        let v = bits(alive).min_by_key(|&v| a[v].count_ones()).unwrap();
        let d = a[v].count_ones() as usize;
        lb = lb.max(d);
        alive &= !(1u64 << v);
        if d == 0 {
            continue;
        }
        let u = bits(a[v]).min_by_key(|&u| a[u].count_ones()).unwrap();
        let nb = a[v] & !(1u64 << u);
        a[u] |= nb;
        for w in bits(nb) {
            a[w] |= 1 << u;
        }
        for w in bits(a[v]) {
            a[w] &= !(1u64 << v);
        }
        a[v] = 0;
    }
    lb
}

/// An elimination ordering of width at most `k`, if one exists.
fn decide(adj: &[u64], k: usize) -> Option<Vec<usize>> {
    let mut failed = HashSet::new();
    let mut order = Vec::with_capacity(adj.len());
    if search(adj, k, 0, &mut failed, &mut order) {
        Some(order)
    } else {
        None
    }
}

fn search(adj: &[u64], k: usize, s: u64, failed: &mut HashSet<u64>, order: &mut Vec<usize>) -> bool {
    let all = full(adj.len());
    let rest = all & !s;
    if rest.count_ones() as usize <= k + 1 {
        order.extend(bits(rest));
        return true;
    }
    if failed.contains(&s) {
        return false;
    }
    // elimination-graph neighbourhoods of the remaining vertices
    let mut q = [0u64; 64];
    for v in bits(rest) {
        q[v] = q_set(adj, s, v);
    }
    // a simplicial vertex of low degree can always be eliminated first
    let simplicial = bits(rest).find(|&v| {
        (q[v].count_ones() as usize) <= k && bits(q[v]).all(|a| (q[v] & !q[a] & !(1u64 << a)) == 0)
    });
    let mut cands: Vec<usize> = match simplicial {
        Some(v) => vec![v],
        None => {
            if minor_min_width(&q[..adj.len()], rest) > k {
                failed.insert(s);
                return false;
            }
            bits(rest).filter(|&v| q[v].count_ones() as usize <= k).collect()
        }
    };
    cands.sort_by_key(|&v| (q[v].count_ones(), v));
    for v in cands {
        order.push(v);
        if search(adj, k, s | (1 << v), failed, order) {
            return true;
        }
        order.pop();
    }
    failed.insert(s);
    false
}
