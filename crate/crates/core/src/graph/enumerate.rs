//! Isomorphism-free enumeration of small graphs and of their labellings.
//!
//! Graphs are grown one vertex at a time: every graph on `n` vertices is
//! obtained from one on `n-1` vertices by attaching a new vertex to some
//! subset. The filters offered here (connectivity, bounded treewidth) are
//! closed under deleting a suitable vertex, so level-wise growth with
//! canonical deduplication reaches every member.

use std::collections::HashMap;

use super::boundaried::BoundariedGraph;
use super::canon::{canonical_masks, CanonCode, MAX_CANON_N};
use super::small::bits;
use super::Graph;
use crate::par;
use crate::td::exact::treewidth_at_most_masks;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GraphFilter {
    pub connected: bool,
    pub max_treewidth: Option<usize>,
}

impl GraphFilter {
    pub const ALL: GraphFilter = GraphFilter { connected: false, max_treewidth: None };
    pub const CONNECTED: GraphFilter = GraphFilter { connected: true, max_treewidth: None };

    pub fn connected_tw(t: usize) -> Self {
        GraphFilter { connected: true, max_treewidth: Some(t) }
    }
}

fn relabel(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let mut pos = vec![0; adj.len()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut out = vec![0u64; adj.len()];
    for (v, &row) in adj.iter().enumerate() {
        out[pos[v]] = bits(row).fold(0, |m, w| m | (1 << pos[w]));
    }
    out
}

fn masks_to_graph(adj: &[u64]) -> Graph {
    let mut g = Graph::new(adj.len());
    for (u, &row) in adj.iter().enumerate() {
        for w in bits(row) {
            if w > u {
                g.add_edge(u, w).expect("mask rows are in range");
            }
        }
    }
    g
}

/// All graphs with `0..=n_max` vertices passing `filter`, up to isomorphism.
/// `result[n]` lists the graphs on `n` vertices, each in canonical labelling
/// and sorted by canonical code.
pub fn enumerate_graphs(n_max: usize, filter: GraphFilter) -> Vec<Vec<Graph>> {
    assert!(n_max <= MAX_CANON_N);
    let mut levels: Vec<Vec<Vec<u64>>> = vec![vec![vec![]]];
    for n in 1..=n_max {
        let prev = &levels[n - 1];
        let lo = if filter.connected && n > 1 { 1u64 } else { 0 };
        let found: Vec<Vec<(CanonCode, Vec<u64>)>> = par::map(prev, |adj| {
            let mut local = Vec::new();
            for sub in lo..(1u64 << (n - 1)) {
                let mut grown = adj.clone();
                for w in bits(sub) {
                    grown[w] |= 1 << (n - 1);
                }
                grown.push(sub);
                let (code, order) = canonical_masks(&grown, &vec![0; n]);
                local.push((code, relabel(&grown, &order)));
            }
            local
        });
        let mut unique: HashMap<CanonCode, Vec<u64>> = HashMap::new();
        for (code, adj) in found.into_iter().flatten() {
            unique.entry(code).or_insert(adj);
        }
        let mut level: Vec<(CanonCode, Vec<u64>)> = unique.into_iter().collect();
        level.sort_by(|a, b| a.0.cmp(&b.0));
        let keep = par::map(&level, |(_, adj)| match filter.max_treewidth {
            Some(t) => treewidth_at_most_masks(adj, t),
            None => true,
        });
        levels.push(
            level
                .into_iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|((_, adj), _)| adj)
                .collect(),
        );
    }
    levels
        .iter()
        .map(|lv| lv.iter().map(|adj| masks_to_graph(adj)).collect())
        .collect()
}

/// Every way to place labels `1..=j` injectively on `g`, up to isomorphism
/// of the labelled graph, ordered by labelled canonical code.
pub fn labelled_variants(g: &Graph, j: usize) -> Vec<BoundariedGraph> {
    let n = g.n();
    if j > n {
        return vec![];
    }
    let adj = g.masks();
    let mut seen: HashMap<CanonCode, Vec<usize>> = HashMap::new();
    let mut placement = Vec::with_capacity(j);
    place(&adj, j, &mut placement, &mut seen);
    let mut out: Vec<(CanonCode, Vec<usize>)> = seen.into_iter().collect();
    out.sort();
    out.into_iter()
        .map(|(_, p)| BoundariedGraph::with_boundary(g.clone(), &p).expect("placement is injective"))
        .collect()
}

/// Colours for a labelled graph: label for boundary vertices, 0 elsewhere.
pub(crate) fn label_colors(n: usize, placement: &[usize]) -> Vec<u32> {
    let mut c = vec![0u32; n];
    for (i, &v) in placement.iter().enumerate() {
        c[v] = i as u32 + 1;
    }
    c
}

fn place(adj: &[u64], j: usize, placement: &mut Vec<usize>, seen: &mut HashMap<CanonCode, Vec<usize>>) {
    if placement.len() == j {
        let colors = label_colors(adj.len(), placement);
        let (code, _) = canonical_masks(adj, &colors);
        seen.entry(code).or_insert_with(|| placement.clone());
        return;
    }
    for v in 0..adj.len() {
        if !placement.contains(&v) {
            placement.push(v);
            place(adj, j, placement, seen);
            placement.pop();
        }
    }
}
