//! Simple undirected graphs with dense vertex ids `0..n`.
//!
//! Every operation that removes or merges vertices hands back a fresh graph
//! whose ids are renumbered densely in increasing order of the surviving
//! original ids, together with the map from new ids to old ones.

mod boundaried;
pub mod canon;
pub mod enumerate;
mod generators;
pub mod io;
pub mod minor;
pub(crate) mod small;

pub use boundaried::{glue, AnnotatedBoundariedGraph, BoundariedGraph, Glued};
pub use generators::{grid_vertex, make_gamma, make_grid};
pub use minor::{contains_grid_minor, minor_op, MinorOp};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// A pair of vertex sets `(a1, a2)` covering the graph with no edge between
/// `a1 \ a2` and `a2 \ a1`. Both sides are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
}

impl Separation {
    pub fn separator(&self) -> Vec<usize> {
        intersect_sorted(&self.a1, &self.a2)
    }

    pub fn order(&self) -> usize {
        self.separator().len()
    }

    /// `a1 \ a2`
    pub fn left(&self) -> Vec<usize> {
        difference_sorted(&self.a1, &self.a2)
    }

    /// `a2 \ a1`
    pub fn right(&self) -> Vec<usize> {
        difference_sorted(&self.a2, &self.a1)
    }

    /// Checks the covering and no-crossing-edge conditions.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let n = g.n();
        let mut side = vec![0u8; n];
        for &v in &self.a1 {
            if v >= n {
                return false;
            }
            side[v] |= 1;
        }
        for &v in &self.a2 {
            if v >= n {
                return false;
            }
            side[v] |= 2;
        }
        if side.iter().any(|&s| s == 0) {
            return false;
        }
        g.edges()
            .all(|(u, v)| !matches!((side[u], side[v]), (1, 2) | (2, 1)))
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `uv`; a repeated edge is ignored, a loop or unknown endpoint is an error.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        if u >= n {
            return Err(Error::MissingVertex(u));
        }
        if v >= n {
            return Err(Error::MissingVertex(v));
        }
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(true)
            }
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Induced subgraph on `keep`; returns the subgraph and the map new id -> old id.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut map: Vec<usize> = keep.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut inv = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        let mut h = Graph::new(map.len());
        for (i, &v) in map.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = inv[w];
                if j != usize::MAX && j > i {
                    h.adj[i].push(j);
                    h.adj[j].push(i);
                    h.m += 1;
                }
            }
        }
        for nb in &mut h.adj {
            nb.sort_unstable();
        }
        (h, map)
    }

    /// `G - remove`, with the map new id -> old id.
    pub fn remove_vertices(&self, remove: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in remove {
            if v < self.n() {
                gone[v] = true;
            }
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Open neighborhood `N(S)`: vertices outside `s` adjacent to `s`.
    pub fn open_neighborhood(&self, s: &[usize]) -> Vec<usize> {
        let inside = self.indicator(s);
        let mut out = vec![false; self.n()];
        for &v in s {
            for &w in &self.adj[v] {
                if !inside[w] {
                    out[w] = true;
                }
            }
        }
        (0..self.n()).filter(|&v| out[v]).collect()
    }

    /// Closed neighborhood `N[S]`.
    pub fn closed_neighborhood(&self, s: &[usize]) -> Vec<usize> {
        let mut all = self.open_neighborhood(s);
        all.extend_from_slice(s);
        all.sort_unstable();
        all.dedup();
        all
    }

    /// `∂(S)`: vertices of `s` with a neighbor outside `s`.
    pub fn boundary(&self, s: &[usize]) -> Vec<usize> {
        let inside = self.indicator(s);
        let mut out: Vec<usize> = s
            .iter()
            .copied()
            .filter(|&v| self.adj[v].iter().any(|&w| !inside[w]))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn indicator(&self, s: &[usize]) -> Vec<bool> {
        let mut ind = vec![false; self.n()];
        for &v in s {
            ind[v] = true;
        }
        ind
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&[])
    }

    /// Components of `G - blocked`.
    pub fn components_avoiding(&self, blocked: &[usize]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = self.indicator(blocked);
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|nb| nb.iter().map(|&w| w + off).collect::<Vec<_>>()),
        );
        Graph {
            adj,
            m: self.m + other.m,
        }
    }

    /// Graph with the vertices renamed by `perm` (`perm[old] = new`).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut h = Graph::new(self.n());
        for (u, v) in self.edges() {
            h.add_edge(perm[u], perm[v]).expect("permutation keeps edges valid");
        }
        h
    }

    /// Adjacency rows as bit masks; only for graphs with at most 64 vertices.
    pub(crate) fn masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "bit-mask view needs at most 64 vertices");
        self.adj
            .iter()
            .map(|nb| nb.iter().fold(0u64, |acc, &w| acc | (1u64 << w)))
            .collect()
    }
}

pub(crate) fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn difference_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut j = 0;
    let mut out = Vec::new();
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn simple_graph_semantics() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert_eq!(g.m(), 1);
        assert!(g.add_edge(1, 1).is_err());
        assert_eq!(g.add_edge(0, 3), Err(Error::MissingVertex(3)));
    }

    #[test]
    fn neighborhoods_and_boundary() {
        let g = path(6);
        assert_eq!(g.boundary(&[0, 1, 2]), vec![2]);
        assert_eq!(g.open_neighborhood(&[0, 1, 2]), vec![3]);
        assert_eq!(g.closed_neighborhood(&[2]), vec![1, 2, 3]);
        assert!(g.boundary(&[0, 1, 2, 3, 4, 5]).is_empty());
    }

    #[test]
    fn induced_and_components() {
        let g = path(5);
        let (h, map) = g.remove_vertices(&[2]);
        assert_eq!(h.n(), 4);
        assert_eq!(map, vec![0, 1, 3, 4]);
        assert_eq!(h.components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(h.is_forest());
        assert!(!h.is_connected());
    }

    #[test]
    fn separation_validity() {
        let g = path(3);
        let ok = Separation { a1: vec![0, 1], a2: vec![1, 2] };
        assert!(ok.is_valid_for(&g));
        assert_eq!(ok.order(), 1);
        let bad = Separation { a1: vec![0, 1], a2: vec![2] };
        assert!(!bad.is_valid_for(&g));
    }
}
