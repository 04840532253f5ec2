//! Tree decompositions: representation, validation, construction from
//! elimination orderings, exact and heuristic treewidth, and the dynamic
//! programming oracle that runs over them.

pub(crate) mod dp;
pub mod exact;
mod heuristic;
pub mod io;

use std::fmt;

pub use dp::{solve_via_dp, Solution, MAX_DP_WIDTH};
pub use exact::{decomposition_of_width, exact_treewidth, exact_treewidth_with_budget, EXACT_BUDGET};
pub use heuristic::{heuristic_decomposition, min_fill_order};

use crate::graph::Graph;

/// Bags indexed by node id; `edges` are the tree edges between node ids.
/// Bags are kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The node graph is not a tree.
    NotATree,
    /// A bag names a vertex the graph does not have.
    UnknownVertex { node: usize, vertex: usize },
    /// (T1) a vertex lies in no bag.
    VertexNotCovered(usize),
    /// (T2) an edge lies in no bag.
    EdgeNotCovered(usize, usize),
    /// (T3) the bags holding a vertex are not connected in the tree.
    Disconnected(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree => write!(f, "decomposition tree is not a tree"),
            Violation::UnknownVertex { node, vertex } => {
                write!(f, "bag {node} names unknown vertex {vertex}")
            }
            Violation::VertexNotCovered(v) => write!(f, "(T1) vertex {v} is in no bag"),
            Violation::EdgeNotCovered(u, v) => write!(f, "(T2) edge {u}-{v} is in no bag"),
            Violation::Disconnected(v) => {
                write!(f, "(T3) bags containing vertex {v} are not connected")
            }
        }
    }
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    /// One bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        if n == 0 {
            return Self::default();
        }
        Self::new(vec![(0..n).collect()], vec![])
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn nodes(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one; zero for the empty decomposition.
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }

    /// Checks (T1)–(T3) and reports the first failure.
    pub fn validate(&self, g: &Graph) -> Result<(), Violation> {
        let k = self.bags.len();
        if k == 0 {
            return match g.n() {
                0 => Ok(()),
                _ => Err(Violation::VertexNotCovered(0)),
            };
        }
        if self.edges.len() != k - 1 || self.edges.iter().any(|&(a, b)| a >= k || b >= k || a == b) {
            return Err(Violation::NotATree);
        }
        let tadj = self.tree_adjacency();
        if reach_nodes(&tadj, 0, |_| true).len() != k {
            return Err(Violation::NotATree);
        }
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (node, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    return Err(Violation::UnknownVertex { node, vertex: v });
                }
                holders[v].push(node);
            }
        }
        if let Some(v) = holders.iter().position(|h| h.is_empty()) {
            return Err(Violation::VertexNotCovered(v));
        }
        for (u, v) in g.edges() {
            let covered = holders[u]
                .iter()
                .any(|&node| self.bags[node].binary_search(&v).is_ok());
            if !covered {
                return Err(Violation::EdgeNotCovered(u, v));
            }
        }
        for (v, h) in holders.iter().enumerate() {
            let inside = |node: usize| self.bags[node].binary_search(&v).is_ok();
            if reach_nodes(&tadj, h[0], inside).len() != h.len() {
                return Err(Violation::Disconnected(v));
            }
        }
        Ok(())
    }

    /// Standard decomposition of an elimination ordering: the bag of `v` is
    /// `v` with its later neighbours in the fill graph, attached to the bag of
    /// the earliest of them. Roots of the resulting forest are chained and
    /// bags contained in a neighbour are merged away.
    pub fn from_elimination_order(g: &Graph, order: &[usize]) -> Self {
        let n = g.n();
        assert_eq!(order.len(), n);
        if n == 0 {
            return Self::default();
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut nb: Vec<std::collections::BTreeSet<usize>> =
            (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
        let mut bags = Vec::with_capacity(n);
        let mut parent = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            let later: Vec<usize> = nb[v].iter().copied().filter(|&w| pos[w] > i).collect();
            for (a, &x) in later.iter().enumerate() {
                for &y in &later[a + 1..] {
                    nb[x].insert(y);
                    nb[y].insert(x);
                }
            }
            if let Some(&p) = later.iter().min_by_key(|&&w| pos[w]) {
                parent[i] = pos[p];
            }
            let mut bag = later;
            bag.push(v);
            bags.push(bag);
        }
        let mut edges = Vec::with_capacity(n - 1);
        let mut last_root = None;
        for i in 0..n {
            if parent[i] == usize::MAX {
                if let Some(r) = last_root {
                    edges.push((r, i));
                }
                last_root = Some(i);
            } else {
                edges.push((i, parent[i]));
            }
        }
        Self::new(bags, edges).compressed()
    }

    /// Merges every bag that is a subset of an adjacent bag into that bag.
    pub fn compressed(&self) -> Self {
        let k = self.bags.len();
        let mut adj: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); k];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut alive = vec![true; k];
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..k {
                if !alive[i] {
                    continue;
                }
                let target = adj[i]
                    .iter()
                    .copied()
                    .find(|&j| is_subset(&self.bags[i], &self.bags[j]));
                if let Some(j) = target {
                    let others: Vec<usize> = adj[i].iter().copied().filter(|&x| x != j).collect();
                    for x in others {
                        adj[x].remove(&i);
                        adj[x].insert(j);
                        adj[j].insert(x);
                    }
                    adj[j].remove(&i);
                    adj[i].clear();
                    alive[i] = false;
                    changed = true;
                }
            }
        }
        let mut id = vec![usize::MAX; k];
        let mut bags = Vec::new();
        for i in 0..k {
            if alive[i] {
                id[i] = bags.len();
                bags.push(self.bags[i].clone());
            }
        }
        let mut edges = Vec::new();
        for i in 0..k {
            for &j in &adj[i] {
                if alive[i] && i < j {
                    edges.push((id[i], id[j]));
                }
            }
        }
        Self::new(bags, edges)
    }

    /// Decomposition of `g[map]` lifted back to ids of the host graph.
    pub fn lifted(&self, map: &[usize]) -> Self {
        let bags = self
            .bags
            .iter()
            .map(|b| b.iter().map(|&v| map[v]).collect())
            .collect();
        Self::new(bags, self.edges.clone())
    }

    /// Disjoint union of decompositions of disjoint graphs, chained into one tree.
    pub fn join_forest(parts: Vec<TreeDecomposition>) -> Self {
        let mut bags = Vec::new();
        let mut edges = Vec::new();
        let mut prev_root: Option<usize> = None;
        for p in parts {
            if p.bags.is_empty() {
                continue;
            }
            let off = bags.len();
            if let Some(r) = prev_root {
                edges.push((r, off));
            }
            prev_root = Some(off);
            edges.extend(p.edges.iter().map(|&(a, b)| (a + off, b + off)));
            bags.extend(p.bags);
        }
        Self::new(bags, edges)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Tree nodes reachable from `start` through nodes accepted by `ok`.
fn reach_nodes(tadj: &[Vec<usize>], start: usize, ok: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; tadj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        out.push(x);
        for &y in &tadj[x] {
            if !seen[y] && ok(y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    out
}

/// Shorthand for `td.validate(g)`.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<(), Violation> {
    td.validate(g)
}
