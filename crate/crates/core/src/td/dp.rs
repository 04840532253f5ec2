//! Dynamic programming over tree decompositions.
//!
//! A table maps a state of the current bag to the best cost of a partial
//! solution below it. States pack one 8-bit lane per bag vertex, in sorted
//! bag order, into a `u128`, so bags may hold at most 16 vertices. The
//! rooted decomposition is processed bottom-up; each child table is moved to
//! the parent bag by forgetting and then introducing vertices, and sibling
//! tables are joined. An edge is applied when its first endpoint is
//! forgotten, which happens exactly once. Terminals are added to every bag
//! and never forgotten, which turns the root table into a boundary table.

use std::collections::HashMap;
use std::rc::Rc;

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::problems::Problem;

pub const MAX_DP_WIDTH: usize = 12;
const MAX_LANES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum DpKind {
    /// lanes: 0 out, 1 in; every edge needs an endpoint in
    Cover,
    /// lanes: 0 out, 1 in; no edge inside; maximised
    Independent,
    /// lanes: IN, DOM, UND
    Domination,
    /// lanes: 0 deleted, otherwise forest block id in first-appearance order
    ForestDeletion,
}

pub(crate) const IN: u8 = 1;
pub(crate) const DOM: u8 = 2;
pub(crate) const UND: u8 = 3;

/// Optimum value and a witness set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub value: i64,
    pub witness: Vec<usize>,
}

#[derive(Debug)]
enum W {
    Leaf(usize),
    Pair(Rc<W>, Rc<W>),
}

type Wit = Option<Rc<W>>;

fn wit_add(w: &Wit, v: usize) -> Wit {
    let leaf = Rc::new(W::Leaf(v));
    Some(match w {
        None => leaf,
        Some(w) => Rc::new(W::Pair(w.clone(), leaf)),
    })
}

fn wit_join(a: &Wit, b: &Wit) -> Wit {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(a), Some(b)) => Some(Rc::new(W::Pair(a.clone(), b.clone()))),
    }
}

fn wit_flatten(w: &Wit) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack: Vec<&W> = w.iter().map(|r| r.as_ref()).collect();
    while let Some(x) = stack.pop() {
        match x {
            W::Leaf(v) => out.push(*v),
            W::Pair(a, b) => {
                stack.push(a);
                stack.push(b);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[inline]
fn lane(key: u128, p: usize) -> u8 {
    (key >> (8 * p)) as u8
}

#[inline]
fn set_lane(key: u128, p: usize, val: u8) -> u128 {
    (key & !(0xffu128 << (8 * p))) | ((val as u128) << (8 * p))
}

#[inline]
fn insert_lane(key: u128, p: usize, val: u8) -> u128 {
    let low = key & ((1u128 << (8 * p)) - 1);
    let high = (key >> (8 * p)).checked_shl(8 * (p as u32 + 1)).unwrap_or(0);
    high | ((val as u128) << (8 * p)) | low
}

#[inline]
fn remove_lane(key: u128, p: usize) -> u128 {
    let low = key & ((1u128 << (8 * p)) - 1);
    let high = key.checked_shr(8 * (p as u32 + 1)).unwrap_or(0);
    low | (high << (8 * p))
}

/// Renumbers forest blocks in order of first appearance.
fn normalize_blocks(key: u128, lanes: usize) -> u128 {
    let mut map = [0u8; 256];
    let mut next = 1u8;
    let mut out = 0u128;
    for p in 0..lanes {
        let b = lane(key, p);
        if b == 0 {
            continue;
        }
        if map[b as usize] == 0 {
            map[b as usize] = next;
            next += 1;
        }
        out = set_lane(out, p, map[b as usize]);
    }
    out
}

fn count_blocks(key: u128, lanes: usize) -> usize {
    (0..lanes).map(|p| lane(key, p)).max().unwrap_or(0) as usize
}

type Table = HashMap<u128, (i32, Wit)>;

struct Engine<'a> {
    kind: DpKind,
    g: &'a Graph,
    witness: bool,
    is_terminal: Vec<bool>,
}

impl Engine<'_> {
    fn better(&self, a: i32, b: i32) -> bool {
        match self.kind {
            DpKind::Independent => a > b,
            _ => a < b,
        }
    }

    fn offer(&self, t: &mut Table, key: u128, cost: i32, w: Wit) {
        match t.get(&key) {
            Some((c, _)) if !self.better(cost, *c) => {}
            _ => {
                t.insert(key, (cost, w));
            }
        }
    }

    fn introduce(&self, table: Table, bag: &mut Vec<usize>, v: usize) -> Table {
        let p = bag.binary_search(&v).unwrap_err();
        bag.insert(p, v);
        let lanes = bag.len();
        let mut out = Table::with_capacity(table.len() * 2);
        for (key, (cost, w)) in table {
            let chosen = if self.witness { wit_add(&w, v) } else { None };
            match self.kind {
                DpKind::Cover | DpKind::Independent => {
                    self.offer(&mut out, insert_lane(key, p, 0), cost, w);
                    self.offer(&mut out, insert_lane(key, p, 1), cost + 1, chosen);
                }
                DpKind::Domination => {
                    self.offer(&mut out, insert_lane(key, p, UND), cost, w);
                    self.offer(&mut out, insert_lane(key, p, IN), cost + 1, chosen);
                }
                DpKind::ForestDeletion => {
                    let fresh = count_blocks(key, lanes - 1) as u8 + 1;
                    let kept = normalize_blocks(insert_lane(key, p, fresh), lanes);
                    self.offer(&mut out, kept, cost, w);
                    self.offer(&mut out, insert_lane(key, p, 0), cost + 1, chosen);
                }
            }
        }
        out
    }

    /// Applies edge between bag positions `a` and `b`; `None` rejects the state.
    fn edge(&self, key: u128, a: usize, b: usize, lanes: usize) -> Option<u128> {
        let (x, y) = (lane(key, a), lane(key, b));
        match self.kind {
            DpKind::Cover => (x == 1 || y == 1).then_some(key),
            DpKind::Independent => (x == 0 || y == 0).then_some(key),
            DpKind::Domination => {
                let mut k = key;
                if x == IN && y == UND {
                    k = set_lane(k, b, DOM);
                }
                if y == IN && x == UND {
                    k = set_lane(k, a, DOM);
                }
                Some(k)
            }
            DpKind::ForestDeletion => {
                if x == 0 || y == 0 {
                    return Some(key);
                }
                if x == y {
                    return None;
                }
                let mut k = key;
                for p in 0..lanes {
                    if lane(k, p) == y {
                        k = set_lane(k, p, x);
                    }
                }
                Some(normalize_blocks(k, lanes))
            }
        }
    }

    /// Applies the edges from `v` to the bag vertices accepted by `partner`.
    fn apply_edges(&self, table: Table, bag: &[usize], v: usize, partner: impl Fn(usize) -> bool) -> Table {
        let pv = bag.binary_search(&v).unwrap();
        let partners: Vec<usize> = self
            .g
            .neighbors(v)
            .iter()
            .filter(|&&w| partner(w))
            .filter_map(|w| bag.binary_search(w).ok())
            .collect();
        if partners.is_empty() {
            return table;
        }
        let mut out = Table::with_capacity(table.len());
        'states: for (key, (cost, w)) in table {
            let mut k = key;
            for &pw in &partners {
                match self.edge(k, pv, pw, bag.len()) {
                    Some(next) => k = next,
                    None => continue 'states,
                }
            }
            self.offer(&mut out, k, cost, w);
        }
        out
    }

    fn forget(&self, table: Table, bag: &mut Vec<usize>, v: usize) -> Table {
        let table = self.apply_edges(table, bag, v, |_| true);
        let p = bag.binary_search(&v).unwrap();
        bag.remove(p);
        let lanes = bag.len();
        let mut out = Table::with_capacity(table.len());
        for (key, (cost, w)) in table {
            if self.kind == DpKind::Domination && lane(key, p) == UND {
                continue;
            }
            let mut k = remove_lane(key, p);
            if self.kind == DpKind::ForestDeletion {
                k = normalize_blocks(k, lanes);
            }
            self.offer(&mut out, k, cost, w);
        }
        out
    }

    fn join_class(&self, key: u128, lanes: usize) -> u128 {
        match self.kind {
            DpKind::Cover | DpKind::Independent => key,
            DpKind::Domination => (0..lanes).fold(0, |m, p| m | (((lane(key, p) == IN) as u128) << p)),
            DpKind::ForestDeletion => (0..lanes).fold(0, |m, p| m | (((lane(key, p) == 0) as u128) << p)),
        }
    }

    fn join(&self, a: Table, b: Table, lanes: usize) -> Table {
        let mut groups: HashMap<u128, Vec<(u128, i32, Wit)>> = HashMap::new();
        for (key, (cost, w)) in b {
            groups.entry(self.join_class(key, lanes)).or_default().push((key, cost, w));
        }
        let mut out = Table::new();
        for (k1, (c1, w1)) in a {
            let class = self.join_class(k1, lanes);
            let Some(group) = groups.get(&class) else { continue };
            let shared = match self.kind {
                DpKind::Cover | DpKind::Independent => (0..lanes).filter(|&p| lane(k1, p) == 1).count(),
                DpKind::Domination => (0..lanes).filter(|&p| lane(k1, p) == IN).count(),
                DpKind::ForestDeletion => (0..lanes).filter(|&p| lane(k1, p) == 0).count(),
            } as i32;
            for (k2, c2, w2) in group {
                let Some(k) = self.combine(k1, *k2, lanes) else { continue };
                let w = if self.witness { wit_join(&w1, w2) } else { None };
                self.offer(&mut out, k, c1 + c2 - shared, w);
            }
        }
        out
    }

    fn combine(&self, k1: u128, k2: u128, lanes: usize) -> Option<u128> {
        match self.kind {
            DpKind::Cover | DpKind::Independent => Some(k1),
            DpKind::Domination => {
                let mut k = k1;
                for p in 0..lanes {
                    if lane(k1, p) != IN && (lane(k1, p) == DOM || lane(k2, p) == DOM) {
                        k = set_lane(k, p, DOM);
                    }
                }
                Some(k)
            }
            DpKind::ForestDeletion => {
                // union of two forests on the kept lanes stays acyclic iff
                // the merged block count equals p1 + p2 - kept
                let kept = (0..lanes).filter(|&p| lane(k1, p) != 0).count();
                let (p1, p2) = (count_blocks(k1, lanes), count_blocks(k2, lanes));
                let mut parent: Vec<usize> = (0..=p1 + p2).collect();
                fn find(parent: &mut [usize], x: usize) -> usize {
                    let mut r = x;
                    while parent[r] != r {
                        r = parent[r];
                    }
                    parent[x] = r;
                    r
                }
                for p in 0..lanes {
                    let (a, b) = (lane(k1, p) as usize, lane(k2, p) as usize);
                    if a != 0 {
                        let (ra, rb) = (find(&mut parent, a), find(&mut parent, p1 + b));
                        parent[ra] = rb;
                    }
                }
                let mut k = 0u128;
                let mut roots = Vec::new();
                for p in 0..lanes {
                    let a = lane(k1, p) as usize;
                    if a == 0 {
                        continue;
                    }
                    let r = find(&mut parent, a);
                    let id = match roots.iter().position(|&x| x == r) {
                        Some(i) => i,
                        None => {
                            roots.push(r);
                            roots.len() - 1
                        }
                    };
                    k = set_lane(k, p, id as u8 + 1);
                }
                (roots.len() + kept == p1 + p2).then_some(k)
            }
        }
    }
}

/// Result of a run: state of the terminals (lanes in increasing vertex
/// order) to cost and witness.
pub(crate) struct RootTable {
    pub entries: Vec<(Vec<u8>, i64, Vec<usize>)>,
}

/// Runs the DP with `terminals` kept in every bag. When
/// `skip_terminal_edges` is set, edges between two terminals are ignored.
pub(crate) fn run(
    kind: DpKind,
    g: &Graph,
    td: &TreeDecomposition,
    terminals: &[usize],
    skip_terminal_edges: bool,
    witness: bool,
) -> Result<RootTable> {
    let mut terms = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    let mut is_terminal = vec![false; g.n()];
    for &t in &terms {
        is_terminal[t] = true;
    }
    let eng = Engine { kind, g, witness, is_terminal };
    let mut bags: Vec<Vec<usize>> = td
        .bags()
        .iter()
        .map(|b| {
            let mut b: Vec<usize> = b.iter().copied().filter(|&v| !eng.is_terminal[v]).collect();
            b.extend_from_slice(&terms);
            b.sort_unstable();
            b
        })
        .collect();
    if bags.is_empty() {
        bags.push(terms.clone());
    }
    if let Some(big) = bags.iter().map(|b| b.len()).max().filter(|&l| l > MAX_LANES) {
        return Err(Error::TooLarge { what: "augmented bag", size: big, budget: MAX_LANES });
    }
    let tadj = if td.nodes() == 0 { vec![vec![]] } else { td.tree_adjacency() };
    let k = bags.len();
    // iterative post-order from node 0
    let mut parent = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    let mut stack = vec![0usize];
    let mut seen = vec![false; k];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &tadj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut done: Vec<Option<Table>> = (0..k).map(|_| None).collect();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &x in &order {
        if parent[x] != usize::MAX {
            children[parent[x]].push(x);
        }
    }
    for &x in order.iter().rev() {
        let target = &bags[x];
        let mut acc: Option<Table> = None;
        let mut sources: Vec<(Table, Vec<usize>)> = children[x]
            .iter()
            .map(|&c| (done[c].take().expect("child processed"), bags[c].clone()))
            .collect();
        if sources.is_empty() {
            let mut t = Table::new();
            t.insert(0, (0, None));
            sources.push((t, Vec::new()));
        }
        for (mut table, mut bag) in sources {
            let gone: Vec<usize> = bag.iter().copied().filter(|v| target.binary_search(v).is_err()).collect();
            for v in gone {
                table = eng.forget(table, &mut bag, v);
            }
            let new: Vec<usize> = target.iter().copied().filter(|v| bag.binary_search(v).is_err()).collect();
            for v in new {
                table = eng.introduce(table, &mut bag, v);
            }
            debug_assert_eq!(&bag, target);
            acc = Some(match acc {
                None => table,
                Some(prev) => eng.join(prev, table, target.len()),
            });
        }
        done[x] = acc;
    }
    let mut table = done[0].take().expect("root processed");
    let mut bag = bags[0].clone();
    let rest: Vec<usize> = bag.iter().copied().filter(|&v| !eng.is_terminal[v]).collect();
    for v in rest {
        table = eng.forget(table, &mut bag, v);
    }
    if !skip_terminal_edges {
        for &t in &terms {
            table = eng.apply_edges(table, &bag, t, |w| w > t);
        }
    }
    let lanes = bag.len();
    let mut entries: Vec<(Vec<u8>, i64, Vec<usize>)> = table
        .into_iter()
        .map(|(key, (cost, w))| ((0..lanes).map(|p| lane(key, p)).collect(), cost as i64, wit_flatten(&w)))
        .collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RootTable { entries })
}

/// Optimum of a DP-supported problem over a valid decomposition of width at
/// most [`MAX_DP_WIDTH`], with a witness.
pub fn solve_via_dp(problem: Problem, g: &Graph, td: &TreeDecomposition) -> Result<Solution> {
    let kind = problem
        .dp_kind()
        .ok_or(Error::Unsupported("tree-decomposition DP", problem))?;
    td.validate(g)
        .map_err(|v| Error::InvalidParameter(format!("invalid decomposition: {v}")))?;
    if td.width() > MAX_DP_WIDTH {
        return Err(Error::TooLarge { what: "decomposition width", size: td.width(), budget: MAX_DP_WIDTH });
    }
    let root = run(kind, g, td, &[], false, true)?;
    let (_, value, witness) = root
        .entries
        .into_iter()
        .next()
        .expect("every supported problem is feasible on every graph");
    Ok(Solution { value, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_grid;
    use crate::td::heuristic_decomposition;

    fn solve(p: Problem, g: &Graph) -> i64 {
        solve_via_dp(p, g, &heuristic_decomposition(g)).unwrap().value
    }

    #[test]
    fn lane_helpers() {
        let k = insert_lane(0, 0, 5);
        let k = insert_lane(k, 0, 7);
        assert_eq!((lane(k, 0), lane(k, 1)), (7, 5));
        let k = insert_lane(k, 1, 9);
        assert_eq!((lane(k, 0), lane(k, 1), lane(k, 2)), (7, 9, 5));
        assert_eq!(remove_lane(k, 1), insert_lane(insert_lane(0, 0, 5), 0, 7));
        let mut full = 0u128;
        for p in 0..16 {
            full = insert_lane(full, p, p as u8 + 1);
        }
        assert_eq!(lane(full, 15), 16);
        assert_eq!(lane(remove_lane(full, 15), 14), 15);
        assert_eq!(normalize_blocks(insert_lane(insert_lane(0, 0, 4), 1, 2), 2), insert_lane(insert_lane(0, 0, 1), 1, 2));
    }

    #[test]
    fn small_examples() {
        let g = make_grid(2).unwrap();
        assert_eq!(solve(Problem::VertexCover, &g), 2);
        assert_eq!(solve(Problem::IndependentSet, &Graph::new(1)), 1);
        assert_eq!(solve(Problem::DominatingSet, &make_grid(3).unwrap()), 3);
        assert_eq!(solve(Problem::FeedbackVertexSet, &make_grid(3).unwrap()), 2);
        assert_eq!(solve(Problem::FeedbackVertexSet, &make_grid(2).unwrap()), 1);
    }

    #[test]
    fn rejects_unsupported_and_invalid() {
        let g = make_grid(2).unwrap();
        let td = heuristic_decomposition(&g);
        assert!(matches!(solve_via_dp(Problem::CyclePacking, &g, &td), Err(Error::Unsupported(..))));
        let bad = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        assert!(solve_via_dp(Problem::VertexCover, &g, &bad).is_err());
    }

    #[test]
    fn witnesses_are_feasible() {
        let g = make_grid(3).unwrap();
        for p in [Problem::VertexCover, Problem::IndependentSet, Problem::DominatingSet, Problem::FeedbackVertexSet] {
            let s = solve_via_dp(p, &g, &heuristic_decomposition(&g)).unwrap();
            assert_eq!(s.witness.len() as i64, s.value);
            assert!(p.feasible(&g, &s.witness), "{p}");
        }
    }

    #[test]
    fn terminal_table_for_pendant_leaf() {
        // boundary vertex 0 with pendant leaf 1
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let td = heuristic_decomposition(&g);
        let root = run(DpKind::Cover, &g, &td, &[0], false, false).unwrap();
        let costs: Vec<(Vec<u8>, i64)> = root.entries.iter().map(|(s, c, _)| (s.clone(), *c)).collect();
        assert_eq!(costs, vec![(vec![0], 1), (vec![1], 1)]);
    }
}
