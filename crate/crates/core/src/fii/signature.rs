//! Boundary signatures: for each boundary state, the best cost of a partial
//! solution of the whole boundaried graph, normalised by its best value.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::small::{bits, full, mask_of};
use crate::graph::{BoundariedGraph, Graph};
use crate::problems::{Objective, Problem};
use crate::td::dp::{self, DpKind, DOM, IN, UND};
use crate::td::{heuristic_decomposition, MAX_DP_WIDTH};

/// Largest graph whose signature is computed by subset enumeration.
pub const BRUTE_SIGNATURE_BUDGET: usize = 16;
/// Below this size subset enumeration is faster than the DP.
const BRUTE_PREFERRED: usize = 12;

/// Domination state "needs nothing from inside": dominated or not.
pub const NEED: u8 = UND;

/// The part of a signature that decides equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignatureClass {
    pub labels: Vec<u32>,
    /// Boundary edges as label pairs; kept for the forest-deletion problems,
    /// whose states ignore them, and empty otherwise.
    pub boundary_edges: Vec<(u32, u32)>,
    /// Normalised cost per state in [`state_space`] order; `None` is ⊥.
    pub entries: Vec<Option<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub problem: Problem,
    pub class: SignatureClass,
    /// Best value over all states, subtracted during normalisation.
    pub offset: i64,
}

pub(crate) fn kind_of(p: Problem) -> Result<DpKind> {
    p.dp_kind().ok_or(Error::Unsupported("boundary signatures", p))
}

/// Boundary states for `j` boundary vertices in canonical order, one lane
/// per label in increasing label order.
///
/// * cover and independence: `0` out, `1` in;
/// * domination: `IN`, `DOM` (dominated from inside), `NEED` (no demand);
/// * forest deletion: `0` deleted, otherwise a block id of the partition of
///   kept boundary vertices, numbered by first appearance.
pub fn state_space(p: Problem, j: usize) -> Result<Vec<Vec<u8>>> {
    let kind = kind_of(p)?;
    let (lo, hi) = match kind {
        DpKind::Cover | DpKind::Independent => (0u8, 1u8),
        DpKind::Domination => (IN, NEED),
        DpKind::ForestDeletion => (0, j as u8),
    };
    let mut out = Vec::new();
    let mut cur = vec![lo; j];
    loop {
        if kind != DpKind::ForestDeletion || is_restricted_growth(&cur) {
            out.push(cur.clone());
        }
        let mut i = j;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < hi {
                cur[i] += 1;
                for x in &mut cur[i + 1..] {
                    *x = lo;
                }
                break;
            }
        }
    }
}

fn is_restricted_growth(s: &[u8]) -> bool {
    let mut max = 0;
    for &x in s {
        if x > max + 1 {
            return false;
        }
        max = max.max(x);
    }
    true
}

/// Renumbers nonzero block ids by first appearance.
fn renumber(s: &mut [u8]) {
    let mut map = [0u8; 256];
    let mut next = 0;
    for x in s.iter_mut().filter(|x| **x != 0) {
        if map[*x as usize] == 0 {
            next += 1;
            map[*x as usize] = next;
        }
        *x = map[*x as usize];
    }
}

/// Signature of `bg` for `p`. Small graphs use subset enumeration, larger
/// ones the DP over a min-fill decomposition with the boundary in every bag.
pub fn compute_signature(p: Problem, bg: &BoundariedGraph) -> Result<Signature> {
    let kind = kind_of(p)?;
    let raw = if bg.n() <= BRUTE_PREFERRED {
        raw_brute(kind, bg)?
    } else {
        match raw_dp(kind, bg) {
            Ok(raw) => raw,
            Err(Error::TooLarge { .. }) if bg.n() <= BRUTE_SIGNATURE_BUDGET => raw_brute(kind, bg)?,
            Err(e) => return Err(e),
        }
    };
    Ok(finish(p, kind, bg, raw))
}

/// Signature by subset enumeration only; graphs of at most
/// [`BRUTE_SIGNATURE_BUDGET`] vertices.
pub fn compute_signature_brute(p: Problem, bg: &BoundariedGraph) -> Result<Signature> {
    let kind = kind_of(p)?;
    Ok(finish(p, kind, bg, raw_brute(kind, bg)?))
}

/// Signature by the DP only.
pub fn compute_signature_dp(p: Problem, bg: &BoundariedGraph) -> Result<Signature> {
    let kind = kind_of(p)?;
    Ok(finish(p, kind, bg, raw_dp(kind, bg)?))
}

/// `c = offset(g2) − offset(g1)` when the classes agree. Then
/// `OPT(g1 ⊕ F) = OPT(g2 ⊕ F) − c` for every context `F`.
pub fn test_equivalence(p: Problem, g1: &BoundariedGraph, g2: &BoundariedGraph) -> Result<Option<i64>> {
    if g1.label_set() != g2.label_set() {
        return Err(Error::InvalidParameter(format!(
            "label sets differ: {:?} vs {:?}",
            g1.label_set(),
            g2.label_set()
        )));
    }
    let (s1, s2) = (compute_signature(p, g1)?, compute_signature(p, g2)?);
    Ok((s1.class == s2.class).then_some(s2.offset - s1.offset))
}

type Raw = HashMap<Vec<u8>, i64>;

fn better(kind: DpKind, a: i64, b: i64) -> bool {
    if kind == DpKind::Independent {
        a > b
    } else {
        a < b
    }
}

fn offer(kind: DpKind, raw: &mut Raw, state: Vec<u8>, cost: i64) {
    match raw.get(&state) {
        Some(&c) if !better(kind, cost, c) => {}
        _ => {
            raw.insert(state, cost);
        }
    }
}

fn raw_brute(kind: DpKind, bg: &BoundariedGraph) -> Result<Raw> {
    let n = bg.n();
    if n > BRUTE_SIGNATURE_BUDGET {
        return Err(Error::TooLarge { what: "signature by enumeration", size: n, budget: BRUTE_SIGNATURE_BUDGET });
    }
    let adj = bg.graph().masks();
    let boundary = bg.boundary();
    let bmask = mask_of(&boundary);
    // adjacency without boundary-boundary edges
    let inner: Vec<u64> = (0..n)
        .map(|v| if bmask >> v & 1 == 1 { adj[v] & !bmask } else { adj[v] })
        .collect();
    let mut raw = Raw::new();
    for s in 0..=full(n) {
        let cost = s.count_ones() as i64;
        let state: Option<Vec<u8>> = match kind {
            DpKind::Cover => (0..n)
                .all(|v| s >> v & 1 == 1 || adj[v] & !s == 0)
                .then(|| boundary.iter().map(|&v| (s >> v & 1) as u8).collect()),
            DpKind::Independent => bits(s)
                .all(|v| adj[v] & s == 0)
                .then(|| boundary.iter().map(|&v| (s >> v & 1) as u8).collect()),
            DpKind::Domination => (0..n)
                .filter(|v| bmask >> v & 1 == 0)
                .all(|v| s >> v & 1 == 1 || adj[v] & s != 0)
                .then(|| {
                    boundary
                        .iter()
                        .map(|&v| match (s >> v & 1 == 1, adj[v] & s != 0) {
                            (true, _) => IN,
                            (false, true) => DOM,
                            (false, false) => UND,
                        })
                        .collect()
                }),
            DpKind::ForestDeletion => {
                let keep = full(n) & !s;
                crate::graph::small::is_forest(&inner, keep).then(|| {
                    let mut st: Vec<u8> = boundary
                        .iter()
                        .map(|&v| {
                            if s >> v & 1 == 1 {
                                0
                            } else {
                                // block named by its lowest vertex, renumbered below
                                (crate::graph::small::reach(&inner, keep, 1 << v).trailing_zeros() + 1) as u8
                            }
                        })
                        .collect();
                    renumber(&mut st);
                    st
                })
            }
        };
        if let Some(st) = state {
            offer(kind, &mut raw, st, cost);
        }
    }
    Ok(raw)
}

fn raw_dp(kind: DpKind, bg: &BoundariedGraph) -> Result<Raw> {
    let g: &Graph = bg.graph();
    let td = heuristic_decomposition(g);
    if td.width() > MAX_DP_WIDTH {
        return Err(Error::TooLarge { what: "signature decomposition width", size: td.width(), budget: MAX_DP_WIDTH });
    }
    let boundary = bg.boundary();
    let table = dp::run(kind, g, &td, &boundary, kind == DpKind::ForestDeletion, false)?;
    // lanes come in vertex order; move them to label order
    let mut sorted = boundary.clone();
    sorted.sort_unstable();
    let lane_of: Vec<usize> = boundary.iter().map(|v| sorted.binary_search(v).unwrap()).collect();
    let mut raw = Raw::new();
    for (lanes, cost, _) in table.entries {
        let mut st: Vec<u8> = lane_of.iter().map(|&p| lanes[p]).collect();
        if kind == DpKind::ForestDeletion {
            renumber(&mut st);
        }
        offer(kind, &mut raw, st, cost);
    }
    Ok(raw)
}

fn finish(p: Problem, kind: DpKind, bg: &BoundariedGraph, raw: Raw) -> Signature {
    let labels = bg.label_set();
    let j = labels.len();
    let states = state_space(p, j).expect("kind checked");
    let values: Vec<Option<i64>> = states
        .iter()
        .map(|s| match kind {
            DpKind::Domination => domination_value(&raw, s),
            _ => raw.get(s).copied(),
        })
        .collect();
    let maximize = p.objective() == Objective::Maximize;
    let defined = values.iter().flatten().copied();
    let offset = if maximize { defined.max() } else { defined.min() }.unwrap_or(0);
    let cap = 2 * p.separability(j) as i64;
    let entries = values
        .into_iter()
        .map(|v| v.map(|v| (v - offset).abs()).filter(|&d| d <= cap))
        .collect();
    let boundary_edges = if kind == DpKind::ForestDeletion {
        let g = bg.graph();
        let lab: Vec<(u32, usize)> = bg.labelled().collect();
        let mut e = Vec::new();
        for (i, &(l1, v1)) in lab.iter().enumerate() {
            for &(l2, v2) in &lab[i + 1..] {
                if g.has_edge(v1, v2) {
                    e.push((l1, l2));
                }
            }
        }
        e
    } else {
        Vec::new()
    };
    Signature { problem: p, class: SignatureClass { labels, boundary_edges, entries }, offset }
}

/// `NEED` lanes accept raw `DOM` or `UND`.
fn domination_value(raw: &Raw, s: &[u8]) -> Option<i64> {
    let need: Vec<usize> = (0..s.len()).filter(|&i| s[i] == NEED).collect();
    let mut best: Option<i64> = None;
    for pick in 0u32..(1 << need.len()) {
        let mut r = s.to_vec();
        for (b, &i) in need.iter().enumerate() {
            r[i] = if pick >> b & 1 == 1 { DOM } else { UND };
        }
        if let Some(&c) = raw.get(&r) {
            best = Some(best.map_or(c, |b| b.min(c)));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SIGNED: [Problem; 6] = [
        Problem::VertexCover,
        Problem::IndependentSet,
        Problem::DominatingSet,
        Problem::FeedbackVertexSet,
        Problem::TreewidthModulator(0),
        Problem::TreewidthModulator(1),
    ];

    fn pendant_path(len: usize) -> BoundariedGraph {
        let e: Vec<_> = (1..=len).map(|i| (i - 1, i)).collect();
        BoundariedGraph::with_boundary(Graph::from_edges(len + 1, &e).unwrap(), &[0]).unwrap()
    }

    fn entries(p: Problem, bg: &BoundariedGraph) -> (Vec<Option<i64>>, i64) {
        let s = compute_signature(p, bg).unwrap();
        (s.class.entries, s.offset)
    }

    #[test]
    fn vertex_cover_examples() {
        let vc = Problem::VertexCover;
        // states in order: v out, v in
        let lone = BoundariedGraph::with_boundary(Graph::new(1), &[0]).unwrap();
        assert_eq!(entries(vc, &lone), (vec![Some(0), Some(1)], 0));
        assert_eq!(entries(vc, &pendant_path(1)), (vec![Some(0), Some(0)], 1));
        assert_eq!(entries(vc, &pendant_path(2)), (vec![Some(0), Some(1)], 1));
        assert_eq!(test_equivalence(vc, &pendant_path(1), &pendant_path(2)).unwrap(), None);
        assert_eq!(test_equivalence(vc, &pendant_path(2), &pendant_path(4)).unwrap(), Some(1));
        assert_eq!(test_equivalence(vc, &pendant_path(3), &pendant_path(3)).unwrap(), Some(0));
        assert!(test_equivalence(vc, &lone, &BoundariedGraph::with_boundary(Graph::new(1), &[]).unwrap()).is_err());
    }

    #[test]
    fn empty_boundary_is_a_single_entry() {
        let g = crate::graph::make_grid(3).unwrap();
        for p in SIGNED {
            let s = compute_signature(p, &BoundariedGraph::with_boundary(g.clone(), &[]).unwrap()).unwrap();
            assert_eq!(s.class.entries, vec![Some(0)]);
            assert_eq!(s.offset, crate::problems::opt_value(p, &g).unwrap());
        }
    }

    #[test]
    fn state_space_sizes() {
        let sizes = |p| (0..=3).map(|j| state_space(p, j).unwrap().len()).collect::<Vec<_>>();
        assert_eq!(sizes(Problem::VertexCover), vec![1, 2, 4, 8]);
        assert_eq!(sizes(Problem::DominatingSet), vec![1, 3, 9, 27]);
        // sum over deleted subsets of Bell numbers of the rest
        assert_eq!(sizes(Problem::FeedbackVertexSet), vec![1, 2, 5, 15]);
        assert!(state_space(Problem::CyclePacking, 1).is_err());
    }

    #[test]
    fn routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for _ in 0..150 {
            let n = rng.gen_range(1..=11);
            let p = rng.gen_range(0.15..0.6);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let j = rng.gen_range(0..=n.min(3));
            let mut boundary: Vec<usize> = (0..n).collect();
            for i in 0..j {
                let k = rng.gen_range(i..n);
                boundary.swap(i, k);
            }
            boundary.truncate(j);
            let bg = BoundariedGraph::with_boundary(g, &boundary).unwrap();
            for p in SIGNED {
                if heuristic_decomposition(bg.graph()).width() + j > 15 {
                    continue;
                }
                assert_eq!(
                    compute_signature_brute(p, &bg).unwrap(),
                    compute_signature_dp(p, &bg).unwrap(),
                    "{p} {bg:?}"
                );
            }
        }
    }

    #[test]
    fn forest_signature_keeps_boundary_edges() {
        let fvs = Problem::FeedbackVertexSet;
        let a = BoundariedGraph::with_boundary(Graph::from_edges(2, &[(0, 1)]).unwrap(), &[0, 1]).unwrap();
        let b = BoundariedGraph::with_boundary(Graph::new(2), &[0, 1]).unwrap();
        let (sa, sb) = (compute_signature(fvs, &a).unwrap(), compute_signature(fvs, &b).unwrap());
        assert_eq!(sa.class.entries, sb.class.entries);
        assert_eq!(sa.class.boundary_edges, vec![(1, 2)]);
        assert_ne!(sa.class, sb.class);
    }

    #[test]
    fn cycle_packing_unsupported() {
        assert!(matches!(
            compute_signature(Problem::CyclePacking, &pendant_path(2)),
            Err(Error::Unsupported(..))
        ));
    }
}
