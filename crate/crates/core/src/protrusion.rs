//! Protrusions and (α, r)-protrusion decompositions.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::error::{parse_err, Error, Result};
use crate::graph::io::{content_lines, parse_num};
use crate::graph::Graph;
use crate::modulator::Modulator;
use crate::separation::balanced_separation;
use crate::td::{decomposition_of_width, exact_treewidth, heuristic_decomposition, TreeDecomposition, EXACT_BUDGET};

/// A certified t-protrusion: `|∂(X)| <= t` and a decomposition of `G[X]`
/// (in host ids) of width at most `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Protrusion {
    pub vertices: Vec<usize>,
    pub boundary: Vec<usize>,
    pub t: usize,
    pub certificate: TreeDecomposition,
}

impl Protrusion {
    pub fn interior(&self) -> Vec<usize> {
        crate::graph::difference_sorted(&self.vertices, &self.boundary)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProtrusionViolation {
    UnknownVertex(usize),
    BoundaryTooLarge { boundary: usize, t: usize },
    TreewidthTooLarge { t: usize },
    /// `G[X]` has a component too large to decide `tw <= t` exactly and
    /// min-fill did not reach `t`.
    TreewidthUndecided,
}

impl fmt::Display for ProtrusionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            Self::BoundaryTooLarge { boundary, t } => write!(f, "boundary has {boundary} vertices, more than {t}"),
            Self::TreewidthTooLarge { t } => write!(f, "treewidth exceeds {t}"),
            Self::TreewidthUndecided => write!(f, "treewidth could not be decided"),
        }
    }
}

/// Checks that `x` is a t-protrusion of `g` and certifies it.
pub fn validate_protrusion(g: &Graph, x: &[usize], t: usize) -> std::result::Result<Protrusion, ProtrusionViolation> {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    if let Some(&v) = x.iter().find(|&&v| v >= g.n()) {
        return Err(ProtrusionViolation::UnknownVertex(v));
    }
    let boundary = g.boundary(&x);
    if boundary.len() > t {
        return Err(ProtrusionViolation::BoundaryTooLarge { boundary: boundary.len(), t });
    }
    let (h, map) = g.induced_subgraph(&x);
    match decomposition_of_width(&h, t) {
        Ok(Some(td)) => Ok(Protrusion { vertices: x, boundary, t, certificate: td.lifted(&map) }),
        Ok(None) => Err(ProtrusionViolation::TreewidthTooLarge { t }),
        Err(_) => Err(ProtrusionViolation::TreewidthUndecided),
    }
}

/// Core `R_0` and parts `R_1..R_ℓ` partitioning the vertex set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProtrusionDecomposition {
    pub core: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdViolation {
    /// A vertex is missing, repeated, or out of range.
    NotAPartition(usize),
    EmptyPart(usize),
    /// `max(ℓ, |R_0|) > α`
    TooLarge { alpha: usize, measured: usize },
    /// A neighbour of part `part` lies in another part.
    NeighbourOutsideCore { part: usize, vertex: usize },
    NotAProtrusion { part: usize, violation: ProtrusionViolation },
}

impl fmt::Display for PdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotAPartition(v) => write!(f, "vertex {v} is not covered exactly once"),
            Self::EmptyPart(i) => write!(f, "part {i} is empty"),
            Self::TooLarge { alpha, measured } => write!(f, "max(parts, core) = {measured} exceeds alpha = {alpha}"),
            Self::NeighbourOutsideCore { part, vertex } => {
                write!(f, "part {part} has neighbour {vertex} outside the core")
            }
            Self::NotAProtrusion { part, violation } => write!(f, "closed neighbourhood of part {part}: {violation}"),
        }
    }
}

impl ProtrusionDecomposition {
    /// `max(ℓ, |R_0|)`
    pub fn alpha(&self) -> usize {
        self.parts.len().max(self.core.len())
    }

    /// Smallest `r` for which every `N[R_i]` is an r-protrusion. Treewidth is
    /// exact for neighbourhoods of at most [`EXACT_BUDGET`] vertices and a
    /// min-fill upper bound above that.
    pub fn measured_r(&self, g: &Graph) -> usize {
        let per_part: Vec<usize> = crate::par::map(&self.parts, |p| {
            let closed = g.closed_neighborhood(p);
            let (h, _) = g.induced_subgraph(&closed);
            let tw = if h.n() <= EXACT_BUDGET {
                exact_treewidth(&h).map(|(w, _)| w).unwrap_or_else(|_| heuristic_decomposition(&h).width())
            } else {
                heuristic_decomposition(&h).width()
            };
            tw.max(g.boundary(&closed).len())
        });
        per_part.into_iter().max().unwrap_or(0)
    }
}

/// Checks that `pd` is an (α, r)-protrusion decomposition of `g`.
pub fn validate_pd(g: &Graph, pd: &ProtrusionDecomposition, alpha: usize, r: usize) -> std::result::Result<(), PdViolation> {
    let mut owner = vec![usize::MAX; g.n()];
    let groups = std::iter::once(&pd.core).chain(pd.parts.iter());
    for (i, group) in groups.enumerate() {
        for &v in group {
            if v >= g.n() || owner[v] != usize::MAX {
                return Err(PdViolation::NotAPartition(v));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(PdViolation::NotAPartition(v));
    }
    if let Some(i) = pd.parts.iter().position(|p| p.is_empty()) {
        return Err(PdViolation::EmptyPart(i + 1));
    }
    if pd.alpha() > alpha {
        return Err(PdViolation::TooLarge { alpha, measured: pd.alpha() });
    }
    for (i, p) in pd.parts.iter().enumerate() {
        if let Some(&w) = g.open_neighborhood(p).iter().find(|&&w| owner[w] != 0) {
            return Err(PdViolation::NeighbourOutsideCore { part: i + 1, vertex: w });
        }
        validate_protrusion(g, &g.closed_neighborhood(p), r)
            .map_err(|violation| PdViolation::NotAProtrusion { part: i + 1, violation })?;
    }
    Ok(())
}

/// Protrusion decomposition grown from a modulator by recursive balanced
/// separation. While the modulator part `S` of the current piece has more
/// than three vertices and the piece more than `η + 4`, the piece is split
/// by a separation balanced on `S`; the separator joins the core of both
/// sides. At the leaves, `S` is the core and everything else is one part.
///
/// An empty modulator is accepted: the decomposition then has an empty core
/// and one part per component.
pub fn build_pd(g: &Graph, s: &Modulator) -> Result<ProtrusionDecomposition> {
    if !s.certifies(g) {
        return Err(Error::InvalidParameter("modulator does not certify".into()));
    }
    if s.is_empty() {
        let mut parts = g.components();
        parts.sort();
        return Ok(ProtrusionDecomposition { core: Vec::new(), parts });
    }
    let all: Vec<usize> = (0..g.n()).collect();
    let (mut core, mut parts) = split(g, &all, &s.vertices, s.eta)?;
    core.sort_unstable();
    core.dedup();
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort();
    Ok(ProtrusionDecomposition { core, parts })
}

fn split(g: &Graph, keep: &[usize], s: &[usize], eta: usize) -> Result<(Vec<usize>, Vec<Vec<usize>>)> {
    let (h, map) = g.induced_subgraph(keep);
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        pos[v] = i;
    }
    let local_s: Vec<usize> = s.iter().map(|&v| pos[v]).collect();
    let leaf = |core: Vec<usize>| {
        let rest = crate::graph::difference_sorted(keep, &core);
        let parts = if rest.is_empty() { vec![] } else { vec![rest] };
        (core, parts)
    };
    let mut sorted_s = s.to_vec();
    sorted_s.sort_unstable();
    if s.len() <= 3 || h.n() <= eta + 4 {
        return Ok(leaf(sorted_s));
    }
    let td = heuristic_decomposition(&h);
    let sep = balanced_separation(&h, &local_s, &td)?;
    let (left, right) = (sep.left(), sep.right());
    if left.is_empty() || right.is_empty() {
        return Ok(leaf(sorted_s));
    }
    let x: Vec<usize> = sep.separator().into_iter().map(|v| map[v]).collect();
    let side = |strict: &[usize]| -> (Vec<usize>, Vec<usize>) {
        let mut vs: Vec<usize> = strict.iter().map(|&v| map[v]).chain(x.iter().copied()).collect();
        vs.sort_unstable();
        let mut ss: Vec<usize> = s.iter().copied().filter(|v| vs.binary_search(v).is_ok()).chain(x.iter().copied()).collect();
        ss.sort_unstable();
        ss.dedup();
        (vs, ss)
    };
    let (lv, ls) = side(&left);
    let (rv, rs) = side(&right);
    let (l, r) = crate::par::join(|| split(g, &lv, &ls, eta), || split(g, &rv, &rs, eta));
    let (mut core, mut parts) = l?;
    let (rc, rp) = r?;
    core.extend(rc);
    parts.extend(rp);
    Ok((core, parts))
}

/// Largest t-protrusion with at least `min_size` vertices and at least one
/// interior vertex.
pub fn find_max_protrusion(g: &Graph, t: usize, min_size: usize) -> Option<Protrusion> {
    protrusion_candidates(g, t, min_size, &[]).into_iter().next()
}

/// t-protrusions with at least `min_size` vertices and a nonempty interior,
/// largest first.
///
/// Every protrusion is its boundary `Z` plus a union of components of
/// `G − Z`, so candidates come from each `Z` of at most `t` vertices: every
/// single component with its neighbourhood, and the union grown greedily
/// from the largest component down. On graphs of at most 14 vertices with
/// `t <= 2`, every union of up to ten components is tried instead, which
/// makes the search exhaustive there. Each closed neighbourhood `N[R]` of a
/// seed set is also tried.
pub fn protrusion_candidates(g: &Graph, t: usize, min_size: usize, seeds: &[Vec<usize>]) -> Vec<Protrusion> {
    let n = g.n();
    let exhaustive = n <= 14 && t <= 2;
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut consider = |mut x: Vec<usize>| {
        x.sort_unstable();
        x.dedup();
        if x.len() >= min_size.max(1) {
            sets.insert(x);
        }
    };
    for z in subsets_up_to(n, t) {
        let mut comps = g.components_avoiding(&z);
        comps.sort_by_key(|c| (std::cmp::Reverse(c.len()), c[0]));
        for c in &comps {
            let mut x = c.clone();
            x.extend(g.open_neighborhood(c));
            consider(x);
        }
        if exhaustive && comps.len() <= 10 {
            for pick in 1u32..(1 << comps.len()) {
                let mut x = z.clone();
                for (i, c) in comps.iter().enumerate() {
                    if pick >> i & 1 == 1 {
                        x.extend_from_slice(c);
                    }
                }
                consider(x);
            }
        } else {
            let mut x = z.clone();
            for c in &comps {
                let mut grown = x.clone();
                grown.extend_from_slice(c);
                grown.sort_unstable();
                let (h, _) = g.induced_subgraph(&grown);
                if matches!(decomposition_of_width(&h, t), Ok(Some(_))) {
                    x = grown;
                }
            }
            consider(x);
        }
    }
    for r in seeds {
        consider(g.closed_neighborhood(r));
    }
    let sets: Vec<Vec<usize>> = sets.into_iter().collect();
    let checked = crate::par::map(&sets, |x| {
        validate_protrusion(g, x, t).ok().filter(|p| p.boundary.len() < p.vertices.len())
    });
    let mut out: Vec<Protrusion> = checked.into_iter().flatten().collect();
    out.sort_by(|a, b| b.vertices.len().cmp(&a.vertices.len()).then_with(|| a.vertices.cmp(&b.vertices)));
    out
}

/// All subsets of `0..n` with at most `k` elements, smallest first.
fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..k.min(n) {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&v: &usize| v + 1);
            for v in start..n {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// ```text
/// core: v v v
/// part: v v
/// ```
/// with 1-indexed vertices, one `part:` line per part.
pub fn write_pd(pd: &ProtrusionDecomposition) -> String {
    let mut s = String::new();
    let line = |s: &mut String, tag: &str, vs: &[usize]| {
        write!(s, "{tag}:").unwrap();
        for v in vs {
            write!(s, " {}", v + 1).unwrap();
        }
        s.push('\n');
    };
    line(&mut s, "core", &pd.core);
    for p in &pd.parts {
        line(&mut s, "part", p);
    }
    s
}

pub fn parse_pd(text: &str) -> Result<ProtrusionDecomposition> {
    let mut pd = ProtrusionDecomposition::default();
    let mut seen_core = false;
    for (line, l) in content_lines(text) {
        let (tag, rest) = l.split_once(':').ok_or_else(|| parse_err(line, "expected `core:` or `part:`"))?;
        let vs = rest
            .split_whitespace()
            .map(|tok| {
                let v: usize = parse_num(Some(tok), line, "vertex")?;
                v.checked_sub(1).ok_or_else(|| parse_err(line, "vertices are 1-indexed"))
            })
            .collect::<Result<Vec<usize>>>()?;
        match tag.trim() {
            "core" if !seen_core => {
                seen_core = true;
                pd.core = vs;
            }
            "core" => return Err(parse_err(line, "second core line")),
            "part" => pd.parts.push(vs),
            other => return Err(parse_err(line, &format!("unknown tag `{other}`"))),
        }
    }
    if !seen_core {
        return Err(parse_err(0, "missing core line"));
    }
    Ok(pd)
}
