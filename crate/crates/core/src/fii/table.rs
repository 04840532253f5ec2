//! Replacement tables: one minimum representative per signature class of
//! small connected boundaried graphs, certified by gluing contexts.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::signature::{compute_signature, compute_signature_brute, kind_of, SignatureClass};
use crate::error::{Error, Result};
use crate::graph::canon::{canonical_masks, CanonCode};
use crate::graph::enumerate::{enumerate_graphs, label_colors, labelled_variants, GraphFilter};
use crate::graph::small::full;
use crate::graph::{BoundariedGraph, Graph};
use crate::problems::{min_dominating_set_masks, min_fvs_masks, min_vertex_cover_masks, Problem};
use crate::td::dp::DpKind;

pub const MAX_TABLE_T: usize = 3;
pub const MAX_SIZE_BOUND: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub representative: BoundariedGraph,
    pub rep_offset: i64,
    /// enumerated members of the class
    pub members: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplacementTable {
    pub problem: Problem,
    pub t: usize,
    pub max_rep_size: usize,
    pub rows: BTreeMap<SignatureClass, TableRow>,
}

impl ReplacementTable {
    pub fn lookup(&self, class: &SignatureClass) -> Option<&TableRow> {
        self.rows.get(class)
    }

    pub fn class_count(&self) -> usize {
        self.rows.len()
    }

    /// Classes with exactly `j` boundary labels.
    pub fn class_count_for(&self, j: usize) -> usize {
        self.rows.keys().filter(|c| c.labels.len() == j).count()
    }
}

#[derive(Clone, Debug)]
pub struct TableOptions {
    pub certify: bool,
    /// Contexts have at most this many vertices.
    pub context_size: usize,
    /// Label sets of size three are probed with this many random contexts;
    /// smaller label sets get every context.
    pub random_contexts: usize,
    /// Members checked against the representative per class: up to this
    /// many of the smallest and of the largest.
    pub witnesses: usize,
    pub seed: u64,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { certify: true, context_size: 8, random_contexts: 1000, witnesses: 4, seed: 0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificationReport {
    pub classes: usize,
    /// member/representative pairs probed
    pub pairs: usize,
    /// contexts per label-set size
    pub contexts: Vec<usize>,
    /// glued instances solved
    pub checks: u64,
}

/// Table for boundaries of at most `t` vertices over connected graphs of at
/// most `size_bound` vertices and treewidth at most `t`, certified with
/// [`TableOptions::default`].
pub fn build_replacement_table(p: Problem, t: usize, size_bound: usize) -> Result<ReplacementTable> {
    build_replacement_table_with(p, t, size_bound, &TableOptions::default()).map(|(table, _)| table)
}

pub fn build_replacement_table_with(
    p: Problem,
    t: usize,
    size_bound: usize,
    opts: &TableOptions,
) -> Result<(ReplacementTable, Option<CertificationReport>)> {
    kind_of(p)?;
    if t > MAX_TABLE_T {
        return Err(Error::TooLarge { what: "table boundary size", size: t, budget: MAX_TABLE_T });
    }
    if size_bound > MAX_SIZE_BOUND {
        return Err(Error::TooLarge { what: "table size bound", size: size_bound, budget: MAX_SIZE_BOUND });
    }
    let graphs: Vec<Graph> = enumerate_graphs(size_bound, GraphFilter::connected_tw(t)).into_iter().flatten().collect();
    let chunks: Vec<&[Graph]> = graphs.chunks(64).collect();
    let w = opts.witnesses;
    let partial: Vec<Result<BTreeMap<SignatureClass, Agg>>> = crate::par::map(&chunks, |chunk| {
        let mut acc: BTreeMap<SignatureClass, Agg> = BTreeMap::new();
        for g in chunk.iter() {
            for j in 0..=t.min(g.n()) {
                for bg in labelled_variants(g, j) {
                    let sig = compute_signature(p, &bg)?;
                    let m = Member::new(bg, sig.offset);
                    match acc.get_mut(&sig.class) {
                        Some(a) => a.add(m, w),
                        None => {
                            acc.insert(sig.class, Agg::single(m));
                        }
                    }
                }
            }
        }
        Ok(acc)
    });
    let mut classes: BTreeMap<SignatureClass, Agg> = BTreeMap::new();
    for part in partial {
        for (class, agg) in part? {
            match classes.remove(&class) {
                Some(prev) => classes.insert(class, prev.merge(agg, w)),
                None => classes.insert(class, agg),
            };
        }
    }

    let mut rows = BTreeMap::new();
    for (class, agg) in &classes {
        let rep = &agg.lowest[0];
        // the representative, re-signed by the other route, lands on its row
        let again = compute_signature_brute(p, &rep.bg)?;
        if &again.class != class || again.offset != rep.offset {
            return Err(Error::Certification(format!("representative of {class:?} re-signs differently")));
        }
        rows.insert(
            class.clone(),
            TableRow { representative: rep.bg.clone(), rep_offset: rep.offset, members: agg.members },
        );
    }
    let max_rep_size = rows.values().map(|r| r.representative.n()).max().unwrap_or(0);
    let table = ReplacementTable { problem: p, t, max_rep_size, rows };
    let report = if opts.certify { Some(certify(p, t, &classes, opts)?) } else { None };
    Ok((table, report))
}

#[derive(Clone, Debug)]
struct Member {
    key: (usize, CanonCode),
    bg: BoundariedGraph,
    offset: i64,
}

impl Member {
    fn new(bg: BoundariedGraph, offset: i64) -> Self {
        let colors = label_colors(bg.n(), &bg.boundary());
        let (code, _) = canonical_masks(&bg.graph().masks(), &colors);
        Member { key: (bg.n(), code), bg, offset }
    }
}

/// A class seen so far: its count, the smallest members (the first is the
/// representative) and the largest.
#[derive(Clone, Debug)]
struct Agg {
    members: usize,
    lowest: Vec<Member>,
    highest: Vec<Member>,
}

impl Agg {
    fn single(m: Member) -> Self {
        Agg { members: 1, lowest: vec![m.clone()], highest: vec![m] }
    }

    fn add(&mut self, m: Member, w: usize) {
        let other = Agg::single(m);
        let this = std::mem::replace(self, Agg { members: 0, lowest: vec![], highest: vec![] });
        *self = this.merge(other, w);
    }

    fn merge(self, other: Agg, w: usize) -> Agg {
        let mut lowest: Vec<Member> = self.lowest.into_iter().chain(other.lowest).collect();
        lowest.sort_by(|a, b| a.key.cmp(&b.key));
        lowest.truncate(w + 1);
        let mut highest: Vec<Member> = self.highest.into_iter().chain(other.highest).collect();
        highest.sort_by(|a, b| b.key.cmp(&a.key));
        highest.truncate(w.max(1));
        Agg { members: self.members + other.members, lowest, highest }
    }

    fn witnesses(&self) -> Vec<&Member> {
        let mut out: Vec<&Member> = self.lowest[1..].iter().chain(self.highest.iter()).collect();
        out.sort_by(|a, b| a.key.cmp(&b.key));
        out.dedup_by(|a, b| a.key == b.key);
        out.retain(|m| m.key != self.lowest[0].key);
        out
    }
}

/// A context as masks with `label_vertex[l - 1]` the vertex labelled `l`.
struct Context {
    adj: Vec<u64>,
    label_vertex: Vec<usize>,
}

impl Context {
    fn of(bg: &BoundariedGraph) -> Self {
        Context { adj: bg.graph().masks(), label_vertex: bg.boundary() }
    }
}

/// `member ⊕ ctx` as masks; labels are `1..=j` on both sides.
fn glue_masks(member: &[u64], member_labels: &[usize], ctx: &Context) -> Vec<u64> {
    let n1 = member.len();
    let mut map = vec![usize::MAX; ctx.adj.len()];
    for (i, &cv) in ctx.label_vertex.iter().enumerate() {
        map[cv] = member_labels[i];
    }
    let mut next = n1;
    for m in map.iter_mut() {
        if *m == usize::MAX {
            *m = next;
            next += 1;
        }
    }
    let mut adj = member.to_vec();
    adj.resize(next, 0);
    for (u, &row) in ctx.adj.iter().enumerate() {
        for v in crate::graph::small::bits(row) {
            adj[map[u]] |= 1 << map[v];
        }
    }
    adj
}

fn oracle(p: Problem, adj: &[u64]) -> Result<i64> {
    let n = adj.len();
    let value = match kind_of(p)? {
        DpKind::Cover => min_vertex_cover_masks(adj, full(n)) as i64,
        DpKind::Independent => n as i64 - min_vertex_cover_masks(adj, full(n)) as i64,
        DpKind::Domination => min_dominating_set_masks(adj) as i64,
        DpKind::ForestDeletion => min_fvs_masks(adj, full(n)) as i64,
    };
    Ok(value)
}

fn contexts_for(j: usize, opts: &TableOptions, all: &[Graph], rng: &mut ChaCha8Rng) -> Vec<Context> {
    if j <= 2 {
        return all.iter().flat_map(|g| labelled_variants(g, j)).map(|bg| Context::of(&bg)).collect();
    }
    (0..opts.random_contexts)
        .map(|_| {
            let n = rng.gen_range(j..=opts.context_size.max(j));
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v).expect("in range");
                    }
                }
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            Context::of(&BoundariedGraph::with_boundary(g, &order[..j]).expect("distinct vertices"))
        })
        .collect()
}

/// For every class and every witness `w` with representative `r`, checks
/// `OPT(w ⊕ F) − offset(w) = OPT(r ⊕ F) − offset(r)` over the contexts.
fn certify(
    p: Problem,
    t: usize,
    classes: &BTreeMap<SignatureClass, Agg>,
    opts: &TableOptions,
) -> Result<CertificationReport> {
    let all: Vec<Graph> = enumerate_graphs(opts.context_size, GraphFilter::ALL).into_iter().flatten().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let contexts: Vec<Vec<Context>> = (0..=t).map(|j| contexts_for(j, opts, &all, &mut rng)).collect();
    let jobs: Vec<(&SignatureClass, &Agg)> = classes.iter().collect();
    let results: Vec<Result<(usize, u64)>> = crate::par::map(&jobs, |&(class, agg)| {
        let rep = &agg.lowest[0];
        let witnesses = agg.witnesses();
        if witnesses.is_empty() {
            return Ok((0, 0));
        }
        let rep_adj = rep.bg.graph().masks();
        let rep_labels = rep.bg.boundary();
        let wit: Vec<(Vec<u64>, Vec<usize>)> =
            witnesses.iter().map(|m| (m.bg.graph().masks(), m.bg.boundary())).collect();
        let mut checks = 0u64;
        for ctx in &contexts[class.labels.len()] {
            let base = oracle(p, &glue_masks(&rep_adj, &rep_labels, ctx))? - rep.offset;
            for (m, (adj, labels)) in witnesses.iter().zip(&wit) {
                let v = oracle(p, &glue_masks(adj, labels, ctx))? - m.offset;
                checks += 1;
                if v != base {
                    return Err(Error::Certification(format!(
                        "{p}: member {:?} and representative {:?} disagree on context {:?}",
                        m.bg, rep.bg, ctx.adj
                    )));
                }
            }
        }
        Ok((witnesses.len(), checks))
    });
    let mut report = CertificationReport {
        classes: classes.len(),
        contexts: contexts.iter().map(|c| c.len()).collect(),
        ..Default::default()
    };
    for r in results {
        let (pairs, checks) = r?;
        report.pairs += pairs;
        report.checks += checks;
    }
    Ok(report)
}
