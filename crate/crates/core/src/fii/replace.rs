use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::signature::compute_signature;
use super::table::ReplacementTable;
use crate::error::{Error, Result};
use crate::graph::{BoundariedGraph, Graph};
use crate::modulator::recursive_modulator;
use crate::problems::{opt_value, Problem};
use crate::protrusion::{build_pd, protrusion_candidates, validate_protrusion, Protrusion, ProtrusionViolation};

/// One applied replacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// `∂(X)` in the ids of the graph before the step
    pub boundary: Vec<usize>,
    /// interior vertices removed
    pub removed: usize,
    /// representative vertices added
    pub added: usize,
    /// transposition constant; `k' = k + c`
    pub c: i64,
    pub n_before: usize,
    pub n_after: usize,
}

/// An instance `(G, k)` with the replacements that produced it. `k` may be
/// negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelInstance {
    pub problem: Problem,
    pub graph: Graph,
    pub k: i64,
    pub trace: Vec<TraceStep>,
}

impl KernelInstance {
    pub fn new(problem: Problem, graph: Graph, k: i64) -> Self {
        KernelInstance { problem, graph, k, trace: Vec::new() }
    }
}

/// Why a protrusion was left alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Skip {
    ProblemMismatch,
    NotAProtrusion(ProtrusionViolation),
    NoInterior,
    UnknownSignature,
    /// the representative is not smaller than `X`
    NotSmaller,
    /// `c > 0` would raise the parameter
    PositiveConstant(i64),
    OverBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Replacement {
    Applied(KernelInstance),
    Skipped(Skip),
}

/// Replaces `X` by the representative of its class, glued along `∂(X)`
/// (labelled in increasing vertex order). Kept vertices retain their
/// relative order and the representative's interior follows.
pub fn replace_protrusion(inst: &KernelInstance, x: &Protrusion, table: &ReplacementTable) -> Replacement {
    if inst.problem != table.problem {
        return Replacement::Skipped(Skip::ProblemMismatch);
    }
    let g = &inst.graph;
    let x = match validate_protrusion(g, &x.vertices, table.t) {
        Ok(x) => x,
        Err(v) => return Replacement::Skipped(Skip::NotAProtrusion(v)),
    };
    let interior = x.interior();
    if interior.is_empty() {
        return Replacement::Skipped(Skip::NoInterior);
    }
    let (h, map) = g.induced_subgraph(&x.vertices);
    let local: Vec<usize> = x.boundary.iter().map(|v| map.binary_search(v).expect("boundary inside X")).collect();
    let bg = BoundariedGraph::with_boundary(h, &local).expect("distinct boundary vertices");
    let sig = match compute_signature(inst.problem, &bg) {
        Ok(s) => s,
        Err(_) => return Replacement::Skipped(Skip::OverBudget),
    };
    let Some(row) = table.lookup(&sig.class) else {
        return Replacement::Skipped(Skip::UnknownSignature);
    };
    if row.representative.n() >= x.vertices.len() {
        return Replacement::Skipped(Skip::NotSmaller);
    }
    let c = row.rep_offset - sig.offset;
    if c > 0 {
        return Replacement::Skipped(Skip::PositiveConstant(c));
    }

    let (mut next, kept) = g.remove_vertices(&interior);
    let mut new_id = vec![usize::MAX; g.n()];
    for (i, &v) in kept.iter().enumerate() {
        new_id[v] = i;
    }
    let rep = &row.representative;
    let rep_id: Vec<usize> = (0..rep.n())
        .map(|r| match rep.label_of(r) {
            Some(l) => new_id[x.boundary[l as usize - 1]],
            None => next.add_vertex(),
        })
        .collect();
    for (a, b) in rep.graph().edges() {
        next.add_edge(rep_id[a], rep_id[b]).expect("ids in range");
    }
    let step = TraceStep {
        boundary: x.boundary.clone(),
        removed: interior.len(),
        added: rep.n() - x.boundary.len(),
        c,
        n_before: g.n(),
        n_after: next.n(),
    };
    let mut trace = inst.trace.clone();
    trace.push(step);
    Replacement::Applied(KernelInstance { problem: inst.problem, graph: next, k: inst.k + c, trace })
}

#[derive(Clone, Debug)]
pub struct KernelizeOptions {
    /// Seed the protrusion search with the parts of a protrusion
    /// decomposition grown from a treewidth-η modulator.
    pub eta: Option<usize>,
    /// Try candidates in a random order instead of largest first.
    pub shuffle_seed: Option<u64>,
    /// Check `OPT(before) = OPT(after) − c` after every step where the
    /// oracles allow.
    pub verify_steps: bool,
}

impl Default for KernelizeOptions {
    fn default() -> Self {
        KernelizeOptions { eta: None, shuffle_seed: None, verify_steps: cfg!(debug_assertions) }
    }
}

/// Replaces protrusions with more than `max_rep_size` vertices until none
/// of the candidates found can be replaced.
pub fn kernelize(
    p: Problem,
    g: &Graph,
    k: i64,
    table: &ReplacementTable,
    opts: &KernelizeOptions,
) -> Result<KernelInstance> {
    if table.problem != p {
        return Err(Error::InvalidParameter(format!("table is for {}, not {p}", table.problem)));
    }
    let mut inst = KernelInstance::new(p, g.clone(), k);
    let mut rng = opts.shuffle_seed.map(ChaCha8Rng::seed_from_u64);
    loop {
        let seeds = match opts.eta {
            Some(eta) if inst.graph.n() > 0 => {
                let s = recursive_modulator(&inst.graph, eta, &[])?;
                build_pd(&inst.graph, &s)?.parts
            }
            _ => Vec::new(),
        };
        let mut candidates = protrusion_candidates(&inst.graph, table.t, table.max_rep_size + 1, &seeds);
        if let Some(rng) = rng.as_mut() {
            candidates.shuffle(rng);
        }
        let next = candidates.iter().find_map(|x| match replace_protrusion(&inst, x, table) {
            Replacement::Applied(next) => Some(next),
            Replacement::Skipped(_) => None,
        });
        let Some(next) = next else { return Ok(inst) };
        if opts.verify_steps {
            verify_step(p, &inst.graph, &next)?;
        }
        inst = next;
    }
}

fn verify_step(p: Problem, before: &Graph, after: &KernelInstance) -> Result<()> {
    let c = after.trace.last().expect("a step was applied").c;
    match (opt_value(p, before), opt_value(p, &after.graph)) {
        (Ok(a), Ok(b)) if a != b - c => Err(Error::Certification(format!(
            "{p}: replacement changed OPT from {a} to {b} with c = {c}"
        ))),
        (Ok(_), Ok(_)) | (Err(Error::TooLarge { .. }), _) | (_, Err(Error::TooLarge { .. })) => Ok(()),
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fii::table::{build_replacement_table_with, TableOptions};
    use crate::graph::make_grid;

    fn table(p: Problem, t: usize, size: usize) -> ReplacementTable {
        let opts = TableOptions { certify: false, ..Default::default() };
        build_replacement_table_with(p, t, size, &opts).unwrap().0
    }

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn pendant_path_on_grid_shrinks() {
        let p = Problem::VertexCover;
        let tab = table(p, 1, 5);
        let mut g = make_grid(3).unwrap();
        let mut prev = 4;
        for _ in 0..6 {
            let v = g.add_vertex();
            g.add_edge(prev, v).unwrap();
            prev = v;
        }
        let before = opt_value(p, &g).unwrap();
        let x = validate_protrusion(&g, &[4, 9, 10, 11, 12, 13, 14], 1).unwrap();
        let Replacement::Applied(next) = replace_protrusion(&KernelInstance::new(p, g.clone(), 8), &x, &tab) else {
            panic!("expected a replacement")
        };
        let c = next.trace[0].c;
        assert!(c < 0);
        assert_eq!(next.k, 8 + c);
        assert!(next.graph.n() < g.n());
        assert_eq!(before, opt_value(p, &next.graph).unwrap() - c);
    }

    #[test]
    fn skips() {
        let p = Problem::VertexCover;
        let tab = table(p, 1, 5);
        let mut g = make_grid(3).unwrap();
        let leaf = g.add_vertex();
        g.add_edge(4, leaf).unwrap();
        let inst = KernelInstance::new(p, g.clone(), 5);
        // a pendant edge is already its class representative
        let x = validate_protrusion(&g, &[4, leaf], 1).unwrap();
        assert!(matches!(replace_protrusion(&inst, &x, &tab), Replacement::Skipped(Skip::NotSmaller)));
        let wrong = KernelInstance::new(Problem::DominatingSet, g, 1);
        assert_eq!(replace_protrusion(&wrong, &x, &tab), Replacement::Skipped(Skip::ProblemMismatch));
    }

    #[test]
    fn long_path_kernel() {
        let p = Problem::VertexCover;
        let tab = table(p, 1, 5);
        let g = path(20);
        let opts = KernelizeOptions { verify_steps: true, ..Default::default() };
        let kern = kernelize(p, &g, 10, &tab, &opts).unwrap();
        assert!(kern.graph.n() <= tab.max_rep_size + 2, "{}", kern.graph.n());
        assert!(kern.k <= 10);
        let opt_before = opt_value(p, &g).unwrap();
        let opt_after = opt_value(p, &kern.graph).unwrap();
        for k in [opt_before - 1, opt_before, opt_before + 1] {
            let shift = kern.k - 10;
            assert_eq!(p.is_yes(opt_before, k), p.is_yes(opt_after, k + shift));
        }
        assert_eq!(kern.trace.len(), kern.trace.iter().filter(|s| s.n_after < s.n_before).count());
    }

    #[test]
    fn identity_without_protrusions() {
        let p = Problem::VertexCover;
        let tab = table(p, 1, 5);
        let g = make_grid(3).unwrap();
        let kern = kernelize(p, &g, 4, &tab, &KernelizeOptions::default()).unwrap();
        assert_eq!(kern.graph, g);
        assert!(kern.trace.is_empty());
    }

    #[test]
    fn shuffled_orders_agree_on_membership() {
        let p = Problem::DominatingSet;
        let tab = table(p, 1, 5);
        let mut g = make_grid(3).unwrap();
        for root in [0, 8] {
            let mut prev = root;
            for _ in 0..5 {
                let v = g.add_vertex();
                g.add_edge(prev, v).unwrap();
                prev = v;
            }
        }
        let opt = opt_value(p, &g).unwrap();
        for seed in 0..4 {
            let opts = KernelizeOptions { shuffle_seed: Some(seed), verify_steps: true, eta: Some(1) };
            let kern = kernelize(p, &g, opt, &tab, &opts).unwrap();
            assert!(p.is_yes(opt_value(p, &kern.graph).unwrap(), kern.k));
            assert!(!p.is_yes(opt_value(p, &kern.graph).unwrap(), kern.k - 1));
        }
    }
}
