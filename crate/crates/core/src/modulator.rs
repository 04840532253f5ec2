//! Treewidth-η modulators: vertex sets whose removal leaves treewidth at
//! most η.

use crate::budget::oracle_budget;
use crate::error::{Error, Result};
use crate::graph::small::{bits, combinations};
use crate::graph::Graph;
use crate::problems::Problem;
use crate::separation::balanced_separation;
use crate::td::{decomposition_of_width, heuristic_decomposition, TreeDecomposition};

pub const EXACT_MODULATOR_BUDGET: usize = 16;

/// Modulator `S` together with a decomposition of `G − S` (in host ids)
/// of width at most `eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulator {
    pub vertices: Vec<usize>,
    pub eta: usize,
    pub certificate: TreeDecomposition,
}

impl Modulator {
    /// Builds the certificate; fails when `tw(G − S) > eta`.
    pub fn new(g: &Graph, mut vertices: Vec<usize>, eta: usize) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
            return Err(Error::MissingVertex(v));
        }
        let (rest, map) = g.remove_vertices(&vertices);
        let td = decomposition_of_width(&rest, eta)?.ok_or_else(|| {
            Error::InvalidParameter(format!("removing {vertices:?} leaves treewidth above {eta}"))
        })?;
        Ok(Modulator { vertices, eta, certificate: td.lifted(&map) })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks the certificate against `G − S`.
    pub fn certifies(&self, g: &Graph) -> bool {
        if self.vertices.iter().any(|&v| v >= g.n()) || self.certificate.width() > self.eta {
            return false;
        }
        let (rest, map) = g.remove_vertices(&self.vertices);
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in map.iter().enumerate() {
            pos[v] = i;
        }
        if self.certificate.bags().iter().flatten().any(|&v| v >= g.n() || pos[v] == usize::MAX) {
            return false;
        }
        let bags = self.certificate.bags().iter().map(|b| b.iter().map(|&v| pos[v]).collect()).collect();
        let local = TreeDecomposition::new(bags, self.certificate.tree_edges().to_vec());
        local.validate(&rest).is_ok()
    }
}

/// Minimum modulator by enumerating subsets in order of size; ties go to
/// the first subset in colexicographic order.
pub fn exact_modulator(g: &Graph, eta: usize) -> Result<Modulator> {
    let budget = oracle_budget(EXACT_MODULATOR_BUDGET).min(30);
    if g.n() > budget {
        return Err(Error::TooLarge { what: "exact modulator instance", size: g.n(), budget });
    }
    let p = Problem::TreewidthModulator(eta as u8);
    let adj = g.masks();
    let s = (0..=g.n())
        .find_map(|k| combinations(g.n(), k).find(|&s| p.feasible_mask(&adj, s)))
        .expect("the full vertex set is a modulator");
    Modulator::new(g, bits(s).collect(), eta)
}

/// Modulator built by recursive balanced separation. Each component of
/// treewidth above `eta` is split by a separation balanced with respect to
/// the seed vertices inside it (all of its vertices when it holds none);
/// the separator joins the modulator and both sides recurse. Components of
/// at most `max(eta + 2, 4)` vertices are solved exactly.
pub fn recursive_modulator(g: &Graph, eta: usize, seed: &[usize]) -> Result<Modulator> {
    if let Some(&v) = seed.iter().find(|&&v| v >= g.n()) {
        return Err(Error::MissingVertex(v));
    }
    let in_seed = g.indicator(seed);
    let all: Vec<usize> = (0..g.n()).collect();
    let vertices = recurse(g, &all, &in_seed, eta)?;
    Modulator::new(g, vertices, eta)
}

fn recurse(g: &Graph, keep: &[usize], in_seed: &[bool], eta: usize) -> Result<Vec<usize>> {
    let (h, map) = g.induced_subgraph(keep);
    let comps = h.components();
    let found: Vec<Result<Vec<usize>>> = crate::par::map(&comps, |comp| {
        let (c, cmap) = h.induced_subgraph(comp);
        let host = |v: usize| map[cmap[v]];
        if c.n() <= eta + 1 || decomposition_of_width(&c, eta).map(|td| td.is_some()).unwrap_or(false) {
            return Ok(Vec::new());
        }
        if c.n() <= (eta + 2).max(4) {
            return Ok(exact_modulator(&c, eta)?.vertices.into_iter().map(host).collect());
        }
        let mut q: Vec<usize> = (0..c.n()).filter(|&v| in_seed[host(v)]).collect();
        if q.is_empty() {
            q = (0..c.n()).collect();
        }
        let td = heuristic_decomposition(&c);
        let sep = balanced_separation(&c, &q, &td)?;
        let (left, right) = (sep.left(), sep.right());
        if left.len() == c.n() || right.len() == c.n() || sep.order() == 0 {
            return Err(Error::NoProgress(c.n()));
        }
        let left: Vec<usize> = left.into_iter().map(host).collect();
        let right: Vec<usize> = right.into_iter().map(host).collect();
        let (l, r) = crate::par::join(
            || recurse(g, &left, in_seed, eta),
            || recurse(g, &right, in_seed, eta),
        );
        let mut out: Vec<usize> = sep.separator().into_iter().map(host).collect();
        out.extend(l?);
        out.extend(r?);
        Ok(out)
    });
    let mut out = Vec::new();
    for f in found {
        out.extend(f?);
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_grid;
    use crate::problems::opt_brute;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn exact_matches_problem_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..40 {
            let n = rng.gen_range(1..=10);
            let p = rng.gen_range(0.2..0.7);
            let g = random_graph(&mut rng, n, p);
            for eta in 0..=2 {
                let m = exact_modulator(&g, eta).unwrap();
                let opt = opt_brute(Problem::TreewidthModulator(eta as u8), &g).unwrap().unwrap().value;
                assert_eq!(m.len() as i64, opt);
                assert!(m.certifies(&g));
            }
        }
    }

    #[test]
    fn grid_four_forest_modulator() {
        let g = make_grid(4).unwrap();
        let m = recursive_modulator(&g, 1, &[]).unwrap();
        assert!(m.certifies(&g));
        let best = exact_modulator(&g, 1).unwrap();
        assert!(best.len() <= m.len());
    }

    #[test]
    fn already_small_treewidth() {
        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert!(recursive_modulator(&tree, 1, &[]).unwrap().is_empty());
    }

    #[test]
    fn recursive_is_sound_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..40 {
            let n = rng.gen_range(1..=24);
            let p = rng.gen_range(0.05..0.4);
            let g = random_graph(&mut rng, n, p);
            let seed: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
            for eta in 0..=2 {
                let m = recursive_modulator(&g, eta, &seed).unwrap();
                assert!(m.certifies(&g));
            }
        }
    }

    #[test]
    fn bad_certificate_detected() {
        let g = make_grid(3).unwrap();
        let mut m = exact_modulator(&g, 1).unwrap();
        m.vertices.clear();
        assert!(!m.certifies(&g));
        assert!(Modulator::new(&g, vec![], 1).is_err());
    }
}
