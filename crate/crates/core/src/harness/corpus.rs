use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar as lr_is_planar;

use crate::error::{Error, Result};
use crate::graph::{make_grid, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Grid,
    GridPendants,
    RandomPlanar,
    Union,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Grid => "grid",
            Family::GridPendants => "grid+pendants",
            Family::RandomPlanar => "random-planar",
            Family::Union => "union",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(Family::Grid),
            "grid+pendants" | "grid-pendants" => Ok(Family::GridPendants),
            "random-planar" | "planar" => Ok(Family::RandomPlanar),
            "union" => Ok(Family::Union),
            _ => Err(Error::InvalidParameter(format!("unknown corpus family `{s}`"))),
        }
    }
}

/// Generator parameters. Which fields matter depends on the family:
///
/// | family          | fields                                        |
/// |-----------------|-----------------------------------------------|
/// | `grid`          | `t` (one grid `⊞_t`, `count` ignored)         |
/// | `grid+pendants` | `count`, `t`, `pendants`, `tree_size`         |
/// | `random-planar` | `count`, `n_min..=n_max`, `keep`              |
/// | `union`         | `count`, `parts`, `t` (largest grid side)     |
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusParams {
    pub count: usize,
    /// grid side, `1..=12`
    pub t: usize,
    /// pendant trees per grid, at most `t²` (one per attachment vertex)
    pub pendants: usize,
    /// vertices per pendant tree, `1..=64`
    pub tree_size: usize,
    /// `3 <= n_min <= n_max <= 200`
    pub n_min: usize,
    pub n_max: usize,
    /// probability that an edge of the triangulation survives, in `[0, 1]`
    pub keep: f64,
    /// grids per disjoint union, `1..=8`
    pub parts: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { count: 10, t: 3, pendants: 2, tree_size: 15, n_min: 8, n_max: 22, keep: 0.7, parts: 2 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Corpus {
    pub family: Family,
    pub seed: u64,
    pub graphs: Vec<Graph>,
}

impl Corpus {
    /// `family-index`, zero-padded so ids sort in corpus order.
    pub fn instance_id(&self, i: usize) -> String {
        let width = self.graphs.len().max(1).to_string().len();
        format!("{}-{:0width$}", self.family, i)
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn validate(family: Family, p: &CorpusParams) -> Result<()> {
    let grid_side = |t: usize| {
        if (1..=12).contains(&t) {
            Ok(())
        } else {
            Err(invalid(format!("grid side {t} outside 1..=12")))
        }
    };
    match family {
        Family::Grid => grid_side(p.t),
        Family::GridPendants => {
            grid_side(p.t)?;
            if p.pendants > p.t * p.t {
                return Err(invalid(format!("{} pendant trees do not fit on {} grid vertices", p.pendants, p.t * p.t)));
            }
            if !(1..=64).contains(&p.tree_size) {
                return Err(invalid(format!("pendant tree size {} outside 1..=64", p.tree_size)));
            }
            Ok(())
        }
        Family::RandomPlanar => {
            if p.n_min < 3 || p.n_min > p.n_max || p.n_max > 200 {
                return Err(invalid(format!("need 3 <= n_min <= n_max <= 200, got {}..={}", p.n_min, p.n_max)));
            }
            if !(0.0..=1.0).contains(&p.keep) {
                return Err(invalid(format!("edge keep probability {} outside [0, 1]", p.keep)));
            }
            Ok(())
        }
        Family::Union => {
            grid_side(p.t)?;
            if !(1..=8).contains(&p.parts) {
                return Err(invalid(format!("union of {} parts outside 1..=8", p.parts)));
            }
            Ok(())
        }
    }
}

/// Deterministic per `seed`: instance `i` draws from its own ChaCha stream,
/// so corpora with a common seed share their prefixes.
pub fn gen_corpus(family: Family, params: &CorpusParams, seed: u64) -> Result<Corpus> {
    validate(family, params)?;
    let count = if family == Family::Grid { 1 } else { params.count };
    let mut graphs = Vec::with_capacity(count);
    for i in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let g = match family {
            Family::Grid => make_grid(params.t)?,
            Family::GridPendants => grid_with_pendants(params.t, params.pendants, params.tree_size, &mut rng)?,
            Family::RandomPlanar => {
                let n = rng.gen_range(params.n_min..=params.n_max);
                let g = random_planar(n, params.keep, &mut rng);
                if !is_planar(&g) {
                    return Err(Error::Certification(format!("random planar instance {i} failed the planarity test")));
                }
                g
            }
            Family::Union => {
                let mut g = Graph::new(0);
                for _ in 0..params.parts {
                    g = g.disjoint_union(&make_grid(rng.gen_range(1..=params.t))?);
                }
                g
            }
        };
        graphs.push(g);
    }
    Ok(Corpus { family, seed, graphs })
}

/// `⊞_t` with `pendants` random trees of `tree_size` vertices, each hung by
/// one edge from a distinct grid vertex. Grid vertices keep ids `0..t²`.
pub fn grid_with_pendants(t: usize, pendants: usize, tree_size: usize, rng: &mut impl Rng) -> Result<Graph> {
    let mut g = make_grid(t)?;
    let mut anchors: Vec<usize> = (0..t * t).collect();
    anchors.shuffle(rng);
    for &a in &anchors[..pendants] {
        let root = g.add_vertex();
        g.add_edge(a, root)?;
        let mut tree = vec![root];
        for _ in 1..tree_size {
            let parent = tree[rng.gen_range(0..tree.len())];
            let v = g.add_vertex();
            g.add_edge(parent, v)?;
            tree.push(v);
        }
    }
    Ok(g)
}

/// A stacked triangulation on `n` vertices, reshaped by `3n` random edge
/// flips, with each edge then kept independently with probability `keep`.
pub fn random_planar(n: usize, keep: f64, rng: &mut impl Rng) -> Graph {
    assert!(n >= 3, "a triangulation needs three vertices");
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([a, c, v]);
    }
    let mut g = Graph::new(n);
    for f in &faces {
        for (u, v) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            g.add_edge(u, v).expect("ids in range");
        }
    }
    for _ in 0..3 * n {
        flip_random_edge(&mut g, &mut faces, rng);
    }
    let kept: Vec<_> = g.edges().filter(|_| rng.gen_bool(keep)).collect();
    Graph::from_edges(n, &kept).expect("ids in range")
}

fn flip_random_edge(g: &mut Graph, faces: &mut [[usize; 3]], rng: &mut impl Rng) {
    let f = rng.gen_range(0..faces.len());
    let i = rng.gen_range(0..3);
    let (u, v) = (faces[f][i], faces[f][(i + 1) % 3]);
    let a = faces[f][(i + 2) % 3];
    let Some(h) = (0..faces.len()).find(|&h| h != f && faces[h].contains(&u) && faces[h].contains(&v)) else {
        return;
    };
    let b = faces[h].iter().copied().find(|&x| x != u && x != v).expect("a triangle");
    if a == b || g.has_edge(a, b) {
        return;
    }
    *g = {
        let edges: Vec<_> = g.edges().filter(|&e| e != (u.min(v), u.max(v))).collect();
        let mut next = Graph::from_edges(g.n(), &edges).expect("ids in range");
        next.add_edge(a, b).expect("ids in range");
        next
    };
    faces[f] = [a, b, u];
    faces[h] = [a, b, v];
}

/// Left-right planarity test.
pub fn is_planar(g: &Graph) -> bool {
    let mut pg = UnGraph::<(), ()>::with_capacity(g.n(), g.m());
    for _ in 0..g.n() {
        pg.add_node(());
    }
    for (u, v) in g.edges() {
        pg.add_edge((u as u32).into(), (v as u32).into(), ());
    }
    lr_is_planar(&pg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planar_params(n: usize) -> CorpusParams {
        CorpusParams { count: 20, n_min: n, n_max: n, ..Default::default() }
    }

    #[test]
    fn grid_family_is_the_grid() {
        let c = gen_corpus(Family::Grid, &CorpusParams { t: 3, ..Default::default() }, 0).unwrap();
        assert_eq!(c.graphs, vec![make_grid(3).unwrap()]);
    }

    #[test]
    fn same_seed_same_corpus() {
        for family in [Family::GridPendants, Family::RandomPlanar, Family::Union] {
            let p = CorpusParams::default();
            assert_eq!(gen_corpus(family, &p, 7).unwrap(), gen_corpus(family, &p, 7).unwrap());
            assert_ne!(gen_corpus(family, &p, 7).unwrap().graphs, gen_corpus(family, &p, 8).unwrap().graphs);
        }
    }

    #[test]
    fn random_planar_instances_are_planar() {
        let c = gen_corpus(Family::RandomPlanar, &planar_params(20), 1).unwrap();
        assert!(c.graphs.iter().all(|g| g.n() == 20 && is_planar(g)));
        let full = gen_corpus(Family::RandomPlanar, &CorpusParams { keep: 1.0, ..planar_params(20) }, 1).unwrap();
        // maximal planar: 3n − 6 edges
        assert!(full.graphs.iter().all(|g| g.m() == 54));
    }

    #[test]
    fn flips_vary_the_degree_sequence() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let degrees = |g: &Graph| {
            let mut d: Vec<_> = (0..g.n()).map(|v| g.degree(v)).collect();
            d.sort_unstable();
            d
        };
        let seqs: std::collections::BTreeSet<_> = (0..10).map(|_| degrees(&random_planar(12, 1.0, &mut rng))).collect();
        assert!(seqs.len() > 1);
    }

    #[test]
    fn planarity_test_rejects_k5_and_k33() {
        let k5: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        assert!(!is_planar(&Graph::from_edges(5, &k5).unwrap()));
        let k33: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        assert!(!is_planar(&Graph::from_edges(6, &k33).unwrap()));
        assert!(is_planar(&make_grid(5).unwrap()));
    }

    #[test]
    fn pendant_trees_hang_off_distinct_grid_vertices() {
        let p = CorpusParams { count: 5, t: 4, pendants: 3, tree_size: 15, ..Default::default() };
        for g in gen_corpus(Family::GridPendants, &p, 2).unwrap().graphs {
            assert_eq!(g.n(), 16 + 45);
            assert_eq!(g.m(), 24 + 45);
            let grid: Vec<usize> = (0..16).collect();
            let pieces = g.components_avoiding(&grid);
            assert_eq!(pieces.len(), 3);
            assert!(pieces.iter().all(|c| c.len() == 15 && g.open_neighborhood(c).len() == 1));
        }
    }

    #[test]
    fn parameter_ranges() {
        let bad = [
            (Family::Grid, CorpusParams { t: 0, ..Default::default() }),
            (Family::GridPendants, CorpusParams { t: 2, pendants: 5, ..Default::default() }),
            (Family::RandomPlanar, CorpusParams { n_min: 2, ..Default::default() }),
            (Family::RandomPlanar, CorpusParams { keep: 1.5, ..Default::default() }),
            (Family::Union, CorpusParams { parts: 0, ..Default::default() }),
        ];
        for (f, p) in bad {
            assert!(gen_corpus(f, &p, 0).is_err(), "{f} {p:?}");
        }
        assert_eq!("grid+pendants".parse::<Family>().unwrap(), Family::GridPendants);
        assert!("torus".parse::<Family>().is_err());
    }
}
