//! Canonical forms for small vertex-coloured graphs.
//!
//! [`canonical_form`] uses colour refinement with individualisation and keeps
//! the smallest adjacency code over all leaves of the search tree. Cells are
//! branched on one representative per twin class, since swapping twins is an
//! automorphism that fixes the partition. [`canonical_form_exhaustive`] tries
//! every colour-respecting permutation and is kept as a cross-check.

use super::small::bits;
use super::Graph;

pub const MAX_CANON_N: usize = 16;

/// Isomorphism-invariant code: colours in canonical order plus the upper
/// triangle of the relabelled adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonCode {
    pub n: u8,
    pub colors: Vec<u32>,
    pub bits: u128,
}

#[inline]
fn pair_bit(i: usize, j: usize) -> u32 {
    // i < j < 16; row-major over the upper triangle
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    (j * (j - 1) / 2 + i) as u32
}

fn code_for(adj: &[u64], colors: &[u32], order: &[usize]) -> CanonCode {
    let n = adj.len();
    let mut pos = [0usize; MAX_CANON_N];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut b: u128 = 0;
    for u in 0..n {
        for w in bits(adj[u]) {
            if w > u {
                b |= 1u128 << pair_bit(pos[u], pos[w]);
            }
        }
    }
    // later pairs are more significant; flip so that earlier pairs dominate
    let total = n * n.saturating_sub(1) / 2;
    let b = if total == 0 { 0 } else { b.reverse_bits() >> (128 - total) };
    CanonCode {
        n: n as u8,
        colors: order.iter().map(|&v| colors[v]).collect(),
        bits: b,
    }
}

fn refine(adj: &[u64], cells: &mut Vec<Vec<usize>>) {
    let n = adj.len();
    let mut cell_of = vec![0usize; n];
    loop {
        for (ci, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = ci;
            }
        }
        let cell_masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(n);
        for c in cells.iter() {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = c
                .iter()
                .map(|&v| {
                    let key = cell_masks
                        .iter()
                        .map(|&m| (adj[v] & m).count_ones())
                        .collect::<Vec<_>>();
                    (key, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let changed = next.len() != cells.len();
        *cells = next;
        if !changed {
            return;
        }
    }
}

fn search(
    adj: &[u64],
    colors: &[u32],
    cells: Vec<Vec<usize>>,
    best: &mut Option<(CanonCode, Vec<usize>)>,
) {
    let target = cells.iter().position(|c| c.len() > 1);
    let Some(ti) = target else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_for(adj, colors, &order);
        if best.as_ref().map_or(true, |(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = &cells[ti];
    let mut reps: Vec<usize> = Vec::new();
    for &v in cell {
        let twin_of_rep = reps.iter().any(|&r| {
            (adj[v] & !(1u64 << r)) == (adj[r] & !(1u64 << v))
        });
        if !twin_of_rep {
            reps.push(v);
        }
    }
    for v in reps {
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..ti]);
        next.push(vec![v]);
        next.push(cells[ti].iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[ti + 1..]);
        refine(adj, &mut next);
        search(adj, colors, next, best);
    }
}

/// Canonical code and canonical order (`order[p]` is the vertex placed at
/// position `p`) of a vertex-coloured graph given as adjacency masks.
pub(crate) fn canonical_masks(adj: &[u64], colors: &[u32]) -> (CanonCode, Vec<usize>) {
    let n = adj.len();
    assert!(n <= MAX_CANON_N, "canonical form supports at most {MAX_CANON_N} vertices");
    if n == 0 {
        return (
            CanonCode { n: 0, colors: vec![], bits: 0 },
            vec![],
        );
    }
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let mut cells: Vec<Vec<usize>> = palette
        .iter()
        .map(|&c| (0..n).filter(|&v| colors[v] == c).collect())
        .collect();
    refine(adj, &mut cells);
    let mut best = None;
    search(adj, colors, cells, &mut best);
    best.expect("search reaches at least one leaf")
}

/// Canonical code of `g` under vertex colours `colors` (use all zeros for an
/// uncoloured graph), together with the canonical order of its vertices.
pub fn canonical_form(g: &Graph, colors: &[u32]) -> (CanonCode, Vec<usize>) {
    assert_eq!(colors.len(), g.n());
    canonical_masks(&g.masks(), colors)
}

/// The graph relabelled into canonical order.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, order) = canonical_form(g, &vec![0; g.n()]);
    let mut perm = vec![0; g.n()];
    for (p, &v) in order.iter().enumerate() {
        perm[v] = p;
    }
    g.permuted(&perm)
}

/// Minimum code over every permutation that lists colours in ascending
/// order. Exponential; meant for graphs with at most 9 vertices.
pub fn canonical_form_exhaustive(g: &Graph, colors: &[u32]) -> CanonCode {
    let adj = g.masks();
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let mut best: Option<CanonCode> = None;
    permute_within_colors(&adj, colors, &mut order, 0, &mut best);
    best.unwrap_or(CanonCode { n: 0, colors: vec![], bits: 0 })
}

fn permute_within_colors(
    adj: &[u64],
    colors: &[u32],
    order: &mut Vec<usize>,
    k: usize,
    best: &mut Option<CanonCode>,
) {
    if k == order.len() {
        let code = code_for(adj, colors, order);
        if best.as_ref().map_or(true, |b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    for i in k..order.len() {
        if colors[order[i]] != colors[order[k]] {
            break;
        }
        order.swap(k, i);
        permute_within_colors(adj, colors, order, k + 1, best);
        order.swap(k, i);
    }
}

/// Isomorphism test by canonical codes.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.m() == b.m()
        && canonical_form(a, &vec![0; a.n()]).0 == canonical_form(b, &vec![0; b.n()]).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
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

    fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> (Graph, Vec<usize>) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        (g.permuted(&perm), perm)
    }

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=12);
            let g = random_graph(&mut rng, n, 0.4);
            let colors: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let (h, perm) = shuffled(&g, &mut rng);
            let mut hc = vec![0; n];
            for v in 0..n {
                hc[perm[v]] = colors[v];
            }
            assert_eq!(canonical_form(&g, &colors).0, canonical_form(&h, &hc).0);
        }
    }

    #[test]
    fn agrees_with_exhaustive_on_isomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let n = rng.gen_range(1..=7);
            let a = random_graph(&mut rng, n, 0.5);
            let b = if rng.gen_bool(0.5) {
                shuffled(&a, &mut rng).0
            } else {
                random_graph(&mut rng, n, 0.5)
            };
            let zeros = vec![0; n];
            let fast = canonical_form(&a, &zeros).0 == canonical_form(&b, &zeros).0;
            let slow = canonical_form_exhaustive(&a, &zeros) == canonical_form_exhaustive(&b, &zeros);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn symmetric_graphs_stay_cheap() {
        // star and complete graph exercise the twin pruning
        let mut star = Graph::new(16);
        for v in 1..16 {
            star.add_edge(0, v).unwrap();
        }
        let (code, _) = canonical_form(&star, &vec![0; 16]);
        assert_eq!(code.bits.count_ones(), 15);
        let mut k = Graph::new(12);
        for u in 0..12 {
            for v in u + 1..12 {
                k.add_edge(u, v).unwrap();
            }
        }
        assert_eq!(canonical_form(&k, &vec![0; 12]).0.bits.count_ones(), 66);
    }

    #[test]
    fn colours_distinguish() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let end = canonical_form(&p, &[1, 0, 0]).0;
        let mid = canonical_form(&p, &[0, 1, 0]).0;
        assert_ne!(end, mid);
        assert_eq!(end, canonical_form(&p, &[0, 0, 1]).0);
    }
}
