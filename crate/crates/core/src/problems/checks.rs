use super::{opt_brute, opt_value, Closure, Problem};
use crate::error::{Error, Result};
use crate::graph::{make_gamma, make_grid, Graph};
use crate::td::exact_treewidth_with_budget;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityReport {
    pub holds: bool,
    /// `|∂(L)|`
    pub t: usize,
    pub f_t: usize,
    /// `|SOL(G) ∩ L|` for the brute-force witness
    pub sol_in_l: i64,
    pub opt_l: i64,
    /// `f(t) - |OPT(G[L]) - |SOL(G) ∩ L||`; negative when the check fails
    pub slack: i64,
}

/// Checks `|SOL(G) ∩ L| − f(t) ≤ OPT(G[L]) ≤ |SOL(G) ∩ L| + f(t)` with
/// `t = |∂(L)|` and the witness produced by [`opt_brute`].
pub fn check_separability(p: Problem, g: &Graph, l: &[usize]) -> Result<SeparabilityReport> {
    if let Some(&v) = l.iter().find(|&&v| v >= g.n()) {
        return Err(Error::MissingVertex(v));
    }
    let sol = opt_brute(p, g)?.ok_or_else(|| Error::InvalidParameter(format!("{p} infeasible")))?;
    let inside = g.indicator(l);
    let sol_in_l = sol.witness.iter().filter(|&&v| inside[v]).count() as i64;
    let (gl, _) = g.induced_subgraph(l);
    let opt_l = opt_brute(p, &gl)?.map(|s| s.value).unwrap_or(0);
    let t = g.boundary(l).len();
    let f_t = p.separability(t);
    let slack = f_t as i64 - (opt_l - sol_in_l).abs();
    Ok(SeparabilityReport { holds: slack >= 0, t, f_t, sol_in_l, opt_l, slack })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BidimRow {
    pub k: usize,
    pub opt: i64,
    pub ratio: f64,
}

/// `OPT` on `⊞_k` (minor-closed problems) or `Γ_k` (contraction-closed
/// problems) for `k = 2..=kmax`, with `OPT / k²`.
pub fn check_bidimensionality(p: Problem, kmax: usize) -> Result<Vec<BidimRow>> {
    (2..=kmax)
        .map(|k| {
            let g = match p.closure() {
                Closure::Minor => make_grid(k)?,
                Closure::Contraction => make_gamma(k)?,
            };
            let opt = opt_value(p, &g)?;
            Ok(BidimRow { k, opt, ratio: opt as f64 / (k * k) as f64 })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParameterTreewidthReport {
    /// `(tw(G), OPT(G))` per corpus graph
    pub rows: Vec<(usize, i64)>,
    /// least-squares slope of `log tw` against `log OPT`, over rows with
    /// `tw >= 1` and `OPT >= 2`; `None` with fewer than two such rows
    pub exponent: Option<f64>,
    /// `max tw / sqrt(OPT)` over rows with `OPT >= 1`
    pub max_ratio: f64,
}

/// Exact treewidth (within `tw_budget` vertices) against `OPT` on a corpus.
pub fn check_parameter_treewidth(p: Problem, corpus: &[Graph], tw_budget: usize) -> Result<ParameterTreewidthReport> {
    let rows: Vec<Result<(usize, i64)>> = crate::par::map(corpus, |g| {
        let (tw, _) = exact_treewidth_with_budget(g, tw_budget)?;
        Ok((tw, opt_value(p, g)?))
    });
    let rows: Vec<(usize, i64)> = rows.into_iter().collect::<Result<_>>()?;
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|&&(tw, opt)| tw >= 1 && opt >= 2)
        .map(|&(tw, opt)| ((opt as f64).ln(), (tw as f64).ln()))
        .collect();
    let exponent = (pts.len() >= 2).then(|| {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        if sxx == 0.0 {
            0.0
        } else {
            sxy / sxx
        }
    });
    let max_ratio = rows
        .iter()
        .filter(|r| r.1 >= 1)
        .map(|&(tw, opt)| tw as f64 / (opt as f64).sqrt())
        .fold(0.0, f64::max);
    Ok(ParameterTreewidthReport { rows, exponent, max_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn whole_graph_has_zero_deviation() {
        let g = make_grid(3).unwrap();
        let all: Vec<usize> = (0..9).collect();
        let r = check_separability(Problem::VertexCover, &g, &all).unwrap();
        assert_eq!(r.t, 0);
        assert_eq!(r.opt_l, r.sol_in_l);
        assert!(r.holds);
    }

    #[test]
    fn path_prefix() {
        let r = check_separability(Problem::VertexCover, &path(6), &[0, 1, 2]).unwrap();
        assert_eq!(r.t, 1);
        assert_eq!(r.f_t, 1);
        assert!(r.holds);
    }

    #[test]
    fn modulator_grid_bound() {
        let rows = check_bidimensionality(Problem::TreewidthModulator(1), 4).unwrap();
        for r in &rows {
            let q = r.k / 2;
            assert!(r.opt >= (q * q) as i64, "k={}", r.k);
        }
        // η = 0 is vertex cover: ⌊k²/2⌋ on the grid, below k²
        let rows = check_bidimensionality(Problem::TreewidthModulator(0), 4).unwrap();
        let opts: Vec<i64> = rows.iter().map(|r| r.opt).collect();
        assert_eq!(opts, vec![2, 4, 8]);
    }

    #[test]
    fn independent_set_on_gamma() {
        let rows = check_bidimensionality(Problem::IndependentSet, 4).unwrap();
        assert_eq!(rows[1].k, 3);
        assert!(rows[1].opt >= 1);
        assert!(rows.iter().all(|r| r.ratio > 0.0));
    }

    #[test]
    fn parameter_treewidth_on_grids() {
        let corpus: Vec<Graph> = (1..=4).map(|t| make_grid(t).unwrap()).collect();
        let r = check_parameter_treewidth(Problem::VertexCover, &corpus, 20).unwrap();
        assert_eq!(r.rows[0], (0, 0));
        assert!(r.max_ratio <= 2.0);
        assert!(r.exponent.unwrap() > 0.0);
    }
}
