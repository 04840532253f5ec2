//! The problem catalog: feasibility predicates, optimum oracles and
//! empirical checks of separability and bidimensionality.

mod brute;
mod checks;

use std::fmt;
use std::str::FromStr;

pub use brute::{opt_brute, opt_value, BRUTE_BUDGET, CYCLE_PACKING_BUDGET};
pub(crate) use brute::{min_dominating_set_masks, min_fvs_masks, min_vertex_cover_masks};
pub use checks::{
    check_bidimensionality, check_parameter_treewidth, check_separability, BidimRow, ParameterTreewidthReport,
    SeparabilityReport,
};

use crate::error::Error;
use crate::graph::small::{bits, full, is_forest};
use crate::graph::Graph;
use crate::td::dp::DpKind;
use crate::td::exact::treewidth_at_most_masks;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    VertexCover,
    IndependentSet,
    DominatingSet,
    FeedbackVertexSet,
    CyclePacking,
    /// Treewidth-η-modulator; the catalog ships η ∈ {0, 1}.
    TreewidthModulator(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetKind {
    Vertex,
    Edge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Minor,
    Contraction,
}

impl Problem {
    pub const CATALOG: [Problem; 7] = [
        Problem::VertexCover,
        Problem::IndependentSet,
        Problem::DominatingSet,
        Problem::FeedbackVertexSet,
        Problem::CyclePacking,
        Problem::TreewidthModulator(0),
        Problem::TreewidthModulator(1),
    ];

    pub fn name(&self) -> String {
        match self {
            Problem::VertexCover => "vertex-cover".into(),
            Problem::IndependentSet => "independent-set".into(),
            Problem::DominatingSet => "dominating-set".into(),
            Problem::FeedbackVertexSet => "feedback-vertex-set".into(),
            Problem::CyclePacking => "cycle-packing".into(),
            Problem::TreewidthModulator(eta) => format!("tw-modulator-{eta}"),
        }
    }

    pub fn objective(&self) -> Objective {
        match self {
            Problem::IndependentSet | Problem::CyclePacking => Objective::Maximize,
            _ => Objective::Minimize,
        }
    }

    /// Every cataloged problem asks for a vertex set; Cycle Packing's
    /// solution is the set of one chosen vertex per cycle.
    pub fn subset_kind(&self) -> SubsetKind {
        SubsetKind::Vertex
    }

    /// Declared separability function `f(t)`.
    pub fn separability(&self, t: usize) -> usize {
        match self {
            Problem::DominatingSet => 2 * t,
            _ => t,
        }
    }

    pub fn closure(&self) -> Closure {
        match self {
            Problem::IndependentSet | Problem::DominatingSet => Closure::Contraction,
            _ => Closure::Minor,
        }
    }

    pub(crate) fn dp_kind(&self) -> Option<DpKind> {
        match self {
            Problem::VertexCover | Problem::TreewidthModulator(0) => Some(DpKind::Cover),
            Problem::IndependentSet => Some(DpKind::Independent),
            Problem::DominatingSet => Some(DpKind::Domination),
            Problem::FeedbackVertexSet | Problem::TreewidthModulator(1) => Some(DpKind::ForestDeletion),
            _ => None,
        }
    }

    pub fn dp_supported(&self) -> bool {
        self.dp_kind().is_some()
    }

    /// Whether `(G, k)` is a yes-instance given `OPT(G)`.
    pub fn is_yes(&self, opt: i64, k: i64) -> bool {
        match self.objective() {
            Objective::Minimize => opt <= k,
            Objective::Maximize => opt >= k,
        }
    }

    /// The predicate φ(G, S). `s` may be unsorted.
    pub fn feasible(&self, g: &Graph, s: &[usize]) -> bool {
        if s.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let ins = g.indicator(s);
        match self {
            Problem::VertexCover => g.edges().all(|(u, v)| ins[u] || ins[v]),
            Problem::IndependentSet => g.edges().all(|(u, v)| !(ins[u] && ins[v])),
            Problem::DominatingSet => (0..g.n()).all(|v| ins[v] || g.neighbors(v).iter().any(|&w| ins[w])),
            Problem::FeedbackVertexSet => g.remove_vertices(s).0.is_forest(),
            Problem::TreewidthModulator(eta) => {
                let (h, _) = g.remove_vertices(s);
                match h.n() {
                    0..=64 => treewidth_at_most_masks(&h.masks(), *eta as usize),
                    _ => false,
                }
            }
            Problem::CyclePacking => {
                g.n() <= 64 && {
                    let adj = g.masks();
                    let sm = s.iter().fold(0u64, |m, &v| m | (1 << v));
                    brute::cycle_family_hits(&adj, sm)
                }
            }
        }
    }

    /// Mask form of φ for graphs with at most 64 vertices.
    pub(crate) fn feasible_mask(&self, adj: &[u64], s: u64) -> bool {
        let all = full(adj.len());
        match self {
            Problem::VertexCover | Problem::TreewidthModulator(0) => bits(all & !s).all(|v| adj[v] & !s == 0),
            Problem::IndependentSet => bits(s).all(|v| adj[v] & s == 0),
            Problem::DominatingSet => bits(s).fold(s, |m, v| m | adj[v]) == all,
            Problem::FeedbackVertexSet | Problem::TreewidthModulator(1) => is_forest(adj, all & !s),
            Problem::TreewidthModulator(eta) => {
                let keep: Vec<usize> = bits(all & !s).collect();
                let mut pos = [0usize; 64];
                for (i, &v) in keep.iter().enumerate() {
                    pos[v] = i;
                }
                let sub: Vec<u64> = keep
                    .iter()
                    .map(|&v| bits(adj[v] & !s).fold(0, |m, w| m | (1 << pos[w])))
                    .collect();
                treewidth_at_most_masks(&sub, *eta as usize)
            }
            Problem::CyclePacking => brute::cycle_family_hits(adj, s),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Problem::CATALOG
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<String> = Problem::CATALOG.iter().map(|p| p.name()).collect();
                Error::InvalidParameter(format!("unknown problem `{s}`; expected one of {}", names.join(", ")))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_grid;

    #[test]
    fn names_round_trip() {
        for p in Problem::CATALOG {
            assert_eq!(p.name().parse::<Problem>().unwrap(), p);
        }
        assert!("steiner-tree".parse::<Problem>().is_err());
    }

    #[test]
    fn declared_properties() {
        assert_eq!(Problem::DominatingSet.separability(3), 6);
        assert_eq!(Problem::VertexCover.separability(3), 3);
        assert_eq!(Problem::IndependentSet.objective(), Objective::Maximize);
        assert_eq!(Problem::IndependentSet.closure(), Closure::Contraction);
        assert_eq!(Problem::CyclePacking.closure(), Closure::Minor);
        assert!(!Problem::CyclePacking.dp_supported());
        assert!(Problem::is_yes(&Problem::VertexCover, 2, 2));
        assert!(!Problem::is_yes(&Problem::VertexCover, 2, -1));
        assert!(Problem::is_yes(&Problem::IndependentSet, 2, -1));
    }

    #[test]
    fn predicates_agree_with_mask_forms() {
        let g = make_grid(3).unwrap();
        let adj = g.masks();
        for s in 0u64..(1 << 9) {
            let set: Vec<usize> = bits(s).collect();
            for p in Problem::CATALOG {
                if p == Problem::CyclePacking && s.count_ones() > 3 {
                    continue;
                }
                assert_eq!(p.feasible(&g, &set), p.feasible_mask(&adj, s), "{p} {set:?}");
            }
        }
    }
}
