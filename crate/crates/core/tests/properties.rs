use proptest::prelude::*;

use protrude::fii::{compute_signature, kernelize, KernelizeOptions, build_replacement_table_with, TableOptions};
use protrude::graph::canon::isomorphic;
use protrude::graph::io::{parse_graph, write_graph};
use protrude::graph::{glue, make_gamma, make_grid, minor_op, BoundariedGraph, MinorOp};
use protrude::modulator::{exact_modulator, recursive_modulator};
use protrude::problems::{opt_brute, opt_value};
use protrude::protrusion::{build_pd, validate_pd};
use protrude::separation::{balanced_separation, is_balanced};
use protrude::td::{exact_treewidth, heuristic_decomposition, solve_via_dp};
use protrude::{Graph, Problem};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v).unwrap();
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

fn sparse_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..2 * n).prop_map(move |edges| {
            let mut g = Graph::new(n);
            for (u, v) in edges {
                if u != v {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        })
    })
}

/// Labels `1..=3` placed on distinct vertices, each label kept or dropped.
fn boundaried(max_n: usize) -> impl Strategy<Value = BoundariedGraph> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=n.min(3)), any::<[bool; 3]>())
    })
    .prop_map(|(g, vs, keep)| {
        let labelled: Vec<(usize, u32)> =
            vs.into_iter().zip(1u32..).filter(|&(_, l)| keep[l as usize - 1]).collect();
        BoundariedGraph::new(g, &labelled).unwrap()
    })
}

const DP_PROBLEMS: [Problem; 4] =
    [Problem::VertexCover, Problem::IndependentSet, Problem::DominatingSet, Problem::FeedbackVertexSet];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn glue_counts_and_commutes(a in boundaried(6), b in boundaried(6)) {
        let shared = a.label_set().iter().filter(|l| b.label_set().contains(l)).count();
        let ab = glue(&a, &b);
        let ba = glue(&b, &a);
        prop_assert_eq!(ab.graph.n(), a.n() + b.n() - shared);
        prop_assert!(isomorphic(&ab.graph, &ba.graph));
        for (l, v1) in a.labelled() {
            if let Some(v2) = b.vertex_of(l) {
                prop_assert_eq!(ab.heir1[v1], ab.heir2[v2]);
            }
        }
        prop_assert!(ab.heir1.iter().chain(&ab.heir2).all(|&h| h < ab.graph.n()));
    }

    #[test]
    fn graph_text_round_trip(g in graph(10)) {
        let text = write_graph(&g);
        prop_assert_eq!(&parse_graph(&text).unwrap(), &g);
        prop_assert_eq!(write_graph(&parse_graph(&text).unwrap()), text);
    }

    #[test]
    fn minor_ops_shrink(g in graph(8), u in 0usize..8, v in 0usize..8) {
        let (u, v) = (u % g.n(), v % g.n());
        let gd = minor_op(&g, MinorOp::DeleteVertex(u)).unwrap();
        prop_assert_eq!(gd.n(), g.n() - 1);
        if g.has_edge(u, v) {
            prop_assert_eq!(minor_op(&g, MinorOp::Contract(u, v)).unwrap().n(), g.n() - 1);
            prop_assert_eq!(minor_op(&g, MinorOp::DeleteEdge(u, v)).unwrap().m(), g.m() - 1);
        }
    }

    #[test]
    fn minor_closed_problems_do_not_grow(g in graph(7), u in 0usize..7, v in 0usize..7) {
        let (u, v) = (u % g.n(), v % g.n());
        let mut minors = vec![minor_op(&g, MinorOp::DeleteVertex(u)).unwrap()];
        if g.has_edge(u, v) {
            minors.push(minor_op(&g, MinorOp::Contract(u, v)).unwrap());
            minors.push(minor_op(&g, MinorOp::DeleteEdge(u, v)).unwrap());
        }
        for p in [Problem::VertexCover, Problem::FeedbackVertexSet] {
            let opt = opt_value(p, &g).unwrap();
            for h in &minors {
                prop_assert!(opt_value(p, h).unwrap() <= opt);
            }
        }
        if g.has_edge(u, v) {
            let h = minor_op(&g, MinorOp::Contract(u, v)).unwrap();
            let is = Problem::IndependentSet;
            prop_assert!(opt_value(is, &h).unwrap() <= opt_value(is, &g).unwrap());
        }
    }

    #[test]
    fn exact_treewidth_bounds(g in graph(9)) {
        let (tw, td) = exact_treewidth(&g).unwrap();
        prop_assert!(td.validate(&g).is_ok());
        prop_assert_eq!(td.width(), tw);
        prop_assert!(tw <= heuristic_decomposition(&g).width());
        for v in 0..g.n() {
            let h = minor_op(&g, MinorOp::DeleteVertex(v)).unwrap();
            prop_assert!(exact_treewidth(&h).unwrap().0 <= tw);
        }
    }

    #[test]
    fn treewidth_of_union_is_max(a in graph(8), b in graph(8)) {
        let u = a.disjoint_union(&b);
        let (ta, tb) = (exact_treewidth(&a).unwrap().0, exact_treewidth(&b).unwrap().0);
        prop_assert_eq!(exact_treewidth(&u).unwrap().0, ta.max(tb));
    }

    #[test]
    fn dp_matches_brute(g in graph(10)) {
        let td = heuristic_decomposition(&g);
        for p in DP_PROBLEMS {
            let brute = opt_brute(p, &g).unwrap().unwrap();
            prop_assert!(p.feasible(&g, &brute.witness));
            let dp = solve_via_dp(p, &g, &td).unwrap();
            prop_assert_eq!(dp.value, brute.value, "{}", p);
            prop_assert!(p.feasible(&g, &dp.witness));
            prop_assert_eq!(dp.witness.len() as i64, dp.value);
        }
    }

    #[test]
    fn separations_are_valid_and_balanced(g in graph(14), pick in any::<u16>()) {
        let q: Vec<usize> = (0..g.n()).filter(|v| pick >> (v % 16) & 1 == 1).collect();
        let td = heuristic_decomposition(&g);
        let sep = balanced_separation(&g, &q, &td).unwrap();
        prop_assert!(sep.is_valid_for(&g));
        prop_assert!(sep.order() <= td.width() + 1);
        prop_assert!(is_balanced(&sep, &q));
    }

    #[test]
    fn modulators_certify(g in sparse_graph(20), eta in 0usize..3) {
        let s = recursive_modulator(&g, eta, &[]).unwrap();
        prop_assert!(s.certifies(&g));
        prop_assert!(s.certificate.width() <= eta || s.len() == g.n());
        let pd = build_pd(&g, &s).unwrap();
        prop_assert!(validate_pd(&g, &pd, pd.alpha(), pd.measured_r(&g)).is_ok());
        prop_assert!(s.vertices.iter().all(|v| pd.core.binary_search(v).is_ok()));
        for (i, a) in pd.parts.iter().enumerate() {
            prop_assert!(g.open_neighborhood(a).iter().all(|w| pd.core.binary_search(w).is_ok()));
            for b in &pd.parts[i + 1..] {
                prop_assert!(a.iter().all(|v| !b.contains(v)));
            }
        }
    }

    #[test]
    fn exact_modulator_is_monotone(g in graph(8), v in 0usize..8, eta in 0usize..2) {
        let v = v % g.n();
        let s = exact_modulator(&g, eta).unwrap();
        prop_assert!(s.certifies(&g));
        let h = minor_op(&g, MinorOp::DeleteVertex(v)).unwrap();
        prop_assert!(exact_modulator(&h, eta).unwrap().len() <= s.len());
    }

    #[test]
    fn signatures_are_normalised_and_capped(bg in boundaried(9), which in 0usize..4) {
        let p = DP_PROBLEMS[which];
        let sig = compute_signature(p, &bg).unwrap();
        let defined: Vec<i64> = sig.class.entries.iter().flatten().copied().collect();
        prop_assert_eq!(defined.iter().copied().min(), Some(0));
        let cap = 2 * p.separability(bg.label_set().len()) as i64;
        prop_assert!(defined.iter().all(|&e| (0..=cap).contains(&e)));
        prop_assert_eq!(&sig.class.labels, &bg.label_set());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernels_preserve_membership(g in sparse_graph(16), which in 0usize..3, dk in -1i64..=1) {
        let p = [Problem::VertexCover, Problem::DominatingSet, Problem::FeedbackVertexSet][which];
        let opts = TableOptions { certify: false, ..Default::default() };
        let (table, _) = build_replacement_table_with(p, 1, 5, &opts).unwrap();
        let opt = opt_value(p, &g).unwrap();
        let k = opt + dk;
        let kern = kernelize(p, &g, k, &table, &KernelizeOptions { verify_steps: true, ..Default::default() }).unwrap();
        prop_assert!(kern.k <= k);
        prop_assert!(kern.graph.n() <= g.n());
        prop_assert_eq!(p.is_yes(opt, k), p.is_yes(opt_value(p, &kern.graph).unwrap(), kern.k));
        let mut n = g.n();
        for step in &kern.trace {
            prop_assert_eq!(step.n_before, n);
            prop_assert!(step.n_after < step.n_before);
            prop_assert!(step.c <= 0);
            n = step.n_after;
        }
        prop_assert_eq!(n, kern.graph.n());
    }
}

#[test]
fn grid_and_gamma_shapes() {
    for t in 1..=10 {
        let g = make_grid(t).unwrap();
        assert_eq!(g.m(), 2 * t * (t - 1));
        if t >= 2 {
            assert_eq!(make_gamma(t).unwrap().n(), g.n());
        }
    }
}
