use std::collections::BTreeSet;

use super::TreeDecomposition;
use crate::graph::Graph;

/// Min-fill elimination ordering; ties go to lower degree, then lower id.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut nb: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut fill = vec![0usize; n];
    let fill_of = |nb: &[BTreeSet<usize>], v: usize| {
        let list: Vec<usize> = nb[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                if !nb[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };
    for v in 0..n {
        fill[v] = fill_of(&nb, v);
    }
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill[v], nb[v].len(), v))
            .expect("a vertex remains");
        let list: Vec<usize> = nb[v].iter().copied().collect();
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                nb[a].insert(b);
                nb[b].insert(a);
            }
        }
        for &a in &list {
            nb[a].remove(&v);
        }
        nb[v].clear();
        alive[v] = false;
        order.push(v);
        // fill counts can only change within distance two of v
        let mut touched: BTreeSet<usize> = list.iter().copied().collect();
        for &a in &list {
            touched.extend(nb[a].iter().copied());
        }
        for w in touched {
            fill[w] = fill_of(&nb, w);
        }
    }
    order
}

/// Valid decomposition from the min-fill ordering; no optimality promise.
pub fn heuristic_decomposition(g: &Graph) -> TreeDecomposition {
    TreeDecomposition::from_elimination_order(g, &min_fill_order(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_grid;
    use crate::td::exact_treewidth;

    #[test]
    fn tree_gets_width_one() {
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let td = heuristic_decomposition(&g);
        assert_eq!(td.validate(&g), Ok(()));
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn grid_three() {
        let g = make_grid(3).unwrap();
        let td = heuristic_decomposition(&g);
        assert_eq!(td.validate(&g), Ok(()));
        assert!(td.width() >= exact_treewidth(&g).unwrap().0);
    }

    #[test]
    fn empty_graph() {
        let td = heuristic_decomposition(&Graph::new(0));
        assert_eq!(td.nodes(), 0);
        assert_eq!(td.validate(&Graph::new(0)), Ok(()));
    }
}
