use std::collections::BTreeMap;

use super::Graph;
use crate::error::{Error, Result};

/// A graph with an injectively labelled boundary. Labels are positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundariedGraph {
    graph: Graph,
    /// label -> boundary vertex, ordered by label
    labels: BTreeMap<u32, usize>,
}

/// A boundaried graph with an annotated vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedBoundariedGraph {
    pub base: BoundariedGraph,
    annotated: Vec<usize>,
}

impl AnnotatedBoundariedGraph {
    pub fn new(base: BoundariedGraph, mut annotated: Vec<usize>) -> Result<Self> {
        annotated.sort_unstable();
        annotated.dedup();
        if let Some(&v) = annotated.iter().find(|&&v| v >= base.graph().n()) {
            return Err(Error::MissingVertex(v));
        }
        Ok(AnnotatedBoundariedGraph { base, annotated })
    }

    pub fn annotated(&self) -> &[usize] {
        &self.annotated
    }
}

impl BoundariedGraph {
    /// `boundary` lists `(vertex, label)` pairs.
    pub fn new(graph: Graph, boundary: &[(usize, u32)]) -> Result<Self> {
        let mut labels = BTreeMap::new();
        let mut used = vec![false; graph.n()];
        for &(v, l) in boundary {
            if v >= graph.n() {
                return Err(Error::MissingVertex(v));
            }
            if l == 0 {
                return Err(Error::InvalidParameter("boundary labels must be positive".into()));
            }
            if used[v] {
                return Err(Error::InvalidParameter(format!("vertex {v} labelled twice")));
            }
            if labels.insert(l, v).is_some() {
                return Err(Error::InvalidParameter(format!("label {l} used twice")));
            }
            used[v] = true;
        }
        Ok(BoundariedGraph { graph, labels })
    }

    /// Boundary `boundary[i]` gets label `i + 1`.
    pub fn with_boundary(graph: Graph, boundary: &[usize]) -> Result<Self> {
        let pairs: Vec<(usize, u32)> = boundary
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32 + 1))
            .collect();
        Self::new(graph, &pairs)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `Λ(G)` in increasing order.
    pub fn label_set(&self) -> Vec<u32> {
        self.labels.keys().copied().collect()
    }

    pub fn vertex_of(&self, label: u32) -> Option<usize> {
        self.labels.get(&label).copied()
    }

    pub fn label_of(&self, v: usize) -> Option<u32> {
        self.labels.iter().find(|(_, &w)| w == v).map(|(&l, _)| l)
    }

    /// Boundary vertices ordered by label.
    pub fn boundary(&self) -> Vec<usize> {
        self.labels.values().copied().collect()
    }

    /// `(label, vertex)` pairs ordered by label.
    pub fn labelled(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.labels.iter().map(|(&l, &v)| (l, v))
    }

    /// True when every label lies in `1..=t`.
    pub fn is_t_boundaried(&self, t: u32) -> bool {
        self.labels.keys().all(|&l| l <= t)
    }
}

/// Result of `g1 ⊕ g2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glued {
    pub graph: Graph,
    /// image of every vertex of `g1`
    pub heir1: Vec<usize>,
    /// image of every vertex of `g2`
    pub heir2: Vec<usize>,
}

/// Disjoint union with equally-labelled boundary vertices identified. Edges
/// present on both sides collapse to one. Vertices of `g1` keep their ids;
/// the remaining vertices of `g2` follow in increasing order.
pub fn glue(g1: &BoundariedGraph, g2: &BoundariedGraph) -> Glued {
    let n1 = g1.n();
    let mut heir1: Vec<usize> = (0..n1).collect();
    let mut heir2 = vec![usize::MAX; g2.n()];
    for (l, v2) in g2.labelled() {
        if let Some(v1) = g1.vertex_of(l) {
            heir2[v2] = v1;
        }
    }
    let mut next = n1;
    for h in heir2.iter_mut() {
        if *h == usize::MAX {
            *h = next;
            next += 1;
        }
    }
    let mut graph = g1.graph().clone();
    for _ in n1..next {
        graph.add_vertex();
    }
    for (u, v) in g2.graph().edges() {
        graph
            .add_edge(heir2[u], heir2[v])
            .expect("heirs of distinct vertices are distinct");
    }
    heir1.truncate(n1);
    Glued { graph, heir1, heir2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_bg() -> BoundariedGraph {
        BoundariedGraph::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn labels_must_be_injective() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(BoundariedGraph::new(g.clone(), &[(0, 1), (1, 1)]).is_err());
        assert!(BoundariedGraph::new(g.clone(), &[(0, 1), (0, 2)]).is_err());
        assert!(BoundariedGraph::new(g.clone(), &[(0, 0)]).is_err());
        let bg = BoundariedGraph::new(g, &[(1, 7)]).unwrap();
        assert_eq!(bg.label_set(), vec![7]);
        assert!(!bg.is_t_boundaried(6));
        assert!(bg.is_t_boundaried(7));
    }

    #[test]
    fn disjoint_labels_give_disjoint_union() {
        let a = BoundariedGraph::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), &[(0, 1)]).unwrap();
        let b = BoundariedGraph::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), &[(0, 2)]).unwrap();
        let r = glue(&a, &b);
        assert_eq!(r.graph.n(), 4);
        assert_eq!(r.graph.m(), 2);
        assert_eq!(r.heir2, vec![2, 3]);
    }

    #[test]
    fn shared_edge_collapses() {
        let r = glue(&edge_bg(), &edge_bg());
        assert_eq!(r.graph.n(), 2);
        assert_eq!(r.graph.m(), 1);
        assert_eq!(r.heir1, r.heir2);
    }

    #[test]
    fn triangle_glued_to_pendant_edge() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let a = BoundariedGraph::new(tri, &[(2, 1)]).unwrap();
        let b = BoundariedGraph::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), &[(1, 1)]).unwrap();
        let r = glue(&a, &b);
        assert_eq!((r.graph.n(), r.graph.m()), (4, 4));
        assert_eq!(r.heir2[1], 2);
    }

    #[test]
    fn annotated_set_checked() {
        let bg = edge_bg();
        assert!(AnnotatedBoundariedGraph::new(bg.clone(), vec![3]).is_err());
        let a = AnnotatedBoundariedGraph::new(bg, vec![1, 0, 1]).unwrap();
        assert_eq!(a.annotated(), &[0, 1]);
    }
}
