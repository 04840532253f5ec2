use super::Graph;
use crate::error::{Error, Result};

/// Id of grid vertex `(x, y)`, both 1-based, in a `t × t` grid.
#[inline]
pub fn grid_vertex(t: usize, x: usize, y: usize) -> usize {
    (x - 1) * t + (y - 1)
}

/// The `t × t` grid: `(x,y) ~ (x',y')` iff `|x-x'| + |y-y'| = 1`.
pub fn make_grid(t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::InvalidParameter("grid side must be at least 1".into()));
    }
    let mut g = Graph::new(t * t);
    for x in 1..=t {
        for y in 1..=t {
            if x < t {
                g.add_edge(grid_vertex(t, x, y), grid_vertex(t, x + 1, y))?;
            }
            if y < t {
                g.add_edge(grid_vertex(t, x, y), grid_vertex(t, x, y + 1))?;
            }
        }
    }
    Ok(g)
}

/// The triangulated grid with one corner joined to the whole border:
/// the grid plus every anti-diagonal `(x+1,y)(x,y+1)` for `1 <= x,y <= t-1`,
/// plus `(t,t)` adjacent to each vertex with `x ∈ {1,t}` or `y ∈ {1,t}`.
pub fn make_gamma(t: usize) -> Result<Graph> {
    if t < 2 {
        return Err(Error::InvalidParameter("gamma graph needs t >= 2".into()));
    }
    let mut g = make_grid(t)?;
    for x in 1..t {
        for y in 1..t {
            g.add_edge(grid_vertex(t, x + 1, y), grid_vertex(t, x, y + 1))?;
        }
    }
    let corner = grid_vertex(t, t, t);
    for x in 1..=t {
        for y in 1..=t {
            let v = grid_vertex(t, x, y);
            if v != corner && (x == 1 || x == t || y == 1 || y == t) {
                g.add_edge(corner, v)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent edge count for the gamma graph: walk all vertex pairs and
    /// apply the three adjacency rules directly.
    fn gamma_edges_by_pairs(t: usize) -> usize {
        let coords: Vec<(i64, i64)> = (1..=t as i64)
            .flat_map(|x| (1..=t as i64).map(move |y| (x, y)))
            .collect();
        let t = t as i64;
        let border = |(x, y): (i64, i64)| x == 1 || x == t || y == 1 || y == t;
        let mut count = 0;
        for i in 0..coords.len() {
            for j in i + 1..coords.len() {
                let (a, b) = (coords[i], coords[j]);
                let grid = (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1;
                // (x+1,y)-(x,y+1): coordinates differ by (+1,-1) or (-1,+1), both sums equal
                let diag = (a.0 - b.0).abs() == 1
                    && (a.1 - b.1).abs() == 1
                    && a.0 + a.1 == b.0 + b.1
                    && a.0.min(b.0) <= t - 1
                    && a.1.min(b.1) <= t - 1;
                let corner = (a == (t, t) && border(b)) || (b == (t, t) && border(a));
                if grid || diag || corner {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn grid_sizes() {
        assert!(make_grid(0).is_err());
        for t in 1..=6 {
            let g = make_grid(t).unwrap();
            assert_eq!(g.n(), t * t);
            assert_eq!(g.m(), 2 * t * (t - 1));
        }
        let g2 = make_grid(2).unwrap();
        assert!((0..4).all(|v| g2.degree(v) == 2));
    }

    #[test]
    fn gamma_two_is_k4() {
        let g = make_gamma(2).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 6);
        assert!(make_gamma(1).is_err());
    }

    #[test]
    fn gamma_matches_pairwise_oracle() {
        // frozen from the pairwise oracle: t=3 gives 12 grid + 4 diagonal + 5 corner edges
        assert_eq!(gamma_edges_by_pairs(3), 21);
        for t in 2..=9 {
            let g = make_gamma(t).unwrap();
            assert_eq!(g.n(), t * t);
            assert_eq!(g.m(), gamma_edges_by_pairs(t), "t={t}");
        }
    }

    #[test]
    fn gamma_nine_structure() {
        let t = 9;
        let g = make_gamma(t).unwrap();
        let corner = grid_vertex(t, t, t);
        // corner sees the whole border: 4(t-1) border vertices minus itself
        assert_eq!(g.degree(corner), 4 * (t - 1) - 1);
        // an interior vertex has 4 grid + 2 diagonal neighbours
        assert_eq!(g.degree(grid_vertex(t, 5, 5)), 6);
        assert_eq!(g.m(), 2 * t * (t - 1) + (t - 1) * (t - 1) + (4 * (t - 1) - 1) - 2);
    }
}
