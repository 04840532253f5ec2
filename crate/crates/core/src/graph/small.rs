//! Bit-mask helpers for graphs with at most 64 vertices.

#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_of(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | (1u64 << v))
}

/// Number of edges of the subgraph induced by `mask`.
pub(crate) fn edges_in(adj: &[u64], mask: u64) -> u32 {
    bits(mask).map(|v| (adj[v] & mask).count_ones()).sum::<u32>() / 2
}

/// Number of connected components of the subgraph induced by `mask`.
pub(crate) fn components_in(adj: &[u64], mask: u64) -> u32 {
    let mut left = mask;
    let mut count = 0;
    while left != 0 {
        let start = left & left.wrapping_neg();
        let comp = reach(adj, mask, start);
        left &= !comp;
        count += 1;
    }
    count
}

/// Vertices of `mask` reachable from `from` inside `mask`.
#[inline]
pub(crate) fn reach(adj: &[u64], mask: u64, from: u64) -> u64 {
    let mut seen = from & mask;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        next &= mask & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

pub(crate) fn is_forest(adj: &[u64], mask: u64) -> bool {
    edges_in(adj, mask) + components_in(adj, mask) == mask.count_ones()
}

/// All `k`-subsets of `0..n` as masks, in increasing numeric order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let mut cur: Option<u64> = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(full(k))
    };
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == 0 {
            None
        } else {
            // Gosper's hack
            let u = c & c.wrapping_neg();
            let v = c.wrapping_add(u);
            if v == 0 {
                None
            } else {
                let next = v + (((v ^ c) / u) >> 2);
                if next >= limit || (limit == u64::MAX && next < c) {
                    None
                } else {
                    Some(next)
                }
            }
        };
        Some(c)
    })
}
