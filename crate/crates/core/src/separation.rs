//! 2/3-balanced separations read off a tree decomposition.

use crate::error::{Error, Result};
use crate::graph::{Graph, Separation};
use crate::td::TreeDecomposition;

/// `⌈2|q|/3⌉`
pub fn balance_limit(q_len: usize) -> usize {
    (2 * q_len).div_ceil(3)
}

/// Whether both strict sides hold at most `⌈2|q|/3⌉` vertices of `q`.
pub fn is_balanced(sep: &Separation, q: &[usize]) -> bool {
    let limit = balance_limit(q.len());
    let count = |side: &[usize]| q.iter().filter(|v| side.binary_search(v).is_ok()).count();
    count(&sep.left()) <= limit && count(&sep.right()) <= limit
}

/// A separation of order at most `width(td) + 1` whose strict sides each
/// hold at most `⌈2|q|/3⌉` vertices of `q`.
///
/// The separator starts as the lowest-numbered bag whose removal leaves no
/// component with more than half of `q`. Components are split into two
/// sides, and separator vertices whose outside neighbours all lie on one
/// side are then pushed into that side while balance allows, preferring the
/// move that keeps the larger side smallest.
pub fn balanced_separation(g: &Graph, q: &[usize], td: &TreeDecomposition) -> Result<Separation> {
    td.validate(g)
        .map_err(|v| Error::InvalidParameter(format!("invalid decomposition: {v}")))?;
    let mut q: Vec<usize> = q.to_vec();
    q.sort_unstable();
    q.dedup();
    if let Some(&v) = q.iter().find(|&&v| v >= g.n()) {
        return Err(Error::MissingVertex(v));
    }
    if g.n() == 0 {
        return Ok(Separation { a1: vec![], a2: vec![] });
    }
    let in_q = g.indicator(&q);
    let q_count = |vs: &[usize]| vs.iter().filter(|&&v| in_q[v]).count();

    let half = q.len() / 2;
    let bag = td
        .bags()
        .iter()
        .find(|bag| g.components_avoiding(bag).iter().all(|c| q_count(c) <= half))
        .expect("some bag splits q into halves")
        .clone();

    // 0 = separator, 1 = left, 2 = right
    let mut side = vec![1u8; g.n()];
    for &v in &bag {
        side[v] = 0;
    }
    let mut comps = g.components_avoiding(&bag);
    comps.sort_by_key(|c| (std::cmp::Reverse(q_count(c)), c[0]));
    let outside_q: usize = comps.iter().map(|c| q_count(c)).sum();
    // a component with a third of the outside q-vertices goes alone;
    // otherwise fill the left side until it reaches a third
    let first_big = comps.first().is_some_and(|c| 3 * q_count(c) >= outside_q);
    let mut left_q = 0;
    for (i, c) in comps.iter().enumerate() {
        let qc = q_count(c);
        let to_left = if first_big { i == 0 } else { 3 * left_q < outside_q };
        if to_left {
            left_q += qc;
        }
        for &v in c {
            side[v] = if to_left { 1 } else { 2 };
        }
    }

    let limit = balance_limit(q.len());
    loop {
        let sep_size = side.iter().filter(|&&s| s == 0).count();
        if sep_size <= 1 {
            break;
        }
        let counts = |side: &[u8], s: u8| (0..g.n()).filter(|&v| side[v] == s && in_q[v]).count();
        let (lq, rq) = (counts(&side, 1), counts(&side, 2));
        let mut best: Option<(usize, usize, u8)> = None;
        for x in (0..g.n()).filter(|&v| side[v] == 0) {
            let mut seen = 0u8;
            for &w in g.neighbors(x) {
                seen |= match side[w] {
                    1 => 1,
                    2 => 2,
                    _ => 0,
                };
            }
            let targets: &[u8] = match seen {
                0 => &[1, 2],
                1 => &[1],
                2 => &[2],
                _ => &[],
            };
            for &t in targets {
                let add = in_q[x] as usize;
                let (l, r) = if t == 1 { (lq + add, rq) } else { (lq, rq + add) };
                if l <= limit && r <= limit {
                    let key = (l.max(r), x, t);
                    if best.map_or(true, |b| (key.0, key.1) < (b.0, b.1)) {
                        best = Some(key);
                    }
                }
            }
        }
        match best {
            Some((_, x, t)) => side[x] = t,
            None => break,
        }
    }
    let a1 = (0..g.n()).filter(|&v| side[v] != 2).collect();
    let a2 = (0..g.n()).filter(|&v| side[v] != 1).collect();
    let sep = Separation { a1, a2 };
    debug_assert!(sep.is_valid_for(g));
    debug_assert!(sep.order() <= td.width() + 1);
    debug_assert!(is_balanced(&sep, &q));
    Ok(sep)
}
