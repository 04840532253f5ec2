use super::{Objective, Problem};
use crate::budget::oracle_budget;
use crate::error::{Error, Result};
use crate::graph::small::{bits, combinations, components_in, full};
use crate::graph::Graph;
use crate::td::{heuristic_decomposition, solve_via_dp, Solution, MAX_DP_WIDTH};

pub const BRUTE_BUDGET: usize = 22;
pub const CYCLE_PACKING_BUDGET: usize = 12;

/// Exact optimum by subset enumeration in order of size. `None` is the
/// infeasibility sentinel (no set satisfies φ); the shipped problems are
/// feasible on every graph, so it does not occur for them.
pub fn opt_brute(p: Problem, g: &Graph) -> Result<Option<Solution>> {
    let n = g.n();
    if p == Problem::CyclePacking {
        let budget = oracle_budget(CYCLE_PACKING_BUDGET).min(20);
        if n > budget {
            return Err(Error::TooLarge { what: "cycle packing oracle instance", size: n, budget });
        }
        let (value, cycles) = cycle_packing_masks(&g.masks());
        let witness = cycles.iter().map(|&c| c.trailing_zeros() as usize).collect();
        return Ok(Some(Solution { value: value as i64, witness }));
    }
    let budget = oracle_budget(BRUTE_BUDGET).min(30);
    if n > budget {
        return Err(Error::TooLarge { what: "brute-force instance", size: n, budget });
    }
    let adj = g.masks();
    let sizes: Box<dyn Iterator<Item = usize>> = match p.objective() {
        Objective::Minimize => Box::new(0..=n),
        Objective::Maximize => Box::new((0..=n).rev()),
    };
    for k in sizes {
        if let Some(s) = combinations(n, k).find(|&s| p.feasible_mask(&adj, s)) {
            return Ok(Some(Solution { value: k as i64, witness: bits(s).collect() }));
        }
    }
    Ok(None)
}

/// Optimum by the fastest applicable exact method: DP over a min-fill
/// decomposition when the problem is supported and the width allows,
/// otherwise brute force.
pub fn opt_value(p: Problem, g: &Graph) -> Result<i64> {
    if p.dp_supported() {
        let td = heuristic_decomposition(g);
        if td.width() <= MAX_DP_WIDTH {
            return Ok(solve_via_dp(p, g, &td)?.value);
        }
    }
    opt_brute(p, g)?
        .map(|s| s.value)
        .ok_or_else(|| Error::InvalidParameter(format!("{p} has no feasible solution")))
}

/// Size of a minimum vertex cover of the subgraph induced by `alive`.
/// Branches on a maximum-degree vertex after degree-0/1 reductions; once
/// every degree is 2 the graph is a union of cycles.
pub(crate) fn min_vertex_cover_masks(adj: &[u64], alive: u64) -> u32 {
    let mut alive = alive;
    let mut taken = 0;
    loop {
        let mut changed = false;
        for v in bits(alive) {
            if alive >> v & 1 == 0 {
                continue;
            }
            let nb = adj[v] & alive;
            match nb.count_ones() {
                0 => {
                    alive &= !(1u64 << v);
                    changed = true;
                }
                1 => {
                    alive &= !(nb | (1u64 << v));
                    taken += 1;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    if alive == 0 {
        return taken;
    }
    let v = bits(alive).max_by_key(|&v| ((adj[v] & alive).count_ones(), std::cmp::Reverse(v))).unwrap();
    let nb = adj[v] & alive;
    if nb.count_ones() <= 2 {
        // disjoint cycles: ceil(len / 2) each
        let mut left = alive;
        while left != 0 {
            let comp = crate::graph::small::reach(adj, alive, left & left.wrapping_neg());
            taken += comp.count_ones().div_ceil(2);
            left &= !comp;
        }
        return taken;
    }
    let with_v = 1 + min_vertex_cover_masks(adj, alive & !(1u64 << v));
    let with_nb = nb.count_ones() + min_vertex_cover_masks(adj, alive & !nb & !(1u64 << v));
    taken + with_v.min(with_nb)
}

/// Size of a minimum dominating set. Branches over the closed
/// neighbourhood of the undominated vertex with the fewest dominators.
pub(crate) fn min_dominating_set_masks(adj: &[u64]) -> u32 {
    let closed: Vec<u64> = adj.iter().enumerate().map(|(v, &a)| a | 1u64 << v).collect();
    let mut best = adj.len() as u32;
    dominate(&closed, full(adj.len()), 0, &mut best);
    best
}

fn dominate(closed: &[u64], undominated: u64, size: u32, best: &mut u32) {
    if undominated == 0 {
        *best = (*best).min(size);
        return;
    }
    let reach = closed.iter().map(|c| (c & undominated).count_ones()).max().unwrap_or(1);
    if size + undominated.count_ones().div_ceil(reach) >= *best {
        return;
    }
    let v = bits(undominated)
        .min_by_key(|&v| bits(closed[v]).filter(|&w| closed[w] & undominated != 0).count())
        .expect("nonempty");
    let mut options: Vec<usize> = bits(closed[v]).collect();
    options.sort_by_key(|&w| std::cmp::Reverse((closed[w] & undominated).count_ones()));
    for w in options {
        dominate(closed, undominated & !closed[w], size + 1, best);
    }
}

/// Size of a minimum feedback vertex set of the subgraph induced by
/// `alive`: strip vertices of degree at most one, then branch on the
/// vertices of a shortest cycle. A greedy solution seeds the bound and the
/// cyclomatic number prunes.
pub(crate) fn min_fvs_masks(adj: &[u64], alive: u64) -> u32 {
    let mut best = greedy_fvs(adj, alive) + 1;
    break_cycles(adj, alive, 0, &mut best);
    best
}

fn strip_low_degree(adj: &[u64], mut alive: u64) -> u64 {
    let mut changed = true;
    while changed {
        changed = false;
        for v in bits(alive) {
            if (adj[v] & alive).count_ones() <= 1 {
                alive &= !(1u64 << v);
                changed = true;
            }
        }
    }
    alive
}

fn greedy_fvs(adj: &[u64], alive: u64) -> u32 {
    let mut alive = strip_low_degree(adj, alive);
    let mut size = 0;
    while alive != 0 {
        let v = bits(alive).max_by_key(|&v| (adj[v] & alive).count_ones()).expect("nonempty");
        alive = strip_low_degree(adj, alive & !(1u64 << v));
        size += 1;
    }
    size
}

fn break_cycles(adj: &[u64], alive: u64, size: u32, best: &mut u32) {
    let alive = strip_low_degree(adj, alive);
    if alive == 0 {
        *best = (*best).min(size);
        return;
    }
    // deleting a vertex of degree d lowers m − n + c by at most d − 1
    let degrees = bits(alive).map(|v| (adj[v] & alive).count_ones());
    let (twice_m, max_deg) = degrees.fold((0, 0), |(s, d), x| (s + x, d.max(x)));
    let cyclomatic = twice_m / 2 + components_in(adj, alive) - alive.count_ones();
    if size + cyclomatic.div_ceil(max_deg - 1) >= *best {
        return;
    }
    for v in shortest_cycle(adj, alive) {
        break_cycles(adj, alive & !(1u64 << v), size + 1, best);
    }
}

/// Vertices of a short cycle in a graph of minimum degree two: a shortest
/// one unless a cycle of length at most four turns up first.
fn shortest_cycle(adj: &[u64], alive: u64) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    let mut parent = [usize::MAX; 64];
    let mut depth = [0usize; 64];
    for r in bits(alive) {
        let mut seen = 1u64 << r;
        let mut frontier = 1u64 << r;
        parent[r] = r;
        depth[r] = 0;
        let mut found = None;
        'bfs: while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                for w in bits(adj[v] & alive) {
                    if w == parent[v] {
                        continue;
                    }
                    if seen >> w & 1 == 1 {
                        found = Some((v, w));
                        break 'bfs;
                    }
                    seen |= 1u64 << w;
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    next |= 1u64 << w;
                }
            }
            frontier = next;
        }
        let Some((a, b)) = found else { continue };
        if best.as_ref().is_some_and(|c| c.len() <= depth[a] + depth[b] + 1) {
            continue;
        }
        // walk both tree paths up to their meeting point
        let mut path_a = vec![a];
        let mut path_b = vec![b];
        let (mut x, mut y) = (a, b);
        while depth[x] > depth[y] {
            x = parent[x];
            path_a.push(x);
        }
        while depth[y] > depth[x] {
            y = parent[y];
            path_b.push(y);
        }
        while x != y {
            x = parent[x];
            y = parent[y];
            path_a.push(x);
            path_b.push(y);
        }
        path_b.pop();
        path_a.extend(path_b.into_iter().rev());
        best = Some(path_a);
        if best.as_ref().is_some_and(|c| c.len() <= 4) {
            break;
        }
    }
    best.expect("minimum degree two forces a cycle")
}

/// `ham[m]`: the subgraph induced by `m` has a Hamiltonian cycle (|m| >= 3).
fn hamiltonian_sets(adj: &[u64]) -> Vec<bool> {
    let n = adj.len();
    assert!(n <= 20, "cycle tables need at most 20 vertices");
    let size = 1usize << n;
    let mut ends = vec![0u32; size];
    for s in 0..n {
        ends[1 << s] = 1 << s;
    }
    let mut ham = vec![false; size];
    for m in 1..size {
        let e = ends[m];
        if e == 0 {
            continue;
        }
        let s = m.trailing_zeros() as usize;
        if m.count_ones() >= 3 && (e as u64) & adj[s] != 0 {
            ham[m] = true;
        }
        for v in bits(e as u64) {
            for w in bits(adj[v] & !(m as u64) & !full(s + 1)) {
                ends[m | (1 << w)] |= 1 << w;
            }
        }
    }
    ham
}

/// Maximum number of vertex-disjoint cycles and the vertex sets of one
/// optimal family.
pub(crate) fn cycle_packing_masks(adj: &[u64]) -> (u32, Vec<u64>) {
    let n = adj.len();
    let ham = hamiltonian_sets(adj);
    let size = 1usize << n;
    let mut best = vec![0u32; size];
    let mut choice = vec![0usize; size];
    for m in 1..size {
        let low = m & m.wrapping_neg();
        best[m] = best[m ^ low];
        let rest = m ^ low;
        let mut sub = rest;
        loop {
            let cyc = sub | low;
            if ham[cyc] && 1 + best[m ^ cyc] > best[m] {
                best[m] = 1 + best[m ^ cyc];
                choice[m] = cyc;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut cycles = Vec::new();
    let mut m = size - 1;
    while m != 0 {
        if choice[m] != 0 && best[m] == 1 + best[m ^ choice[m]] {
            cycles.push(choice[m] as u64);
            m ^= choice[m];
        } else {
            m &= m - 1;
        }
    }
    (best[size - 1], cycles)
}

/// φ for Cycle Packing: some vertex-disjoint cycles, one per vertex of `s`,
/// each meeting `s` in exactly that vertex.
pub(crate) fn cycle_family_hits(adj: &[u64], s: u64) -> bool {
    if adj.len() > 20 {
        return false;
    }
    let ham = hamiltonian_sets(adj);
    fn go(ham: &[bool], s: u64, todo: u64, avail: u64) -> bool {
        if todo == 0 {
            return true;
        }
        let v = todo.trailing_zeros();
        let pool = avail & !s;
        let mut sub = pool;
        loop {
            let cyc = sub | (1 << v);
            if ham[cyc as usize] && go(ham, s, todo & !(1 << v), avail & !cyc) {
                return true;
            }
            if sub == 0 {
                return false;
            }
            sub = (sub - 1) & pool;
        }
    }
    go(&ham, s, s, full(adj.len()))
}
