//! Exact brute-force solvers, used as ground truth by property tests and the
//! acceptance suite. Deterministic, lexicographic tie-breaks, hard budgets.

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::patterns::check_pk_witness;
use crate::tournament::{Tournament, VertexSet};

/// Hard limits for the exact solvers; exceeding one is an error, never a
/// silent truncation.
#[derive(Clone, Debug)]
pub struct OracleBudget {
    pub max_n_transitive: usize,
    pub max_n_dichromatic: usize,
    pub max_nodes_pk_search: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n_transitive: 22,
            max_n_dichromatic: 15,
            max_nodes_pk_search: 20_000_000,
        }
    }
}

const HOMOGENEOUS_CAP: usize = 16;

fn mask_out_rows(t: &Tournament) -> Vec<u32> {
    let n = t.n();
    (0..n)
        .map(|u| {
            let mut row = 0u32;
            for v in 0..n {
                if v != u && t.has_edge(u, v) {
                    row |= 1 << v;
                }
            }
            row
        })
        .collect()
}

fn mask_to_set(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_indices(n, (0..n).filter(|&v| mask & (1 << v) != 0))
        .expect("mask stays inside the universe")
}

/// Lexicographic order on the ascending member lists of two equal-size masks:
/// the smaller one owns the lowest differing bit.
fn lex_smaller(a: u32, b: u32) -> bool {
    if a == b {
        return false;
    }
    let diff = a ^ b;
    a & diff.wrapping_neg() & diff != 0
}

/// Transitive-subset table over all 2^n subsets: a set is transitive iff it
/// has a source vertex beating the rest of a transitive remainder.
fn transitive_table(t: &Tournament) -> Vec<bool> {
    let n = t.n();
    let out = mask_out_rows(t);
    let mut table = vec![false; 1 << n];
    table[0] = true;
    for mask in 1u32..(1u32 << n) {
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = mask ^ (1 << v);
            if out[v] & mask == rest && table[rest as usize] {
                table[mask as usize] = true;
                break;
            }
        }
    }
    table
}

/// A maximum-cardinality transitive subset; ties resolve to the
/// lexicographically smallest vertex list.
pub fn max_transitive_exact(t: &Tournament, budget: &OracleBudget) -> Result<VertexSet> {
    let n = t.n();
    if n > budget.max_n_transitive {
        return Err(Error::BudgetExceeded(format!(
            "max-transitive oracle capped at n <= {}",
            budget.max_n_transitive
        )));
    }
    if n == 0 {
        return Ok(VertexSet::empty(0));
    }
    let table = transitive_table(t);
    let mut best_size = 0usize;
    let mut best_mask = 0u32;
    for mask in 0u32..(1u32 << n) {
        if !table[mask as usize] {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size > best_size || (size == best_size && lex_smaller(mask, best_mask)) {
            best_size = size;
            best_mask = mask;
        }
    }
    Ok(mask_to_set(n, best_mask))
}

/// The exact dichromatic number plus an optimal partition into transitive
/// classes, via subset dynamic programming.
pub fn dichromatic_exact(t: &Tournament, budget: &OracleBudget) -> Result<(usize, Coloring)> {
    let n = t.n();
    if n > budget.max_n_dichromatic {
        return Err(Error::BudgetExceeded(format!(
            "dichromatic oracle capped at n <= {}",
            budget.max_n_dichromatic
        )));
    }
    if n == 0 {
        return Ok((0, Coloring::from_classes(0, Vec::new())?));
    }
    let table = transitive_table(t);
    let full = (1u32 << n) - 1;
    let mut cost = vec![u32::MAX; (full + 1) as usize];
    let mut pick = vec![0u32; (full + 1) as usize];
    cost[0] = 0;
    for mask in 1u32..=full {
        let low = 1u32 << mask.trailing_zeros();
        // Enumerate submasks containing the lowest vertex of `mask`.
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let class = sub | low;
            if table[class as usize] {
                let prev = cost[(mask ^ class) as usize];
                if prev != u32::MAX {
                    let total = prev + 1;
                    let better = total < cost[mask as usize]
                        || (total == cost[mask as usize]
                            && lex_smaller(class, pick[mask as usize]));
                    if better {
                        cost[mask as usize] = total;
                        pick[mask as usize] = class;
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let count = cost[full as usize] as usize;
    let mut classes = Vec::with_capacity(count);
    let mut mask = full;
    while mask != 0 {
        let class = pick[mask as usize];
        classes.push(mask_to_set(n, class));
        mask ^= class;
    }
    Ok((count, Coloring::from_classes(n, classes)?))
}

/// Exhaustive path-pattern search by backtracking over path-ordered
/// embeddings. Returns the lexicographically first witness, `None` when the
/// tournament is pattern-free, or a budget error leaving the answer unknown.
pub fn find_pk_exhaustive(
    t: &Tournament,
    k: usize,
    budget: &OracleBudget,
) -> Result<Option<Vec<usize>>> {
    if k == 0 {
        return Err(Error::Precondition("pattern size must be positive".into()));
    }
    let n = t.n();
    if k > n {
        return Ok(None);
    }
    let mut nodes = 0u64;
    let mut prefix: Vec<usize> = Vec::with_capacity(k);
    // forward[i]: vertices beaten by every prefix vertex before position i-1;
    // the next vertex must beat the last one and lie in forward[len-1].
    let mut forward: Vec<VertexSet> = vec![t.full_set()];
    let mut used = VertexSet::empty(n);

    fn search(
        t: &Tournament,
        k: usize,
        prefix: &mut Vec<usize>,
        forward: &mut Vec<VertexSet>,
        used: &mut VertexSet,
        nodes: &mut u64,
        budget: &OracleBudget,
    ) -> Result<Option<Vec<usize>>> {
        if prefix.len() == k {
            return Ok(Some(prefix.clone()));
        }
        let candidates = match prefix.last() {
            None => t.full_set(),
            Some(&last) => {
                // Must beat the previous vertex and be beaten by all earlier
                // non-consecutive prefix vertices.
                t.in_neighbors_in(last, forward.last().expect("stack nonempty"))
            }
        };
        for v in candidates.iter() {
            if used.contains(v) {
                continue;
            }
            *nodes += 1;
            if *nodes > budget.max_nodes_pk_search {
                return Err(Error::BudgetExceeded(
                    "path-pattern search node cap; answer unknown".into(),
                ));
            }
            prefix.push(v);
            used.insert(v);
            // Vertices after the next one must be out-neighbors of v too.
            let next_forward = if prefix.len() >= 2 {
                let prev = prefix[prefix.len() - 2];
                forward
                    .last()
                    .unwrap()
                    .intersection(&t.out_neighbors_in(prev, &t.full_set()))
            } else {
                t.full_set()
            };
            forward.push(next_forward);
            if let Some(hit) = search(t, k, prefix, forward, used, nodes, budget)? {
                return Ok(Some(hit));
            }
            forward.pop();
            used.remove(v);
            prefix.pop();
        }
        Ok(None)
    }

    let hit = search(
        t,
        k,
        &mut prefix,
        &mut forward,
        &mut used,
        &mut nodes,
        budget,
    )?;
    if let Some(w) = &hit {
        assert!(check_pk_witness(t, w)?, "oracle produced a bad witness");
    }
    Ok(hit)
}

/// All homogeneous sets of size 2..n-1, in ascending mask order. An empty
/// answer on n >= 3 means the tournament is prime.
pub fn homogeneous_sets(t: &Tournament) -> Result<Vec<VertexSet>> {
    let n = t.n();
    if n > HOMOGENEOUS_CAP {
        return Err(Error::BudgetExceeded(format!(
            "homogeneous-set enumeration capped at n <= {HOMOGENEOUS_CAP}"
        )));
    }
    if n < 3 {
        return Ok(Vec::new());
    }
    let out = mask_out_rows(t);
    let full = (1u32 << n) - 1;
    let mut found = Vec::new();
    for mask in 1u32..=full {
        let size = mask.count_ones() as usize;
        if size < 2 || size >= n {
            continue;
        }
        let outside = full & !mask;
        let mut uniform = true;
        let mut m = outside;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            let hits = out[w] & mask;
            if hits != 0 && hits != mask {
                uniform = false;
                break;
            }
        }
        if uniform {
            found.push(mask_to_set(n, mask));
        }
    }
    Ok(found)
}
