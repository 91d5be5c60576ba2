//! Directed-path patterns: the path tournament, its matching ordering and
//! backward-edge bookkeeping, and witness verification.
//!
//! Vertex and position indices are 0-based throughout; the path ordering of
//! the k-vertex path is simply `0, 1, ..., k-1`.

use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// The path tournament on `k` vertices: in the path ordering the backward
/// edges are exactly `i+1 -> i`; every other pair is oriented forward.
pub fn path_tournament(k: usize) -> Result<Tournament> {
    if k == 0 {
        return Err(Error::Precondition("path tournament needs k >= 1".into()));
    }
    Tournament::from_fn(k, |u, v| v != u + 1)
}

/// One backward edge of the matching ordering, identified by the positions of
/// its endpoints (`left < right`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BackEdge {
    pub left: usize,
    pub right: usize,
}

/// The matching ordering of the k-vertex path together with its backward
/// edges. Under this ordering the backward edges form a perfect matching on
/// the positions they touch, which is what the extraction loop consumes.
#[derive(Clone, Debug)]
pub struct PkPattern {
    k: usize,
    matching_order: Vec<usize>,
    backward: Vec<BackEdge>,
}

impl PkPattern {
    /// Builds the pattern for even `k >= 4`. The ordering is generated as
    /// `v1, (v3, v2), (v5, v4), ..., vk` and then validated against the path
    /// tournament by re-deriving its backward edges.
    pub fn new(k: usize) -> Result<Self> {
        if k < 4 || !k.is_multiple_of(2) {
            return Err(Error::UnsupportedSize {
                k,
                reason: "matching ordering needs even k >= 4",
            });
        }
        let mut matching_order = Vec::with_capacity(k);
        matching_order.push(0);
        for t in 1..k / 2 {
            matching_order.push(2 * t);
            matching_order.push(2 * t - 1);
        }
        matching_order.push(k - 1);

        let path = path_tournament(k)?;
        let mut backward = Vec::new();
        for p in 0..k {
            for q in (p + 1)..k {
                if path.has_edge(matching_order[q], matching_order[p]) {
                    backward.push(BackEdge { left: p, right: q });
                }
            }
        }
        backward.sort_by_key(|e| e.left);

        assert_eq!(backward.len(), k / 2, "backward edges must form a matching");
        let mut touched = vec![false; k];
        for e in &backward {
            assert!(!touched[e.left] && !touched[e.right], "positions overlap");
            touched[e.left] = true;
            touched[e.right] = true;
        }

        Ok(PkPattern {
            k,
            matching_order,
            backward,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Path index of the vertex sitting at matching position `pos`.
    pub fn matching_order(&self) -> &[usize] {
        &self.matching_order
    }

    pub fn backward_edges(&self) -> &[BackEdge] {
        &self.backward
    }

    /// Position of the left end of the i-th backward edge (0-based).
    pub fn left(&self, i: usize) -> usize {
        self.backward[i].left
    }

    /// Position of the right end of the i-th backward edge (0-based).
    pub fn right(&self, i: usize) -> usize {
        self.backward[i].right
    }
}

/// True iff `seq`, read as a path ordering, induces exactly the path pattern
/// in `t`: backward edges are `seq[i+1] -> seq[i]`, everything else forward.
pub fn check_pk_witness(t: &Tournament, seq: &[usize]) -> Result<bool> {
    let k = seq.len();
    let mut seen = std::collections::HashSet::new();
    for &v in seq {
        if v >= t.n() {
            return Err(Error::Precondition(format!(
                "witness vertex {v} outside tournament of size {}",
                t.n()
            )));
        }
        if !seen.insert(v) {
            return Err(Error::Precondition(format!(
                "witness vertex {v} repeated"
            )));
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let expected_forward = j != i + 1;
            if t.has_edge(seq[i], seq[j]) != expected_forward {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::VertexSet;

    #[test]
    fn path_k1_and_k3() {
        let t = path_tournament(1).unwrap();
        assert_eq!(t.n(), 1);
        // k=3 is the cyclic triangle: v1->v3, v2->v1, v3->v2.
        let t = path_tournament(3).unwrap();
        assert!(t.has_edge(0, 2) && t.has_edge(1, 0) && t.has_edge(2, 1));
        assert!(!t.is_transitive(&t.full_set()).is_transitive());
    }

    #[test]
    fn path_k4_edges() {
        let t = path_tournament(4).unwrap();
        let expected = [(1, 0), (2, 1), (3, 2), (0, 2), (0, 3), (1, 3)];
        for &(u, v) in &expected {
            assert!(t.has_edge(u, v), "missing {u}->{v}");
        }
    }

    #[test]
    fn path_rejects_zero() {
        assert!(path_tournament(0).is_err());
    }

    #[test]
    fn matching_ordering_k4() {
        let p = PkPattern::new(4).unwrap();
        assert_eq!(p.matching_order(), &[0, 2, 1, 3]);
        assert_eq!(
            p.backward_edges(),
            &[BackEdge { left: 0, right: 2 }, BackEdge { left: 1, right: 3 }]
        );
    }

    #[test]
    fn matching_ordering_k6() {
        let p = PkPattern::new(6).unwrap();
        assert_eq!(p.matching_order(), &[0, 2, 1, 4, 3, 5]);
        let lefts: Vec<usize> = p.backward_edges().iter().map(|e| e.left).collect();
        let rights: Vec<usize> = p.backward_edges().iter().map(|e| e.right).collect();
        assert_eq!(lefts, vec![0, 1, 3]);
        assert_eq!(rights, vec![2, 4, 5]);
    }

    #[test]
    fn odd_k_unsupported() {
        assert!(matches!(
            PkPattern::new(5),
            Err(Error::UnsupportedSize { k: 5, .. })
        ));
    }

    #[test]
    fn matching_invariants_up_to_12() {
        for k in (4..=12).step_by(2) {
            let p = PkPattern::new(k).unwrap();
            assert_eq!(p.backward_edges().len(), k / 2);
            let mut endpoints: Vec<usize> = p
                .backward_edges()
                .iter()
                .flat_map(|e| [e.left, e.right])
                .collect();
            endpoints.sort_unstable();
            assert_eq!(endpoints, (0..k).collect::<Vec<_>>());
        }
    }

    #[test]
    fn reconstruction_round_trip() {
        // Rebuilding from the matching order plus backward edges (all other
        // pairs forward in the ordering) gives back the path tournament.
        for k in (4..=12).step_by(2) {
            let p = PkPattern::new(k).unwrap();
            let ord = p.matching_order().to_vec();
            let mut edges = Vec::new();
            let is_backward = |a: usize, b: usize| {
                p.backward_edges()
                    .iter()
                    .any(|e| (e.left, e.right) == (a, b))
            };
            for a in 0..k {
                for b in (a + 1)..k {
                    if is_backward(a, b) {
                        edges.push((ord[b], ord[a]));
                    } else {
                        edges.push((ord[a], ord[b]));
                    }
                }
            }
            let rebuilt = Tournament::from_edges(k, &edges).unwrap();
            assert_eq!(rebuilt, path_tournament(k).unwrap());
        }
    }

    #[test]
    fn witness_identity_embedding() {
        let t = path_tournament(4).unwrap();
        assert!(check_pk_witness(&t, &[0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn witness_on_c3_rotations() {
        let t = Tournament::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let mut hits = Vec::new();
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for p in perms {
            if check_pk_witness(&t, &p).unwrap() {
                hits.push(p);
            }
        }
        // The 3-path is the triangle; exactly the three rotations with the
        // right backward structure match.
        assert_eq!(hits, vec![[0, 2, 1], [1, 0, 2], [2, 1, 0]]);
    }

    #[test]
    fn witness_never_in_transitive() {
        let t = Tournament::from_fn(4, |_, _| true).unwrap();
        let mut idx = [0usize, 1, 2, 3];
        // All 24 permutations by repeated next_permutation-style search.
        let mut found = false;
        permute(&mut idx, 0, &mut |seq| {
            if check_pk_witness(&t, seq).unwrap() {
                found = true;
            }
        });
        assert!(!found);

        fn permute(v: &mut [usize; 4], i: usize, f: &mut impl FnMut(&[usize])) {
            if i == v.len() {
                f(v);
                return;
            }
            for j in i..v.len() {
                v.swap(i, j);
                permute(v, i + 1, f);
                v.swap(i, j);
            }
        }
    }

    #[test]
    fn witness_rejects_duplicates() {
        let t = path_tournament(4).unwrap();
        assert!(check_pk_witness(&t, &[0, 1, 1, 2]).is_err());
    }

    #[test]
    fn paths_are_prime_except_k4() {
        use crate::oracles::homogeneous_sets;
        for k in [3usize, 5, 6, 7, 8] {
            let t = path_tournament(k).unwrap();
            let homog = homogeneous_sets(&t).unwrap();
            assert!(homog.is_empty(), "P_{k} should be prime, found {homog:?}");
        }
        let t = path_tournament(4).unwrap();
        let homog = homogeneous_sets(&t).unwrap();
        assert!(!homog.is_empty());
        let ends = VertexSet::from_indices(4, [0usize, 3]).unwrap();
        assert!(homog.contains(&ends), "{{v1,v4}} is homogeneous in P_4");
    }
}
