//! Alpha-sequences: ordered lists of pairwise-disjoint vertex sets with
//! density parameters, their neighborhood/truncation/concatenation algebra,
//! smoothness checking, and the smoothing pass that discards vertices with
//! too few neighbors in some other element.

use num::{BigInt, BigRational, FromPrimitive};

use crate::error::{Error, Result};
use crate::tournament::{Tournament, VertexSet};

/// An ordered list `(A_1, ..., A_l)` of pairwise-disjoint nonempty subsets of
/// one tournament's vertices.
#[derive(Clone, Debug)]
pub struct AlphaSequence {
    elements: Vec<VertexSet>,
}

impl AlphaSequence {
    pub fn new(host: &Tournament, elements: Vec<VertexSet>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Precondition(
                "alpha-sequence needs at least one element".into(),
            ));
        }
        let mut seen = VertexSet::empty(host.n());
        for (i, e) in elements.iter().enumerate() {
            if e.universe() != host.n() {
                return Err(Error::Precondition(format!(
                    "element {i} bound to a different tournament"
                )));
            }
            if e.is_empty() {
                return Err(Error::Precondition(format!("element {i} is empty")));
            }
            if !seen.is_disjoint(e) {
                return Err(Error::Precondition(format!(
                    "element {i} overlaps an earlier element"
                )));
            }
            seen = seen.union(e);
        }
        Ok(AlphaSequence { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &VertexSet {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[VertexSet] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<VertexSet> {
        self.elements
    }

    /// V(theta): the union of all elements.
    pub fn vertex_union(&self) -> VertexSet {
        let mut u = VertexSet::empty(self.elements[0].universe());
        for e in &self.elements {
            u = u.union(e);
        }
        u
    }

    /// Index of the element containing `v`, if any.
    pub fn position_of(&self, v: usize) -> Option<usize> {
        self.elements.iter().position(|e| e.contains(v))
    }

    /// Directed neighborhood of `v` (a member of element `i`) inside element
    /// `j`: out-neighbors when `j > i`, in-neighbors when `j < i`.
    pub fn directed_neighbors(
        &self,
        host: &Tournament,
        v: usize,
        j: usize,
    ) -> Result<VertexSet> {
        let i = self.position_of(v).ok_or_else(|| {
            Error::Precondition(format!("vertex {v} is in no element of the sequence"))
        })?;
        if j >= self.len() || j == i {
            return Err(Error::Precondition(format!(
                "invalid target element {j} for vertex in element {i}"
            )));
        }
        Ok(if j > i {
            host.out_neighbors_in(v, &self.elements[j])
        } else {
            host.in_neighbors_in(v, &self.elements[j])
        })
    }

    /// Truncates every element to its `m` lowest-indexed members.
    pub fn truncate(&self, m: usize) -> Result<AlphaSequence> {
        if m == 0 {
            return Err(Error::Precondition("truncation to zero elements".into()));
        }
        let mut elements = Vec::with_capacity(self.len());
        for e in &self.elements {
            elements.push(e.take_lowest(m)?);
        }
        Ok(AlphaSequence { elements })
    }

    /// Concatenation; the two sequences must use disjoint vertices.
    pub fn concat(&self, other: &AlphaSequence) -> Result<AlphaSequence> {
        if !self.vertex_union().is_disjoint(&other.vertex_union()) {
            return Err(Error::Precondition(
                "concatenated sequences share vertices".into(),
            ));
        }
        let mut elements = self.elements.clone();
        elements.extend(other.elements.iter().cloned());
        Ok(AlphaSequence { elements })
    }

    /// Exact size and density measurements used by both check modes.
    pub fn check_alpha(&self, host: &Tournament) -> AlphaReport {
        let n = host.n();
        let min_relative_size = self
            .elements
            .iter()
            .map(|e| BigRational::new(BigInt::from(e.len()), BigInt::from(n)))
            .min()
            .expect("sequence is nonempty");
        let mut min_pair_density: Option<BigRational> = None;
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let d = host
                    .density(&self.elements[i], &self.elements[j])
                    .expect("elements are disjoint and nonempty")
                    .as_rational();
                min_pair_density = Some(match min_pair_density.take() {
                    Some(cur) if cur <= d => cur,
                    _ => d,
                });
            }
        }
        AlphaReport {
            min_relative_size,
            min_pair_density,
            worst_vertex_density: None,
        }
    }

    /// Like `check_alpha` but also measures the per-vertex densities that
    /// define smoothness: for `i < j`, forward density from each vertex of
    /// `A_i` into `A_j` and backward density from `A_i` into each vertex of
    /// `A_j`.
    pub fn check_smooth(&self, host: &Tournament) -> AlphaReport {
        let mut report = self.check_alpha(host);
        let mut worst: Option<BigRational> = None;
        let mut update = |count: usize, total: usize| {
            let d = BigRational::new(BigInt::from(count), BigInt::from(total));
            worst = Some(match worst.take() {
                Some(cur) if cur <= d => cur,
                _ => d,
            });
        };
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let (a, b) = (&self.elements[i], &self.elements[j]);
                for x in a.iter() {
                    update(host.out_degree_in(x, b), b.len());
                }
                for y in b.iter() {
                    update(host.in_degree_in(y, a), a.len());
                }
            }
        }
        report.worst_vertex_density = worst;
        report
    }
}

/// Exact measurements of an alpha-sequence; all values are rationals in
/// [0, 1]. Pair fields are `None` when fewer than two elements exist, in
/// which case the corresponding condition holds vacuously.
#[derive(Clone, Debug)]
pub struct AlphaReport {
    pub min_relative_size: BigRational,
    pub min_pair_density: Option<BigRational>,
    pub worst_vertex_density: Option<BigRational>,
}

impl AlphaReport {
    /// Passes the (c, lambda) sequence conditions.
    pub fn alpha_ok(&self, c: &BigRational, lambda: &BigRational) -> bool {
        let one = BigRational::from_integer(BigInt::from(1));
        self.min_relative_size >= *c
            && self
                .min_pair_density
                .as_ref()
                .is_none_or(|d| *d >= &one - lambda)
    }

    /// Passes the per-vertex smoothness condition for `lambda`.
    pub fn smooth_ok(&self, lambda: &BigRational) -> bool {
        let one = BigRational::from_integer(BigInt::from(1));
        self.worst_vertex_density
            .as_ref()
            .is_none_or(|d| *d >= &one - lambda)
    }
}

/// One smoothing pass: with `k` the sequence length and `lambda_k = 4 lambda
/// k^2`, removes from each element every vertex whose directed neighborhood
/// in some other element has size at most `|A_j| (1 - 2 k lambda_k)`. All
/// removal sets are computed against the input sequence and applied at once.
///
/// When the input pair densities are all at least `1 - lambda_k`, each
/// removal set is at most a `1/(2k)` fraction of its element, every output
/// element keeps at least half its vertices, and the output is smooth for
/// `lambda_f = 4 k lambda_k`; those facts are asserted on every such run.
pub fn make_smooth(
    host: &Tournament,
    theta: &AlphaSequence,
    lambda: &BigRational,
) -> Result<AlphaSequence> {
    if lambda <= &BigRational::from_integer(BigInt::from(0)) {
        return Err(Error::Precondition(
            "smoothing needs a positive lambda".into(),
        ));
    }
    let k = theta.len();
    let k_big = BigRational::from_integer(BigInt::from(k));
    let lambda_k = BigRational::from_integer(BigInt::from(4)) * lambda * &k_big * &k_big;
    let one = BigRational::from_integer(BigInt::from(1));
    let threshold = &one - BigRational::from_integer(BigInt::from(2 * k)) * &lambda_k;

    let premise_holds = {
        let report = theta.check_alpha(host);
        report
            .min_pair_density
            .as_ref()
            .is_none_or(|d| *d >= &one - &lambda_k)
    };

    let mut removals: Vec<VertexSet> = theta
        .elements()
        .iter()
        .map(|e| VertexSet::empty(e.universe()))
        .collect();
    for (i, removal) in removals.iter_mut().enumerate() {
        for j in 0..k {
            if i == j {
                continue;
            }
            let a_j = theta.element(j);
            let mut c_ij = VertexSet::empty(host.n());
            for v in theta.element(i).iter() {
                let degree = if j > i {
                    host.out_degree_in(v, a_j)
                } else {
                    host.in_degree_in(v, a_j)
                };
                // |N| <= |A_j| * threshold, evaluated exactly. The rational
                // denominator is always positive, so the comparison survives
                // thresholds outside [0, 1].
                let lhs = BigInt::from(degree) * threshold.denom();
                let rhs = threshold.numer() * BigInt::from(a_j.len());
                if lhs <= rhs {
                    c_ij.insert(v);
                }
            }
            if premise_holds {
                // From the density lemma: a removal set larger than
                // |A_i|/(2k) would force its average density above the
                // defining cutoff.
                assert!(
                    BigInt::from(c_ij.len()) * BigInt::from(2 * k)
                        <= BigInt::from(theta.element(i).len()),
                    "removal set C[{i},{j}] exceeds |A_{i}|/(2k)"
                );
            }
            *removal = removal.union(&c_ij);
        }
    }

    let mut elements = Vec::with_capacity(k);
    for (e, r) in theta.elements().iter().zip(&removals) {
        let kept = e.difference(r);
        if kept.is_empty() {
            return Err(Error::DegenerateSequence);
        }
        if premise_holds {
            assert!(2 * kept.len() >= e.len(), "element lost more than half");
        }
        elements.push(kept);
    }
    let out = AlphaSequence { elements };

    if premise_holds {
        let lambda_f = BigRational::from_integer(BigInt::from(4)) * &k_big * &lambda_k;
        assert!(
            out.check_smooth(host).smooth_ok(&lambda_f),
            "smoothing result violates the smoothness bound"
        );
    }
    Ok(out)
}

/// Convenience constructor for rationals in tests and callers.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(
        BigInt::from_i64(num).unwrap(),
        BigInt::from_i64(den).unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;
    use rand::{Rng, RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c3() -> Tournament {
        Tournament::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn seq(t: &Tournament, parts: &[&[usize]]) -> AlphaSequence {
        let elements = parts
            .iter()
            .map(|p| VertexSet::from_indices(t.n(), p.iter().copied()).unwrap())
            .collect();
        AlphaSequence::new(t, elements).unwrap()
    }

    #[test]
    fn directed_neighbors_examples() {
        let t = c3();
        let s = seq(&t, &[&[0], &[1]]);
        assert_eq!(s.directed_neighbors(&t, 0, 1).unwrap().indices(), vec![1]);
        assert_eq!(s.directed_neighbors(&t, 1, 0).unwrap().indices(), vec![0]);
        let s = seq(&t, &[&[0], &[2]]);
        assert!(s.directed_neighbors(&t, 0, 1).unwrap().is_empty());
        assert!(s.directed_neighbors(&t, 2, 5).is_err());
    }

    #[test]
    fn truncate_examples() {
        let t = Tournament::from_fn(6, |_, _| true).unwrap();
        let s = seq(&t, &[&[0, 1], &[2, 3]]);
        let out = s.truncate(2).unwrap();
        assert_eq!(out.element(0).indices(), vec![0, 1]);
        let s = seq(&t, &[&[0, 1, 2], &[3, 4, 5]]);
        let out = s.truncate(1).unwrap();
        assert_eq!(out.element(0).indices(), vec![0]);
        assert_eq!(out.element(1).indices(), vec![3]);
        let s = seq(&t, &[&[0], &[1, 2]]);
        assert!(s.truncate(2).is_err());
    }

    #[test]
    fn concat_examples() {
        let t = Tournament::from_fn(4, |_, _| true).unwrap();
        let a = seq(&t, &[&[0]]);
        let b = seq(&t, &[&[1]]);
        assert_eq!(a.concat(&b).unwrap().len(), 2);
        let c = seq(&t, &[&[0], &[1]]);
        let d = seq(&t, &[&[2], &[3]]);
        assert_eq!(c.concat(&d).unwrap().len(), 4);
        assert!(a.concat(&a).is_err());
    }

    #[test]
    fn check_alpha_examples() {
        let t = c3();
        let s = seq(&t, &[&[0], &[1]]);
        let r = s.check_alpha(&t);
        assert!(r.alpha_ok(&ratio(1, 3), &BigRational::zero()));
        let s = seq(&t, &[&[0], &[2]]);
        let r = s.check_alpha(&t);
        assert!(!r.alpha_ok(&ratio(1, 3), &ratio(1, 2)));
        let single = seq(&t, &[&[0]]);
        let r = single.check_alpha(&t);
        assert!(r.min_pair_density.is_none());
        assert!(r.alpha_ok(&ratio(1, 3), &BigRational::zero()));
    }

    #[test]
    fn check_smooth_examples() {
        let t = Tournament::from_fn(4, |_, _| true).unwrap();
        let s = seq(&t, &[&[0, 1], &[2, 3]]);
        assert!(s.check_smooth(&t).smooth_ok(&BigRational::zero()));

        // One reversed edge 2 -> 0.
        let t = Tournament::from_fn(4, |u, v| !(u == 0 && v == 2)).unwrap();
        let s = seq(&t, &[&[0, 1], &[2, 3]]);
        let r = s.check_smooth(&t);
        assert!(!r.smooth_ok(&BigRational::zero()));
        assert!(r.smooth_ok(&ratio(1, 2)));
    }

    #[test]
    fn make_smooth_keeps_complete_sequences() {
        let t = Tournament::from_fn(6, |_, _| true).unwrap();
        let s = seq(&t, &[&[0, 1], &[2, 3], &[4, 5]]);
        let out = make_smooth(&t, &s, &ratio(1, 1000)).unwrap();
        for (a, b) in s.elements().iter().zip(out.elements()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn make_smooth_boundary_comparison() {
        // k=2 sequence ({0,1},{2,3}) with the single reversed edge 2 -> 0.
        // Vertex 0 has one of two out-neighbors in A_2, so it is removed
        // exactly when 1 <= 2 (1 - 2 k lambda_k), with lambda_k = 16 lambda.
        let t = Tournament::from_fn(4, |u, v| !(u == 0 && v == 2)).unwrap();
        let s = seq(&t, &[&[0, 1], &[2, 3]]);

        // lambda > 1/128 puts the cutoff below 1: vertex 0 is kept.
        let out = make_smooth(&t, &s, &ratio(1, 100)).unwrap();
        assert!(out.element(0).contains(0));

        // lambda = 1/128 makes the cutoff exactly 1: the <= comparison
        // removes vertex 0 (and symmetrically vertex 2).
        let out = make_smooth(&t, &s, &ratio(1, 128)).unwrap();
        assert_eq!(out.element(0).indices(), vec![1]);
        assert_eq!(out.element(1).indices(), vec![3]);
    }

    #[test]
    fn make_smooth_rejects_nonpositive_lambda() {
        let t = Tournament::from_fn(4, |_, _| true).unwrap();
        let s = seq(&t, &[&[0, 1], &[2, 3]]);
        assert!(make_smooth(&t, &s, &BigRational::zero()).is_err());
        assert!(make_smooth(&t, &s, &ratio(-1, 4)).is_err());
    }

    #[test]
    fn make_smooth_never_adds_vertices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let t = Tournament::from_fn(24, |_, _| rng.next_u64() & 1 == 1).unwrap();
            let s = seq(
                &t,
                &[
                    &(0..8).collect::<Vec<_>>(),
                    &(8..16).collect::<Vec<_>>(),
                    &(16..24).collect::<Vec<_>>(),
                ]
                .iter()
                .map(|v| v.as_slice())
                .collect::<Vec<_>>(),
            );
            if let Ok(out) = make_smooth(&t, &s, &ratio(1, 4)) {
                for (orig, kept) in s.elements().iter().zip(out.elements()) {
                    assert!(kept.is_subset(orig));
                }
            }
        }
    }

    #[test]
    fn make_smooth_near_complete_premise() {
        // Planted noise below lambda_k: the smoothness and halving claims
        // must hold (they are also asserted inside make_smooth).
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..50 {
            let k = if trial % 2 == 0 { 4 } else { 8 };
            let s_len = 12;
            let n = k * s_len;
            let lambda_k = ratio(1, 24);
            let lambda = &lambda_k / ratio(4 * (k * k) as i64, 1);
            let budget = ((s_len * s_len) as f64 / 24.0).floor() as usize;
            let mut reversed = std::collections::HashSet::new();
            for bi in 0..k {
                for bj in (bi + 1)..k {
                    let flips = rng.gen_range(0..=budget);
                    for _ in 0..flips {
                        let u = bi * s_len + rng.gen_range(0..s_len);
                        let v = bj * s_len + rng.gen_range(0..s_len);
                        reversed.insert((u, v));
                    }
                }
            }
            let t = Tournament::from_fn(n, |u, v| {
                if u / s_len == v / s_len {
                    rng.next_u64() & 1 == 1
                } else {
                    !reversed.contains(&(u.min(v), u.max(v)))
                }
            })
            .unwrap();
            let parts: Vec<VertexSet> = (0..k)
                .map(|i| {
                    VertexSet::from_indices(n, i * s_len..(i + 1) * s_len).unwrap()
                })
                .collect();
            let s = AlphaSequence::new(&t, parts).unwrap();
            let out = make_smooth(&t, &s, &lambda).unwrap();
            let k_big = ratio(k as i64, 1);
            let lambda_f = ratio(4, 1) * &k_big * &lambda_k;
            assert!(out.check_smooth(&t).smooth_ok(&lambda_f));
            for (orig, kept) in s.elements().iter().zip(out.elements()) {
                assert!(2 * kept.len() >= orig.len());
            }
        }
    }
}
