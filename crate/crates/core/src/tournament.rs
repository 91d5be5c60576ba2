//! Dense tournament representation: orientation bit matrix, vertex subsets,
//! exact directed densities, transitivity checks and induced subtournaments.

use std::fmt;

use num::{BigInt, BigRational};

use crate::error::{Error, Result};

/// Hard cap on vertex counts. Everything here is Theta(n^2) or worse, so
/// larger inputs are rejected up front instead of thrashing.
pub const VERTEX_CAP: usize = 1 << 20;

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// A subset of the vertices `0..universe` of some tournament, stored as a
/// bitset with the member count cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    len: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            len: 0,
            words: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut words = vec![!0u64; words_for(universe)];
        if let Some(last) = words.last_mut() {
            let extra = words_for(universe) * WORD_BITS - universe;
            if extra > 0 {
                *last >>= extra;
            }
        }
        VertexSet {
            universe,
            len: universe,
            words,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, iter: I) -> Result<Self> {
        let mut set = VertexSet::empty(universe);
        for v in iter {
            if v >= universe {
                return Err(Error::Precondition(format!(
                    "vertex {v} outside universe of size {universe}"
                )));
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub(crate) fn from_words(universe: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(universe));
        let len = popcount(&words);
        VertexSet {
            universe,
            len,
            words,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD_BITS] & (1u64 << (v % WORD_BITS)) != 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.universe);
        let w = &mut self.words[v / WORD_BITS];
        let bit = 1u64 << (v % WORD_BITS);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
        }
    }

    pub fn remove(&mut self, v: usize) {
        if v >= self.universe {
            return;
        }
        let w = &mut self.words[v / WORD_BITS];
        let bit = 1u64 << (v % WORD_BITS);
        if *w & bit != 0 {
            *w &= !bit;
            self.len -= 1;
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    None
                } else {
                    let b = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    Some(i * WORD_BITS + b)
                }
            })
        })
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// The `m` lowest-indexed members; the deterministic reading of every
    /// "arbitrary" truncation in this crate.
    pub fn take_lowest(&self, m: usize) -> Result<VertexSet> {
        if m > self.len {
            return Err(Error::Precondition(format!(
                "cannot take {m} elements from a set of {}",
                self.len
            )));
        }
        let mut out = VertexSet::empty(self.universe);
        for v in self.iter().take(m) {
            out.insert(v);
        }
        Ok(out)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.universe, other.universe);
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        VertexSet::from_words(self.universe, words)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.universe, other.universe);
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        VertexSet::from_words(self.universe, words)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.universe, other.universe);
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        VertexSet::from_words(self.universe, words)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Exact directed density: `edges` oriented pairs out of `pairs` possible.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Density {
    pub edges: u64,
    pub pairs: u64,
}

impl Density {
    pub fn as_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.edges), BigInt::from(self.pairs))
    }

    /// `self >= thr`, compared exactly.
    pub fn ge_rational(&self, thr: &BigRational) -> bool {
        BigInt::from(self.edges) * thr.denom() >= thr.numer() * BigInt::from(self.pairs)
    }

    pub fn is_one(&self) -> bool {
        self.edges == self.pairs
    }

    pub fn is_zero(&self) -> bool {
        self.edges == 0
    }
}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        let lhs = self.edges as u128 * other.pairs as u128;
        let rhs = other.edges as u128 * self.pairs as u128;
        lhs.partial_cmp(&rhs)
    }
}

impl fmt::Debug for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.edges, self.pairs)
    }
}

/// Outcome of a transitivity test: either transitive or a directed triangle
/// `a -> b -> c -> a` witnessing the failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transitivity {
    Transitive,
    Cycle(usize, usize, usize),
}

impl Transitivity {
    pub fn is_transitive(&self) -> bool {
        matches!(self, Transitivity::Transitive)
    }
}

/// A tournament on `n` vertices. Both the out- and in-neighborhood matrices
/// are kept so neighborhood queries in either direction are row scans.
#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    row_words: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl Tournament {
    /// Builds a tournament by asking `orient(u, v)` for every pair `u < v` in
    /// lexicographic order; `true` orients the edge `u -> v`.
    pub fn from_fn<F: FnMut(usize, usize) -> bool>(n: usize, mut orient: F) -> Result<Self> {
        if n > VERTEX_CAP {
            return Err(Error::SizeCapExceeded { n, cap: VERTEX_CAP });
        }
        let row_words = words_for(n);
        let mut out = vec![0u64; n * row_words];
        let mut inn = vec![0u64; n * row_words];
        for u in 0..n {
            for v in (u + 1)..n {
                let (src, dst) = if orient(u, v) { (u, v) } else { (v, u) };
                out[src * row_words + dst / WORD_BITS] |= 1u64 << (dst % WORD_BITS);
                inn[dst * row_words + src / WORD_BITS] |= 1u64 << (src % WORD_BITS);
            }
        }
        Ok(Tournament {
            n,
            row_words,
            out,
            inn,
        })
    }

    /// Builds a tournament from an explicit list of directed edges. Every
    /// unordered pair must be oriented exactly once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > VERTEX_CAP {
            return Err(Error::SizeCapExceeded { n, cap: VERTEX_CAP });
        }
        let row_words = words_for(n);
        let mut out = vec![0u64; n * row_words];
        let mut inn = vec![0u64; n * row_words];
        let seen = |out: &[u64], u: usize, v: usize| -> bool {
            out[u * row_words + v / WORD_BITS] & (1u64 << (v % WORD_BITS)) != 0
        };
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Malformed(format!(
                    "edge ({u},{v}) outside vertex range 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Malformed(format!("self-loop at vertex {u}")));
            }
            if seen(&out, u, v) || seen(&out, v, u) {
                return Err(Error::Malformed(format!(
                    "pair {{{u},{v}}} oriented more than once"
                )));
            }
            out[u * row_words + v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
            inn[v * row_words + u / WORD_BITS] |= 1u64 << (u % WORD_BITS);
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if !seen(&out, u, v) && !seen(&out, v, u) {
                    return Err(Error::Malformed(format!("pair {{{u},{v}}} not oriented")));
                }
            }
        }
        Ok(Tournament {
            n,
            row_words,
            out,
            inn,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u * self.row_words + v / WORD_BITS] & (1u64 << (v % WORD_BITS)) != 0
    }

    #[inline]
    fn out_row(&self, v: usize) -> &[u64] {
        &self.out[v * self.row_words..(v + 1) * self.row_words]
    }

    #[inline]
    fn in_row(&self, v: usize) -> &[u64] {
        &self.inn[v * self.row_words..(v + 1) * self.row_words]
    }

    /// Number of out-neighbors of `v` inside `set`.
    pub fn out_degree_in(&self, v: usize, set: &VertexSet) -> usize {
        self.out_row(v)
            .iter()
            .zip(set.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Number of in-neighbors of `v` inside `set`.
    pub fn in_degree_in(&self, v: usize, set: &VertexSet) -> usize {
        self.in_row(v)
            .iter()
            .zip(set.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn out_neighbors_in(&self, v: usize, set: &VertexSet) -> VertexSet {
        let words: Vec<u64> = self
            .out_row(v)
            .iter()
            .zip(set.words())
            .map(|(a, b)| a & b)
            .collect();
        VertexSet::from_words(self.n, words)
    }

    pub fn in_neighbors_in(&self, v: usize, set: &VertexSet) -> VertexSet {
        let words: Vec<u64> = self
            .in_row(v)
            .iter()
            .zip(set.words())
            .map(|(a, b)| a & b)
            .collect();
        VertexSet::from_words(self.n, words)
    }

    /// e(X, Y): the number of edges oriented from `x` into `y`.
    pub fn edge_count_between(&self, x: &VertexSet, y: &VertexSet) -> u64 {
        x.iter().map(|v| self.out_degree_in(v, y) as u64).sum()
    }

    /// Exact directed density d(X, Y) = e(X, Y) / (|X| |Y|).
    pub fn density(&self, x: &VertexSet, y: &VertexSet) -> Result<Density> {
        if x.is_empty() || y.is_empty() {
            return Err(Error::Precondition(
                "density requires nonempty sets".into(),
            ));
        }
        if !x.is_disjoint(y) {
            return Err(Error::Precondition(
                "density requires disjoint sets".into(),
            ));
        }
        Ok(Density {
            edges: self.edge_count_between(x, y),
            pairs: x.len() as u64 * y.len() as u64,
        })
    }

    /// Tests whether `set` induces a transitive subtournament; on failure the
    /// lowest directed triangle found in scan order is returned.
    pub fn is_transitive(&self, set: &VertexSet) -> Transitivity {
        for u in set.iter() {
            let forward = self.out_neighbors_in(u, set);
            for v in forward.iter() {
                // w closing the triangle: v -> w and w -> u.
                let closing = self.out_neighbors_in(v, set).intersection(
                    &self.in_neighbors_in(u, set),
                );
                if let Some(w) = closing.first() {
                    return Transitivity::Cycle(u, v, w);
                }
            }
        }
        Transitivity::Transitive
    }

    /// Induced subtournament on `set` plus the map from new indices back to
    /// the original ones (ascending).
    pub fn induced(&self, set: &VertexSet) -> Result<(Tournament, Vec<usize>)> {
        if set.is_empty() {
            return Err(Error::Precondition(
                "induced subtournament of the empty set".into(),
            ));
        }
        if set.universe() != self.n {
            return Err(Error::Precondition(
                "vertex set bound to a different tournament".into(),
            ));
        }
        let map = set.indices();
        let sub = Tournament::from_fn(map.len(), |u, v| self.has_edge(map[u], map[v]))?;
        Ok((sub, map))
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={})", self.n)
    }
}

/// Compares `count / total >= thr` exactly, where `thr` may be any rational.
pub(crate) fn count_ge_fraction(count: usize, total: usize, thr: &BigRational) -> bool {
    BigInt::from(count) * thr.denom() >= thr.numer() * BigInt::from(total)
}

/// Compares `count < thr * total` exactly.
pub(crate) fn count_lt_fraction(count: usize, total: usize, thr: &BigRational) -> bool {
    BigInt::from(count) * thr.denom() < thr.numer() * BigInt::from(total)
}

/// floor(thr * n) for a non-negative rational `thr`.
pub(crate) fn floor_fraction(n: usize, thr: &BigRational) -> usize {
    use num::ToPrimitive;
    let scaled = thr * BigRational::from_integer(BigInt::from(n));
    scaled
        .floor()
        .to_integer()
        .to_usize()
        .expect("floor of a bounded non-negative rational")
}
