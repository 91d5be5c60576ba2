//! Dense-pair extraction and alpha-sequence construction.
//!
//! `make_dense_pair` tries to embed a forbidden pattern into a family of
//! candidate sets, one vertex per set; when no good candidate exists the
//! pigeonhole bucket it gets stuck on yields two equal-size sets with
//! one-sided density, which is the productive exit. `create_sequence` uses
//! those pairs recursively to assemble an alpha-sequence of prescribed
//! length.

use num::BigRational;

use crate::alphaseq::AlphaSequence;
use crate::error::{Error, Result};
use crate::findtrans::ConstantSchedule;
use crate::patterns::path_tournament;
use crate::tournament::{floor_fraction, Density, Tournament, VertexSet};

/// Which orientation test selected the output pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairBranch {
    Forward,
    Backward,
}

/// Two disjoint equal-size sets with d(X, Y) >= 1 - lambda.
#[derive(Clone, Debug)]
pub struct DensePair {
    pub x: VertexSet,
    pub y: VertexSet,
    pub density: Density,
    pub branch: PairBranch,
    /// Common size of both sets.
    pub m: usize,
    /// Number of candidate vertices consumed before the exit fired.
    pub depth: usize,
}

/// Result of a dense-pair run: either the pair, or the full pattern was
/// reconstructed (one vertex per candidate set, in consumption order).
#[derive(Clone, Debug)]
pub enum DenseOutcome {
    Pair(DensePair),
    Witness(Vec<usize>),
}

/// Input state: candidate sets tagged with the pattern vertex each one is
/// expected to supply, the remembered original size `n`, and the vertices
/// already chosen by outer recursion levels.
#[derive(Clone, Debug)]
pub struct PatternState {
    pub sets: Vec<(usize, VertexSet)>,
    pub n: usize,
    pub chosen: Vec<(usize, usize)>,
}

impl PatternState {
    pub fn new(pattern: &Tournament, sets: Vec<(usize, VertexSet)>, n: usize) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Precondition("pattern state needs sets".into()));
        }
        let mut prev: Option<usize> = None;
        for (idx, set) in &sets {
            if *idx >= pattern.n() {
                return Err(Error::Precondition(format!(
                    "pattern index {idx} outside pattern of size {}",
                    pattern.n()
                )));
            }
            if set.is_empty() {
                return Err(Error::Precondition(format!(
                    "candidate set for pattern vertex {idx} is empty"
                )));
            }
            if prev.is_some_and(|p| p >= *idx) {
                return Err(Error::Precondition(
                    "pattern indices must be strictly ascending".into(),
                ));
            }
            prev = Some(*idx);
        }
        Ok(PatternState {
            sets,
            n,
            chosen: Vec::new(),
        })
    }
}

/// Largest divisor of `total` that is at most `cap` (cap >= 1).
fn largest_divisor_at_most(total: usize, cap: usize) -> usize {
    debug_assert!(total >= 1 && cap >= 1);
    let mut q = total.div_ceil(cap);
    while !total.is_multiple_of(q) {
        q += 1;
    }
    total / q
}

/// The chosen vertices must relate to each other exactly as the pattern
/// prescribes; every set shrink keeps only correctly-oriented neighborhoods,
/// so this holds in every mode.
fn assert_pattern_copy(t: &Tournament, pattern: &Tournament, chosen: &[(usize, usize)]) {
    for a in 0..chosen.len() {
        for b in (a + 1)..chosen.len() {
            let (pa, va) = chosen[a];
            let (pb, vb) = chosen[b];
            assert_eq!(
                t.has_edge(va, vb),
                pattern.has_edge(pa, pb),
                "chosen vertices do not induce the pattern"
            );
        }
    }
}

pub fn make_dense_pair(
    t: &Tournament,
    pattern: &Tournament,
    state: PatternState,
    schedule: &ConstantSchedule,
) -> Result<DenseOutcome> {
    let lambda = schedule.lambda();
    let one_minus_lambda = schedule.one_minus_lambda();
    let mut sets = state.sets;
    let mut chosen = state.chosen;
    let n_remembered = state.n;
    let mut depth = 0usize;

    loop {
        let (i1, s1) = sets[0].clone();

        // bad(v): position (within sets[1..]) of the first pattern vertex
        // whose candidate set sees too few correctly-oriented neighbors.
        let bad = |v: usize| -> Option<usize> {
            for (pos, (j, sj)) in sets[1..].iter().enumerate() {
                let count = if pattern.has_edge(i1, *j) {
                    t.out_degree_in(v, sj)
                } else {
                    t.in_degree_in(v, sj)
                };
                if crate::tournament::count_lt_fraction(count, sj.len(), lambda) {
                    return Some(pos);
                }
            }
            None
        };

        if sets.len() == 1 {
            // No constraints left: the lowest vertex completes the pattern.
            let v0 = s1.first().expect("sets are nonempty");
            chosen.push((i1, v0));
            assert_pattern_copy(t, pattern, &chosen);
            return Ok(DenseOutcome::Witness(
                chosen.iter().map(|&(_, v)| v).collect(),
            ));
        }

        let candidate = s1.iter().find(|&v| bad(v).is_none());
        match candidate {
            Some(v0) => {
                chosen.push((i1, v0));
                let mut shrunk = Vec::with_capacity(sets.len() - 1);
                for (j, sj) in &sets[1..] {
                    let target = floor_fraction(sj.len(), lambda);
                    if target == 0 {
                        return Err(Error::DegenerateSize {
                            context: "shrinking candidate neighborhoods",
                        });
                    }
                    let neighborhood = if pattern.has_edge(i1, *j) {
                        t.out_neighbors_in(v0, sj)
                    } else {
                        t.in_neighbors_in(v0, sj)
                    };
                    // bad(v0) = 0 guarantees the neighborhood covers target.
                    shrunk.push((*j, neighborhood.take_lowest(target)?));
                }
                sets = shrunk;
                depth += 1;
            }
            None => {
                // Pigeonhole buckets: every vertex of s1 has a first
                // violating set.
                let mut buckets: Vec<VertexSet> =
                    vec![VertexSet::empty(t.n()); sets.len() - 1];
                for v in s1.iter() {
                    let pos = bad(v).expect("no candidate means every vertex is bad");
                    buckets[pos].insert(v);
                }
                let mut best = 0usize;
                for pos in 1..buckets.len() {
                    if buckets[pos].len() > buckets[best].len() {
                        best = pos;
                    }
                }
                let p_j0 = &buckets[best];
                let (_, s_j0) = &sets[1 + best];

                let cap = p_j0.len().min(s_j0.len());
                let m = match schedule.dense_pair_size(n_remembered) {
                    Some(m) => m,
                    None => largest_divisor_at_most(s_j0.len(), cap),
                };
                if m == 0 {
                    return Err(Error::DegenerateSize {
                        context: "dense-pair output size",
                    });
                }
                if p_j0.len() < m || s_j0.len() < m {
                    return Err(Error::DegenerateSize {
                        context: "dense-pair bucket too small",
                    });
                }

                let p_trunc = p_j0.take_lowest(m)?;
                let s_members = s_j0.indices();
                let chunk_count = s_members.len() / m;
                let chunks: Vec<VertexSet> = (0..chunk_count)
                    .map(|l| {
                        VertexSet::from_indices(
                            t.n(),
                            s_members[l * m..(l + 1) * m].iter().copied(),
                        )
                        .expect("chunk indices are in range")
                    })
                    .collect();

                let d_ps = t.density(p_j0, s_j0)?;
                let forward = d_ps.edges * 2 >= d_ps.pairs;
                let pick_best = |densities: Vec<Density>| -> usize {
                    let mut best = 0usize;
                    for l in 1..densities.len() {
                        if densities[l] > densities[best] {
                            best = l;
                        }
                    }
                    best
                };
                let (x, y, branch) = if forward {
                    let scores: Vec<Density> = chunks
                        .iter()
                        .map(|w| t.density(&p_trunc, w))
                        .collect::<Result<_>>()?;
                    let l_max = pick_best(scores);
                    (p_trunc, chunks[l_max].clone(), PairBranch::Forward)
                } else {
                    let scores: Vec<Density> = chunks
                        .iter()
                        .map(|w| t.density(w, &p_trunc))
                        .collect::<Result<_>>()?;
                    let l_max = pick_best(scores);
                    (chunks[l_max].clone(), p_trunc, PairBranch::Backward)
                };

                let density = t.density(&x, &y)?;
                assert_eq!(x.len(), m);
                assert_eq!(y.len(), m);
                assert!(
                    density.ge_rational(one_minus_lambda),
                    "dense pair density {density:?} below 1 - lambda"
                );
                return Ok(DenseOutcome::Pair(DensePair {
                    x,
                    y,
                    density,
                    branch,
                    m,
                    depth,
                }));
            }
        }
    }
}

/// An alpha-sequence plus metadata about how it was produced.
#[derive(Clone, Debug)]
pub struct SequenceOutput {
    pub seq: AlphaSequence,
    /// Set when the final pair search failed and an arbitrary pair was
    /// concatenated; unreachable when the input really is pattern-free.
    pub unexpected_fallback: bool,
    /// Common element size for truncation exits; `None` on the fallback.
    pub element_size: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum SeqResult {
    Sequence(SequenceOutput),
    Witness(Vec<usize>),
}

fn map_vertices(vs: &[usize], map: &[usize]) -> Vec<usize> {
    vs.iter().map(|&v| map[v]).collect()
}

fn map_sequence(seq: &AlphaSequence, map: &[usize], universe: usize) -> Result<Vec<VertexSet>> {
    seq.elements()
        .iter()
        .map(|e| VertexSet::from_indices(universe, e.iter().map(|v| map[v])))
        .collect()
}

/// Builds an alpha-sequence of length `r` (a power of two) in `t`.
pub fn create_sequence(
    t: &Tournament,
    r: usize,
    schedule: &ConstantSchedule,
) -> Result<SeqResult> {
    if r < 2 || !r.is_power_of_two() {
        return Err(Error::Precondition(format!(
            "sequence length {r} is not a power of two >= 2"
        )));
    }
    let n = t.n();
    let k = schedule.k();
    if n <= k {
        return Err(Error::DegenerateSize {
            context: "partitioning into pattern-size parts",
        });
    }
    let pattern = path_tournament(k)?;
    let part = n / k;
    let sets: Vec<(usize, VertexSet)> = (0..k)
        .map(|i| {
            VertexSet::from_indices(n, i * part..(i + 1) * part).map(|s| (i, s))
        })
        .collect::<Result<_>>()?;
    let state = PatternState::new(&pattern, sets, n)?;

    let pair = match make_dense_pair(t, &pattern, state, schedule)? {
        DenseOutcome::Witness(w) => return Ok(SeqResult::Witness(w)),
        DenseOutcome::Pair(p) => p,
    };

    if r == 2 {
        let m = pair.m;
        let seq = AlphaSequence::new(t, vec![pair.x, pair.y])?;
        return Ok(SeqResult::Sequence(SequenceOutput {
            seq,
            unexpected_fallback: false,
            element_size: Some(m),
        }));
    }

    enum Carved {
        Sequences(Vec<AlphaSequence>),
        Witness(Vec<usize>),
    }

    // Repeatedly carve half-length sequences out of `start` while at least
    // half its vertices remain.
    let carve = |start: &VertexSet| -> Result<Carved> {
        let mut remaining = start.clone();
        let target = start.len();
        let mut carved = Vec::new();
        while 2 * remaining.len() >= target {
            let (sub, map) = t.induced(&remaining)?;
            match create_sequence(&sub, r / 2, schedule)? {
                SeqResult::Witness(w) => {
                    return Ok(Carved::Witness(map_vertices(&w, &map)))
                }
                SeqResult::Sequence(s) => {
                    let elements = map_sequence(&s.seq, &map, n)?;
                    let mapped = AlphaSequence::new(t, elements)?;
                    let used = mapped.vertex_union();
                    debug_assert!(used.is_subset(&remaining));
                    remaining = remaining.difference(&used);
                    carved.push(mapped);
                }
            }
        }
        Ok(Carved::Sequences(carved))
    };

    let lefts = match carve(&pair.x)? {
        Carved::Witness(w) => return Ok(SeqResult::Witness(w)),
        Carved::Sequences(ls) => ls,
    };
    let rights = match carve(&pair.y)? {
        Carved::Witness(w) => return Ok(SeqResult::Witness(w)),
        Carved::Sequences(rs) => rs,
    };

    let threshold = schedule.one_minus_four_lambda();
    let mut chosen: Option<(usize, usize)> = None;
    'search: for (li, l) in lefts.iter().enumerate() {
        for (ri, rseq) in rights.iter().enumerate() {
            let d = t.density(&l.vertex_union(), &rseq.vertex_union())?;
            if d.ge_rational(threshold) {
                chosen = Some((li, ri));
                break 'search;
            }
        }
    }

    match chosen {
        Some((li, ri)) => {
            let combined = lefts[li].concat(&rights[ri])?;
            let m = match schedule.truncation_size(r, n) {
                Some(m) => m,
                None => combined
                    .elements()
                    .iter()
                    .map(VertexSet::len)
                    .min()
                    .expect("sequence is nonempty"),
            };
            if m == 0 {
                return Err(Error::DegenerateSize {
                    context: "sequence truncation size",
                });
            }
            let seq = combined.truncate(m)?;
            assert!(seq.elements().iter().all(|e| e.len() == m));
            Ok(SeqResult::Sequence(SequenceOutput {
                seq,
                unexpected_fallback: false,
                element_size: Some(m),
            }))
        }
        None => {
            let seq = lefts[0].concat(&rights[0])?;
            Ok(SeqResult::Sequence(SequenceOutput {
                seq,
                unexpected_fallback: true,
                element_size: None,
            }))
        }
    }
}

/// 1 - lambda as a rational, exposed for tests asserting pair densities.
pub fn one_minus(lambda: &BigRational) -> BigRational {
    BigRational::from_integer(1.into()) - lambda
}
