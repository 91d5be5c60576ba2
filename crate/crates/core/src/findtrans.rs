//! The constant schedule and the main recursive transitive-subset extractor.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::extract::{create_sequence, SeqResult};
use crate::alphaseq::make_smooth;
use crate::patterns::{check_pk_witness, PkPattern};
use crate::tournament::{count_ge_fraction, floor_fraction, Tournament, VertexSet};

/// Largest pattern size accepted; the derived constants involve lambda^k and
/// become multi-kilobyte rationals long before this.
pub const PATTERN_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Constants exactly as derived from the pattern size. The size
    /// guarantees hold, but the nontrivial branches need astronomically
    /// large inputs.
    Strict,
    /// User-supplied lambda everywhere lambda appears, with size rules made
    /// input-adaptive so the same control flow runs at bench scale.
    /// Correctness of every output is unchanged; size guarantees are voided.
    Relaxed,
}

/// How to build a schedule.
#[derive(Clone, Debug)]
pub enum ModeSpec {
    Strict,
    Relaxed { lambda: BigRational },
}

/// Every numeric parameter for one pattern size and mode, as exact rationals.
#[derive(Clone, Debug)]
pub struct ConstantSchedule {
    k_user: usize,
    k: usize,
    mode: Mode,
    lambda: BigRational,
    lambda_k: BigRational,
    lambda_f: BigRational,
    c: BigRational,
    /// (1/k) c^(log k + 1): governs the trivial-size exit.
    c_k_threshold: BigRational,
    /// c (c/2)^(log k - 1): the element-size fraction of built sequences.
    c_k_sequence: BigRational,
    one_minus_lambda: BigRational,
    one_minus_four_lambda: BigRational,
}

fn br(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow(base: &BigRational, exp: usize) -> BigRational {
    num::pow::pow(base.clone(), exp)
}

fn log2(k: usize) -> usize {
    debug_assert!(k.is_power_of_two());
    k.trailing_zeros() as usize
}

/// Builds the schedule for a requested pattern size. Sizes that are not a
/// power of two are rounded up: the bigger path contains the smaller one, so
/// freeness is preserved.
pub fn schedule_for(k_user: usize, mode: ModeSpec) -> Result<ConstantSchedule> {
    if k_user < 3 {
        return Err(Error::Precondition(format!(
            "pattern size {k_user} below the minimum of 3"
        )));
    }
    if k_user > PATTERN_CAP {
        return Err(Error::Precondition(format!(
            "pattern size {k_user} above cap {PATTERN_CAP}"
        )));
    }
    let k = k_user.max(4).next_power_of_two();
    let (mode, lambda) = match mode {
        ModeSpec::Strict => {
            let den = BigInt::from(32) * BigInt::from(k).pow(4);
            (Mode::Strict, BigRational::new(BigInt::one(), den))
        }
        ModeSpec::Relaxed { lambda } => {
            if lambda <= BigRational::zero() || lambda > BigRational::new(1.into(), 2.into()) {
                return Err(Error::Precondition(format!(
                    "relaxed lambda {lambda} outside (0, 1/2]"
                )));
            }
            (Mode::Relaxed, lambda)
        }
    };
    let k_r = br(k);
    let lambda_k = br(4) * &lambda * &k_r * &k_r;
    let lambda_f = br(4) * &k_r * &lambda_k;
    let c = pow(&lambda, k) / (&k_r * &k_r);
    let half_c = &c / br(2);
    let c_k_threshold = pow(&c, log2(k) + 1) / &k_r;
    let c_k_sequence = &c * pow(&half_c, log2(k) - 1);

    if mode == Mode::Strict {
        // lambda_f = 16 lambda k^3 = 1/(2k) exactly under the strict lambda.
        let bound = BigRational::new(BigInt::one(), BigInt::from(2 * k));
        assert!(lambda_f <= bound, "strict schedule violates lambda_f <= 1/(2k)");
    }

    let one = BigRational::one();
    Ok(ConstantSchedule {
        k_user,
        k,
        mode,
        one_minus_lambda: &one - &lambda,
        one_minus_four_lambda: &one - br(4) * &lambda,
        lambda,
        lambda_k,
        lambda_f,
        c,
        c_k_threshold,
        c_k_sequence,
    })
}

impl ConstantSchedule {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn k_user(&self) -> usize {
        self.k_user
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn lambda_k(&self) -> &BigRational {
        &self.lambda_k
    }

    pub fn lambda_f(&self) -> &BigRational {
        &self.lambda_f
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn c_k_threshold(&self) -> &BigRational {
        &self.c_k_threshold
    }

    pub fn c_k_sequence(&self) -> &BigRational {
        &self.c_k_sequence
    }

    pub fn one_minus_lambda(&self) -> &BigRational {
        &self.one_minus_lambda
    }

    pub fn one_minus_four_lambda(&self) -> &BigRational {
        &self.one_minus_four_lambda
    }

    /// c_r = (c/2)^(log r - 1) c for r a power of two >= 2.
    pub fn c_r(&self, r: usize) -> BigRational {
        let half_c = &self.c / br(2);
        &self.c * pow(&half_c, log2(r) - 1)
    }

    /// lambda_r = 4 lambda r^2 for r > 2, lambda for r = 2.
    pub fn lambda_r(&self, r: usize) -> BigRational {
        if r == 2 {
            self.lambda.clone()
        } else {
            br(4) * &self.lambda * br(r) * br(r)
        }
    }

    /// The trivial-size exit: strict mode compares n against k / c_k; the
    /// relaxed threshold is 2k so the machinery actually runs on bench-size
    /// inputs.
    pub fn is_trivial_size(&self, n: usize) -> bool {
        match self.mode {
            Mode::Strict => {
                BigInt::from(n) * self.c_k_threshold.numer()
                    <= BigInt::from(self.k) * self.c_k_threshold.denom()
            }
            Mode::Relaxed => n <= 2 * self.k,
        }
    }

    /// Strict dense pairs are floor(c n) on each side; relaxed mode sizes
    /// the pair from the sets present at the exit instead.
    pub fn dense_pair_size(&self, n: usize) -> Option<usize> {
        match self.mode {
            Mode::Strict => Some(floor_fraction(n, &self.c)),
            Mode::Relaxed => None,
        }
    }

    /// Truncation size for a length-r sequence built in an n-vertex
    /// tournament: floor((c n / 2) c_{r/2}) in strict mode, adaptive in
    /// relaxed mode.
    pub fn truncation_size(&self, r: usize, n: usize) -> Option<usize> {
        match self.mode {
            Mode::Strict => {
                let m = &self.c * br(n) / br(2) * self.c_r(r / 2);
                Some(floor_fraction(1, &m))
            }
            Mode::Relaxed => None,
        }
    }

    /// The guaranteed strict-mode output exponent c/(k log^2 k); reporting
    /// only.
    pub fn epsilon(&self) -> BigRational {
        let l = log2(self.k);
        &self.c / (br(self.k) * br(l) * br(l))
    }
}

/// A verified pattern copy, vertices listed in path order.
#[derive(Clone, Debug)]
pub struct PkWitness {
    pub vertices: Vec<usize>,
}

/// Exit bookkeeping for one extraction run.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub base_single: usize,
    pub trivial_size: usize,
    pub degenerate_fallbacks: usize,
    pub union_fallbacks: usize,
    pub edges_found: usize,
    pub recursion_pairs: Vec<(usize, usize)>,
    pub unexpected_sequence_fallbacks: usize,
    pub max_depth: usize,
}

impl Trace {
    /// Folds another run's exits into this one; used by drivers that chain
    /// many extractions.
    pub fn absorb(&mut self, other: &Trace) {
        self.base_single += other.base_single;
        self.trivial_size += other.trivial_size;
        self.degenerate_fallbacks += other.degenerate_fallbacks;
        self.union_fallbacks += other.union_fallbacks;
        self.edges_found += other.edges_found;
        self.recursion_pairs.extend(&other.recursion_pairs);
        self.unexpected_sequence_fallbacks += other.unexpected_sequence_fallbacks;
        self.max_depth = self.max_depth.max(other.max_depth);
    }
}

/// A verified transitive subset plus the exits that produced it.
#[derive(Clone, Debug)]
pub struct TransResult {
    pub vertices: VertexSet,
    pub trace: Trace,
}

#[derive(Clone, Debug)]
pub enum FindOutcome {
    Transitive(TransResult),
    Witness(PkWitness),
}

enum Inner {
    Set(VertexSet),
    Witness(Vec<usize>),
}

fn lowest_two(t: &Tournament) -> VertexSet {
    VertexSet::from_indices(t.n(), [0usize, 1]).expect("n >= 2")
}

fn is_degenerate(err: &Error) -> bool {
    matches!(
        err,
        Error::DegenerateSize { .. } | Error::DegenerateSequence
    )
}

/// Finds a transitive subset of `t` (or a verified pattern copy, which on a
/// pattern-free input cannot happen). The returned set is re-verified before
/// returning in every mode.
pub fn find_trans(t: &Tournament, schedule: &ConstantSchedule) -> Result<FindOutcome> {
    let mut trace = Trace::default();
    match inner(t, schedule, &mut trace, 0)? {
        Inner::Set(vertices) => {
            let result = TransResult { vertices, trace };
            assert!(
                verify_trans_result(t, &result),
                "extractor returned an unverified set"
            );
            Ok(FindOutcome::Transitive(result))
        }
        Inner::Witness(vertices) => {
            assert!(check_pk_witness(t, &vertices)?);
            Ok(FindOutcome::Witness(PkWitness { vertices }))
        }
    }
}

fn inner(
    t: &Tournament,
    schedule: &ConstantSchedule,
    trace: &mut Trace,
    depth: usize,
) -> Result<Inner> {
    trace.max_depth = trace.max_depth.max(depth);
    let n = t.n();
    if n == 0 {
        return Ok(Inner::Set(VertexSet::empty(0)));
    }
    if n == 1 {
        trace.base_single += 1;
        return Ok(Inner::Set(VertexSet::full(1)));
    }
    if schedule.is_trivial_size(n) {
        trace.trivial_size += 1;
        return Ok(Inner::Set(lowest_two(t)));
    }

    let relaxed = schedule.mode() == Mode::Relaxed;
    let k = schedule.k();

    let seq = match create_sequence(t, k, schedule) {
        Ok(SeqResult::Witness(w)) => return Ok(Inner::Witness(w)),
        Ok(SeqResult::Sequence(s)) => {
            if s.unexpected_fallback {
                trace.unexpected_sequence_fallbacks += 1;
                assert!(relaxed, "sequence pair search failed in strict mode");
            }
            s.seq
        }
        Err(e) if relaxed && is_degenerate(&e) => {
            trace.degenerate_fallbacks += 1;
            return Ok(Inner::Set(lowest_two(t)));
        }
        Err(e) => return Err(e),
    };

    let smooth = match make_smooth(t, &seq, schedule.lambda()) {
        Ok(s) => s,
        Err(e) if relaxed && is_degenerate(&e) => {
            trace.degenerate_fallbacks += 1;
            return Ok(Inner::Set(lowest_two(t)));
        }
        Err(e) => return Err(e),
    };

    let pattern = PkPattern::new(k)?;
    let mut elems = smooth.into_elements();
    let mut recorded: Vec<(usize, usize)> = Vec::with_capacity(k);

    for i in 0..k / 2 {
        let u = pattern.left(i);
        let v = pattern.right(i);

        // Backward edge search: lowest y in position v, then lowest x.
        let mut found = None;
        'search: for y in elems[v].iter() {
            if let Some(x) = t.out_neighbors_in(y, &elems[u]).first() {
                found = Some((y, x));
                break 'search;
            }
        }

        match found {
            Some((y, x)) => {
                trace.edges_found += 1;
                recorded.push((u, x));
                recorded.push((v, y));
                for (pos, elem) in elems.iter_mut().enumerate() {
                    if pos == u || pos == v {
                        continue;
                    }
                    let from_y = if pos > v {
                        t.out_neighbors_in(y, elem)
                    } else {
                        t.in_neighbors_in(y, elem)
                    };
                    let from_x = if pos > u {
                        t.out_neighbors_in(x, elem)
                    } else {
                        t.in_neighbors_in(x, elem)
                    };
                    *elem = from_y.intersection(&from_x);
                }
                if schedule.mode() == Mode::Strict {
                    // Each found edge costs every element at most
                    // 2 (c_k/2) n lambda_f vertices.
                    let edges = br(i + 1);
                    let half_ck = schedule.c_k_sequence() / br(2);
                    let floor = &half_ck * br(n)
                        * (BigRational::one() - br(2) * edges * schedule.lambda_f());
                    for e in &elems {
                        assert!(
                            count_ge_fraction(e.len(), 1, &floor),
                            "element fell below the strict size floor"
                        );
                    }
                }
            }
            None => {
                // No backward edge: position u is complete to position v.
                assert_eq!(
                    t.edge_count_between(&elems[v], &elems[u]),
                    0,
                    "recursion pair is not complete"
                );
                trace.recursion_pairs.push((u, v));
                let m1 = recurse(t, &elems[u], schedule, trace, depth)?;
                let m1 = match m1 {
                    Inner::Witness(w) => return Ok(Inner::Witness(w)),
                    Inner::Set(s) => s,
                };
                let m2 = recurse(t, &elems[v], schedule, trace, depth)?;
                let m2 = match m2 {
                    Inner::Witness(w) => return Ok(Inner::Witness(w)),
                    Inner::Set(s) => s,
                };
                let union = m1.union(&m2);
                if union.len() < 2 {
                    // Possible only when both elements collapsed under the
                    // relaxed intersections.
                    assert!(relaxed, "empty recursion pair in strict mode");
                    trace.union_fallbacks += 1;
                    return Ok(Inner::Set(lowest_two(t)));
                }
                assert!(
                    t.is_transitive(&union).is_transitive(),
                    "union of recursion results is not transitive"
                );
                return Ok(Inner::Set(union));
            }
        }
    }

    // Every matched position pair produced a backward edge: the recorded
    // vertices, reordered from matching positions to path order, induce the
    // full pattern.
    let mut path_ordered = vec![usize::MAX; k];
    for (pos, vert) in recorded {
        path_ordered[pattern.matching_order()[pos]] = vert;
    }
    assert!(path_ordered.iter().all(|&v| v != usize::MAX));
    assert!(check_pk_witness(t, &path_ordered)?);
    Ok(Inner::Witness(path_ordered))
}

fn recurse(
    t: &Tournament,
    elem: &VertexSet,
    schedule: &ConstantSchedule,
    trace: &mut Trace,
    depth: usize,
) -> Result<Inner> {
    if elem.is_empty() {
        return Ok(Inner::Set(VertexSet::empty(t.n())));
    }
    let (sub, map) = t.induced(elem)?;
    Ok(match inner(&sub, schedule, trace, depth + 1)? {
        Inner::Set(s) => Inner::Set(VertexSet::from_indices(
            t.n(),
            s.iter().map(|v| map[v]),
        )?),
        Inner::Witness(w) => Inner::Witness(w.iter().map(|&v| map[v]).collect()),
    })
}

/// Re-checks a result against the tournament it came from: membership,
/// transitivity, and the minimum-size floor.
pub fn verify_trans_result(t: &Tournament, result: &TransResult) -> bool {
    result.vertices.universe() == t.n()
        && t.is_transitive(&result.vertices).is_transitive()
        && result.vertices.len() >= usize::min(2, t.n())
}
