//! Instance generation: seeded random tournaments, substitution products,
//! the iterated product family, and oracle-verified searches for base
//! tournaments with small transitive subsets.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracles::{find_pk_exhaustive, max_transitive_exact, OracleBudget};
use crate::tournament::{Tournament, VERTEX_CAP};

/// One fair coin per unordered pair. Pairs are visited in lexicographic
/// order and coins are the bits of consecutive ChaCha words, least
/// significant first, so identical seeds give identical tournaments on every
/// platform.
pub fn random_tournament(n: usize, seed: u64) -> Result<Tournament> {
    if n == 0 {
        return Err(Error::Precondition(
            "random tournament needs n >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buf = 0u64;
    let mut left = 0u32;
    Tournament::from_fn(n, |_, _| {
        if left == 0 {
            buf = rng.next_u64();
            left = 64;
        }
        let bit = buf & 1 == 1;
        buf >>= 1;
        left -= 1;
        bit
    })
}

/// Substitution product: every vertex of `s` is blown up into a copy of `f`;
/// edges across copies follow `s`. Vertex numbering is block-major.
pub fn substitution_product(s: &Tournament, f: &Tournament) -> Result<Tournament> {
    let n = s
        .n()
        .checked_mul(f.n())
        .filter(|&n| n <= VERTEX_CAP)
        .ok_or(Error::SizeCapExceeded {
            n: usize::MAX,
            cap: VERTEX_CAP,
        })?;
    let fsize = f.n();
    Tournament::from_fn(n, |u, v| {
        let (bu, bv) = (u / fsize, v / fsize);
        if bu == bv {
            f.has_edge(u % fsize, v % fsize)
        } else {
            s.has_edge(bu, bv)
        }
    })
}

/// Provenance of a searched base tournament: the seed and how far each
/// verification was carried.
#[derive(Clone, Debug, Default)]
pub struct Provenance {
    pub seed: Option<u64>,
    pub pk_free_checked_depth: Option<usize>,
    pub tr_checked_depth: Option<usize>,
}

/// An iterated-product family: `F_0` is a single vertex and
/// `F_{i+1} = base x F_i`.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub base: Tournament,
    pub depth: usize,
    pub provenance: Provenance,
}

impl FamilySpec {
    pub fn new(base: Tournament, depth: usize) -> Self {
        FamilySpec {
            base,
            depth,
            provenance: Provenance::default(),
        }
    }
}

/// Materializes `F_depth`. Sizes multiply by |base| per level, so the cap is
/// checked before each product.
pub fn family(spec: &FamilySpec) -> Result<Tournament> {
    let mut current = Tournament::from_edges(1, &[])?;
    for _ in 0..spec.depth {
        current = substitution_product(&spec.base, &current)?;
    }
    Ok(current)
}

/// Outcome of a randomized base search.
#[derive(Clone, Debug)]
pub enum BaseSearch {
    Found {
        tournament: Tournament,
        seed: u64,
        attempts: u64,
        max_transitive: usize,
    },
    NotFound {
        attempts: u64,
    },
}

/// Scans seeds `0..seed_budget` for a random `n`-vertex tournament whose
/// largest transitive subset has size at most `tr_max` and which is free of
/// the k-vertex path; both facts are verified exactly before a candidate is
/// accepted, and the first seed in order wins.
pub fn search_base(
    k: usize,
    n: usize,
    tr_max: usize,
    seed_budget: u64,
    budget: &OracleBudget,
) -> Result<BaseSearch> {
    for seed in 0..seed_budget {
        let t = random_tournament(n, seed)?;
        let tr = max_transitive_exact(&t, budget)?.len();
        if tr > tr_max {
            continue;
        }
        if find_pk_exhaustive(&t, k, budget)?.is_none() {
            return Ok(BaseSearch::Found {
                tournament: t,
                seed,
                attempts: seed + 1,
                max_transitive: tr,
            });
        }
    }
    Ok(BaseSearch::NotFound {
        attempts: seed_budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::path_tournament;

    #[test]
    fn single_vertex_any_seed() {
        let t = random_tournament(1, 12345).unwrap();
        assert_eq!(t.n(), 1);
        assert!(random_tournament(0, 0).is_err());
    }

    #[test]
    fn golden_stream_n5_seed42() {
        // Frozen once from the pinned generator; a change here means the
        // byte stream consumed per pair drifted.
        let t = random_tournament(5, 42).unwrap();
        let rows: Vec<String> = (0..5)
            .map(|u| {
                (0..5)
                    .map(|v| if u != v && t.has_edge(u, v) { '1' } else { '0' })
                    .collect()
            })
            .collect();
        assert_eq!(rows, vec!["01000", "00010", "11011", "10001", "11000",]);
    }

    #[test]
    fn different_seeds_differ() {
        let a = random_tournament(30, 1).unwrap();
        let b = random_tournament(30, 2).unwrap();
        assert_ne!(a, b);
        // Orientation-count sanity: every pair oriented exactly once.
        let full = a.full_set();
        let mut edges = 0u64;
        for v in 0..30 {
            edges += a.out_degree_in(v, &full) as u64;
        }
        assert_eq!(edges, 30 * 29 / 2);
    }

    #[test]
    fn product_identities() {
        let single = Tournament::from_edges(1, &[]).unwrap();
        let p4 = path_tournament(4).unwrap();
        assert_eq!(substitution_product(&single, &p4).unwrap(), p4);
        assert_eq!(substitution_product(&p4, &single).unwrap(), p4);
    }

    #[test]
    fn c3_product_transitive_size() {
        let c3 = Tournament::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let prod = substitution_product(&c3, &c3).unwrap();
        assert_eq!(prod.n(), 9);
        let best = max_transitive_exact(&prod, &OracleBudget::default()).unwrap();
        assert_eq!(best.len(), 4);
    }

    #[test]
    fn family_sizes_and_multiplicativity() {
        let b = path_tournament(4).unwrap();
        assert_eq!(family(&FamilySpec::new(b.clone(), 0)).unwrap().n(), 1);
        assert_eq!(family(&FamilySpec::new(b.clone(), 1)).unwrap(), b);
        let f2 = family(&FamilySpec::new(b.clone(), 2)).unwrap();
        assert_eq!(f2.n(), 16);
        let budget = OracleBudget::default();
        let tr_b = max_transitive_exact(&b, &budget).unwrap().len();
        let tr_f2 = max_transitive_exact(&f2, &budget).unwrap().len();
        assert_eq!(tr_b, 3);
        assert_eq!(tr_f2, tr_b * tr_b);
    }

    #[test]
    fn family_is_pattern_free_when_base_is() {
        // 4 vertices cannot contain a 5-path, so the 4-path base is 5-free;
        // the product construction must preserve that.
        let b = path_tournament(4).unwrap();
        let budget = OracleBudget::default();
        assert!(find_pk_exhaustive(&b, 5, &budget).unwrap().is_none());
        let f2 = family(&FamilySpec::new(b, 2)).unwrap();
        assert!(find_pk_exhaustive(&f2, 5, &budget).unwrap().is_none());
    }

    #[test]
    fn base_search_tiny_cases() {
        let budget = OracleBudget::default();
        // Any 3-vertex tournament is 4-path-free; a cyclic triangle has
        // transitive size 2.
        match search_base(4, 3, 2, 32, &budget).unwrap() {
            BaseSearch::Found {
                tournament,
                max_transitive,
                ..
            } => {
                assert_eq!(max_transitive, 2);
                assert!(!tournament
                    .is_transitive(&tournament.full_set())
                    .is_transitive());
            }
            BaseSearch::NotFound { .. } => panic!("a cyclic triangle should appear"),
        }
        // 4 vertices are vacuously 5-path-free; tr <= 3 excludes only the
        // transitive ones.
        match search_base(5, 4, 3, 32, &budget).unwrap() {
            BaseSearch::Found {
                tournament,
                max_transitive,
                ..
            } => {
                assert!(max_transitive <= 3);
                assert!(find_pk_exhaustive(&tournament, 5, &budget)
                    .unwrap()
                    .is_none());
            }
            BaseSearch::NotFound { .. } => panic!("non-transitive 4-tournaments abound"),
        }
    }

    #[test]
    fn base_search_reports_not_found() {
        let budget = OracleBudget::default();
        // tr_max = 0 is impossible.
        match search_base(4, 5, 0, 3, &budget).unwrap() {
            BaseSearch::NotFound { attempts } => assert_eq!(attempts, 3),
            BaseSearch::Found { .. } => panic!("tr_max 0 cannot be met"),
        }
    }
}
