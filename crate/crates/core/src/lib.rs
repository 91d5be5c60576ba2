//! Combinatorial algorithms on dense tournaments: extraction of large
//! transitive subsets from path-free tournaments, acyclic coloring by
//! repeated extraction, exact brute-force oracles for desk-scale ground
//! truth, and generators for random instances, substitution products and
//! iterated product families.
//!
//! All density thresholds are evaluated in exact rational arithmetic, every
//! algorithm is deterministic (ties break to lowest indices), and every
//! result is re-verified before it is returned.

pub mod alphaseq;
pub mod coloring;
pub mod error;
pub mod extract;
pub mod findtrans;
pub mod generators;
pub mod oracles;
pub mod patterns;
pub mod tournament;

pub use alphaseq::{make_smooth, AlphaReport, AlphaSequence};
pub use coloring::{acyclic_coloring, verify_coloring, ColorOutcome, Coloring};
pub use error::{Error, Result};
pub use extract::{
    create_sequence, make_dense_pair, DenseOutcome, DensePair, PairBranch, PatternState,
    SeqResult, SequenceOutput,
};
pub use findtrans::{
    find_trans, schedule_for, verify_trans_result, ConstantSchedule, FindOutcome, Mode,
    ModeSpec, PkWitness, Trace, TransResult,
};
pub use generators::{
    family, random_tournament, search_base, substitution_product, BaseSearch, FamilySpec,
};
pub use oracles::{
    dichromatic_exact, find_pk_exhaustive, homogeneous_sets, max_transitive_exact, OracleBudget,
};
pub use patterns::{check_pk_witness, path_tournament, BackEdge, PkPattern};
pub use tournament::{Density, Tournament, Transitivity, VertexSet, VERTEX_CAP};
