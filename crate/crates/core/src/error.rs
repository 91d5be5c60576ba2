use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data violates its format (unoriented pair, self-loop, bad matrix, ...).
    #[error("malformed input: {0}")]
    Malformed(String),

    /// A documented precondition of an operation was violated by the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Pattern size not handled by the requested operation (e.g. odd k).
    #[error("unsupported pattern size k={k}: {reason}")]
    UnsupportedSize { k: usize, reason: &'static str },

    /// A computed set size reached zero, so the current run cannot continue.
    #[error("degenerate size while {context}")]
    DegenerateSize { context: &'static str },

    /// An alpha-sequence element became empty during smoothing.
    #[error("degenerate alpha-sequence: element became empty")]
    DegenerateSequence,

    /// An exact solver exceeded its configured budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Vertex count above the configured hard cap.
    #[error("vertex count {n} exceeds cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
