use thiserror::Error;

/// Errors surfaced by the dimension engine and its input validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cartan matrix is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("cartan matrix is empty")]
    EmptyMatrix,
    #[error("diagonal entry a[{0}][{0}] = {1}, expected 2")]
    BadDiagonal(usize, i64),
    #[error("off-diagonal entry a[{0}][{1}] = {2} violates the sign or zero-pattern rule")]
    BadSign(usize, usize, i64),
    #[error("matrix is not symmetrizable (inconsistent ratio at nodes {0} and {1})")]
    NotSymmetrizable(usize, usize),
    #[error("unknown cartan type `{0}`")]
    UnknownType(String),
    #[error("rank {rank} is not valid for cartan type {family}")]
    BadRank { family: String, rank: usize },
    #[error("index {index} is out of range for {count} nodes")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("unknown node label {0}")]
    UnknownLabel(i64),
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("tuples have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("tuples have different root content")]
    IncompatibleContent,
    #[error("weight is not dominant")]
    NotDominant,
    #[error("negative root coefficient at node {0}")]
    NegativeRoot(usize),
    #[error("sequence entry k[{position}] = {value} is outside 0..={max}")]
    OutOfRange { position: usize, value: usize, max: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("block letters repeat; tuple is not in tilde form")]
    NotTildeForm,
    #[error("precondition failed: {0}")]
    PreconditionFail(String),
    #[error("a12 = 0 is excluded from the n = 3 basis count")]
    ZeroA12,
    #[error("exact division left a nonzero remainder")]
    DivisionInexact,
    #[error("level split does not sum to the target weight")]
    BadSplit,
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("time budget of {budget_ms} ms exceeded; partial result: {partial}")]
    TimeBudget { budget_ms: u64, partial: String },
}

pub type Result<T> = std::result::Result<T, Error>;
