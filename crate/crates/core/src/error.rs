use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("window must have at least one entry")]
    EmptyWindow,
    #[error("window entries {first} and {second} are congruent mod {period}")]
    DuplicateResidue { first: i64, second: i64, period: usize },
    #[error("period mismatch: {left} vs {right}")]
    PeriodMismatch { left: usize, right: usize },
    #[error("coweight has {got} entries, expected {expected}")]
    CoweightLength { expected: usize, got: usize },
    #[error("element {window:?} is not in {group}")]
    NotInGroup { window: Vec<i64>, group: String },
    #[error("search for {what} failed: {found} candidates found")]
    SearchFailed { what: &'static str, found: usize },
    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("val-det of element is {actual}, expected {expected}")]
    ValDetMismatch { expected: i64, actual: i64 },
    #[error("{what} exceeds size limit ({limit})")]
    SizeLimit { what: String, limit: String },
    #[error("element {window:?} is not mu-permissible")]
    NotPermissible { window: Vec<i64> },
    #[error("p-rank formulas disagree on {window:?}: diagonal {diagonal}, fixed points {fixed}")]
    FormulaMismatch { window: Vec<i64>, diagonal: usize, fixed: usize },
    #[error("subspace at index {index} has dimension {got}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("normal form failure: {0}")]
    NormalFormFailure(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("{0} is not a supported field size")]
    UnsupportedField(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
