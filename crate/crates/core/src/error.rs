use thiserror::Error;

/// Errors raised by the library.
///
/// Property-violation findings (a lemma check failing on a census pair, a
/// bound exceeded) are reported as data, not as errors. The one exception is
/// [`Error::NotCospectralMate`], which `recover_q` raises when the recovered
/// matrix fails verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {op} of {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular (det = 0)")]
    Singular,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0} graph is not controllable (det W = 0)")]
    NotControllable(&'static str),
    #[error("graphs are not generalized cospectral")]
    NotCospectral,
    #[error("graphs are isomorphic")]
    Isomorphic,
    #[error("cospectral pair has no verified regular rational orthogonal conjugator: {0}")]
    NotCospectralMate(String),
    #[error("not applicable: {0}")]
    Inapplicable(String),
    #[error("record line {line}: {msg}")]
    Record { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
