use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("mode {index} out of range for {kind} mode count {count}")]
    ModeOutOfRange {
        kind: &'static str,
        index: usize,
        count: usize,
    },
    #[error("qubit {index} out of range for {count} qubits")]
    QubitOutOfRange { index: usize, count: usize },
    #[error("operator is not Hermitian: {0}")]
    NonHermitian(String),
    #[error("missing coupling entry: {0}")]
    MissingCoupling(String),
    #[error("inconsistent table dimensions: {0}")]
    Dimension(String),
    #[error("Hilbert space dimension {dim} exceeds limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },
    #[error("unsupported Trotter order {0}; expected 1 or 2")]
    TrotterOrder(u32),
    #[error("number of Trotter steps must be at least 1")]
    ZeroSteps,
    #[error("weight-0 Pauli string has no gate realization; treat it as a global phase")]
    IdentityString,
    #[error("unsupported term: {0}")]
    UnsupportedTerm(String),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("operator dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
