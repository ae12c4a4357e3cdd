use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("multidegree length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid monomial ideal: {0}")]
    InvalidIdeal(String),
    #[error("too many generators: {got} exceeds the cap of {cap}")]
    GeneratorCap { got: usize, cap: usize },
    #[error("poset too large for isomorphism search: {got} elements exceeds the cap of {cap}")]
    PosetCap { got: usize, cap: usize },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("input is not a resolution: {0}")]
    NotResolution(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("construction failed verification: {0}")]
    Verification(String),
    #[error("invalid simplicial complex: {0}")]
    InvalidSimplicialComplex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
