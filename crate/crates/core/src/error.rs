use thiserror::Error;

/// Errors raised by the algebraic kernels.
///
/// Mathematical *failures* (a Jacobi residual, a broken Hopf law) are not
/// errors; they are reported through the report types of each module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("derivation has no image for generator `{0}`")]
    IncompleteDerivation(String),
    #[error("bracket table has no entry for {{{0}, {1}}}")]
    IncompleteTable(String, String),
    #[error("duplicate bracket entry for {{{0}, {1}}}")]
    DuplicateEntry(String, String),
    #[error("parity mismatch: {0}")]
    Parity(String),
    #[error("operation requires a homogeneous element, found mixed parity")]
    MixedParity,
    #[error("invalid structure constants: {0}")]
    InvalidConstants(String),
    #[error("matrix is not skew-symmetric: {0}")]
    NotSkew(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("map is not a super Poisson homomorphism: {0}")]
    NotPoisson(String),
    #[error("Hopf data is not compatible with the Poisson structure: {0}")]
    NotPoissonHopf(String),
    #[error("Ore data must pass validation before use")]
    Unvalidated,
}

pub type Result<T> = std::result::Result<T, Error>;
