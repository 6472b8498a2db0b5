use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("modules or complexes live over different algebras")]
    AlgebraMismatch,
    #[error("algebra presentation lacks {0}; projective covers need idempotents and a radical basis")]
    MissingStructure(String),
    #[error("bound {given} too small, need at least {needed}")]
    BoundTooSmall { needed: i64, given: i64 },
    #[error("the complex has no homology (it is exact, hence perfect); omega is undefined")]
    ZeroComplex,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
