use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("incompatible signatures: {0} vs {1}")]
    IncompatibleSignatures(String, String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no separating hom")]
    NoSeparatingHom,
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("resource guard: estimated size {estimate} exceeds limit {limit}")]
    ResourceGuard { estimate: String, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
