use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::LatticePoint;

/// Errors raised by constructors and checked operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitivity")]
    ZeroVector,

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("degenerate polygon")]
    DegeneratePolygon,

    #[error("dual undefined: origin is not an interior point")]
    DualUndefined,

    #[error("origin is not an interior point")]
    OriginNotInterior,

    #[error("vertex not primitive: {0}")]
    VertexNotPrimitive(LatticePoint),

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("gcd({h}, {k}) != 1")]
    NotCoprime { h: BigInt, k: BigInt },

    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(BigInt),

    #[error("already reduced: cone is unimodular")]
    AlreadyReduced,

    #[error("no LDP polygon found after {0} attempts")]
    CorpusExhausted(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
