use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order must be at least 1")]
    InvalidOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("inverse not available for this scalar")]
    UnsupportedInverse,
    #[error("value not representable in the exact scalar fragment: {0}")]
    UnsupportedScalar(String),
    #[error("denominator vanishes at the evaluation point")]
    DenominatorZero,
    #[error("matrix is not unitary")]
    NonUnitary,
    #[error("matrix does not preserve the ball")]
    NotAutomorphism,
    #[error("split set is empty")]
    EmptySplit,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("map is constant")]
    ConstantMap,
    #[error("no unitary solution exists")]
    NoSolution,
    #[error("map does not send the origin to the origin")]
    NonzeroOrigin,
    #[error("point is not in the open ball")]
    PointOnBoundary,
    #[error("group closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("all eigenvalue weights must be positive")]
    NonPositiveEigenvalue,
    #[error("one-parameter group is not in the invariance group: pair {alpha:?}, {beta:?} is coupled")]
    NotInvariant { alpha: Vec<u32>, beta: Vec<u32> },
    #[error("singular matrix")]
    Singular,
    #[error("integer overflow in lattice computation")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
