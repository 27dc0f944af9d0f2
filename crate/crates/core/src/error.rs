use thiserror::Error;

use crate::lattice::Basis;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse `{0}` as a rational number")]
    BadRational(String),

    #[error("basis mismatch: expected {expected:?}, got {got:?}")]
    BasisMismatch { expected: Basis, got: Basis },

    #[error("vector has {got} coefficients, basis {basis:?} has rank {expected}")]
    BadRank {
        basis: Basis,
        expected: usize,
        got: usize,
    },

    #[error("operation not defined for basis {0:?}")]
    UnsupportedBasis(Basis),

    #[error("reflection root must have self-pairing -2 or -1, got {0}")]
    BadRoot(String),

    #[error("vector is not orthogonal to k (not in Q_S)")]
    NotInQs,

    #[error("vector must have positive square, or zero square and be nonzero")]
    NotReducible,

    #[error("point is not in the closed chamber")]
    OutsideChamber,

    #[error("no feasible class with l0-coefficient <= {0}; raise the bound")]
    InfeasibleBound(u32),

    #[error("zero class is degenerate here")]
    ZeroClass,

    #[error("blocks do not satisfy the anti-invariant pattern (y = -x, z3 = -z2)")]
    NotAntiInvariant,

    #[error("no chamber point with denominator {denom} found after {tries} draws")]
    SamplingExhausted { denom: u64, tries: u64 },
}
