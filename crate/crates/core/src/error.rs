use num_rational::BigRational;
use thiserror::Error;

use crate::series::CoeffKey;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid triple ({0}, {1}, {2}): expected 1 <= a1 <= a2 <= a3")]
    InvalidTriple(i64, i64, i64),

    #[error("coordinate {0} does not exist for this orbifold")]
    InvalidCoordinate(String),

    #[error("key {0} violates Euler homogeneity")]
    InadmissibleKey(CoeffKey),

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("no resolving WDVV equation found for {0}")]
    Stalled(CoeffKey),

    #[error("resolving equations disagree on {key}: {first} vs {second}")]
    Inconsistent {
        key: CoeffKey,
        first: Box<BigRational>,
        second: Box<BigRational>,
    },

    #[error("symmetric keys {0} and {1} carry different values")]
    SymmetryConflict(CoeffKey, CoeffKey),

    #[error("coefficient {0} is not known yet")]
    UnknownCoefficient(CoeffKey),

    #[error("equation is nonlinear in the unknown coefficients")]
    Nonlinear,

    #[error("potential still has {0} unknown coefficients")]
    Incomplete(usize),

    #[error("oracle failed at level {level}: {reason}")]
    Oracle { level: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
