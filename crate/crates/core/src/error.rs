//! Shared error type for all exact-arithmetic operations.

use crate::scalars::Half;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("coefficient ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("element is not a unit: {0}")]
    NotAUnit(String),

    #[error("leading coefficient is not a unit (found {found} at exponent {at})")]
    NonUnitLeading { found: String, at: Half },

    #[error("coefficient {found} at exponent {at} must be nilpotent")]
    NonNilpotentTail { found: String, at: Half },

    #[error("precision too low: needs coefficients known up to exponent {needed}, but head is {have}")]
    Precision { needed: Half, have: Half },

    #[error("operation requires a finite precision cap but all inputs are exact")]
    NeedsCap,

    #[error("gamma has a pole at {0}")]
    GammaPole(Half),

    #[error("exponent {0} is not a multiple of the substitution step {1}")]
    StepMismatch(Half, Half),

    #[error("series must have integral exponents, found {0}")]
    NotIntegral(Half),

    #[error("series must have odd-half exponents, found {0}")]
    NotOddHalf(Half),

    #[error("operator windows are incompatible: {0}")]
    WindowMismatch(String),

    #[error("operator is not graded-homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("central charge fit failed: {0}")]
    FitFailure(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
