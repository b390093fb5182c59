//! Exact scalar domains: rationals, half-integers, the ring Q[pi^(±1/2)]
//! with exact Gamma values, and the pluggable coefficient-ring capability
//! with its concrete test rings.

mod gamma;
mod half;
mod multipoly;
mod nilpotent;
mod pihalf;
mod rational;
mod ring;

pub use gamma::{double_factorial, gamma_reciprocal, gamma_value};
pub use half::Half;
pub use multipoly::{MultiPoly, MultiPolyRing};
pub use nilpotent::{NilElem, NilpotentRing};
pub use pihalf::{PiHalfRing, PiHalfScalar};
pub use rational::Rational;
pub use ring::{CoefficientRing, RationalField};
