//! Exact computer algebra for a residue-pairing calculus on formal Laurent
//! series with half-step exponents.
//!
//! The crate provides:
//! - scalar rings: arbitrary-precision rationals, the ring of rational
//!   multiples of half-integer powers of pi, truncated polynomial rings
//!   Q[eps]/(eps^N), and free polynomial rings with optional inverted
//!   generators ([`scalars`]);
//! - precision-tracked Laurent series with substitution, inversion and
//!   residues ([`series`]);
//! - one-dimensional formal group laws and the residue pairing against the
//!   logarithmic differential ([`fgl`]);
//! - the symplectic residue form, divided powers and the half-integer
//!   embedding ([`symplectic`]);
//! - the nil-Laurent substitution group, its Witt-operator action and the
//!   square-root double cover ([`autgroup`]);
//! - a polynomial Fock representation with Heisenberg modes, Virasoro
//!   operators, graded matrix materialization and a central charge fit
//!   ([`fock`]).

pub mod autgroup;
pub mod error;
pub mod fgl;
pub mod fock;
pub mod scalars;
pub mod series;
pub mod symplectic;

pub use error::{Error, Result};
pub use scalars::{CoefficientRing, Half, Rational};
pub use series::{Head, LaurentSeries, SeriesParity};
