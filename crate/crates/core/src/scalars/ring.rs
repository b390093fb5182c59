//! The pluggable coefficient-ring capability.
//!
//! A ring value describes a commutative Q-algebra with exact arithmetic and
//! decidable unit / nilpotent predicates. Elements do not know their ring;
//! all operations go through the ring value, which lets rings carry context
//! (a nilpotency degree, a generator list) without bloating every element.

use std::fmt::Debug;

use super::rational::Rational;
use crate::error::{Error, Result};

pub trait CoefficientRing: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Debug;

    /// Short human-readable name used in ring-mismatch errors.
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// The canonical image of a rational number.
    fn from_rational(&self, q: &Rational) -> Self::Elem;

    fn mul_rational(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.mul(a, &self.from_rational(q))
    }

    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn is_nilpotent(&self, a: &Self::Elem) -> bool;

    /// Multiplicative inverse of a unit; `Error::NotAUnit` otherwise.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Canonical text rendering, parseable by the expression grammar.
    fn render(&self, a: &Self::Elem) -> String;

    /// Errors unless the two ring values are equal.
    fn require_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.name(),
                right: other.name(),
            })
        }
    }
}

/// The field of arbitrary-precision rationals.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RationalField;

impl CoefficientRing for RationalField {
    type Elem = Rational;

    fn name(&self) -> String {
        "Q".into()
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn is_unit(&self, a: &Rational) -> bool {
        !a.is_zero()
    }

    fn is_nilpotent(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            Err(Error::NotAUnit("0".into()))
        } else {
            Ok(a.recip())
        }
    }

    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }
}
