//! Half-integers stored as doubled integers: `Half(p)` is the value p/2.
//!
//! Every exponent, weight, and precision bound in this crate is a half-integer
//! carried in this doubled representation, so all bookkeeping is exact integer
//! arithmetic.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::rational::Rational;

/// A half-integer p/2, stored as the doubled integer p.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Half(pub i64);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const HALF: Half = Half(1);
    pub const ONE: Half = Half(2);

    /// The integer k as a half-integer.
    pub fn int(k: i64) -> Half {
        Half(2 * k)
    }

    /// k + 1/2 as a half-integer.
    pub fn int_plus_half(k: i64) -> Half {
        Half(2 * k + 1)
    }

    pub fn is_integer(self) -> bool {
        self.0.rem_euclid(2) == 0
    }

    pub fn is_odd_half(self) -> bool {
        !self.is_integer()
    }

    /// Some(k) when the value is the integer k.
    pub fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.0, 2)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl AddAssign for Half {
    fn add_assign(&mut self, rhs: Half) {
        self.0 += rhs.0;
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl SubAssign for Half {
    fn sub_assign(&mut self, rhs: Half) {
        self.0 -= rhs.0;
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl Mul<i64> for Half {
    type Output = Half;
    fn mul(self, rhs: i64) -> Half {
        Half(self.0 * rhs)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
