//! The ring Q[pi^(1/2), pi^(-1/2)]: finite rational combinations of
//! half-integer powers of pi, with pi treated as transcendental.

use std::collections::BTreeMap;
use std::fmt;

use super::half::Half;
use super::rational::Rational;
use super::ring::CoefficientRing;
use crate::error::{Error, Result};

/// A finite sum of terms c * pi^h over half-integer exponents h.
/// Invariant: no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PiHalfScalar {
    terms: BTreeMap<Half, Rational>,
}

impl PiHalfScalar {
    pub fn zero() -> PiHalfScalar {
        PiHalfScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> PiHalfScalar {
        PiHalfScalar::monomial(Rational::one(), Half::ZERO)
    }

    /// c * pi^h.
    pub fn monomial(c: Rational, h: Half) -> PiHalfScalar {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(h, c);
        }
        PiHalfScalar { terms }
    }

    pub fn from_rational(c: Rational) -> PiHalfScalar {
        PiHalfScalar::monomial(c, Half::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Half, &Rational)> {
        self.terms.iter().map(|(h, c)| (*h, c))
    }

    pub fn add(&self, other: &PiHalfScalar) -> PiHalfScalar {
        let mut terms = self.terms.clone();
        for (h, c) in &other.terms {
            let entry = terms.entry(*h).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(h);
            }
        }
        PiHalfScalar { terms }
    }

    pub fn neg(&self) -> PiHalfScalar {
        PiHalfScalar {
            terms: self.terms.iter().map(|(h, c)| (*h, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &PiHalfScalar) -> PiHalfScalar {
        let mut terms: BTreeMap<Half, Rational> = BTreeMap::new();
        for (ha, ca) in &self.terms {
            for (hb, cb) in &other.terms {
                let h = *ha + *hb;
                let entry = terms.entry(h).or_insert_with(Rational::zero);
                *entry += &(ca * cb);
                if entry.is_zero() {
                    terms.remove(&h);
                }
            }
        }
        PiHalfScalar { terms }
    }

    /// Multiplication by pi^h.
    pub fn shift_pi(&self, h: Half) -> PiHalfScalar {
        PiHalfScalar {
            terms: self.terms.iter().map(|(e, c)| (*e + h, c.clone())).collect(),
        }
    }

    /// Some(c) when the value is the plain rational c (pi-exponent zero only).
    pub fn as_rational(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Half::ZERO) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Some((c, h)) when the value is the single term c * pi^h.
    pub fn as_monomial(&self) -> Option<(Rational, Half)> {
        if self.terms.len() == 1 {
            let (h, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *h))
        } else {
            None
        }
    }
}

impl fmt::Display for PiHalfScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (h, c) in &self.terms {
            let piece = render_term(c, *h);
            if first {
                write!(f, "{piece}")?;
                first = false;
            } else if let Some(rest) = piece.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {piece}")?;
            }
        }
        Ok(())
    }
}

fn render_term(c: &Rational, h: Half) -> String {
    if h == Half::ZERO {
        return c.to_string();
    }
    let power = if h == Half::ONE {
        "pi".to_string()
    } else if h.is_integer() {
        let k = h.as_integer().unwrap();
        if k >= 0 {
            format!("pi^{k}")
        } else {
            format!("pi^({k})")
        }
    } else {
        format!("pi^({h})")
    };
    if c.is_one() {
        power
    } else if *c == Rational::from_int(-1) {
        format!("-{power}")
    } else {
        format!("{c}*{power}")
    }
}

/// Ring value for `PiHalfScalar`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct PiHalfRing;

impl CoefficientRing for PiHalfRing {
    type Elem = PiHalfScalar;

    fn name(&self) -> String {
        "Q[pi^(1/2), pi^(-1/2)]".into()
    }

    fn zero(&self) -> PiHalfScalar {
        PiHalfScalar::zero()
    }

    fn one(&self) -> PiHalfScalar {
        PiHalfScalar::one()
    }

    fn is_zero(&self, a: &PiHalfScalar) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &PiHalfScalar, b: &PiHalfScalar) -> PiHalfScalar {
        a.add(b)
    }

    fn neg(&self, a: &PiHalfScalar) -> PiHalfScalar {
        a.neg()
    }

    fn mul(&self, a: &PiHalfScalar, b: &PiHalfScalar) -> PiHalfScalar {
        a.mul(b)
    }

    fn from_rational(&self, q: &Rational) -> PiHalfScalar {
        PiHalfScalar::from_rational(q.clone())
    }

    /// Units are exactly the nonzero monomials c * pi^h.
    fn is_unit(&self, a: &PiHalfScalar) -> bool {
        a.as_monomial().is_some()
    }

    /// The ring is reduced: only zero is nilpotent.
    fn is_nilpotent(&self, a: &PiHalfScalar) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &PiHalfScalar) -> Result<PiHalfScalar> {
        match a.as_monomial() {
            Some((c, h)) => Ok(PiHalfScalar::monomial(c.recip(), -h)),
            None => Err(Error::NotAUnit(a.to_string())),
        }
    }

    fn render(&self, a: &PiHalfScalar) -> String {
        a.to_string()
    }
}
