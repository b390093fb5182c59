//! The test ring Q[eps]/(eps^n): truncated polynomials in one nilpotent.

use std::fmt::Write as _;

use super::rational::Rational;
use super::ring::CoefficientRing;
use crate::error::{Error, Result};

/// An element of Q[eps]/(eps^n): coefficients of eps^0, eps^1, ...
/// Invariant: no trailing zero coefficients; length never exceeds the
/// degree of the ring that produced the element.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NilElem(Vec<Rational>);

impl NilElem {
    pub fn constant(c: Rational) -> NilElem {
        NilElem::from_coeffs(vec![c])
    }

    /// Coefficients of eps^0, eps^1, ... (trailing zeros allowed).
    pub fn from_coeffs(coeffs: Vec<Rational>) -> NilElem {
        let mut v = coeffs;
        while v.last().is_some_and(Rational::is_zero) {
            v.pop();
        }
        NilElem(v)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    fn constant_term(&self) -> Rational {
        self.coeff(0)
    }
}

/// Ring value for Q[eps]/(eps^degree); degree >= 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NilpotentRing {
    degree: usize,
}

impl NilpotentRing {
    pub fn new(degree: usize) -> NilpotentRing {
        assert!(degree >= 1, "nilpotency degree must be at least 1");
        NilpotentRing { degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generator eps (zero when degree == 1, since then eps^1 = 0).
    pub fn eps(&self) -> NilElem {
        if self.degree == 1 {
            NilElem::from_coeffs(vec![])
        } else {
            NilElem::from_coeffs(vec![Rational::zero(), Rational::one()])
        }
    }

    fn truncate(&self, mut v: Vec<Rational>) -> NilElem {
        v.truncate(self.degree);
        NilElem::from_coeffs(v)
    }
}

impl CoefficientRing for NilpotentRing {
    type Elem = NilElem;

    fn name(&self) -> String {
        format!("Q[eps]/(eps^{})", self.degree)
    }

    fn zero(&self) -> NilElem {
        NilElem::from_coeffs(vec![])
    }

    fn one(&self) -> NilElem {
        NilElem::constant(Rational::one())
    }

    fn is_zero(&self, a: &NilElem) -> bool {
        a.0.is_empty()
    }

    fn add(&self, a: &NilElem, b: &NilElem) -> NilElem {
        let n = a.0.len().max(b.0.len());
        let v = (0..n).map(|i| &a.coeff(i) + &b.coeff(i)).collect();
        self.truncate(v)
    }

    fn neg(&self, a: &NilElem) -> NilElem {
        NilElem(a.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, a: &NilElem, b: &NilElem) -> NilElem {
        if a.0.is_empty() || b.0.is_empty() {
            return self.zero();
        }
        let n = (a.0.len() + b.0.len() - 1).min(self.degree);
        let mut v = vec![Rational::zero(); n];
        for (i, ca) in a.0.iter().enumerate() {
            for (j, cb) in b.0.iter().enumerate() {
                if i + j < n {
                    v[i + j] += &(ca * cb);
                }
            }
        }
        self.truncate(v)
    }

    fn from_rational(&self, q: &Rational) -> NilElem {
        NilElem::constant(q.clone())
    }

    /// Units are exactly the elements with nonzero constant term.
    fn is_unit(&self, a: &NilElem) -> bool {
        !a.constant_term().is_zero()
    }

    /// Nilpotents are exactly the elements with zero constant term.
    fn is_nilpotent(&self, a: &NilElem) -> bool {
        a.constant_term().is_zero()
    }

    fn inv(&self, a: &NilElem) -> Result<NilElem> {
        let c = a.constant_term();
        if c.is_zero() {
            return Err(Error::NotAUnit(self.render(a)));
        }
        // a = c (1 + m) with m nilpotent; 1/a = (1/c) sum_j (-m)^j
        let cinv = c.recip();
        let m = self.mul_rational(&self.sub(a, &NilElem::constant(c)), &cinv);
        let mut acc = self.one();
        let mut pw = self.one();
        let neg_m = self.neg(&m);
        for _ in 1..self.degree {
            pw = self.mul(&pw, &neg_m);
            if self.is_zero(&pw) {
                break;
            }
            acc = self.add(&acc, &pw);
        }
        Ok(self.mul_rational(&acc, &cinv))
    }

    fn render(&self, a: &NilElem) -> String {
        if a.0.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match i {
                0 => c.to_string(),
                _ => {
                    let power = if i == 1 { "eps".to_string() } else { format!("eps^{i}") };
                    if c.is_one() {
                        power
                    } else if *c == Rational::from_int(-1) {
                        format!("-{power}")
                    } else {
                        format!("{c}*{power}")
                    }
                }
            };
            if out.is_empty() {
                out.push_str(&body);
            } else if let Some(rest) = body.strip_prefix('-') {
                let _ = write!(out, " - {rest}");
            } else {
                let _ = write!(out, " + {body}");
            }
        }
        out
    }
}
