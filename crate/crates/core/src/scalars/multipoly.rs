//! Multivariate polynomials over Q with named generators.
//!
//! Generators may be marked invertible (Laurent-polynomial directions); the
//! exponent of a non-invertible generator is always >= 0. Units are the
//! nonzero monomials supported on invertible generators only; the ring is
//! reduced, so the only nilpotent is zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::rational::Rational;
use super::ring::CoefficientRing;
use crate::error::{Error, Result};

/// A polynomial: exponent vector -> nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl MultiPoly {
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Some(c) when the polynomial is the constant c.
    pub fn as_constant(&self, arity: usize) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) && e.len() == arity {
                return Some(c.clone());
            }
        }
        None
    }
}

/// Ring value: a polynomial ring with a fixed, ordered generator list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPolyRing {
    gens: Vec<String>,
    invertible: Vec<bool>,
}

impl MultiPolyRing {
    pub fn new(gens: Vec<String>) -> MultiPolyRing {
        let invertible = vec![false; gens.len()];
        MultiPolyRing { gens, invertible }
    }

    pub fn with_invertible(gens: Vec<String>, invertible: Vec<bool>) -> MultiPolyRing {
        assert_eq!(gens.len(), invertible.len());
        MultiPolyRing { gens, invertible }
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    pub fn generator(&self, i: usize) -> MultiPoly {
        let mut e = vec![0i32; self.gens.len()];
        e[i] = 1;
        self.monomial(Rational::one(), e)
    }

    pub fn monomial(&self, c: Rational, exps: Vec<i32>) -> MultiPoly {
        assert_eq!(exps.len(), self.gens.len(), "exponent vector arity mismatch");
        for (i, &e) in exps.iter().enumerate() {
            assert!(
                e >= 0 || self.invertible[i],
                "negative exponent on non-invertible generator {}",
                self.gens[i]
            );
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { terms }
    }
}

impl CoefficientRing for MultiPolyRing {
    type Elem = MultiPoly;

    fn name(&self) -> String {
        format!("Q[{}]", self.gens.join(", "))
    }

    fn zero(&self) -> MultiPoly {
        MultiPoly::default()
    }

    fn one(&self) -> MultiPoly {
        self.monomial(Rational::one(), vec![0; self.gens.len()])
    }

    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.terms.is_empty()
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let mut terms = a.terms.clone();
        for (e, c) in &b.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        MultiPoly { terms }
    }

    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        MultiPoly {
            terms: a.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let mut terms: BTreeMap<Vec<i32>, Rational> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e.clone()).or_insert_with(Rational::zero);
                *entry += &(ca * cb);
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        MultiPoly { terms }
    }

    fn from_rational(&self, q: &Rational) -> MultiPoly {
        self.monomial(q.clone(), vec![0; self.gens.len()])
    }

    fn is_unit(&self, a: &MultiPoly) -> bool {
        if a.terms.len() != 1 {
            return false;
        }
        let e = a.terms.keys().next().unwrap();
        e.iter().enumerate().all(|(i, &x)| x == 0 || self.invertible[i])
    }

    fn is_nilpotent(&self, a: &MultiPoly) -> bool {
        a.terms.is_empty()
    }

    fn inv(&self, a: &MultiPoly) -> Result<MultiPoly> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit(self.render(a)));
        }
        let (e, c) = a.terms.iter().next().unwrap();
        Ok(self.monomial(c.recip(), e.iter().map(|x| -x).collect()))
    }

    fn render(&self, a: &MultiPoly) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in &a.terms {
            let mut factors: Vec<String> = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(self.gens[i].clone()),
                    _ if x > 0 => factors.push(format!("{}^{x}", self.gens[i])),
                    _ => factors.push(format!("{}^({x})", self.gens[i])),
                }
            }
            let body = if factors.is_empty() {
                c.to_string()
            } else {
                let power = factors.join("*");
                if c.is_one() {
                    power
                } else if *c == Rational::from_int(-1) {
                    format!("-{power}")
                } else {
                    format!("{c}*{power}")
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

#[cfg(test)]
mod tests {
    use super::*;

    fn cp_ring() -> MultiPolyRing {
        MultiPolyRing::new(vec!["CP1".into(), "CP2".into()])
    }

    #[test]
    fn arithmetic_and_rendering() {
        let r = cp_ring();
        let a = r.generator(0);
        let b = r.generator(1);
        let p = r.add(&r.mul(&a, &a), &r.mul_rational(&b, &Rational::new(-1, 3)));
        assert_eq!(r.render(&p), "-1/3*CP2 + CP1^2");
        assert_eq!(r.render(&r.zero()), "0");
        let sq = r.mul(&p, &p);
        assert_eq!(sq.num_terms(), 3);
    }

    #[test]
    fn units_only_constants_without_invertibles() {
        let r = cp_ring();
        assert!(r.is_unit(&r.from_rational(&Rational::new(-5, 3))));
        assert!(!r.is_unit(&r.generator(0)));
        assert!(!r.is_nilpotent(&r.generator(0)));
        assert_eq!(
            r.inv(&r.from_rational(&Rational::new(-5, 3))).unwrap(),
            r.from_rational(&Rational::new(-3, 5))
        );
        assert!(r.inv(&r.generator(1)).is_err());
    }

    #[test]
    fn invertible_generators_give_monomial_units() {
        let r = MultiPolyRing::with_invertible(
            vec!["t0".into(), "v".into()],
            vec![false, true],
        );
        let v = r.generator(1);
        assert!(r.is_unit(&v));
        let vinv = r.inv(&v).unwrap();
        assert_eq!(r.mul(&v, &vinv), r.one());
        assert_eq!(r.render(&vinv), "v^(-1)");
        let t = r.generator(0);
        assert!(!r.is_unit(&r.mul(&t, &v)));
    }
}
