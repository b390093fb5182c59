//! An independent dense-vector oracle for Laurent series arithmetic over the
//! rationals. Everything here is exact polynomial data indexed by doubled
//! exponents; no precision tracking, no sparse maps, no shared code with the
//! engine under test. Agreement between the two implementations on known
//! windows is the correctness evidence for the engine.

#![allow(dead_code)]

use tate_core::scalars::{Half, Rational, RationalField};
use tate_core::series::{Head, LaurentSeries};

/// A finite Laurent polynomial: `c[i]` is the coefficient of the doubled
/// exponent `lo + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub lo: i64,
    pub c: Vec<Rational>,
}

pub fn q(p: i64, den: i64) -> Rational {
    Rational::new(p, den)
}

impl Dense {
    pub fn zero() -> Dense {
        Dense { lo: 0, c: Vec::new() }
    }

    pub fn from_terms(terms: &[(i64, Rational)]) -> Dense {
        let nonzero: Vec<_> = terms.iter().filter(|(_, v)| !v.is_zero()).collect();
        if nonzero.is_empty() {
            return Dense::zero();
        }
        let lo = nonzero.iter().map(|(e, _)| *e).min().unwrap();
        let hi = nonzero.iter().map(|(e, _)| *e).max().unwrap();
        let mut c = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, v) in nonzero {
            c[(e - lo) as usize] = c[(e - lo) as usize].clone() + v.clone();
        }
        Dense { lo, c }
    }

    pub fn monomial(e: i64, v: Rational) -> Dense {
        Dense::from_terms(&[(e, v)])
    }

    pub fn one() -> Dense {
        Dense::monomial(0, Rational::one())
    }

    pub fn coeff(&self, e: i64) -> Rational {
        if e < self.lo {
            return Rational::zero();
        }
        let i = (e - self.lo) as usize;
        self.c.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    /// The smallest doubled exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.c
            .iter()
            .position(|v| !v.is_zero())
            .map(|i| self.lo + i as i64)
    }

    pub fn add(&self, other: &Dense) -> Dense {
        let mut terms: Vec<(i64, Rational)> = Vec::new();
        for (i, v) in self.c.iter().enumerate() {
            terms.push((self.lo + i as i64, v.clone()));
        }
        for (i, v) in other.c.iter().enumerate() {
            terms.push((other.lo + i as i64, v.clone()));
        }
        Dense::from_terms(&terms)
    }

    pub fn neg(&self) -> Dense {
        Dense { lo: self.lo, c: self.c.iter().map(|v| -v.clone()).collect() }
    }

    pub fn sub(&self, other: &Dense) -> Dense {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> Dense {
        Dense { lo: self.lo, c: self.c.iter().map(|v| v.clone() * s.clone()).collect() }
    }

    pub fn shift(&self, by: i64) -> Dense {
        Dense { lo: self.lo + by, c: self.c.clone() }
    }

    /// Exact full convolution.
    pub fn mul(&self, other: &Dense) -> Dense {
        if self.is_zero() || other.is_zero() {
            return Dense::zero();
        }
        let lo = self.lo + other.lo;
        let mut c = vec![Rational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Dense { lo, c }
    }

    pub fn pow(&self, k: u32) -> Dense {
        let mut acc = Dense::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drop every term at doubled exponent >= bound.
    pub fn truncate(&self, bound: i64) -> Dense {
        let terms: Vec<(i64, Rational)> = self
            .c
            .iter()
            .enumerate()
            .map(|(i, v)| (self.lo + i as i64, v.clone()))
            .filter(|(e, _)| *e < bound)
            .collect();
        Dense::from_terms(&terms)
    }

}

/// 1/f on doubled exponents < bound, by the alternating geometric series.
pub fn inv_truncated(f: &Dense, bound: i64) -> Dense {
    let v = f.valuation().expect("cannot invert zero");
    let lead = f.coeff(v);
    let u = f.shift(-v).scale(&lead.recip()).sub(&Dense::one());
    // (1 + u)^-1 = sum (-u)^k, truncated; val(u) >= 1 so the sum is finite.
    // The result is shifted down by v, so the unshifted sum must be known
    // below bound + v.
    let window = bound + v;
    let neg_u = u.neg().truncate(window.max(1));
    let mut acc = Dense::one();
    let mut p = Dense::one();
    loop {
        p = p.mul(&neg_u).truncate(window.max(1));
        if p.valuation().is_none() {
            break;
        }
        acc = acc.add(&p);
    }
    acc.scale(&lead.recip()).shift(-v).truncate(bound)
}

/// f(g) on doubled exponents < bound. g must have strictly positive
/// valuation; negative powers of g are expanded geometrically.
pub fn compose_truncated(f: &Dense, g: &Dense, bound: i64) -> Dense {
    let gv = g.valuation().expect("composition argument must be nonzero");
    assert!(gv > 0, "composition argument needs positive valuation");
    let mut acc = Dense::zero();
    let ginv_bound = bound + f.lo.abs() * (gv.abs() + 2) + 4;
    let ginv = inv_truncated(g, ginv_bound);
    for (i, coeff) in f.c.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let e = f.lo + i as i64;
        assert_eq!(e % 2, 0, "composition oracle needs integral exponents");
        let k = e / 2;
        let p = if k >= 0 {
            g.pow(k as u32)
        } else {
            ginv.pow((-k) as u32)
        };
        acc = acc.add(&p.truncate(bound).scale(coeff));
    }
    acc.truncate(bound)
}

/// The compositional inverse of g = c1 z + c2 z^2 + ... (doubled exponents
/// even, i.e. integral powers of z = x), via the Lagrange inversion formula
/// h_m = (1/m) [z^(m-1)] (z/g)^m, for m = 1..=terms.
pub fn lagrange_inverse(g: &Dense, terms: u32) -> Dense {
    assert_eq!(g.valuation(), Some(2), "need valuation exactly 1 (doubled 2)");
    let mut out: Vec<(i64, Rational)> = Vec::new();
    for m in 1..=terms {
        // (z/g)^m on window wide enough to read z^(m-1): doubled 2(m-1)
        let bound = 2 * m as i64;
        let z_over_g = inv_truncated(&g.shift(-2), bound);
        let p = z_over_g.pow(m);
        let cm = p.coeff(2 * (m as i64 - 1)) / Rational::from_int(m as i64);
        out.push((2 * m as i64, cm));
    }
    Dense::from_terms(&out)
}

/// Build an engine series over the rationals from doubled-exponent terms.
pub fn engine_series(terms: &[(i64, Rational)], head: Head) -> LaurentSeries<RationalField> {
    LaurentSeries::from_terms(
        RationalField,
        terms.iter().map(|(e, v)| (Half(*e), v.clone())),
        head,
    )
}

pub fn exact(terms: &[(i64, Rational)]) -> LaurentSeries<RationalField> {
    engine_series(terms, Head::Inf)
}

/// Every coefficient the engine claims to know below `up_to` (doubled) must
/// equal the oracle's, and the engine must know at least up to `min_head`.
pub fn assert_matches(
    label: &str,
    got: &LaurentSeries<RationalField>,
    oracle: &Dense,
    min_head: i64,
) {
    match got.head() {
        Head::At(h) => assert!(
            h >= Half(min_head),
            "{label}: head {h} below the promised {}",
            Half(min_head)
        ),
        Head::Inf => {}
    }
    let lo = oracle
        .valuation()
        .unwrap_or(0)
        .min(match got.val_eff() {
            Head::At(v) => v.0,
            Head::Inf => 0,
        })
        .min(0);
    let hi = match got.head() {
        Head::At(h) => h.0.min(min_head),
        Head::Inf => min_head,
    };
    for e in lo..hi {
        let engine = got
            .known_coeff(Half(e))
            .unwrap_or_else(|_| panic!("{label}: exponent {} unexpectedly unknown", Half(e)));
        let expect = oracle.coeff(e);
        assert_eq!(
            engine,
            expect,
            "{label}: coefficient mismatch at exponent {}",
            Half(e)
        );
    }
}
