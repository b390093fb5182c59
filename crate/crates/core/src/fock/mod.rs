//! A polynomial Fock representation: the ring Q[t_0, t_1, ...] graded by
//! weight(t_k) = k + 1/2, half-odd Heisenberg modes acting by multiplication
//! and scaled differentiation, normally ordered quadratic (Virasoro)
//! operators, and the residue-calculus representation rho.

pub mod matrix;
pub mod thom;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Half, Rational, RationalField};
use crate::series::{Head, LaurentSeries};

/// A monomial: generator index -> positive power.
pub type Monomial = BTreeMap<u32, u32>;

/// The weight of a monomial: each t_k contributes k + 1/2 per power.
pub fn monomial_weight(m: &Monomial) -> Half {
    Half(m.iter().map(|(k, p)| (2 * *k as i64 + 1) * *p as i64).sum())
}

/// A polynomial in the generators t_0, t_1, ... with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl FockPoly {
    pub fn zero() -> FockPoly {
        FockPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> FockPoly {
        FockPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> FockPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(), c);
        }
        FockPoly { terms }
    }

    /// The generator t_k.
    pub fn gen(k: u32) -> FockPoly {
        let mut m = Monomial::new();
        m.insert(k, 1);
        FockPoly::from_monomial(m, Rational::one())
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> FockPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        FockPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &FockPoly) -> FockPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let merged = match terms.remove(m) {
                Some(prev) => prev + c.clone(),
                None => c.clone(),
            };
            if !merged.is_zero() {
                terms.insert(m.clone(), merged);
            }
        }
        FockPoly { terms }
    }

    pub fn neg(&self) -> FockPoly {
        FockPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &FockPoly) -> FockPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> FockPoly {
        if q.is_zero() {
            return FockPoly::zero();
        }
        FockPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * q.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &FockPoly) -> FockPoly {
        let mut acc = FockPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                for (k, p) in mb {
                    *m.entry(*k).or_insert(0) += p;
                }
                acc = acc.add(&FockPoly::from_monomial(m, ca.clone() * cb.clone()));
            }
        }
        acc
    }

    /// Multiplication by the generator t_k.
    pub fn mul_gen(&self, k: u32) -> FockPoly {
        FockPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    *m.entry(k).or_insert(0) += 1;
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// The partial derivative with respect to t_k.
    pub fn derive_gen(&self, k: u32) -> FockPoly {
        let mut acc = FockPoly::zero();
        for (m, c) in &self.terms {
            if let Some(p) = m.get(&k) {
                let mut m2 = m.clone();
                if *p == 1 {
                    m2.remove(&k);
                } else {
                    m2.insert(k, p - 1);
                }
                acc = acc.add(&FockPoly::from_monomial(
                    m2,
                    c.clone() * Rational::from_int(*p as i64),
                ));
            }
        }
        acc
    }

    /// The common weight of all terms; None for the zero polynomial.
    pub fn homogeneous_weight(&self) -> Result<Option<Half>> {
        let mut weight: Option<Half> = None;
        for (m, _) in &self.terms {
            let w = monomial_weight(m);
            match weight {
                None => weight = Some(w),
                Some(prev) if prev != w => {
                    return Err(Error::NotHomogeneous(format!(
                        "terms of weight {prev} and {w} in the same polynomial"
                    )));
                }
                _ => {}
            }
        }
        Ok(weight)
    }

    /// The largest weight among the terms; zero for the zero polynomial.
    pub fn max_weight(&self) -> Half {
        self.terms.keys().map(monomial_weight).max().unwrap_or(Half::ZERO)
    }

    /// Coefficients in the canonical basis of the given weight space.
    pub fn expand_in_basis(&self, w: Half) -> Result<Vec<Rational>> {
        let basis = enumerate_basis(w);
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = vec![Rational::zero(); basis.len()];
        for (m, c) in &self.terms {
            match index.get(m) {
                Some(i) => out[*i] = c.clone(),
                None => {
                    return Err(Error::NotHomogeneous(format!(
                        "term of weight {} outside the weight-{w} space",
                        monomial_weight(m)
                    )));
                }
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let ms = render_monomial(m);
            let body = if ms.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                ms
            } else if (-c.clone()).is_one() {
                format!("-{ms}")
            } else {
                format!("{c}*{ms}")
            };
            if out.is_empty() {
                out.push_str(&body);
            } else if let Some(rest) = body.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
        out
    }
}

fn render_monomial(m: &Monomial) -> String {
    let mut out = String::new();
    for (k, p) in m {
        if !out.is_empty() {
            out.push('*');
        }
        if *p == 1 {
            out.push_str(&format!("t{k}"));
        } else {
            out.push_str(&format!("t{k}^{p}"));
        }
    }
    out
}

impl fmt::Display for FockPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The canonical ordered basis of the weight-w space: monomials listed with
/// larger generators first, then larger powers. Empty when w is negative or
/// not a weight (weights are half-integers with doubled value >= 0).
pub fn enumerate_basis(w: Half) -> Vec<Monomial> {
    let n = w.0;
    let mut out = Vec::new();
    if n < 0 {
        return out;
    }
    let mut current = Monomial::new();
    let start = if n % 2 == 0 { n - 1 } else { n };
    build_basis(n, start.max(1), &mut current, &mut out);
    out
}

fn build_basis(n: i64, max_part: i64, current: &mut Monomial, out: &mut Vec<Monomial>) {
    if n == 0 {
        out.push(current.clone());
        return;
    }
    if n < 0 || max_part < 1 {
        return;
    }
    let mut part = max_part.min(n);
    if part % 2 == 0 {
        part -= 1;
    }
    while part >= 1 {
        let k = ((part - 1) / 2) as u32;
        let mut mult = n / part;
        while mult >= 1 {
            current.insert(k, mult as u32);
            build_basis(n - mult * part, part - 2, current, out);
            current.remove(&k);
            mult -= 1;
        }
        part -= 2;
    }
}

/// The Heisenberg mode alpha_s for half-odd s: multiplication by t_k for
/// s = -(k + 1/2), and s * d/dt_k for s = k + 1/2.
pub fn apply_mode(s: Half, p: &FockPoly) -> Result<FockPoly> {
    if !s.is_odd_half() {
        return Err(Error::NotOddHalf(s));
    }
    if s.0 < 0 {
        let k = ((-s.0) - 1) / 2;
        Ok(p.mul_gen(k as u32))
    } else {
        let k = (s.0 - 1) / 2;
        Ok(p.derive_gen(k as u32).scale(&s.to_rational()))
    }
}

/// The normally ordered quadratic operator
/// L_n = 1/2 sum_s :alpha_(n-s) alpha_s: applied symbolically; exact on any
/// polynomial because annihilators kill all but finitely many terms.
pub fn virasoro_apply(n: i64, p: &FockPoly) -> Result<FockPoly> {
    if p.is_zero() {
        return Ok(FockPoly::zero());
    }
    let bound = p.max_weight().0 + 2 * n.abs() + 1;
    let mut acc = FockPoly::zero();
    let mut s = -bound;
    if s % 2 == 0 {
        s += 1;
    }
    while s <= bound {
        let b = Half(s);
        let a = Half(2 * n - s);
        // normal ordering: the annihilator (positive index) acts first
        let term = if b.0 > 0 {
            apply_mode(a, &apply_mode(b, p)?)?
        } else if a.0 > 0 {
            apply_mode(b, &apply_mode(a, p)?)?
        } else {
            apply_mode(a, &apply_mode(b, p)?)?
        };
        acc = acc.add(&term);
        s += 2;
    }
    Ok(acc.scale(&Rational::new(1, 2)))
}

/// The mode index sigma(k) = -(k + 1/2) attached to e^k.
pub fn rho_sigma(k: i64) -> Half {
    Half(-(2 * k + 1))
}

/// The normalization nu_k of rho(e^k): 1 for k >= 0, and
/// (-1)^k 2/(-2k-1) for k <= -1, so that the commutation relations of the
/// images match the twisted symplectic form.
pub fn rho_nu(k: i64) -> Rational {
    if k >= 0 {
        Rational::one()
    } else {
        let sign = if k.rem_euclid(2) == 0 { 2 } else { -2 };
        Rational::new(sign, -2 * k - 1)
    }
}

/// The representation rho applied to a state: an exact integral Laurent
/// series f = sum c_k e^k acts as sum c_k nu_k alpha_(sigma(k)).
pub fn rho_apply(f: &LaurentSeries<RationalField>, p: &FockPoly) -> Result<FockPoly> {
    if f.head() != Head::Inf {
        return Err(Error::InvalidArgument(
            "rho needs an exact series: every unknown term would contribute an \
             unknown operator"
                .into(),
        ));
    }
    let mut acc = FockPoly::zero();
    for (e, c) in f.terms() {
        match e.as_integer() {
            None => return Err(Error::NotIntegral(e)),
            Some(k) => {
                let image = apply_mode(rho_sigma(k), p)?;
                acc = acc.add(&image.scale(&(rho_nu(k) * c.clone())));
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(k: u32) -> FockPoly {
        FockPoly::gen(k)
    }

    #[test]
    fn weights_and_basis() {
        // weight(t_k) = k + 1/2
        assert_eq!(t(0).homogeneous_weight().unwrap(), Some(Half(1)));
        assert_eq!(t(3).homogeneous_weight().unwrap(), Some(Half(7)));
        // weight 3/2: [t1, t0^3]
        let b = enumerate_basis(Half(3));
        assert_eq!(b.len(), 2);
        assert_eq!(FockPoly::from_monomial(b[0].clone(), Rational::one()), t(1));
        assert_eq!(
            FockPoly::from_monomial(b[1].clone(), Rational::one()),
            t(0).mul(&t(0)).mul(&t(0))
        );
        // weight 5/2: [t2, t1 t0^2, t0^5]
        let b5 = enumerate_basis(Half(5));
        assert_eq!(b5.len(), 3);
        assert_eq!(FockPoly::from_monomial(b5[0].clone(), Rational::one()), t(2));
        // weight 0: the vacuum
        assert_eq!(enumerate_basis(Half(0)).len(), 1);
        assert!(enumerate_basis(Half(-1)).is_empty());
    }

    #[test]
    fn basis_dimensions_match_odd_partitions() {
        // dim of doubled weight n = number of partitions of n into odd parts:
        // 1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15 for n = 0..12
        let expect = [1usize, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(enumerate_basis(Half(n as i64)).len(), *e, "dim at n={n}");
        }
    }

    #[test]
    fn mode_action_frozen() {
        // alpha_(1/2) t0 = 1/2
        let got = apply_mode(Half(1), &t(0)).unwrap();
        assert_eq!(got, FockPoly::constant(Rational::new(1, 2)));
        // alpha_(-1/2) 1 = t0
        let up = apply_mode(Half(-1), &FockPoly::one()).unwrap();
        assert_eq!(up, t(0));
        // integral indices are rejected
        assert!(apply_mode(Half(2), &t(0)).is_err());
    }

    #[test]
    fn mode_commutators() {
        // [alpha_s, alpha_u] = s delta_(s+u,0) on a generic polynomial
        let sample = t(0).mul(&t(1)).add(&t(2)).add(&FockPoly::one());
        for sd in [-7i64, -5, -3, -1, 1, 3, 5, 7] {
            for ud in [-7i64, -5, -3, -1, 1, 3, 5, 7] {
                let s = Half(sd);
                let u = Half(ud);
                let ab = apply_mode(s, &apply_mode(u, &sample).unwrap()).unwrap();
                let ba = apply_mode(u, &apply_mode(s, &sample).unwrap()).unwrap();
                let bracket = ab.sub(&ba);
                let expect = if sd + ud == 0 {
                    sample.scale(&s.to_rational())
                } else {
                    FockPoly::zero()
                };
                assert_eq!(bracket, expect, "commutator at s={s}, u={u}");
            }
        }
    }

    #[test]
    fn virasoro_frozen_values() {
        // L_0 is diagonal with eigenvalue = weight
        for k in 0..4u32 {
            let got = virasoro_apply(0, &t(k)).unwrap();
            assert_eq!(got, t(k).scale(&Half(2 * k as i64 + 1).to_rational()));
        }
        assert_eq!(virasoro_apply(0, &FockPoly::one()).unwrap(), FockPoly::zero());
        // L_(-1) 1 = 1/2 t0^2
        let l_minus_1 = virasoro_apply(-1, &FockPoly::one()).unwrap();
        assert_eq!(l_minus_1, t(0).mul(&t(0)).scale(&Rational::new(1, 2)));
        // L_(-1) t0 = 1/2 t1 + 1/2 t0^3
        let l2 = virasoro_apply(-1, &t(0)).unwrap();
        let expect = t(1)
            .scale(&Rational::new(1, 2))
            .add(&t(0).mul(&t(0)).mul(&t(0)).scale(&Rational::new(1, 2)));
        assert_eq!(l2, expect);
        // L_1 t0^2 = 1/4
        let l1 = virasoro_apply(1, &t(0).mul(&t(0))).unwrap();
        assert_eq!(l1, FockPoly::constant(Rational::new(1, 4)));
    }

    #[test]
    fn virasoro_defect_is_weight_independent() {
        // ([L_1, L_-1] - 2 L_0) p = 1/8 p on the vacuum and on t0
        for p in [FockPoly::one(), t(0)] {
            let up = virasoro_apply(1, &virasoro_apply(-1, &p).unwrap()).unwrap();
            let down = virasoro_apply(-1, &virasoro_apply(1, &p).unwrap()).unwrap();
            let l0 = virasoro_apply(0, &p).unwrap();
            let defect = up.sub(&down).sub(&l0.scale(&Rational::from_int(2)));
            assert_eq!(defect, p.scale(&Rational::new(1, 8)));
        }
    }

    #[test]
    fn rho_normalization() {
        // rho(e^0) 1 = t0, with nu_0 = 1
        let e0 = LaurentSeries::one(RationalField);
        assert_eq!(rho_apply(&e0, &FockPoly::one()).unwrap(), t(0));
        // rho(e^-1) t0 = nu_(-1) alpha_(1/2) t0 = -2 * 1/2 = -1
        let em1 = LaurentSeries::monomial(RationalField, Rational::one(), Half::int(-1));
        assert_eq!(
            rho_apply(&em1, &t(0)).unwrap(),
            FockPoly::constant(Rational::from_int(-1))
        );
        // heisenberg at (0, -1): [rho(e^0), rho(e^-1)] = +1
        let sample = t(1).mul(&t(0));
        let ab = rho_apply(&e0, &rho_apply(&em1, &sample).unwrap()).unwrap();
        let ba = rho_apply(&em1, &rho_apply(&e0, &sample).unwrap()).unwrap();
        assert_eq!(ab.sub(&ba), sample);
    }

    #[test]
    fn rho_requires_exact_integral_input() {
        let truncated = LaurentSeries::from_terms(
            RationalField,
            [(Half(0), Rational::one())],
            Head::At(Half(6)),
        );
        assert!(rho_apply(&truncated, &FockPoly::one()).is_err());
        let odd = LaurentSeries::monomial(RationalField, Rational::one(), Half(1));
        assert!(rho_apply(&odd, &FockPoly::one()).is_err());
    }

    #[test]
    fn render_fock_polynomials() {
        assert_eq!(FockPoly::zero().render(), "0");
        assert_eq!(FockPoly::one().render(), "1");
        let p = t(0).mul(&t(0)).mul(&t(1)).scale(&Rational::new(3, 2)).sub(&t(2));
        assert_eq!(p.render(), "3/2*t0^2*t1 - t2");
    }
}
