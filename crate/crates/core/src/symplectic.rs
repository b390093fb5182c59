//! The residue pairing, its twisted symplectic form, divided powers and the
//! half-integer embedding over the ring of rational multiples of powers of
//! the circle constant.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fgl::FormalGroup;
use crate::scalars::{
    double_factorial, gamma_reciprocal, CoefficientRing, Half, PiHalfRing, PiHalfScalar, Rational,
};
use crate::series::{Head, LaurentSeries};

/// The Kronecker-style pairing res(f g dlog) attached to a formal group.
pub fn kronecker_pair<R: CoefficientRing>(
    fg: &FormalGroup<R>,
    f: &LaurentSeries<R>,
    g: &LaurentSeries<R>,
) -> Result<R::Elem> {
    fg.boundary(&f.mul(g)?)
}

/// Composition with the formal inverse [-1](e).
pub fn involution<R: CoefficientRing>(
    fg: &FormalGroup<R>,
    f: &LaurentSeries<R>,
    cap: Head,
) -> Result<LaurentSeries<R>> {
    f.compose(fg.minus_one(), cap)
}

/// The twisted form symp(f, g) = res(I(f) g dlog), with I the composition
/// with [-1](e). The precision for I(f) is chosen so the residue is reached
/// whenever the model allows it.
pub fn symp<R: CoefficientRing>(
    fg: &FormalGroup<R>,
    f: &LaurentSeries<R>,
    g: &LaurentSeries<R>,
) -> Result<R::Elem> {
    if f.is_exact_zero() || g.is_exact_zero() {
        return Ok(fg.ring().zero());
    }
    let vg = match g.val_eff() {
        Head::At(v) => v,
        Head::Inf => unreachable!("non-zero series has a finite effective valuation"),
    };
    let vd = match fg.dlog().val_eff() {
        Head::At(v) => v,
        Head::Inf => return Ok(fg.ring().zero()),
    };
    let cap = Head::At(Half(3) - vg - vd);
    let twisted = involution(fg, f, cap)?;
    fg.boundary(&twisted.mul(g)?)
}

/// res(u dv), the raw residue pairing, over any coefficient ring.
pub fn residue_pairing<R: CoefficientRing>(
    u: &LaurentSeries<R>,
    v: &LaurentSeries<R>,
) -> Result<R::Elem> {
    u.mul(&v.derivative())?.residue()
}

/// The symplectic angle form pi * res(u dv) on the half-integer model.
pub fn form_angle(
    u: &LaurentSeries<PiHalfRing>,
    v: &LaurentSeries<PiHalfRing>,
) -> Result<PiHalfScalar> {
    Ok(residue_pairing(u, v)?.shift_pi(Half::int(1)))
}

/// The divided power gamma_s = x^s / Gamma(s+1); zero at negative integers s.
pub fn divided_power(s: Half) -> LaurentSeries<PiHalfRing> {
    let coeff = gamma_reciprocal(s);
    LaurentSeries::monomial(PiHalfRing, coeff, s)
}

/// The embedding that sends e^k to the divided power gamma_(-k-1/2), i.e.
/// x^(-k-1/2) / Gamma(1/2 - k). The input must be exact (head = infinity):
/// the exponent reversal turns an unknown high tail into unknown low terms,
/// which a Laurent head cannot represent. Exponents must be integral.
pub fn embed_half(f: &LaurentSeries<PiHalfRing>) -> Result<LaurentSeries<PiHalfRing>> {
    if f.head() != Head::Inf {
        return Err(Error::InvalidArgument(
            "the half-integer embedding needs an exact series: truncation flips \
             under the exponent reversal"
                .into(),
        ));
    }
    let mut terms: Vec<(Half, PiHalfScalar)> = Vec::new();
    for (e, c) in f.terms() {
        if !e.is_integer() {
            return Err(Error::NotIntegral(e));
        }
        // e = k: target exponent -k - 1/2, coefficient / Gamma(1/2 - k)
        let target = Half(-e.0 - 1);
        let factor = gamma_reciprocal(Half(-1 - e.0));
        terms.push((target, c.mul(&factor)));
    }
    Ok(LaurentSeries::from_terms(PiHalfRing, terms, Head::Inf))
}

/// The two closed forms for the odd moment sums attached to a finite spectrum
/// of nonzero eigenvalues: with S = sum lambda_i^-(2k+1),
/// the left route is S / Gamma(1/2 - k) and the right route is
/// S * (-1)^k (2k-1)!! 2^-k / sqrt(pi). They agree identically.
pub fn kontsevich_sides(eigs: &[Rational], k: u32) -> Result<(PiHalfScalar, PiHalfScalar)> {
    if eigs.iter().any(|l| l.is_zero()) {
        return Err(Error::InvalidArgument("eigenvalues must be nonzero".into()));
    }
    let power = -(2 * k as i32 + 1);
    let mut moment = Rational::zero();
    for l in eigs {
        moment = moment + l.pow(power);
    }
    let lhs = gamma_reciprocal(Half(-1 - 2 * k as i64))
        .mul(&PiHalfScalar::from_rational(moment.clone()));
    let dfac = Rational::from_big(double_factorial(k), BigInt::from(1));
    let sign = if k % 2 == 0 { Rational::one() } else { Rational::from_int(-1) };
    let scale = sign * dfac / Rational::from_int(2).pow(k as i32);
    let rhs = PiHalfScalar::monomial(moment * scale, Half(-1));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::additive;
    use crate::scalars::{NilpotentRing, RationalField};

    fn mono_q(c: i64, e: i64) -> LaurentSeries<RationalField> {
        LaurentSeries::monomial(RationalField, Rational::from_int(c), Half(e))
    }

    #[test]
    fn symp_grid_additive_small() {
        // symp(e^k, e^l) = (-1)^k when k + l + 1 = 0, else 0
        let fg = additive(RationalField);
        for k in -3..=3i64 {
            for l in -3..=3i64 {
                let f = mono_q(1, 2 * k);
                let g = mono_q(1, 2 * l);
                let got = symp(&fg, &f, &g).unwrap();
                let expect = if k + l + 1 == 0 {
                    Rational::from_int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
                } else {
                    Rational::zero()
                };
                assert_eq!(got, expect, "symp grid at k={k}, l={l}");
            }
        }
    }

    #[test]
    fn symp_is_antisymmetric_on_additive_samples() {
        let fg = additive(RationalField);
        let f = mono_q(2, -4).add(&mono_q(3, 2)).unwrap();
        let g = mono_q(1, 0).add(&mono_q(-5, 2)).unwrap();
        let a = symp(&fg, &f, &g).unwrap();
        let b = symp(&fg, &g, &f).unwrap();
        assert_eq!(a, -b);
    }

    #[test]
    fn divided_power_values() {
        // gamma_(1/2) = 2 x^(1/2) / sqrt(pi)
        let d = divided_power(Half(1));
        let c = d.known_coeff(Half(1)).unwrap();
        assert_eq!(c, PiHalfScalar::monomial(Rational::from_int(2), Half(-1)));
        // gamma_2 = x^2 / 2
        let d2 = divided_power(Half::int(2));
        assert_eq!(
            d2.known_coeff(Half::int(2)).unwrap(),
            PiHalfScalar::from_rational(Rational::new(1, 2))
        );
        // gamma_(-1) = 0 because 1/Gamma(0) = 0
        assert!(divided_power(Half::int(-1)).is_exact_zero());
    }

    #[test]
    fn embed_frozen_values() {
        // e^0 -> x^(-1/2)/Gamma(1/2) = pi^(-1/2) x^(-1/2)
        let one = LaurentSeries::one(PiHalfRing);
        let e0 = embed_half(&one).unwrap();
        assert_eq!(
            e0.known_coeff(Half(-1)).unwrap(),
            PiHalfScalar::monomial(Rational::one(), Half(-1))
        );
        // e^-1 -> x^(1/2)/Gamma(3/2) = 2 pi^(-1/2) x^(1/2)
        let em1 = LaurentSeries::monomial(PiHalfRing, PiHalfScalar::one(), Half::int(-1));
        let e1 = embed_half(&em1).unwrap();
        assert_eq!(
            e1.known_coeff(Half(1)).unwrap(),
            PiHalfScalar::monomial(Rational::from_int(2), Half(-1))
        );
    }

    #[test]
    fn embed_requires_exact_input() {
        let truncated = LaurentSeries::from_terms(
            PiHalfRing,
            [(Half::int(0), PiHalfScalar::one())],
            Head::At(Half::int(3)),
        );
        assert!(embed_half(&truncated).is_err());
        let odd = LaurentSeries::monomial(PiHalfRing, PiHalfScalar::one(), Half(1));
        assert!(embed_half(&odd).is_err());
    }

    #[test]
    fn angle_frozen_values() {
        // <x^(-1/2), x^(1/2)> = pi/2
        let u = LaurentSeries::monomial(PiHalfRing, PiHalfScalar::one(), Half(-1));
        let v = LaurentSeries::monomial(PiHalfRing, PiHalfScalar::one(), Half(1));
        let a = form_angle(&u, &v).unwrap();
        assert_eq!(a, PiHalfScalar::monomial(Rational::new(1, 2), Half::int(1)));
        // <gamma_(1/2), gamma_(-1/2)> = -1
        let b = form_angle(&divided_power(Half(1)), &divided_power(Half(-1))).unwrap();
        assert_eq!(b, PiHalfScalar::from_rational(Rational::from_int(-1)));
    }

    #[test]
    fn embedding_intertwines_the_forms() {
        // pi res(embed(e^k) d embed(e^l)) = symp(e^k, e^l) for a small grid
        let fg = additive(RationalField);
        for k in -3..=2i64 {
            for l in -3..=2i64 {
                let ek = LaurentSeries::monomial(PiHalfRing, PiHalfScalar::one(), Half::int(k));
                let el = LaurentSeries::monomial(PiHalfRing, PiHalfScalar::one(), Half::int(l));
                let angle = form_angle(&embed_half(&ek).unwrap(), &embed_half(&el).unwrap())
                    .unwrap();
                let s = symp(&fg, &mono_q(1, 2 * k), &mono_q(1, 2 * l)).unwrap();
                assert_eq!(
                    angle,
                    PiHalfScalar::from_rational(s),
                    "proposition grid at k={k}, l={l}"
                );
            }
        }
    }

    #[test]
    fn residue_pairing_is_invariant_under_substitution() {
        // res(u dv) = res((u o phi) d(v o phi)) for admissible phi; sample
        // over Q[eps]/(eps^3) with a nilpotent Laurent tail in phi
        let ring = NilpotentRing::new(3);
        let eps = ring.eps();
        let phi = LaurentSeries::from_terms(
            ring.clone(),
            [
                (Half(2), ring.one()),
                (Half(4), ring.from_rational(&Rational::new(1, 2))),
                (Half(-2), eps.clone()),
            ],
            Head::Inf,
        );
        let u = LaurentSeries::from_terms(
            ring.clone(),
            [(Half(-4), ring.one()), (Half(2), eps.clone())],
            Head::Inf,
        );
        let v = LaurentSeries::from_terms(
            ring.clone(),
            [(Half(-2), ring.from_rational(&Rational::from_int(3))), (Half(4), ring.one())],
            Head::Inf,
        );
        let direct = residue_pairing(&u, &v).unwrap();
        let cap = Head::At(Half(24));
        let u2 = u.compose(&phi, cap).unwrap();
        let v2 = v.compose(&phi, cap).unwrap();
        let moved = residue_pairing(&u2, &v2).unwrap();
        assert_eq!(direct, moved);
    }

    #[test]
    fn kontsevich_sides_agree_frozen() {
        // eigenvalues (1,2,3), k = 1: moment = 251/216, both sides
        // -251/432 / sqrt(pi)
        let eigs = vec![Rational::from_int(1), Rational::from_int(2), Rational::from_int(3)];
        let (lhs, rhs) = kontsevich_sides(&eigs, 1).unwrap();
        let expect = PiHalfScalar::monomial(Rational::new(-251, 432), Half(-1));
        assert_eq!(lhs, expect);
        assert_eq!(rhs, expect);
    }

    #[test]
    fn kontsevich_rejects_zero_eigenvalues() {
        assert!(kontsevich_sides(&[Rational::zero()], 1).is_err());
    }
}
