//! Exact Gamma values at half-integer arguments.
//!
//! At positive integers Gamma is a factorial; at half-odd integers it is a
//! rational multiple of sqrt(pi); at non-positive integers it has poles.
//! `gamma_reciprocal` is total: it returns 0 exactly at the poles.

use num_bigint::BigInt;
use num_traits::One;

use super::half::Half;
use super::pihalf::PiHalfScalar;
use super::rational::Rational;
use crate::error::{Error, Result};

/// (2k-1)!! for k >= 0, with the convention (-1)!! = 1.
pub fn double_factorial(k: u32) -> BigInt {
    let mut acc = BigInt::one();
    let mut odd: i64 = 1;
    for _ in 0..k {
        acc *= odd;
        odd += 2;
    }
    acc
}

/// Gamma(s) for half-integer s. Errors at the poles s = 0, -1, -2, ...
pub fn gamma_value(s: Half) -> Result<PiHalfScalar> {
    if let Some(n) = s.as_integer() {
        if n <= 0 {
            return Err(Error::GammaPole(s));
        }
        let mut acc = BigInt::one();
        for j in 1..n {
            acc *= j;
        }
        return Ok(PiHalfScalar::from_rational(Rational::from_big(acc, BigInt::one())));
    }
    // s = k + 1/2 for an integer k; Gamma(1/2) = sqrt(pi).
    let k = (s.doubled() - 1) / 2;
    let c = if k >= 0 {
        // Gamma(k + 1/2) = (2k-1)!! 2^(-k) sqrt(pi)
        let num = double_factorial(k as u32);
        let den = BigInt::from(2).pow(k as u32);
        Rational::from_big(num, den)
    } else {
        // descend: Gamma(s) = Gamma(s + 1) / s
        let mut c = Rational::one();
        let mut j = k;
        while j < 0 {
            // divide by (j + 1/2)
            c = c / Rational::new(2 * j + 1, 2);
            j += 1;
        }
        c
    };
    Ok(PiHalfScalar::monomial(c, Half::HALF))
}

/// 1 / Gamma(1 + s), defined for every half-integer s (zero at the poles).
pub fn gamma_reciprocal(s: Half) -> PiHalfScalar {
    let arg = s + Half::ONE;
    if let Some(n) = arg.as_integer() {
        if n <= 0 {
            return PiHalfScalar::zero();
        }
    }
    let g = gamma_value(arg).expect("no pole after the integer check");
    let (c, h) = g.as_monomial().expect("gamma values are monomials in sqrt(pi)");
    PiHalfScalar::monomial(c.recip(), -h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(p: i64, q: i64, h: i64) -> PiHalfScalar {
        PiHalfScalar::monomial(Rational::new(p, q), Half(h))
    }

    #[test]
    fn double_factorials() {
        let vals: Vec<i64> = (0..6).map(|k| i64::try_from(double_factorial(k)).unwrap()).collect();
        assert_eq!(vals, [1, 1, 3, 15, 105, 945]);
    }

    #[test]
    fn integer_gammas_are_factorials() {
        assert_eq!(gamma_value(Half::int(1)).unwrap(), mono(1, 1, 0));
        assert_eq!(gamma_value(Half::int(5)).unwrap(), mono(24, 1, 0));
        assert!(matches!(gamma_value(Half::int(0)), Err(Error::GammaPole(_))));
        assert!(matches!(gamma_value(Half::int(-3)), Err(Error::GammaPole(_))));
    }

    #[test]
    fn half_integer_gammas() {
        // Gamma(1/2) = sqrt(pi), Gamma(3/2) = sqrt(pi)/2, Gamma(5/2) = 3 sqrt(pi)/4
        assert_eq!(gamma_value(Half(1)).unwrap(), mono(1, 1, 1));
        assert_eq!(gamma_value(Half(3)).unwrap(), mono(1, 2, 1));
        assert_eq!(gamma_value(Half(5)).unwrap(), mono(3, 4, 1));
        // Gamma(-1/2) = -2 sqrt(pi), Gamma(-3/2) = 4/3 sqrt(pi)
        assert_eq!(gamma_value(Half(-1)).unwrap(), mono(-2, 1, 1));
        assert_eq!(gamma_value(Half(-3)).unwrap(), mono(4, 3, 1));
    }

    #[test]
    fn recurrence_holds_across_the_range() {
        // Gamma(s + 1) = s Gamma(s) wherever both sides are finite
        for p in -9..=9 {
            let s = Half(p);
            let (lhs, rhs) = match (gamma_value(s + Half::ONE), gamma_value(s)) {
                (Ok(l), Ok(r)) => (l, r),
                _ => continue,
            };
            let scaled = rhs.mul(&PiHalfScalar::from_rational(s.to_rational()));
            assert_eq!(lhs, scaled, "recurrence fails at s = {s}");
        }
    }

    #[test]
    fn reciprocal_is_total_and_vanishes_at_poles() {
        assert_eq!(gamma_reciprocal(Half::int(-1)), PiHalfScalar::zero());
        assert_eq!(gamma_reciprocal(Half::int(-4)), PiHalfScalar::zero());
        // 1/Gamma(1 + 3/2) = 1/Gamma(5/2) = 4/(3 sqrt(pi))
        assert_eq!(gamma_reciprocal(Half(3)), mono(4, 3, -1));
        // 1/Gamma(1 + (-3/2)) = 1/Gamma(-1/2) = -1/(2 sqrt(pi))
        assert_eq!(gamma_reciprocal(Half(-3)), mono(-1, 2, -1));
        assert_eq!(gamma_reciprocal(Half::int(0)), mono(1, 1, 0));
    }

    #[test]
    fn reciprocal_times_value_is_one_off_poles() {
        for p in -9..=9 {
            let s = Half(p);
            if let Ok(g) = gamma_value(s + Half::ONE) {
                assert_eq!(g.mul(&gamma_reciprocal(s)), PiHalfScalar::one());
            }
        }
    }
}
