//! The universal Thom-class series of the circle spectrum: a Laurent series
//! T = sum_(k >= -1) t_(k+1) e^k over a polynomial ring with an invertible
//! Euler class v, and the divided powers of T, which assemble into a
//! grouplike exponential.

use crate::error::Result;
use crate::scalars::{Half, MultiPolyRing, Rational};
use crate::series::{Head, LaurentSeries};

/// The convention tying the leading coefficient to the Euler class: the
/// series is recorded with free t0, and the geometric normalization sets
/// t0 = v^(-1) e after base change. The substitution is recorded, not
/// applied, so every computation here stays in the free ring.
pub const THOM_NORMALIZATION: &str = "t0 = v^(-1)*e";

/// The coefficient ring Q[t0..tN, v, v^(-1)] and the truncated Thom series
/// T = t0 e^(-1) + t1 + t2 e + ... + tN e^(N-1) + O(e^N).
pub fn thom_series(n: usize) -> (MultiPolyRing, LaurentSeries<MultiPolyRing>) {
    let mut gens: Vec<String> = (0..=n).map(|k| format!("t{k}")).collect();
    gens.push("v".into());
    let mut invertible = vec![false; n + 1];
    invertible.push(true);
    let ring = MultiPolyRing::with_invertible(gens, invertible);
    let arity = n + 2;
    let terms = (0..=n).map(|k| {
        let mut exps = vec![0i32; arity];
        exps[k] = 1;
        (
            Half::int(k as i64 - 1),
            ring.monomial(Rational::one(), exps),
        )
    });
    let series = LaurentSeries::from_terms(ring.clone(), terms, Head::At(Half::int(n as i64)));
    (ring, series)
}

/// The divided powers T^j / j! for j = 0..=vmax over the ring of
/// thom_series(n): the coefficients of the exponential exp(v T) read off by
/// v-power. The sequence is grouplike: binom(a+b, a) phi[a+b] = phi[a] phi[b].
pub fn phi_exp(n: usize, vmax: usize) -> Result<(MultiPolyRing, Vec<LaurentSeries<MultiPolyRing>>)> {
    let (ring, t) = thom_series(n);
    let mut out = Vec::with_capacity(vmax + 1);
    let mut factorial = Rational::one();
    let mut power = LaurentSeries::one(ring.clone());
    out.push(power.clone());
    for j in 1..=vmax {
        power = power.mul(&t)?;
        factorial = factorial * Rational::from_int(j as i64);
        out.push(power.scalar_mul_rational(&factorial.recip()));
    }
    Ok((ring, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thom_series_shape() {
        let (ring, t) = thom_series(4);
        assert_eq!(ring.gens().last().map(|s| s.as_str()), Some("v"));
        assert_eq!(t.head(), Head::At(Half::int(4)));
        assert_eq!(t.num_terms(), 5);
        // the k-th term is the single generator t_(k+1) at exponent k
        for (e, c) in t.terms() {
            let k = e.as_integer().unwrap();
            let expect_gen = (k + 1) as usize;
            let terms: Vec<_> = c.terms().collect();
            assert_eq!(terms.len(), 1);
            let (exps, q) = terms[0];
            assert!(q.is_one());
            for (i, p) in exps.iter().enumerate() {
                assert_eq!(*p, if i == expect_gen { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn divided_powers_are_grouplike() {
        // binom(a+b, a) phi[a+b] = phi[a] * phi[b] on the common window
        let (_, phi) = phi_exp(3, 4).unwrap();
        for a in 0..=2usize {
            for b in 0..=2usize {
                let lhs = phi[a + b]
                    .scalar_mul_rational(&crate::series::binomial_rational((a + b) as i64, a as u32));
                let rhs = phi[a].mul(&phi[b]).unwrap();
                assert!(lhs.agrees_with(&rhs), "grouplike at a={a}, b={b}");
            }
        }
    }

    #[test]
    fn divided_power_heads_descend() {
        // T has valuation -1, so T^j/j! reaches down to e^(-j) and its
        // truncation order drops accordingly
        let (_, phi) = phi_exp(3, 3).unwrap();
        assert_eq!(phi[0].head(), Head::Inf);
        assert_eq!(phi[1].head(), Head::At(Half::int(3)));
        assert_eq!(phi[2].head(), Head::At(Half::int(2)));
        assert_eq!(phi[3].head(), Head::At(Half::int(1)));
        assert_eq!(phi[2].val_eff(), Head::At(Half::int(-2)));
        // phi[2] opens with t0^2/2 e^(-2)
        let c = phi[2].known_coeff(Half::int(-2)).unwrap();
        let terms: Vec<_> = c.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(*terms[0].1, Rational::new(1, 2));
        assert_eq!(terms[0].0[0], 2);
    }

    #[test]
    fn normalization_note_is_recorded() {
        assert!(THOM_NORMALIZATION.contains("t0"));
        assert!(THOM_NORMALIZATION.contains("v^(-1)"));
    }
}
