//! One-dimensional formal group data: logarithm, exponential, inversion
//! series and the residue pairing against the logarithmic differential.

use crate::error::{Error, Result};
use crate::scalars::{CoefficientRing, Half, MultiPolyRing, Rational};
use crate::series::{Head, LaurentSeries};

/// A formal group law presented through its logarithm. All series live in the
/// variable e with integral exponents.
#[derive(Clone, Debug)]
pub struct FormalGroup<R: CoefficientRing> {
    name: String,
    ring: R,
    log: LaurentSeries<R>,
    exp: LaurentSeries<R>,
    dlog: LaurentSeries<R>,
    minus_one: LaurentSeries<R>,
}

impl<R: CoefficientRing> FormalGroup<R> {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// The logarithm series log(e) = e + ...
    pub fn log(&self) -> &LaurentSeries<R> {
        &self.log
    }

    /// The exponential, the compositional inverse of the logarithm.
    pub fn exp(&self) -> &LaurentSeries<R> {
        &self.exp
    }

    /// d log / d e, the coefficient series of the invariant differential.
    pub fn dlog(&self) -> &LaurentSeries<R> {
        &self.dlog
    }

    /// The formal inverse [-1](e) = exp(-log(e)).
    pub fn minus_one(&self) -> &LaurentSeries<R> {
        &self.minus_one
    }

    /// The boundary functional: the residue of f dlog(e) de.
    pub fn boundary(&self, f: &LaurentSeries<R>) -> Result<R::Elem> {
        f.mul(&self.dlog)?.residue()
    }
}

/// The additive formal group: log = exp = e, exactly, over any ring.
pub fn additive<R: CoefficientRing>(ring: R) -> FormalGroup<R> {
    let log = LaurentSeries::generator(ring.clone());
    FormalGroup {
        name: "additive".into(),
        ring: ring.clone(),
        log: log.clone(),
        exp: log.clone(),
        dlog: LaurentSeries::one(ring.clone()),
        minus_one: log.neg(),
    }
}

/// The universal-type model with log(e) = sum CP_j e^(j+1)/(j+1) for
/// 0 <= j < n over the free polynomial ring on CP1..CP(n-1), with CP0 = 1.
/// All series carry head O(e^(n+1)).
pub fn mishchenko(n: usize) -> Result<FormalGroup<MultiPolyRing>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the projective-space model needs at least one logarithm term".into(),
        ));
    }
    let gen_names: Vec<String> = (1..n).map(|j| format!("CP{j}")).collect();
    let ring = MultiPolyRing::new(gen_names);
    let head = Head::At(Half::int(n as i64 + 1));

    let mut terms: Vec<(Half, <MultiPolyRing as CoefficientRing>::Elem)> = Vec::new();
    for j in 0..n {
        let frac = Rational::new(1, j as i64 + 1);
        let coeff = if j == 0 {
            ring.from_rational(&frac)
        } else {
            let mut exps = vec![0i32; ring.gens().len()];
            exps[j - 1] = 1;
            ring.monomial(frac, exps)
        };
        terms.push((Half::int(j as i64 + 1), coeff));
    }
    let log = LaurentSeries::from_terms(ring.clone(), terms, head);
    let exp = log.comp_inverse(Half::ONE, head)?;
    let minus_one = exp.compose(&log.neg(), head)?;
    let dlog = log.derivative();
    Ok(FormalGroup {
        name: format!("mu:{n}"),
        ring,
        log,
        exp,
        dlog,
        minus_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{MultiPoly, RationalField};

    #[test]
    fn additive_group_is_exact() {
        let fg = additive(RationalField);
        assert_eq!(fg.log(), &LaurentSeries::generator(RationalField));
        assert_eq!(fg.exp(), &LaurentSeries::generator(RationalField));
        assert_eq!(fg.minus_one(), &LaurentSeries::generator(RationalField).neg());
        assert_eq!(fg.dlog(), &LaurentSeries::one(RationalField));
        assert_eq!(fg.minus_one().head(), Head::Inf);
    }

    #[test]
    fn additive_boundary_is_residue() {
        let fg = additive(RationalField);
        let f = LaurentSeries::monomial(RationalField, Rational::from_int(7), Half::int(-1));
        assert_eq!(fg.boundary(&f).unwrap(), Rational::from_int(7));
        let g = LaurentSeries::generator(RationalField);
        assert_eq!(fg.boundary(&g).unwrap(), Rational::zero());
    }

    fn poly_terms(p: &MultiPoly) -> Vec<(Vec<i32>, Rational)> {
        p.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect()
    }

    #[test]
    fn mishchenko_three_exp_and_inverse() {
        // log = e + CP1 e^2/2 + CP2 e^3/3 + O(e^4)
        // exp = e - CP1 e^2/2 + (CP1^2/2 - CP2/3) e^3 + O(e^4)
        // [-1](e) = -e - CP1 e^2 - CP1^2 e^3 + O(e^4)
        let fg = mishchenko(3).unwrap();
        let ring = fg.ring().clone();
        let half = Rational::new(1, 2);
        let third = Rational::new(1, 3);

        let log1 = fg.log().known_coeff(Half::int(1)).unwrap();
        assert_eq!(log1, ring.one());
        let log2 = fg.log().known_coeff(Half::int(2)).unwrap();
        assert_eq!(poly_terms(&log2), vec![(vec![1, 0], half.clone())]);

        let e2 = fg.exp().known_coeff(Half::int(2)).unwrap();
        assert_eq!(poly_terms(&e2), vec![(vec![1, 0], -half.clone())]);
        let e3 = fg.exp().known_coeff(Half::int(3)).unwrap();
        assert_eq!(
            poly_terms(&e3),
            vec![(vec![0, 1], -third), (vec![2, 0], half)]
        );

        let m1 = fg.minus_one().known_coeff(Half::int(1)).unwrap();
        assert_eq!(poly_terms(&m1), vec![(vec![0, 0], Rational::from_int(-1))]);
        let m2 = fg.minus_one().known_coeff(Half::int(2)).unwrap();
        assert_eq!(poly_terms(&m2), vec![(vec![1, 0], Rational::from_int(-1))]);
        let m3 = fg.minus_one().known_coeff(Half::int(3)).unwrap();
        assert_eq!(poly_terms(&m3), vec![(vec![2, 0], Rational::from_int(-1))]);
    }

    #[test]
    fn mishchenko_round_trips() {
        let fg = mishchenko(5).unwrap();
        let round = fg.log().compose(fg.exp(), Head::Inf).unwrap();
        assert!(round.agrees_with(&LaurentSeries::generator(fg.ring().clone())));
        let back = fg.exp().compose(fg.log(), Head::Inf).unwrap();
        assert!(back.agrees_with(&LaurentSeries::generator(fg.ring().clone())));
        // [-1] is an involution within precision
        let twice = fg.minus_one().compose(fg.minus_one(), Head::Inf).unwrap();
        assert!(twice.agrees_with(&LaurentSeries::generator(fg.ring().clone())));
    }

    #[test]
    fn mishchenko_boundary_reads_off_generators() {
        // dlog = 1 + CP1 e + CP2 e^2 + ... so res(e^-k dlog) = CP_(k-1)
        let n = 6;
        let fg = mishchenko(n).unwrap();
        let ring = fg.ring().clone();
        for k in 1..n as i64 {
            let f = LaurentSeries::monomial(ring.clone(), ring.one(), Half::int(-k));
            let b = fg.boundary(&f).unwrap();
            let expect = if k == 1 {
                ring.one()
            } else {
                let mut exps = vec![0i32; ring.gens().len()];
                exps[(k - 2) as usize] = 1;
                ring.monomial(Rational::one(), exps)
            };
            assert_eq!(b, expect, "boundary at k={k}");
        }
    }

    #[test]
    fn mishchenko_log_degrees_are_graded() {
        // the e^(j+1) coefficient of log is homogeneous of degree j when
        // CP_i carries degree i
        let fg = mishchenko(7).unwrap();
        for (e, c) in fg.log().terms() {
            let j = e.as_integer().unwrap() - 1;
            for (exps, _) in c.terms() {
                let deg: i64 = exps
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (i as i64 + 1) * *p as i64)
                    .sum();
                assert_eq!(deg, j, "degree of the e^{} coefficient", j + 1);
            }
        }
    }

    #[test]
    fn mishchenko_zero_terms_rejected() {
        assert!(mishchenko(0).is_err());
    }
}
