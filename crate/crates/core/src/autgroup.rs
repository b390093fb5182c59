//! The group of admissible substitutions x -> g(x) with nilpotent Laurent
//! tails, its action on series, Witt operators, and the square-root double
//! cover acting through odd half-step series.

use crate::error::{Error, Result};
use crate::scalars::{CoefficientRing, Half};
use crate::series::{Head, LaurentSeries};

/// An element of the nil-Laurent substitution group: an integral-exponent
/// series g with g = c x + ... (c a unit) above zero and nilpotent
/// coefficients at exponents <= 0.
#[derive(Clone, PartialEq, Debug)]
pub struct NilLaurentAut<R: CoefficientRing> {
    series: LaurentSeries<R>,
}

impl<R: CoefficientRing> NilLaurentAut<R> {
    /// Validates and wraps a substitution series.
    pub fn new(series: LaurentSeries<R>) -> Result<Self> {
        for (e, _) in series.terms() {
            if !e.is_integer() {
                return Err(Error::NotIntegral(e));
            }
        }
        series.check_subst_arg(Half::ONE)?;
        Ok(NilLaurentAut { series })
    }

    /// The identity substitution x -> x.
    pub fn identity(ring: R) -> Self {
        NilLaurentAut { series: LaurentSeries::generator(ring) }
    }

    pub fn series(&self) -> &LaurentSeries<R> {
        &self.series
    }

    /// Group law: (self o other)(x) = self(other(x)).
    pub fn compose(&self, other: &Self, cap: Head) -> Result<Self> {
        let series = self.series.compose(&other.series, cap)?;
        Self::new(series)
    }

    /// The compositional inverse element.
    pub fn inverse(&self, cap: Head) -> Result<Self> {
        let series = self.series.comp_inverse(Half::ONE, cap)?;
        Self::new(series)
    }

    /// The pullback action on series: f -> f(g(x)).
    pub fn act(&self, f: &LaurentSeries<R>, cap: Head) -> Result<LaurentSeries<R>> {
        f.compose(&self.series, cap)
    }
}

/// The Witt operator W_k f = x^(k+1) f', an infinitesimal substitution.
pub fn witt_apply<R: CoefficientRing>(k: i64, f: &LaurentSeries<R>) -> LaurentSeries<R> {
    let one = f.ring().one();
    f.derivative().mul_monomial(&one, Half::int(k + 1))
}

/// Squares an odd half-step series into a substitution-group element. The
/// input must have odd-half exponents only, a unit coefficient at x^(1/2),
/// and nilpotent coefficients at exponents <= 0.
pub fn double_cover<R: CoefficientRing>(odd: &LaurentSeries<R>) -> Result<NilLaurentAut<R>> {
    for (e, _) in odd.terms() {
        if !e.is_odd_half() {
            return Err(Error::NotOddHalf(e));
        }
    }
    odd.check_subst_arg(Half::HALF)?;
    NilLaurentAut::new(odd.mul(odd)?)
}

/// The action of an odd element on series in sqrt(x): u -> u(g(x)) where the
/// substitution replaces x^(1/2).
pub fn odd_action<R: CoefficientRing>(
    odd: &LaurentSeries<R>,
    u: &LaurentSeries<R>,
    cap: Head,
) -> Result<LaurentSeries<R>> {
    u.subst(odd, Half::HALF, cap)
}

/// Composition of two odd elements as substitutions in sqrt(x).
pub fn odd_compose<R: CoefficientRing>(
    a: &LaurentSeries<R>,
    b: &LaurentSeries<R>,
    cap: Head,
) -> Result<LaurentSeries<R>> {
    a.subst(b, Half::HALF, cap)
}
