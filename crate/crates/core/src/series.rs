//! Formal Laurent series with half-step exponents and explicit precision.
//!
//! A series is a finite table of exact coefficients at half-integer exponents
//! together with a head bound: coefficients at exponents >= head are unknown.
//! The exact zero series has head = infinity. Negative-exponent support is
//! always finite (the Laurent condition) and stored exactly.
//!
//! Binary operations propagate the tightest sound head. Operations that can
//! produce infinitely many terms from exact inputs (multiplicative inversion,
//! substitution with negative powers, compositional inversion) take an
//! explicit precision cap and fail with `Error::NeedsCap` when neither the
//! inputs nor the cap bound the work. Results may carry a head slightly above
//! the requested cap when the computation determines extra coefficients; the
//! head is always sound.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{CoefficientRing, Half, Rational};

/// Precision bound: coefficients at exponents >= the bound are unknown.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Head {
    At(Half),
    Inf,
}

impl Head {
    pub fn min(self, other: Head) -> Head {
        std::cmp::min(self, other)
    }

    /// Shifts a finite bound; infinity is absorbing.
    pub fn shift(self, d: Half) -> Head {
        match self {
            Head::At(h) => Head::At(h + d),
            Head::Inf => Head::Inf,
        }
    }

    /// True when the coefficient at exponent e is determined by this bound.
    pub fn covers(self, e: Half) -> bool {
        match self {
            Head::At(h) => e < h,
            Head::Inf => true,
        }
    }
}

impl fmt::Display for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Head::At(h) => write!(f, "O(x^{h})"),
            Head::Inf => write!(f, "exact"),
        }
    }
}

/// Exponent parity of a series: all integral, all odd-half, or mixed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesParity {
    Integral,
    OddHalf,
    Mixed,
}

/// A formal Laurent series over a coefficient ring.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<R: CoefficientRing> {
    ring: R,
    coeffs: BTreeMap<Half, R::Elem>,
    head: Head,
}

impl<R: CoefficientRing> LaurentSeries<R> {
    /// The exact zero series.
    pub fn zero(ring: R) -> Self {
        LaurentSeries { ring, coeffs: BTreeMap::new(), head: Head::Inf }
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, Half::ZERO)
    }

    /// The generator x.
    pub fn generator(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, Half::ONE)
    }

    /// c * x^e, exact.
    pub fn monomial(ring: R, c: R::Elem, e: Half) -> Self {
        let mut coeffs = BTreeMap::new();
        if !ring.is_zero(&c) {
            coeffs.insert(e, c);
        }
        LaurentSeries { ring, coeffs, head: Head::Inf }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::monomial(ring, c, Half::ZERO)
    }

    /// Builds a series from (exponent, coefficient) pairs, merging duplicates
    /// and dropping zeros and anything at or above the head.
    pub fn from_terms(
        ring: R,
        terms: impl IntoIterator<Item = (Half, R::Elem)>,
        head: Head,
    ) -> Self {
        let mut coeffs: BTreeMap<Half, R::Elem> = BTreeMap::new();
        for (e, c) in terms {
            if !head.covers(e) {
                continue;
            }
            let merged = match coeffs.remove(&e) {
                Some(prev) => ring.add(&prev, &c),
                None => c,
            };
            if !ring.is_zero(&merged) {
                coeffs.insert(e, merged);
            }
        }
        LaurentSeries { ring, coeffs, head }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn head(&self) -> Head {
        self.head
    }

    pub fn terms(&self) -> impl Iterator<Item = (Half, &R::Elem)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// No known nonzero terms (possibly only within a finite window).
    pub fn is_empty_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exactly the zero series, known at all exponents.
    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.head == Head::Inf
    }

    /// Lowest stored exponent, or the head when no terms are stored.
    /// `Head::Inf` only for the exact zero series.
    pub fn val_eff(&self) -> Head {
        match self.coeffs.keys().next() {
            Some(e) => Head::At(*e),
            None => self.head,
        }
    }

    /// The coefficient at exponent e; errors when e lies outside the window.
    pub fn known_coeff(&self, e: Half) -> Result<R::Elem> {
        match self.head {
            Head::At(h) if e >= h => Err(Error::Precision { needed: e, have: h }),
            _ => Ok(self.coeffs.get(&e).cloned().unwrap_or_else(|| self.ring.zero())),
        }
    }

    /// Restricts the head to `h` and drops the newly unknown terms.
    pub fn truncated_to(&self, h: Head) -> Self {
        let head = self.head.min(h);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| head.covers(**e))
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        LaurentSeries { ring: self.ring.clone(), coeffs, head }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ring.require_same(&other.ring)?;
        let head = self.head.min(other.head);
        let terms = self
            .coeffs
            .iter()
            .chain(other.coeffs.iter())
            .map(|(e, c)| (*e, c.clone()));
        Ok(Self::from_terms(self.ring.clone(), terms, head))
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, self.ring.neg(c))).collect(),
            head: self.head,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplication by a ring element. Multiplying by exact zero yields the
    /// exact zero series (the unknown tail is annihilated too).
    pub fn scalar_mul(&self, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(self.ring.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(e, a)| {
                let p = self.ring.mul(a, c);
                if self.ring.is_zero(&p) {
                    None
                } else {
                    Some((*e, p))
                }
            })
            .collect();
        LaurentSeries { ring: self.ring.clone(), coeffs, head: self.head }
    }

    pub fn scalar_mul_rational(&self, q: &Rational) -> Self {
        self.scalar_mul(&self.ring.from_rational(q))
    }

    /// Multiplication by the exact monomial c * x^shift.
    pub fn mul_monomial(&self, c: &R::Elem, shift: Half) -> Self {
        let scaled = self.scalar_mul(c);
        LaurentSeries {
            ring: scaled.ring,
            coeffs: scaled.coeffs.into_iter().map(|(e, a)| (e + shift, a)).collect(),
            head: scaled.head.shift(shift),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ring.require_same(&other.ring)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Self::zero(self.ring.clone()));
        }
        let vf = match self.val_eff() {
            Head::At(v) => v,
            Head::Inf => unreachable!("non-zero series has a finite effective valuation"),
        };
        let vg = match other.val_eff() {
            Head::At(v) => v,
            Head::Inf => unreachable!("non-zero series has a finite effective valuation"),
        };
        // head = min(head_f + val(g), head_g + val(f))
        let head = self.head.shift(vg).min(other.head.shift(vf));
        let mut coeffs: BTreeMap<Half, R::Elem> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = *ea + *eb;
                if !head.covers(e) {
                    continue;
                }
                let p = self.ring.mul(ca, cb);
                let merged = match coeffs.remove(&e) {
                    Some(prev) => self.ring.add(&prev, &p),
                    None => p,
                };
                if !self.ring.is_zero(&merged) {
                    coeffs.insert(e, merged);
                }
            }
        }
        Ok(LaurentSeries { ring: self.ring.clone(), coeffs, head })
    }

    /// Integer power; negative exponents go through the multiplicative
    /// inverse under the same cap.
    pub fn pow_int(&self, k: i64, cap: Head) -> Result<Self> {
        if k < 0 {
            let inv = self.mul_inverse(cap)?;
            return inv.pow_int(-k, cap);
        }
        let mut acc = Self::one(self.ring.clone());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// d/dx: the term c x^e maps to (e c) x^(e-1).
    pub fn derivative(&self) -> Self {
        self.derivative_in_step(Half::ONE)
    }

    /// Derivative with respect to y = x^step: c x^e maps to (e/step) c x^(e-step).
    pub fn derivative_in_step(&self, step: Half) -> Self {
        assert!(step.0 > 0, "derivative step must be positive");
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(e, c)| {
                let factor = Rational::new(e.0, step.0);
                let d = self.ring.mul_rational(c, &factor);
                if self.ring.is_zero(&d) {
                    None
                } else {
                    Some((*e - step, d))
                }
            })
            .collect();
        LaurentSeries { ring: self.ring.clone(), coeffs, head: self.head.shift(-step) }
    }

    /// The coefficient at x^(-1), i.e. the residue of f dx. Errors when the
    /// window does not reach that coefficient.
    pub fn residue(&self) -> Result<R::Elem> {
        self.known_coeff(Half::int(-1))
    }

    /// Negates every coefficient at odd-half exponents (the Galois involution
    /// of the square-root extension).
    pub fn galois(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| if e.is_odd_half() { (*e, self.ring.neg(c)) } else { (*e, c.clone()) })
            .collect();
        LaurentSeries { ring: self.ring.clone(), coeffs, head: self.head }
    }

    /// Integral / odd-half / mixed support. An empty window counts as integral.
    pub fn parity(&self) -> SeriesParity {
        let mut any_int = false;
        let mut any_odd = false;
        for e in self.coeffs.keys() {
            if e.is_integer() {
                any_int = true;
            } else {
                any_odd = true;
            }
        }
        match (any_int, any_odd) {
            (_, false) => SeriesParity::Integral,
            (false, true) => SeriesParity::OddHalf,
            (true, true) => SeriesParity::Mixed,
        }
    }

    /// Drops all terms at exponents below -1. Requires integral exponents.
    pub fn truncate_mt(&self) -> Result<Self> {
        for e in self.coeffs.keys() {
            if !e.is_integer() {
                return Err(Error::NotIntegral(*e));
            }
        }
        let floor = Half::int(-1);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| **e >= floor)
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        Ok(LaurentSeries { ring: self.ring.clone(), coeffs, head: self.head })
    }

    /// True when the two series agree at every exponent known to both.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.ring != other.ring {
            return false;
        }
        let window = self.head.min(other.head);
        let keys: std::collections::BTreeSet<Half> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|e| window.covers(*e))
            .collect();
        keys.into_iter().all(|e| {
            let a = self.coeffs.get(&e).cloned().unwrap_or_else(|| self.ring.zero());
            let b = other.coeffs.get(&e).cloned().unwrap_or_else(|| self.ring.zero());
            a == b
        })
    }

    /// Splits a substitution argument in the variable y = x^step into its
    /// unit part (exponents > 0) and nilpotent tail (exponents <= 0), after
    /// validating admissibility: valuation exactly `step` with a unit leading
    /// coefficient, and nilpotent coefficients at exponents <= 0. The tail is
    /// exact because every stored exponent lies below the head.
    fn split_subst_arg(&self, step: Half) -> Result<(Self, Self)> {
        assert!(step.0 > 0, "substitution step must be positive");
        if let Head::At(h) = self.head {
            if h <= step {
                return Err(Error::Precision { needed: step, have: h });
            }
        }
        let mut plus: BTreeMap<Half, R::Elem> = BTreeMap::new();
        let mut minus: BTreeMap<Half, R::Elem> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            if e.0 > 0 {
                plus.insert(*e, c.clone());
            } else {
                if !self.ring.is_nilpotent(c) {
                    return Err(Error::NonNilpotentTail { found: self.ring.render(c), at: *e });
                }
                minus.insert(*e, c.clone());
            }
        }
        match plus.keys().next() {
            None => return Err(Error::NonUnitLeading { found: "0".into(), at: step }),
            Some(lowest) => {
                if *lowest != step || !self.ring.is_unit(&plus[lowest]) {
                    return Err(Error::NonUnitLeading {
                        found: self.ring.render(&plus[lowest]),
                        at: *lowest,
                    });
                }
            }
        }
        let plus = LaurentSeries { ring: self.ring.clone(), coeffs: plus, head: self.head };
        let minus = LaurentSeries { ring: self.ring.clone(), coeffs: minus, head: Head::Inf };
        Ok((plus, minus))
    }

    /// Validates this series as a substitution argument in y = x^step without
    /// performing a substitution.
    pub fn check_subst_arg(&self, step: Half) -> Result<()> {
        self.split_subst_arg(step).map(|_| ())
    }

    /// All powers n^0, n^1, ... of a series with nilpotent coefficients, up to
    /// (and excluding) the first power that vanishes identically.
    fn nilpotent_powers(n: &Self) -> Result<Vec<Self>> {
        let mut powers = vec![Self::one(n.ring.clone())];
        let mut cur = Self::one(n.ring.clone());
        for _ in 0..4096 {
            cur = cur.mul(n)?;
            if cur.is_empty_window() {
                return Ok(powers);
            }
            powers.push(cur.clone());
        }
        Err(Error::InvalidArgument(
            "powering a nilpotent-coefficient series did not terminate".into(),
        ))
    }

    /// Worst-case downward reach of the nilpotent tail powers: with p_max the
    /// last nonvanishing power and val the tail valuation, substituted powers
    /// dip at most p_max * (step - val) below their nominal exponent. A tail
    /// above the reference exponent never reaches down, so the result is
    /// clamped at zero.
    fn tail_drop(minus_powers: &[Self], minus: &Self, step: Half) -> Half {
        let p_max = (minus_powers.len() - 1) as i64;
        if p_max == 0 {
            return Half::ZERO;
        }
        let val = match minus.val_eff() {
            Head::At(v) => v,
            Head::Inf => unreachable!("nonzero nilpotent tail has a valuation"),
        };
        ((step - val) * p_max).max(Half::ZERO)
    }

    /// Substitution f(g) in the variable y = x^step: every exponent of f must
    /// be a multiple of step, and g must be admissible in y (valuation step
    /// with a unit leading coefficient; nilpotent coefficients at exponents
    /// <= 0). `cap` bounds the precision of the result.
    pub fn subst(&self, g: &Self, step: Half, cap: Head) -> Result<Self> {
        self.ring.require_same(&g.ring)?;
        for e in self.coeffs.keys() {
            if e.0.rem_euclid(step.0) != 0 {
                return Err(Error::StepMismatch(*e, step));
            }
        }
        if self.is_exact_zero() {
            return Ok(Self::zero(self.ring.clone()));
        }
        let (g_plus, g_minus) = g.split_subst_arg(step)?;
        let minus_powers = Self::nilpotent_powers(&g_minus)?;
        let p_max = (minus_powers.len() - 1) as i64;
        let drop = Self::tail_drop(&minus_powers, &g_minus, step);

        // tightest sound head for the result
        let vf = match self.val_eff() {
            Head::At(v) => v,
            Head::Inf => unreachable!("handled the exact zero above"),
        };
        let mut sound = Head::Inf;
        if let Head::At(hf) = self.head {
            sound = sound.min(Head::At(hf - drop));
        }
        if let Head::At(hg) = g.head {
            sound = sound.min(Head::At(vf - step + hg - drop));
        }
        let result_head = sound.min(cap);
        if self.coeffs.is_empty() {
            return Ok(Self::zero(self.ring.clone()).truncated_to(result_head));
        }
        let work = result_head.shift(drop);

        // powers of the unit part: positive by iterated products, negative
        // (needed only for negative exponents of f) through the inverse
        let ks: Vec<i64> = self.coeffs.keys().map(|e| e.0 / step.0).collect();
        let k_max = ks.iter().copied().max().unwrap().max(0);
        let k_min = ks.iter().copied().min().unwrap().min(0);
        let mut plus_powers: BTreeMap<i64, Self> = BTreeMap::new();
        plus_powers.insert(0, Self::one(self.ring.clone()));
        for k in 1..=k_max {
            let next = plus_powers[&(k - 1)].mul(&g_plus)?.truncated_to(work);
            plus_powers.insert(k, next);
        }
        if k_min < 0 {
            // each rung of the descent multiplies by the inverse (valuation
            // -step) and costs step of precision, so the inverse itself needs
            // (depth - 1) * step of headroom to keep the deepest power at work
            let depth = p_max - k_min;
            let inv_work = work.shift(step * (depth - 1));
            let inv = g_plus.mul_inverse(inv_work)?;
            for k in 1..=depth {
                let next = plus_powers[&(1 - k)].mul(&inv)?;
                plus_powers.insert(-k, next);
            }
        }

        let mut acc = Self::zero(self.ring.clone());
        for (e, c) in &self.coeffs {
            let k = e.0 / step.0;
            // g^k = sum_j C(k, j) g_plus^(k-j) g_minus^j, finite by nilpotency
            let mut g_pow = Self::zero(self.ring.clone());
            for (j, nil_pow) in minus_powers.iter().enumerate() {
                let coef = binomial_rational(k, j as u32);
                if coef.is_zero() {
                    continue;
                }
                let base = &plus_powers[&(k - j as i64)];
                let term = base.mul(nil_pow)?.scalar_mul_rational(&coef);
                g_pow = g_pow.add(&term)?;
            }
            acc = acc.add(&g_pow.scalar_mul(c))?;
        }
        Ok(acc.truncated_to(result_head))
    }

    /// Substitution of g for the variable x itself.
    pub fn compose(&self, g: &Self, cap: Head) -> Result<Self> {
        self.subst(g, Half::ONE, cap)
    }

    /// Multiplicative inverse 1/f. The lowest non-nilpotent coefficient must
    /// be a unit; coefficients below it must be nilpotent. `cap` bounds the
    /// precision when the inverse has infinitely many terms.
    pub fn mul_inverse(&self, cap: Head) -> Result<Self> {
        // v = lowest exponent carrying a non-nilpotent coefficient
        let v = match self.coeffs.iter().find(|(_, c)| !self.ring.is_nilpotent(c)) {
            Some((e, _)) => *e,
            None => {
                return match self.head {
                    // every coefficient is nilpotent and nothing is hidden
                    Head::Inf => Err(Error::NotAUnit(
                        "series with all-nilpotent coefficients has no inverse".into(),
                    )),
                    // a unit coefficient might hide beyond the head
                    Head::At(h) => Err(Error::Precision { needed: h, have: h }),
                };
            }
        };
        let c = &self.coeffs[&v];
        if !self.ring.is_unit(c) {
            return Err(Error::NonUnitLeading { found: self.ring.render(c), at: v });
        }
        let c_inv = self.ring.inv(c)?;

        // f = c x^v (1 + m + n + tail): m holds the non-nilpotent stored
        // coefficients (valuation > 0 by minimality of v), n the nilpotent
        // ones. Both are the stored window taken as exact; the unknown tail
        // is charged to an explicit bound on the result head at the end.
        let scaled = self.mul_monomial(&c_inv, -v);
        let u = scaled.sub(&Self::one(self.ring.clone()))?;
        let mut m_terms: Vec<(Half, R::Elem)> = Vec::new();
        let mut n_terms: Vec<(Half, R::Elem)> = Vec::new();
        for (e, a) in u.terms() {
            if self.ring.is_nilpotent(a) {
                n_terms.push((e, a.clone()));
            } else {
                m_terms.push((e, a.clone()));
            }
        }
        let m = Self::from_terms(self.ring.clone(), m_terms, Head::Inf);
        let n = Self::from_terms(self.ring.clone(), n_terms, Head::Inf);
        let n_powers = Self::nilpotent_powers(&n)?;
        let drop = Self::tail_drop(&n_powers, &n, Half::ZERO);

        let mut work = Head::Inf;
        if let Head::At(hc) = cap {
            work = work.min(Head::At(hc + v + drop));
        }
        if let Head::At(hf) = self.head {
            work = work.min(Head::At(hf - v + drop));
        }

        // (1 + m)^(-1) by Newton reciprocal iteration z -> z (2 - (1+m) z),
        // which doubles the certified window each round; the candidate stays
        // zero-extended so widening exposes genuine defects
        let geo = if m.is_empty_window() {
            Self::one(self.ring.clone())
        } else {
            if work == Head::Inf {
                return Err(Error::NeedsCap);
            }
            let one = Self::one(self.ring.clone());
            let unit = one.add(&m)?;
            let vm = match m.val_eff() {
                Head::At(vm) => vm,
                Head::Inf => unreachable!("nonempty window has a valuation"),
            };
            let mut z = one.clone();
            let mut zstage = Head::At(vm * 2).min(work);
            let mut done = false;
            for _ in 0..64 {
                let prod = unit.mul(&z)?.truncated_to(zstage);
                let defect = prod.sub(&one)?;
                if defect.is_empty_window() {
                    if zstage >= work {
                        done = true;
                        break;
                    }
                    zstage = match zstage {
                        Head::At(s) => Head::At(s * 2).min(work),
                        Head::Inf => Head::Inf,
                    };
                    continue;
                }
                let corr = z.mul(&one.sub(&prod)?)?.truncated_to(zstage);
                let next = z.add(&corr)?;
                z = Self::from_terms(
                    self.ring.clone(),
                    next.terms().map(|(e, c)| (e, c.clone())).collect::<Vec<_>>(),
                    Head::Inf,
                );
            }
            if !done {
                return Err(Error::InvalidArgument(
                    "reciprocal iteration did not converge".into(),
                ));
            }
            z.truncated_to(work)
        };

        // (1 + n (1+m)^(-1))^(-1) = sum_j (-1)^j n^j (1+m)^(-j): finite sum
        let mut s2 = Self::zero(self.ring.clone());
        let mut geo_pow = Self::one(self.ring.clone());
        for (j, n_pow) in n_powers.iter().enumerate() {
            let term = n_pow.mul(&geo_pow)?;
            s2 = s2.add(&if j % 2 == 0 { term } else { term.neg() })?;
            if j + 1 < n_powers.len() {
                geo_pow = geo_pow.mul(&geo)?.truncated_to(work);
            }
        }

        let inv = geo.mul(&s2)?.mul_monomial(&c_inv, -v);
        // the unknown tail of f perturbs 1/f no lower than head(f) - 2v - drop
        let mut claim = inv.head();
        if let Head::At(hf) = self.head {
            claim = claim.min(Head::At(hf - v - v - drop));
        }
        Ok(inv.truncated_to(claim))
    }

    /// Compositional inverse in the variable y = x^step: the series h with
    /// f(h) = y within precision. The tail-free unit part is inverted by
    /// Newton iteration; a nilpotent tail is then absorbed by a fixed-point
    /// correction that terminates because every round multiplies the
    /// remaining error by another nilpotent coefficient.
    pub fn comp_inverse(&self, step: Half, cap: Head) -> Result<Self> {
        for e in self.coeffs.keys() {
            if e.0.rem_euclid(step.0) != 0 {
                return Err(Error::StepMismatch(*e, step));
            }
        }
        let (g_plus, g_minus) = self.split_subst_arg(step)?;
        if g_minus.is_exact_zero() {
            return g_plus.newton_inverse_unit(step, cap.min(self.head));
        }

        let minus_powers = Self::nilpotent_powers(&g_minus)?;
        let p_max = minus_powers.len() - 1;
        let tail_coeffs: Vec<R::Elem> = g_minus.terms().map(|(_, c)| c.clone()).collect();
        let p_ideal = Self::ideal_nilpotence(&self.ring, &tail_coeffs)?;
        let val_n = match g_minus.val_eff() {
            Head::At(v) => v,
            Head::Inf => unreachable!("the tail has at least one stored term"),
        };

        // correction layers spend sound head on the true valuation reach of
        // the tail's ideal powers; the reach formula is pessimistic in both
        // directions, so measure the shortfall of an attempt and top the
        // working precision up by exactly that much
        let budget = (step - val_n) * (p_ideal as i64 + 1) + step * 2;
        let target = cap.min(self.head);
        let mut work = target.shift(budget);
        let mut best: Option<Self> = None;
        let mut last_err = None;
        for _ in 0..8 {
            match Self::tail_inverse_attempt(&g_plus, &g_minus, step, p_max, p_ideal, work) {
                // an empty inversion window at this precision may open up at
                // a higher one
                Err(e @ Error::Precision { .. }) => {
                    last_err = Some(e);
                    work = work.shift(budget);
                }
                Err(e) => return Err(e),
                Ok(h) => {
                    if target.min(h.head()) == target {
                        return Ok(h);
                    }
                    let short = match (target, h.head()) {
                        (Head::At(t), Head::At(hh)) => t - hh,
                        _ => budget,
                    };
                    // a plateau means extra precision no longer helps
                    match &best {
                        Some(b) if h.head() <= b.head() => return Ok(b.clone()),
                        _ => best = Some(h),
                    }
                    work = work.shift(short + step);
                }
            }
        }
        match best {
            Some(b) => Ok(b),
            None => Err(last_err.expect("every failed attempt records an error")),
        }
    }

    /// Certified nilpotence index of the ideal generated by the given
    /// coefficients: the smallest P for which every (P+1)-fold product of
    /// generators vanishes, established by exhaustive multiplication.
    fn ideal_nilpotence(ring: &R, gens: &[R::Elem]) -> Result<usize> {
        let mut frontier: Vec<R::Elem> =
            gens.iter().filter(|c| !ring.is_zero(c)).cloned().collect();
        let mut degree = 1usize;
        while !frontier.is_empty() {
            if degree > 64 || frontier.len() > (1 << 16) {
                return Err(Error::InvalidArgument(
                    "the tail coefficients do not generate a visibly nilpotent ideal".into(),
                ));
            }
            let mut next = Vec::new();
            for f in &frontier {
                for g in gens {
                    let p = ring.mul(f, g);
                    if !ring.is_zero(&p) {
                        next.push(p);
                    }
                }
            }
            frontier = next;
            degree += 1;
        }
        Ok(degree - 1)
    }

    /// One working-precision attempt at inverting a unit part plus nilpotent
    /// tail. With phi the inverse of the unit part and m = tail(h), the
    /// inverse satisfies h = phi(y - m) = sum_j phi^(j)(y)/j! (-m)^j: the
    /// Taylor sum is finite because m^j = (tail^j)(h) vanishes beyond the
    /// certified power p_max, and the binomial expansions of h^e below grade
    /// zero are finite because the correction's coefficients lie in the
    /// tail's coefficient ideal, nilpotent of index p_ideal.
    ///
    /// All quantities are graded by a lower bound on the ideal degree of
    /// their coefficients. Products whose total degree exceeds p_ideal
    /// vanish identically and are dropped without charging the head, and the
    /// degree-d correction layer depends only on the layers below it, so one
    /// pass per degree settles the fixed point h = phi(y - tail(h)) exactly,
    /// each layer spending only its own true valuation reach.
    fn tail_inverse_attempt(
        g_plus: &Self,
        g_minus: &Self,
        step: Half,
        p_max: usize,
        p_ideal: usize,
        work: Head,
    ) -> Result<Self> {
        let dbg = std::env::var("TATE_DBG").is_ok();
        let t0 = std::time::Instant::now();
        let ring = g_plus.ring.clone();
        let zero = || Self::zero(ring.clone());
        let phi = g_plus.newton_inverse_unit(step, work)?;
        if dbg {
            eprintln!("  [newton {:?}] work {:?}", t0.elapsed(), work);
        }

        // Taylor coefficients phi^(j)(y)/j! for j = 1..=p_max
        let t1 = std::time::Instant::now();
        let mut taylor = vec![phi.clone()];
        for j in 1..=p_max {
            let d = taylor[j - 1].derivative_in_step(step);
            taylor.push(d.scalar_mul_rational(&Rational::new(1, j as i64)));
        }

        // powers of 1/phi for the binomial expansion of h^e at e <= 0
        let t_min = match g_minus.val_eff() {
            Head::At(v) => v.0 / step.0,
            Head::Inf => unreachable!("the tail has at least one stored term"),
        };
        let phi_inv = phi.mul_inverse(work)?;
        if dbg {
            eprintln!("  [phi_inv {:?}]", t1.elapsed());
        }
        let t2 = std::time::Instant::now();
        let mut inv_pows = vec![Self::one(ring.clone())];
        for q in 1..=(p_ideal as i64 - t_min) {
            inv_pows.push(inv_pows[(q - 1) as usize].mul(&phi_inv)?);
        }
        if dbg {
            eprintln!("  [inv_pows {:?}]", t2.elapsed());
        }
        let t3 = std::time::Instant::now();

        // Graded components by ideal degree, filled bottom-up: the degree-d
        // pass reads only components of lower degree, all of which are final,
        // so every component is computed exactly once.
        let width = p_ideal + 1;
        let mut nu: Vec<Self> = vec![zero(); width];
        // nu_pows[k][c] = degree-c component of nu^k
        let mut nu_pows: Vec<Vec<Self>> = vec![vec![zero(); width]; width];
        nu_pows[0][0] = Self::one(ring.clone());
        // m[d] = degree-d component of the tail value sum_e n_e (phi + nu)^e
        let mut m: Vec<Self> = vec![zero(); width];
        // mp[j][d] = degree-d component of m^j
        let mut mp: Vec<Vec<Self>> = vec![vec![zero(); width]; p_max + 1];
        mp[0][0] = Self::one(ring.clone());

        for d in 1..width {
            // new degree-(d-1) components of the correction powers:
            // nu^k[c] = sum_i nu[i] nu^(k-1)[c-i], all i >= 1 settled
            let c = d - 1;
            for k in 1..=c {
                let mut acc = zero();
                for i in 1..=(c - k + 1) {
                    if !nu[i].is_exact_zero() && !nu_pows[k - 1][c - i].is_exact_zero() {
                        acc = acc.add(&nu[i].mul(&nu_pows[k - 1][c - i])?)?;
                    }
                }
                nu_pows[k][c] = acc;
            }
            // degree-d component of m; the tail coefficient supplies the
            // extra ideal degree on top of the degree-(d-1) power component
            let mut md = zero();
            for (e, cc) in g_minus.terms() {
                let t_e = e.0 / step.0;
                for (k, pows) in nu_pows.iter().enumerate() {
                    let comp = &pows[c];
                    if comp.is_exact_zero() {
                        continue;
                    }
                    let coef = binomial_rational(t_e, k as u32);
                    if coef.is_zero() {
                        continue;
                    }
                    let apow = &inv_pows[(k as i64 - t_e) as usize];
                    md = md.add(&apow.mul(comp)?.scalar_mul_rational(&coef).scalar_mul(cc))?;
                }
            }
            m[d] = md;
            // degree-d components of the m-powers and the Taylor sum's
            // degree-d part: m^j[d] = sum_i m[i] m^(j-1)[d-i]
            let mut t_layer = zero();
            for j in 1..=p_max.min(d) {
                let mut acc = zero();
                for i in 1..=(d - j + 1) {
                    if !m[i].is_exact_zero() && !mp[j - 1][d - i].is_exact_zero() {
                        acc = acc.add(&m[i].mul(&mp[j - 1][d - i])?)?;
                    }
                }
                mp[j][d] = acc;
                if mp[j][d].is_exact_zero() {
                    continue;
                }
                let signed = if j % 2 == 1 {
                    mp[j][d].scalar_mul_rational(&Rational::new(-1, 1))
                } else {
                    mp[j][d].clone()
                };
                t_layer = t_layer.add(&taylor[j].mul(&signed)?)?;
            }
            nu[d] = t_layer.truncated_to(work);
        }

        let mut h = phi;
        for layer in nu.iter().skip(1) {
            h = h.add(layer)?;
        }
        if dbg {
            eprintln!("  [layers {:?}] total {:?}", t3.elapsed(), t0.elapsed());
        }
        Ok(h.truncated_to(work))
    }

    /// Newton inversion of a validated unit part: valuation `step` with a
    /// unit coefficient and no terms at or below grade zero. Head
    /// bookkeeping is loss-free here, which is what makes the nilpotent
    /// correction in `comp_inverse` affordable. The working window starts
    /// narrow and doubles whenever the defect vanishes on it, so quadratic
    /// convergence concentrates the cost in the final full-width pass.
    fn newton_inverse_unit(&self, step: Half, cap: Head) -> Result<Self> {
        if cap == Head::Inf && self.num_terms() != 1 {
            // a non-monomial unit part has an infinite inverse expansion
            return Err(Error::NeedsCap);
        }
        let c = self.coeffs.get(&step).expect("validated leading term");
        let c_inv = self.ring.inv(c)?;
        let y = Self::monomial(self.ring.clone(), self.ring.one(), step);
        // the candidate is always the zero-extension of the coefficients
        // found so far: an exact series, so widening the window exposes
        // genuine defects instead of head-bound artifacts
        let mut h = y.scalar_mul(&c_inv);
        let deriv = self.derivative_in_step(step);
        let mut stage = match cap {
            Head::At(_) => Head::At(step * 4).min(cap),
            Head::Inf => Head::Inf,
        };
        for _ in 0..64 {
            let defect = self.subst(&h, step, stage)?.sub(&y)?.truncated_to(stage);
            if defect.is_empty_window() {
                if stage >= cap {
                    // a defect of order T pins h down to order T minus the
                    // reach of the slope inverse below degree zero
                    let slope = deriv.subst(&h, step, stage)?;
                    let slope_inv = slope.mul_inverse(stage)?;
                    let s_drop = match slope_inv.val_eff() {
                        Head::At(sv) if sv < Half::ZERO => Half::ZERO - sv,
                        _ => Half::ZERO,
                    };
                    let final_head = defect.head().shift(-s_drop).min(h.head());
                    return Ok(h.truncated_to(final_head));
                }
                stage = match stage {
                    // double the window above the valuation
                    Head::At(s) => Head::At(s * 2 - step).min(cap),
                    Head::Inf => Head::Inf,
                };
                continue;
            }
            let slope = deriv.subst(&h, step, stage)?;
            let slope_inv = slope.mul_inverse(stage)?;
            let update = defect.mul(&slope_inv)?;
            let next = h.sub(&update)?.truncated_to(stage);
            h = Self::from_terms(
                self.ring.clone(),
                next.terms().map(|(e, c)| (e, c.clone())).collect::<Vec<_>>(),
                Head::Inf,
            );
        }
        Err(Error::InvalidArgument("compositional inversion did not converge".into()))
    }

    /// f'/f, the logarithmic derivative, to the requested precision.
    pub fn log_derivative(&self, cap: Head) -> Result<Self> {
        let d = self.derivative();
        let inv_cap = match (cap, self.val_eff()) {
            (Head::At(hc), Head::At(v)) => Head::At(hc - v + Half::ONE),
            _ => cap,
        };
        let inv = self.mul_inverse(inv_cap)?;
        Ok(d.mul(&inv)?.truncated_to(cap))
    }

    /// Canonical text rendering with the given generator symbol.
    pub fn render(&self, sym: &str) -> String {
        if self.is_exact_zero() {
            return "0".into();
        }
        let one = self.ring.render(&self.ring.one());
        let minus_one = self.ring.render(&self.ring.neg(&self.ring.one()));
        let mut out = String::new();
        for (e, c) in &self.coeffs {
            let cs = self.ring.render(c);
            let compound = cs.contains(" + ") || cs.contains(" - ");
            let body = match power_string(sym, *e) {
                None => {
                    if compound {
                        format!("({cs})")
                    } else {
                        cs
                    }
                }
                Some(p) => {
                    if cs == one {
                        p
                    } else if cs == minus_one {
                        format!("-{p}")
                    } else if compound {
                        format!("({cs})*{p}")
                    } else {
                        format!("{cs}*{p}")
                    }
                }
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
        if let Head::At(h) = self.head {
            let marker = match power_string(sym, h) {
                Some(p) => format!("O({p})"),
                None => format!("O({sym}^0)"),
            };
            if out.is_empty() {
                out = marker;
            } else {
                out.push_str(" + ");
                out.push_str(&marker);
            }
        }
        out
    }
}

/// x^e as display text; None when e = 0.
fn power_string(sym: &str, e: Half) -> Option<String> {
    if e == Half::ZERO {
        return None;
    }
    if e == Half::ONE {
        return Some(sym.to_string());
    }
    Some(if e.is_integer() {
        let k = e.as_integer().unwrap();
        if k >= 0 {
            format!("{sym}^{k}")
        } else {
            format!("{sym}^({k})")
        }
    } else {
        format!("{sym}^({e})")
    })
}

/// The generalized binomial coefficient C(k, j) for integer k (possibly
/// negative) and j >= 0.
pub fn binomial_rational(k: i64, j: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j as i64 {
        acc = acc * Rational::from_int(k - i) / Rational::from_int(i + 1);
    }
    acc
}

impl<R: CoefficientRing> fmt::Display for LaurentSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}
