//! Arbitrary-precision rationals with canonical form (reduced, denominator > 0).
//!
//! Values whose reduced numerator and denominator both fit in `i128` are kept
//! in a machine-word representation; everything else falls back to a
//! GMP-backed rational. Every operation restores this invariant, so
//! structural equality and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::Zero;
use rug::ops::Pow;

/// Invariant: `Small(n, d)` is fully reduced with `d > 0`; `Big` holds a
/// canonical `rug::Rational` whose numerator or denominator does not fit in
/// `i128`. Equal values therefore always share a variant, which makes the
/// derived `PartialEq`/`Hash` sound.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Small(i128, i128),
    Big(Box<rug::Rational>),
}

/// An exact rational number. Always reduced, denominator always positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational(Repr);

/// `gcd` that refuses `i128::MIN` (whose absolute value overflows).
fn gcd_i128(a: i128, b: i128) -> Option<i128> {
    if a == i128::MIN || b == i128::MIN {
        return None;
    }
    Some(num_integer::gcd(a, b))
}

fn small_add(an: i128, ad: i128, bn: i128, bd: i128) -> Option<(i128, i128)> {
    let g = gcd_i128(ad, bd)?;
    let ad1 = ad / g;
    let bd1 = bd / g;
    let n = an.checked_mul(bd1)?.checked_add(bn.checked_mul(ad1)?)?;
    let d = ad.checked_mul(bd1)?;
    let g2 = gcd_i128(n, d)?.max(1);
    Some((n / g2, d / g2))
}

fn small_mul(an: i128, ad: i128, bn: i128, bd: i128) -> Option<(i128, i128)> {
    if an == 0 || bn == 0 {
        return Some((0, 1));
    }
    let g1 = gcd_i128(an, bd)?;
    let g2 = gcd_i128(bn, ad)?;
    let n = (an / g1).checked_mul(bn / g2)?;
    let d = (ad / g2).checked_mul(bd / g1)?;
    Some((n, d))
}

fn bigint_to_rug(b: &BigInt) -> rug::Integer {
    let (sign, bytes) = b.to_bytes_le();
    let i = rug::Integer::from_digits(&bytes, rug::integer::Order::Lsf);
    if sign == Sign::Minus {
        -i
    } else {
        i
    }
}

fn rug_to_bigint(i: &rug::Integer) -> BigInt {
    let bytes = i.to_digits::<u8>(rug::integer::Order::Lsf);
    let sign = match i.cmp0() {
        Ordering::Less => Sign::Minus,
        Ordering::Equal => Sign::NoSign,
        Ordering::Greater => Sign::Plus,
    };
    BigInt::from_bytes_le(sign, &bytes)
}

impl Rational {
    fn small(n: i128, d: i128) -> Rational {
        debug_assert!(d > 0);
        debug_assert!(num_integer::gcd(n, d) == 1 || n == 0);
        Rational(Repr::Small(n, d))
    }

    /// Wraps an already-canonical GMP rational, demoting it when it fits.
    fn from_rug(r: rug::Rational) -> Rational {
        if let (Some(n), Some(d)) = (r.numer().to_i128(), r.denom().to_i128()) {
            return Rational(Repr::Small(n, d));
        }
        Rational(Repr::Big(Box::new(r)))
    }

    fn to_rug(&self) -> rug::Rational {
        match &self.0 {
            Repr::Small(n, d) => rug::Rational::from((*n, *d)),
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn zero() -> Rational {
        Rational::small(0, 1)
    }

    pub fn one() -> Rational {
        Rational::small(1, 1)
    }

    pub fn from_int(n: i64) -> Rational {
        Rational::small(n as i128, 1)
    }

    /// p/q from machine integers. Panics on q == 0.
    pub fn new(p: i64, q: i64) -> Rational {
        assert!(q != 0, "rational with zero denominator");
        let (mut n, mut d) = (p as i128, q as i128);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = num_integer::gcd(n, d).max(1);
        Rational::small(n / g, d / g)
    }

    pub fn from_big(p: BigInt, q: BigInt) -> Rational {
        assert!(!q.is_zero(), "rational with zero denominator");
        Rational::from_rug(rug::Rational::from((bigint_to_rug(&p), bigint_to_rug(&q))))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => rug_to_bigint(r.numer()),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => rug_to_bigint(r.denom()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n == 0,
            Repr::Big(r) => r.cmp0() == Ordering::Equal,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.cmp0() == Ordering::Less,
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn abs(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_abs() {
                Some(a) => Rational::small(a, *d),
                None => Rational::from_rug(self.to_rug().abs()),
            },
            Repr::Big(r) => Rational::from_rug(rug::Rational::from(r.abs_ref())),
        }
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) if *n > 0 => Rational::small(*d, *n),
            Repr::Small(n, d) if *n != i128::MIN => Rational::small(-d, -n),
            _ => Rational::from_rug(self.to_rug().recip()),
        }
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, k: i32) -> Rational {
        if k < 0 {
            assert!(!self.is_zero(), "negative power of zero");
        }
        Rational::from_rug(self.to_rug().pow(k))
    }

    /// The half-integer equal to this rational, when the denominator is 1
    /// or 2 and the value fits in the doubled machine encoding.
    pub fn as_half(&self) -> Option<super::Half> {
        let Repr::Small(n, d) = &self.0 else {
            return None;
        };
        let n = i64::try_from(*n).ok()?;
        match d {
            1 => Some(super::Half(n.checked_mul(2)?)),
            2 => Some(super::Half(n)),
            _ => None,
        }
    }

    /// Parses "p", "-p", or "p/q".
    pub fn parse(s: &str) -> Option<Rational> {
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).ok()?;
                Some(Rational::from_big(n, BigInt::from(1)))
            }
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).ok()?;
                let q = BigInt::from_str(q.trim()).ok()?;
                if q.is_zero() {
                    None
                } else {
                    Some(Rational::from_big(p, q))
                }
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(an, ad), Repr::Small(bn, bd)) => {
                if let (Some(l), Some(r)) = (an.checked_mul(*bd), bn.checked_mul(*ad)) {
                    return l.cmp(&r);
                }
                self.to_rug().cmp(&other.to_rug())
            }
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
            _ => self.to_rug().cmp(&other.to_rug()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Rational {
    fn default() -> Rational {
        Rational::zero()
    }
}

fn add_ref(a: &Rational, b: &Rational) -> Rational {
    if let (Repr::Small(an, ad), Repr::Small(bn, bd)) = (&a.0, &b.0) {
        if let Some((n, d)) = small_add(*an, *ad, *bn, *bd) {
            return Rational::small(n, d);
        }
    }
    Rational::from_rug(a.to_rug() + b.to_rug())
}

fn sub_ref(a: &Rational, b: &Rational) -> Rational {
    if let (Repr::Small(an, ad), Repr::Small(bn, bd)) = (&a.0, &b.0) {
        if let Some((n, d)) = bn.checked_neg().and_then(|nb| small_add(*an, *ad, nb, *bd)) {
            return Rational::small(n, d);
        }
    }
    Rational::from_rug(a.to_rug() - b.to_rug())
}

fn mul_ref(a: &Rational, b: &Rational) -> Rational {
    if let (Repr::Small(an, ad), Repr::Small(bn, bd)) = (&a.0, &b.0) {
        if let Some((n, d)) = small_mul(*an, *ad, *bn, *bd) {
            return Rational::small(n, d);
        }
    }
    Rational::from_rug(a.to_rug() * b.to_rug())
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $func:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $func(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $func(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        mul_ref(&self, &rhs.recip())
    }
}

impl<'a> Div<&'a Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        mul_ref(self, &rhs.recip())
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::small(m, *d),
                None => Rational::from_rug(-self.to_rug()),
            },
            Repr::Big(r) => Rational::from_rug(rug::Rational::from(-&**r)),
        }
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = add_ref(self, rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = sub_ref(self, rhs);
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = mul_ref(self, rhs);
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rational::new(4, -6);
        assert_eq!(r, Rational::new(-2, 3));
        assert_eq!(r.to_string(), "-2/3");
        assert!(r.denom() > BigInt::zero());
        assert_eq!(Rational::new(7, 1).to_string(), "7");
    }

    #[test]
    fn arithmetic() {
        let a = Rational::new(1, 2);
        let b = Rational::new(1, 3);
        assert_eq!(&a + &b, Rational::new(5, 6));
        assert_eq!(&a - &b, Rational::new(1, 6));
        assert_eq!(&a * &b, Rational::new(1, 6));
        assert_eq!(&a / &b, Rational::new(3, 2));
        assert_eq!(a.pow(-2), Rational::from_int(4));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "3/4", "-22/7"] {
            let r = Rational::parse(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(Rational::parse("4/6").unwrap().to_string(), "2/3");
        assert!(Rational::parse("1/0").is_none());
        assert!(Rational::parse("x").is_none());
    }

    #[test]
    fn promotion_and_demotion() {
        // 2^128 does not fit i128: forces the big representation.
        let two = Rational::from_int(2);
        let huge = two.pow(128);
        assert!(matches!(huge.0, Repr::Big(_)));
        // Dividing back down demotes to the machine representation.
        let back = &huge * &Rational::from_int(2).pow(-125);
        assert_eq!(back, Rational::from_int(8));
        assert!(matches!(back.0, Repr::Small(8, 1)));
        // Mixed-representation arithmetic and comparison stay exact.
        let sum = &huge + &Rational::new(1, 3);
        assert_eq!(&sum - &huge, Rational::new(1, 3));
        assert!(huge > back);
        assert!(-&huge < back);
    }

    #[test]
    fn overflow_boundary_addition() {
        // Denominators near the i128 limit promote rather than wrap.
        let a = Rational::from_big(BigInt::from(1), BigInt::from(i128::MAX));
        let b = Rational::from_big(BigInt::from(1), BigInt::from(i128::MAX - 1));
        let sum = &a + &b;
        let expected = Rational::from_big(
            BigInt::from(i128::MAX) + BigInt::from(i128::MAX - 1),
            BigInt::from(i128::MAX) * BigInt::from(i128::MAX - 1),
        );
        assert_eq!(sum, expected);
        assert_eq!(&sum - &b, a);
        // Round-trip through the big-integer accessors stays exact.
        assert_eq!(Rational::from_big(sum.numer(), sum.denom()), sum);
    }

    #[test]
    fn big_display_and_parse() {
        let huge = Rational::from_int(3).pow(100) / Rational::from_int(2).pow(101);
        let s = huge.to_string();
        assert_eq!(Rational::parse(&s).unwrap(), huge);
    }
}
