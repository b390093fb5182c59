//! Expression evaluation in the polynomial Fock model: symbols t0, t1, ...
//! over the rationals, with +, -, *, non-negative integer powers, and
//! division by scalars only.

use tate_core::error::{Error, Result};
use tate_core::fock::FockPoly;
use tate_core::scalars::Rational;

use crate::ast::Expr;

fn as_constant(p: &FockPoly) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    if p.num_terms() == 1 {
        let (m, c) = p.terms().next().expect("one term");
        if m.is_empty() {
            return Some(c.clone());
        }
    }
    None
}

pub fn eval_fock(e: &Expr) -> Result<FockPoly> {
    match e {
        Expr::Lit(q) => Ok(FockPoly::constant(q.clone())),
        Expr::Sym(name) => name
            .strip_prefix('t')
            .and_then(|d| d.parse::<u32>().ok())
            .map(FockPoly::gen)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown symbol '{name}' in a Fock polynomial (expected t0, t1, ...)"
                ))
            }),
        Expr::Neg(a) => Ok(eval_fock(a)?.neg()),
        Expr::Add(a, b) => Ok(eval_fock(a)?.add(&eval_fock(b)?)),
        Expr::Sub(a, b) => Ok(eval_fock(a)?.sub(&eval_fock(b)?)),
        Expr::Mul(a, b) => Ok(eval_fock(a)?.mul(&eval_fock(b)?)),
        Expr::Div(a, b) => {
            let num = eval_fock(a)?;
            let den = eval_fock(b)?;
            let c = as_constant(&den).ok_or_else(|| {
                Error::InvalidArgument("Fock polynomials divide by scalars only".into())
            })?;
            if c.is_zero() {
                return Err(Error::NotAUnit("0".into()));
            }
            Ok(num.scale(&c.recip()))
        }
        Expr::Pow(a, h) => {
            let k = h.as_integer().filter(|k| *k >= 0).ok_or_else(|| {
                Error::InvalidArgument(
                    "Fock polynomial powers must be non-negative integers".into(),
                )
            })?;
            let base = eval_fock(a)?;
            let mut acc = FockPoly::one();
            for _ in 0..k {
                acc = acc.mul(&base);
            }
            Ok(acc)
        }
        Expr::Call(name, _) => Err(Error::InvalidArgument(format!(
            "call '{name}' is not available in Fock polynomials"
        ))),
    }
}
