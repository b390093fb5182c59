//! Evaluation of expressions over a pluggable coefficient ring. A value is a
//! scalar or a series; scalars promote to constant series when mixed.
//! Ring-specific symbols (eps, pi, CPn) and calls (gamma, dp, embed) are
//! supplied through a hook trait, so the evaluator itself stays generic.

use tate_core::error::{Error, Result};
use tate_core::fgl::FormalGroup;
use tate_core::scalars::{CoefficientRing, Half};
use tate_core::series::{Head, LaurentSeries};
use tate_core::symplectic::{involution, symp};

use crate::ast::Expr;

#[derive(Clone, Debug)]
pub enum Value<R: CoefficientRing> {
    Scalar(R::Elem),
    Series(LaurentSeries<R>),
}

impl<R: CoefficientRing> Value<R> {
    pub fn to_series(&self, ring: &R) -> LaurentSeries<R> {
        match self {
            Value::Scalar(c) => LaurentSeries::constant(ring.clone(), c.clone()),
            Value::Series(s) => s.clone(),
        }
    }
}

pub trait RingHooks<R: CoefficientRing> {
    fn symbol(&self, _name: &str) -> Option<Value<R>> {
        None
    }
    fn call(&self, _name: &str, _args: &[Value<R>], _cap: Head) -> Option<Result<Value<R>>> {
        None
    }
}

/// Hooks for rings with no extra symbols or calls.
pub struct NoHooks;
impl<R: CoefficientRing> RingHooks<R> for NoHooks {}

pub struct EvalCtx<'a, R: CoefficientRing> {
    pub ring: R,
    pub law: Option<&'a FormalGroup<R>>,
    pub cap: Head,
    pub hooks: &'a dyn RingHooks<R>,
}

impl<'a, R: CoefficientRing> EvalCtx<'a, R> {
    fn unknown(&self, what: &str, name: &str) -> Error {
        Error::InvalidArgument(format!("{what} '{name}' is not available over {}", self.ring.name()))
    }
}

pub fn eval<R: CoefficientRing>(e: &Expr, ctx: &EvalCtx<R>) -> Result<Value<R>> {
    match e {
        Expr::Lit(q) => Ok(Value::Scalar(ctx.ring.from_rational(q))),
        Expr::Sym(name) => match name.as_str() {
            "e" | "x" => Ok(Value::Series(LaurentSeries::generator(ctx.ring.clone()))),
            "sqrtx" => Ok(Value::Series(LaurentSeries::monomial(
                ctx.ring.clone(),
                ctx.ring.one(),
                Half(1),
            ))),
            _ => ctx
                .hooks
                .symbol(name)
                .ok_or_else(|| ctx.unknown("symbol", name)),
        },
        Expr::Neg(a) => Ok(match eval(a, ctx)? {
            Value::Scalar(c) => Value::Scalar(ctx.ring.neg(&c)),
            Value::Series(s) => Value::Series(s.neg()),
        }),
        Expr::Add(a, b) => binary(ctx, a, b, |r, x, y| Ok(r.add(x, y)), |x, y| x.add(y)),
        Expr::Sub(a, b) => binary(ctx, a, b, |r, x, y| Ok(r.sub(x, y)), |x, y| x.sub(y)),
        Expr::Mul(a, b) => binary(ctx, a, b, |r, x, y| Ok(r.mul(x, y)), |x, y| x.mul(y)),
        Expr::Div(a, b) => {
            let num = eval(a, ctx)?;
            let den = eval(b, ctx)?;
            match (&num, &den) {
                (Value::Scalar(x), Value::Scalar(y)) => {
                    Ok(Value::Scalar(ctx.ring.mul(x, &ctx.ring.inv(y)?)))
                }
                _ => {
                    let inv = den.to_series(&ctx.ring).mul_inverse(ctx.cap)?;
                    Ok(Value::Series(num.to_series(&ctx.ring).mul(&inv)?))
                }
            }
        }
        Expr::Pow(base, h) => pow(ctx, base, *h),
        Expr::Call(name, args) => call(ctx, name, args),
    }
}

fn binary<R: CoefficientRing>(
    ctx: &EvalCtx<R>,
    a: &Expr,
    b: &Expr,
    on_scalars: impl Fn(&R, &R::Elem, &R::Elem) -> Result<R::Elem>,
    on_series: impl Fn(&LaurentSeries<R>, &LaurentSeries<R>) -> Result<LaurentSeries<R>>,
) -> Result<Value<R>> {
    let x = eval(a, ctx)?;
    let y = eval(b, ctx)?;
    match (&x, &y) {
        (Value::Scalar(p), Value::Scalar(q)) => Ok(Value::Scalar(on_scalars(&ctx.ring, p, q)?)),
        _ => Ok(Value::Series(on_series(
            &x.to_series(&ctx.ring),
            &y.to_series(&ctx.ring),
        )?)),
    }
}

fn pow<R: CoefficientRing>(ctx: &EvalCtx<R>, base: &Expr, h: Half) -> Result<Value<R>> {
    let b = eval(base, ctx)?;
    if let Some(k) = h.as_integer() {
        return match b {
            Value::Scalar(c) => {
                if k >= 0 {
                    let mut acc = ctx.ring.one();
                    for _ in 0..k {
                        acc = ctx.ring.mul(&acc, &c);
                    }
                    Ok(Value::Scalar(acc))
                } else {
                    let inv = ctx.ring.inv(&c)?;
                    let mut acc = ctx.ring.one();
                    for _ in 0..(-k) {
                        acc = ctx.ring.mul(&acc, &inv);
                    }
                    Ok(Value::Scalar(acc))
                }
            }
            Value::Series(s) => Ok(Value::Series(s.pow_int(k, ctx.cap)?)),
        };
    }
    // fractional exponent: only monomials with unit coefficient support it
    let s = b.to_series(&ctx.ring);
    if s.head() != Head::Inf || s.num_terms() != 1 {
        return Err(Error::InvalidArgument(
            "fractional powers need an exact single-term base".into(),
        ));
    }
    let (e, c) = s.terms().next().expect("one term");
    if *c != ctx.ring.one() {
        return Err(Error::InvalidArgument(
            "fractional powers need a coefficient-one base".into(),
        ));
    }
    let doubled = e.0 * h.0;
    if doubled % 2 != 0 {
        return Err(Error::NotIntegral(Half(doubled)));
    }
    Ok(Value::Series(LaurentSeries::monomial(
        ctx.ring.clone(),
        ctx.ring.one(),
        Half(doubled / 2),
    )))
}

fn call<R: CoefficientRing>(ctx: &EvalCtx<R>, name: &str, args: &[Expr]) -> Result<Value<R>> {
    // O(sym^h) is structural: it does not evaluate its argument
    if name == "O" {
        let h = match &args[0] {
            Expr::Pow(b, h) if matches!(&**b, Expr::Sym(s) if s == "e" || s == "x") => *h,
            Expr::Sym(s) if s == "e" || s == "x" => Half::ONE,
            _ => {
                return Err(Error::InvalidArgument(
                    "O takes a power of the series variable, like O(e^7)".into(),
                ));
            }
        };
        return Ok(Value::Series(
            LaurentSeries::zero(ctx.ring.clone()).truncated_to(Head::At(h)),
        ));
    }
    let vals: Vec<Value<R>> = args
        .iter()
        .map(|a| eval(a, ctx))
        .collect::<Result<_>>()?;
    if let Some(res) = ctx.hooks.call(name, &vals, ctx.cap) {
        return res;
    }
    match name {
        "d" => Ok(Value::Series(vals[0].to_series(&ctx.ring).derivative())),
        "res" => Ok(Value::Scalar(vals[0].to_series(&ctx.ring).residue()?)),
        "comp" => Ok(Value::Series(
            vals[0]
                .to_series(&ctx.ring)
                .compose(&vals[1].to_series(&ctx.ring), ctx.cap)?,
        )),
        "inv" => match &vals[0] {
            Value::Scalar(c) => Ok(Value::Scalar(ctx.ring.inv(c)?)),
            Value::Series(s) => Ok(Value::Series(s.mul_inverse(ctx.cap)?)),
        },
        "cinv" => Ok(Value::Series(
            vals[0].to_series(&ctx.ring).comp_inverse(Half::ONE, ctx.cap)?,
        )),
        "I" => {
            let law = ctx
                .law
                .ok_or_else(|| ctx.unknown("call", "I"))?;
            Ok(Value::Series(involution(
                law,
                &vals[0].to_series(&ctx.ring),
                ctx.cap,
            )?))
        }
        "symp" => {
            let law = ctx
                .law
                .ok_or_else(|| ctx.unknown("call", "symp"))?;
            Ok(Value::Scalar(symp(
                law,
                &vals[0].to_series(&ctx.ring),
                &vals[1].to_series(&ctx.ring),
            )?))
        }
        _ => Err(ctx.unknown("call", name)),
    }
}
