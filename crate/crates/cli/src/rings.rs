//! Ring selection, per-ring symbol/call hooks, and the command drivers that
//! are generic over the coefficient ring. Output carries both the canonical
//! text rendering and a JSON value so the front end can choose either.

use std::fmt;
use std::str::FromStr;

use serde_json::json;
use tate_core::autgroup::{double_cover, witt_apply, NilLaurentAut};
use tate_core::error::Error;
use tate_core::fgl::{additive, mishchenko, FormalGroup};
use tate_core::scalars::{
    gamma_value, CoefficientRing, Half, MultiPolyRing, NilpotentRing, PiHalfRing, PiHalfScalar,
    RationalField, Rational,
};
use tate_core::series::{Head, LaurentSeries};
use tate_core::symplectic::{divided_power, embed_half, form_angle, residue_pairing, symp};

use crate::ast::Expr;
use crate::eval::{eval, EvalCtx, NoHooks, RingHooks, Value};
use crate::parser::{parse, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Rational,
    PiHalf,
    Nil(usize),
    Mu(usize),
}

impl FromStr for RingSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "rational" {
            return Ok(RingSpec::Rational);
        }
        if s == "pihalf" {
            return Ok(RingSpec::PiHalf);
        }
        if let Some(rest) = s.strip_prefix("nil:") {
            let n: usize = rest
                .parse()
                .map_err(|_| format!("bad nilpotency degree '{rest}'"))?;
            if n < 2 {
                return Err("nil:N needs N >= 2 (eps^N = 0 with eps nonzero)".into());
            }
            return Ok(RingSpec::Nil(n));
        }
        if let Some(rest) = s.strip_prefix("mu:") {
            let n: usize = rest
                .parse()
                .map_err(|_| format!("bad logarithm length '{rest}'"))?;
            if n < 1 {
                return Err("mu:N needs N >= 1".into());
            }
            return Ok(RingSpec::Mu(n));
        }
        Err(format!(
            "unknown ring '{s}' (expected rational | pihalf | nil:N | mu:N)"
        ))
    }
}

/// CLI-level error with the exit code it maps to: usage/parse failures exit
/// 2, runtime (math) failures exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Run(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Run(e) => write!(f, "error: {e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Run(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Run(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::Parse(e)
    }
}

/// What a command hands back: canonical text, a JSON value, and a status
/// (0 unless the command is a check that found a failure).
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub status: u8,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Output {
        Output { text, json, status: 0 }
    }
}

// ---------------------------------------------------------------------------
// Per-ring hooks
// ---------------------------------------------------------------------------

fn scalar_half(v: &Value<PiHalfRing>, what: &str) -> Result<Half, Error> {
    let q = match v {
        Value::Scalar(c) => c.as_rational(),
        Value::Series(_) => None,
    };
    let q = q.ok_or_else(|| Error::InvalidArgument(format!("{what} needs a rational scalar")))?;
    q.as_half()
        .ok_or_else(|| Error::InvalidArgument(format!("{what} needs a half-integer argument")))
}

pub struct PiHooks;

impl RingHooks<PiHalfRing> for PiHooks {
    fn symbol(&self, name: &str) -> Option<Value<PiHalfRing>> {
        match name {
            "pi" => Some(Value::Scalar(PiHalfScalar::monomial(
                Rational::one(),
                Half::int(1),
            ))),
            "sqrtpi" => Some(Value::Scalar(PiHalfScalar::monomial(
                Rational::one(),
                Half(1),
            ))),
            _ => None,
        }
    }

    fn call(
        &self,
        name: &str,
        args: &[Value<PiHalfRing>],
        _cap: Head,
    ) -> Option<Result<Value<PiHalfRing>, Error>> {
        match name {
            "gamma" => Some(scalar_half(&args[0], "gamma").and_then(|h| {
                gamma_value(h).map(Value::Scalar)
            })),
            "dp" => Some(scalar_half(&args[0], "dp").map(|h| Value::Series(divided_power(h)))),
            "embed" => Some(match &args[0] {
                Value::Series(s) => embed_half(s).map(Value::Series),
                Value::Scalar(_) => Err(Error::InvalidArgument(
                    "embed needs a series argument".into(),
                )),
            }),
            "angle" => {
                let ring = PiHalfRing;
                let u = args[0].to_series(&ring);
                let v = args[1].to_series(&ring);
                Some(form_angle(&u, &v).map(Value::Scalar))
            }
            _ => None,
        }
    }
}

pub struct NilHooks {
    ring: NilpotentRing,
}

impl RingHooks<NilpotentRing> for NilHooks {
    fn symbol(&self, name: &str) -> Option<Value<NilpotentRing>> {
        if name == "eps" {
            Some(Value::Scalar(self.ring.eps()))
        } else {
            None
        }
    }
}

pub struct MuHooks {
    ring: MultiPolyRing,
}

impl RingHooks<MultiPolyRing> for MuHooks {
    fn symbol(&self, name: &str) -> Option<Value<MultiPolyRing>> {
        let i = self.ring.gen_index(name)?;
        Some(Value::Scalar(self.ring.generator(i)))
    }
}

// ---------------------------------------------------------------------------
// Environment: ring + formal group + hooks + generator symbol
// ---------------------------------------------------------------------------

pub struct Env<R: CoefficientRing> {
    pub ring: R,
    pub law: FormalGroup<R>,
    pub sym: &'static str,
    pub hooks: Box<dyn RingHooks<R>>,
}

pub fn rational_env() -> Env<RationalField> {
    Env {
        ring: RationalField,
        law: additive(RationalField),
        sym: "e",
        hooks: Box::new(NoHooks),
    }
}

pub fn pihalf_env() -> Env<PiHalfRing> {
    Env {
        ring: PiHalfRing,
        law: additive(PiHalfRing),
        sym: "x",
        hooks: Box::new(PiHooks),
    }
}

pub fn nil_env(degree: usize) -> Env<NilpotentRing> {
    let ring = NilpotentRing::new(degree);
    Env {
        ring: ring.clone(),
        law: additive(ring.clone()),
        sym: "e",
        hooks: Box::new(NilHooks { ring }),
    }
}

pub fn mu_env(n: usize) -> Result<Env<MultiPolyRing>, CliError> {
    let law = mishchenko(n)?;
    let ring = law.ring().clone();
    Ok(Env {
        ring: ring.clone(),
        law,
        sym: "e",
        hooks: Box::new(MuHooks { ring }),
    })
}

impl<R: CoefficientRing> Env<R> {
    fn ctx(&self, cap: Head) -> EvalCtx<'_, R> {
        EvalCtx {
            ring: self.ring.clone(),
            law: Some(&self.law),
            cap,
            hooks: self.hooks.as_ref(),
        }
    }

    pub fn eval_str(&self, src: &str, cap: Head) -> Result<Value<R>, CliError> {
        let expr = parse(src)?;
        Ok(eval(&expr, &self.ctx(cap))?)
    }

    pub fn eval_expr(&self, expr: &Expr, cap: Head) -> Result<Value<R>, CliError> {
        Ok(eval(expr, &self.ctx(cap))?)
    }

    fn series(&self, src: &str, cap: Head) -> Result<LaurentSeries<R>, CliError> {
        Ok(self.eval_str(src, cap)?.to_series(&self.ring))
    }

    pub fn scalar_output(&self, c: &R::Elem) -> Output {
        let text = self.ring.render(c);
        let json = json!({
            "kind": "scalar",
            "ring": self.ring.name(),
            "value": text,
        });
        Output::ok(text, json)
    }

    pub fn series_output(&self, s: &LaurentSeries<R>) -> Output {
        let terms: Vec<serde_json::Value> = s
            .terms()
            .map(|(e, c)| json!([e.to_string(), self.ring.render(c)]))
            .collect();
        let head = match s.head() {
            Head::Inf => serde_json::Value::Null,
            Head::At(h) => json!(h.to_string()),
        };
        let json = json!({
            "kind": "series",
            "ring": self.ring.name(),
            "sym": self.sym,
            "terms": terms,
            "head": head,
        });
        Output::ok(s.render(self.sym), json)
    }

    pub fn value_output(&self, v: &Value<R>) -> Output {
        match v {
            Value::Scalar(c) => self.scalar_output(c),
            Value::Series(s) => self.series_output(s),
        }
    }

    // -- command drivers ----------------------------------------------------

    pub fn cmd_eval(&self, src: &str, cap: Head) -> Result<Output, CliError> {
        let v = self.eval_str(src, cap)?;
        Ok(self.value_output(&v))
    }

    pub fn cmd_residue(&self, src: &str, cap: Head) -> Result<Output, CliError> {
        let s = self.series(src, cap)?;
        Ok(self.scalar_output(&s.residue()?))
    }

    pub fn cmd_boundary(&self, src: &str, cap: Head) -> Result<Output, CliError> {
        let s = self.series(src, cap)?;
        Ok(self.scalar_output(&self.law.boundary(&s)?))
    }

    pub fn cmd_pair(&self, f: &str, g: &str, cap: Head) -> Result<Output, CliError> {
        let fs = self.series(f, cap)?;
        let gs = self.series(g, cap)?;
        Ok(self.scalar_output(&residue_pairing(&fs, &gs)?))
    }

    pub fn cmd_symp(&self, f: &str, g: &str, cap: Head) -> Result<Output, CliError> {
        let fs = self.series(f, cap)?;
        let gs = self.series(g, cap)?;
        Ok(self.scalar_output(&symp(&self.law, &fs, &gs)?))
    }

    pub fn cmd_act(&self, g: &str, f: &str, cap: Head) -> Result<Output, CliError> {
        let el = NilLaurentAut::new(self.series(g, cap)?)?;
        let fs = self.series(f, cap)?;
        Ok(self.series_output(&el.act(&fs, cap)?))
    }

    pub fn cmd_ginv(&self, g: &str, cap: Head) -> Result<Output, CliError> {
        let el = NilLaurentAut::new(self.series(g, cap)?)?;
        Ok(self.series_output(el.inverse(cap)?.series()))
    }

    pub fn cmd_gcomp(&self, g: &str, h: &str, cap: Head) -> Result<Output, CliError> {
        let ge = NilLaurentAut::new(self.series(g, cap)?)?;
        let he = NilLaurentAut::new(self.series(h, cap)?)?;
        Ok(self.series_output(ge.compose(&he, cap)?.series()))
    }

    pub fn cmd_witt(&self, k: i64, f: &str, cap: Head) -> Result<Output, CliError> {
        let fs = self.series(f, cap)?;
        Ok(self.series_output(&witt_apply(k, &fs)))
    }

    pub fn cmd_cover(&self, g: &str, cap: Head) -> Result<Output, CliError> {
        let odd = self.series(g, cap)?;
        Ok(self.series_output(double_cover(&odd)?.series()))
    }
}
