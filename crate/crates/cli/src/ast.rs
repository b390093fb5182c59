//! The expression language: abstract syntax and the canonical renderer.
//!
//! Precedence, tightest first: `^`, unary `-`, `* /`, `+ -`. Exponents are
//! half-integers; negative or fractional exponents render inside parentheses,
//! so rendering always re-parses to an identical tree.

use std::fmt;

use tate_core::scalars::{Half, Rational};

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    /// A non-negative integer literal (signs come from `Neg`).
    Lit(Rational),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Half),
    Call(String, Vec<Expr>),
}

/// The known calls with their arities; anything else is a syntax error.
pub const CALLS: &[(&str, usize)] = &[
    ("d", 1),
    ("res", 1),
    ("comp", 2),
    ("inv", 1),
    ("cinv", 1),
    ("gamma", 1),
    ("dp", 1),
    ("embed", 1),
    ("I", 1),
    ("O", 1),
    ("symp", 2),
    ("angle", 2),
];

pub fn call_arity(name: &str) -> Option<usize> {
    CALLS.iter().find(|(n, _)| *n == name).map(|(_, a)| *a)
}

const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => PREC_ADD,
            Expr::Mul(..) | Expr::Div(..) => PREC_MUL,
            Expr::Neg(..) => PREC_NEG,
            Expr::Pow(..) => PREC_POW,
            Expr::Lit(..) | Expr::Sym(..) | Expr::Call(..) => PREC_ATOM,
        }
    }

    fn render_at(&self, out: &mut String, min_prec: u8) {
        let me = self.prec();
        if me < min_prec {
            out.push('(');
            self.render_at(out, 0);
            out.push(')');
            return;
        }
        match self {
            Expr::Lit(q) => out.push_str(&q.to_string()),
            Expr::Sym(s) => out.push_str(s),
            Expr::Neg(a) => {
                out.push('-');
                a.render_at(out, PREC_NEG);
            }
            Expr::Add(a, b) => {
                a.render_at(out, PREC_ADD);
                out.push_str(" + ");
                b.render_at(out, PREC_ADD + 1);
            }
            Expr::Sub(a, b) => {
                a.render_at(out, PREC_ADD);
                out.push_str(" - ");
                b.render_at(out, PREC_ADD + 1);
            }
            Expr::Mul(a, b) => {
                a.render_at(out, PREC_MUL);
                out.push('*');
                b.render_at(out, PREC_MUL + 1);
            }
            Expr::Div(a, b) => {
                a.render_at(out, PREC_MUL);
                out.push('/');
                b.render_at(out, PREC_MUL + 1);
            }
            Expr::Pow(base, h) => {
                base.render_at(out, PREC_ATOM);
                out.push('^');
                match h.as_integer() {
                    Some(k) if k >= 0 => out.push_str(&k.to_string()),
                    _ => {
                        out.push('(');
                        out.push_str(&h.to_string());
                        out.push(')');
                    }
                }
            }
            Expr::Call(name, args) => {
                out.push_str(name);
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    a.render_at(out, 0);
                }
                out.push(')');
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_at(&mut out, 0);
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
