//! Lexer and recursive-descent parser for the expression language. Errors
//! carry line and column. The exponent grammar is restricted at parse time:
//! `INT`, `-INT`, or a parenthesized signed rational whose denominator is 1
//! or 2, so non-half-integer exponents are rejected as syntax errors.

use std::fmt;

use tate_core::scalars::{Half, Rational};

use crate::ast::{call_arity, Expr};

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) => write!(f, "number '{s}'"),
            Tok::Name(s) => write!(f, "name '{s}'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = match c {
            '+' => {
                bump(&mut chars);
                Tok::Plus
            }
            '-' => {
                bump(&mut chars);
                Tok::Minus
            }
            '*' => {
                bump(&mut chars);
                Tok::Star
            }
            '/' => {
                bump(&mut chars);
                Tok::Slash
            }
            '^' => {
                bump(&mut chars);
                Tok::Caret
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            d if d.is_ascii_digit() => {
                let mut s = String::new();
                while matches!(chars.peek(), Some(c) if c.is_ascii_digit()) {
                    s.push(bump(&mut chars));
                }
                Tok::Int(s)
            }
            a if a.is_ascii_alphabetic() => {
                let mut s = String::new();
                while matches!(chars.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    s.push(bump(&mut chars));
                }
                Tok::Name(s)
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    msg: format!("unexpected character '{other}'"),
                });
            }
        };
        out.push(Spanned { tok, line: tline, col: tcol });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, at: &Spanned, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line: at.line, col: at.col, msg: msg.into() })
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == want {
            Ok(())
        } else {
            self.err(&t, format!("expected {want}, found {}", t.tok))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.next();
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let h = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), h));
        }
        Ok(base)
    }

    /// exponent := INT | '-' INT | '(' '-'? INT ('/' INT)? ')'
    /// The denominator must be 1 or 2: exponents are half-integers.
    fn exponent(&mut self) -> Result<Half, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => self.half_from(&t, s, false, None),
            Tok::Minus => {
                let n = self.next();
                match &n.tok {
                    Tok::Int(s) => self.half_from(&n, s, true, None),
                    other => self.err(&n, format!("expected a number after '-', found {other}")),
                }
            }
            Tok::LParen => {
                let negative = if self.peek().tok == Tok::Minus {
                    self.next();
                    true
                } else {
                    false
                };
                let n = self.next();
                let num = match &n.tok {
                    Tok::Int(s) => s.clone(),
                    other => return self.err(&n, format!("expected a number, found {other}")),
                };
                let den = if self.peek().tok == Tok::Slash {
                    self.next();
                    let d = self.next();
                    match &d.tok {
                        Tok::Int(s) => Some((d.clone(), s.clone())),
                        other => {
                            return self.err(&d, format!("expected a denominator, found {other}"))
                        }
                    }
                } else {
                    None
                };
                self.expect(Tok::RParen)?;
                self.half_from(&n, &num, negative, den)
            }
            other => self.err(&t, format!("expected an exponent, found {other}")),
        }
    }

    fn half_from(
        &self,
        at: &Spanned,
        num: &str,
        negative: bool,
        den: Option<(Spanned, String)>,
    ) -> Result<Half, ParseError> {
        let n: i64 = match num.parse() {
            Ok(n) => n,
            Err(_) => return self.err(at, "exponent out of range"),
        };
        let doubled = match den {
            None => 2 * n,
            Some((dat, ds)) => match ds.as_str() {
                "1" => 2 * n,
                "2" => {
                    if n % 2 == 0 {
                        return self.err(
                            &dat,
                            "write half-integer exponents in lowest terms (odd/2)",
                        );
                    }
                    n
                }
                _ => {
                    return self.err(&dat, "exponent is not a half-integer");
                }
            },
        };
        Ok(Half(if negative { -doubled } else { doubled }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => match Rational::parse(s) {
                Some(q) => Ok(Expr::Lit(q)),
                None => self.err(&t, "malformed number"),
            },
            Tok::Name(name) => {
                if self.peek().tok == Tok::LParen {
                    let arity = match call_arity(name) {
                        Some(a) => a,
                        None => return self.err(&t, format!("unknown function '{name}'")),
                    };
                    self.next();
                    let mut args = Vec::new();
                    if self.peek().tok != Tok::RParen {
                        args.push(self.expr()?);
                        while self.peek().tok == Tok::Comma {
                            self.next();
                            args.push(self.expr()?);
                        }
                    }
                    self.expect(Tok::RParen)?;
                    if args.len() != arity {
                        return self.err(
                            &t,
                            format!(
                                "'{name}' takes {arity} argument{}, found {}",
                                if arity == 1 { "" } else { "s" },
                                args.len()
                            ),
                        );
                    }
                    Ok(Expr::Call(name.clone(), args))
                } else {
                    Ok(Expr::Sym(name.clone()))
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => self.err(&t, format!("expected a value, found {other}")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, format!("unexpected {}", t.tok));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(src: &str) -> String {
        parse(src).unwrap().render()
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(round_trip("e^-1 + 2*e"), "e^(-1) + 2*e");
        assert_eq!(round_trip("res(e^2 * I(e^-3))"), "res(e^2*I(e^(-3)))");
        assert_eq!(round_trip("x^(3/2)"), "x^(3/2)");
        assert_eq!(round_trip("-(a + b)*c"), "-(a + b)*c");
        assert_eq!(round_trip("1/2"), "1/2");
        assert_eq!(round_trip("comp( e , x^2 )"), "comp(e, x^2)");
    }

    #[test]
    fn render_parse_is_idempotent() {
        for src in [
            "e^-1 + 2*e",
            "res(e^2 * I(e^-3))",
            "inv(1 - e)",
            "d(dp(1/2))",
            "O(e^7) + e^(-3/2)",
            "-3*e/(1 + e)",
            "gamma(5/2) - 1",
        ] {
            let once = parse(src).unwrap();
            let twice = parse(&once.render()).unwrap();
            assert_eq!(once, twice, "round trip differs for {src}");
            assert_eq!(once.render(), twice.render());
        }
    }

    #[test]
    fn rejects_non_half_exponents() {
        let err = parse("x^(1/3)").unwrap_err();
        assert!(err.msg.contains("not a half-integer"), "got: {}", err.msg);
        assert_eq!((err.line, err.col), (1, 6));
    }

    #[test]
    fn rejects_unknown_functions_and_arity() {
        assert!(parse("foo(1)").unwrap_err().msg.contains("unknown function"));
        assert!(parse("comp(e)").unwrap_err().msg.contains("takes 2 arguments"));
        assert!(parse("res(e, e)").unwrap_err().msg.contains("takes 1 argument"));
    }

    #[test]
    fn error_positions() {
        let err = parse("1 +\n* 2").unwrap_err();
        assert_eq!((err.line, err.col), (2, 1));
        let err2 = parse("e^").unwrap_err();
        assert_eq!(err2.line, 1);
    }
}
