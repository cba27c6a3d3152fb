//! Boundary-data expressions in `x` and `y`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' int)?
//! base   := number | 'x' | 'y' | fn '(' expr ')' | zfn '(' int ')' | '(' expr ')'
//! fn     := sin | cos | exp
//! zfn    := re_zn | im_zn          (real/imaginary part of (x + iy)ⁿ)
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x²)`.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Y,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
    ReZn(i32),
    ImZn(i32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset of the offending token.
    pub offset: usize,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected {}", self.offset, self.expected.join(" or "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite result")]
    NonFinite,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&mut self, expected: &[&'static str]) -> Result<T, ParseError> {
        self.skip_ws();
        Err(ParseError { offset: self.pos, expected: expected.to_vec() })
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, name: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&[name])
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.eat(b'^') {
            let n = self.int()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<i32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat(b'-');
        self.skip_ws();
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return self.err(&["integer"]);
        }
        let text = std::str::from_utf8(&self.src[digits..self.pos]).unwrap();
        match text.parse::<i32>() {
            Ok(v) => Ok(if neg { -v } else { v }),
            Err(_) => Err(ParseError { offset: start, expected: vec!["integer"] }),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let s = self.src;
        let digits = |p: &mut usize| {
            let b = *p;
            while *p < s.len() && s[*p].is_ascii_digit() {
                *p += 1;
            }
            *p > b
        };
        let mut p = self.pos;
        let mut any = digits(&mut p);
        if p < s.len() && s[p] == b'.' {
            p += 1;
            any |= digits(&mut p);
        }
        if !any {
            return self.err(&["number"]);
        }
        if p < s.len() && (s[p] == b'e' || s[p] == b'E') {
            let mut q = p + 1;
            if q < s.len() && (s[q] == b'+' || s[q] == b'-') {
                q += 1;
            }
            if digits(&mut q) {
                p = q;
            }
        }
        let text = std::str::from_utf8(&s[start..p]).unwrap();
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos = p;
                Ok(Expr::Num(v))
            }
            _ => Err(ParseError { offset: start, expected: vec!["finite number"] }),
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        const BASE: &[&str] = &["number", "x", "y", "sin", "cos", "exp", "re_zn", "im_zn", "("];
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')', ")")?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident();
                match name {
                    "x" => Ok(Expr::X),
                    "y" => Ok(Expr::Y),
                    "sin" | "cos" | "exp" => {
                        self.expect(b'(', "(")?;
                        let arg = Box::new(self.expr()?);
                        self.expect(b')', ")")?;
                        Ok(match name {
                            "sin" => Expr::Sin(arg),
                            "cos" => Expr::Cos(arg),
                            _ => Expr::Exp(arg),
                        })
                    }
                    "re_zn" | "im_zn" => {
                        self.expect(b'(', "(")?;
                        let n = self.int()?;
                        self.expect(b')', ")")?;
                        Ok(if name == "re_zn" { Expr::ReZn(n) } else { Expr::ImZn(n) })
                    }
                    _ => Err(ParseError { offset: start, expected: BASE.to_vec() }),
                }
            }
            _ => self.err(BASE),
        }
    }
}

/// Parses a complete expression; trailing input is an error.
pub fn parse_boundary_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err(&["+", "-", "*", "/", "^", "end of input"]);
    }
    Ok(e)
}

impl Expr {
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Num(v) => *v,
            Expr::X => x,
            Expr::Y => y,
            Expr::Neg(a) => -a.eval(x, y)?,
            Expr::Add(a, b) => a.eval(x, y)? + b.eval(x, y)?,
            Expr::Sub(a, b) => a.eval(x, y)? - b.eval(x, y)?,
            Expr::Mul(a, b) => a.eval(x, y)? * b.eval(x, y)?,
            Expr::Div(a, b) => {
                let d = b.eval(x, y)?;
                if d == 0.0 {
                    return Err(EvalError::DivisionByZero);
                }
                a.eval(x, y)? / d
            }
            Expr::Pow(a, n) => {
                let b = a.eval(x, y)?;
                if b == 0.0 && *n < 0 {
                    return Err(EvalError::DivisionByZero);
                }
                b.powi(*n)
            }
            Expr::Sin(a) => a.eval(x, y)?.sin(),
            Expr::Cos(a) => a.eval(x, y)?.cos(),
            Expr::Exp(a) => a.eval(x, y)?.exp(),
            Expr::ReZn(n) | Expr::ImZn(n) => {
                let z = Complex64::new(x, y);
                if z == Complex64::new(0.0, 0.0) && *n < 0 {
                    return Err(EvalError::DivisionByZero);
                }
                let w = z.powi(*n);
                if matches!(self, Expr::ReZn(_)) {
                    w.re
                } else {
                    w.im
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite)
        }
    }
}
