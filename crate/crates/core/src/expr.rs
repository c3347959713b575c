//! Exact input of cyclotomic numbers.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | atom ('^' integer)?
//! atom     := rational | 'z' | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! `z` stands for ζ_s, the primitive s-th root of unity of the session.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{CyclotomicNumber, Rational};
use crate::error::{Error, Result};

/// Largest accepted `|exponent|` after `^`.
pub const MAX_EXPONENT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycExpr {
    Rational(Rational),
    Zeta,
    Neg(Box<CycExpr>),
    Add(Box<CycExpr>, Box<CycExpr>),
    Sub(Box<CycExpr>, Box<CycExpr>),
    Mul(Box<CycExpr>, Box<CycExpr>),
    Div(Box<CycExpr>, Box<CycExpr>),
    Pow(Box<CycExpr>, i64),
}

impl CycExpr {
    pub fn eval(&self, order: u64) -> Result<CyclotomicNumber> {
        if order == 0 {
            return Err(Error::InvalidArgument(
                "the order must be at least 1".into(),
            ));
        }
        Ok(match self {
            CycExpr::Rational(r) => CyclotomicNumber::from_rational_in(order, r.clone()),
            CycExpr::Zeta => CyclotomicNumber::zeta(order),
            CycExpr::Neg(e) => -e.eval(order)?,
            CycExpr::Add(a, b) => a.eval(order)? + b.eval(order)?,
            CycExpr::Sub(a, b) => a.eval(order)? - b.eval(order)?,
            CycExpr::Mul(a, b) => a.eval(order)? * b.eval(order)?,
            CycExpr::Div(a, b) => a.eval(order)? * b.eval(order)?.try_inv()?,
            CycExpr::Pow(e, k) => e.eval(order)?.powi(*k)?,
        })
    }
}

pub fn parse_expr(text: &str) -> Result<CycExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_cyclotomic_expr(text: &str, order: u64) -> Result<CyclotomicNumber> {
    parse_expr(text)?.eval(order)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<CycExpr> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == b'+' {
                CycExpr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                CycExpr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<CycExpr> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == b'*' {
                CycExpr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                CycExpr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<CycExpr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(CycExpr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let start = self.pos;
        let digits = self
            .digits()
            .ok_or_else(|| self.error("expected an integer exponent"))?;
        let magnitude: u64 =
            digits
                .parse()
                .ok()
                .filter(|&m| m <= MAX_EXPONENT)
                .ok_or(Error::Syntax {
                    position: start,
                    message: format!("exponent exceeds {MAX_EXPONENT}"),
                })?;
        let k = magnitude as i64;
        Ok(CycExpr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<CycExpr> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok(CycExpr::Zeta)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self
                    .digits()
                    .expect("digit present")
                    .parse()
                    .expect("digits");
                Ok(CycExpr::Rational(Rational::new(
                    num,
                    self.literal_denominator(),
                )))
            }
            Some(_) => Err(self.error("expected a number, 'z' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// Consumes `/d` right after an integer when `d` is a positive integer
    /// literal; otherwise leaves the input alone.
    fn literal_denominator(&mut self) -> BigInt {
        let save = self.pos;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            if let Some(d) = self.digits() {
                let d: BigInt = d.parse().expect("digits");
                if !d.is_zero() {
                    return d;
                }
            }
        }
        self.pos = save;
        BigInt::one()
    }
}
