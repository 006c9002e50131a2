//! Parsing and canonical printing of exact real expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := '-' factor | '(' expr ')' | 'sqrt' '(' expr ')' | number
//! number  := digits ['.' digits] ['/' digits]
//! ```
//!
//! Numbers are exact rationals (decimal literals included); `sqrt`
//! accepts any non-negative rational-valued subexpression. The canonical
//! rendering produced by `Real`'s `Display` (`a + b*sqrt(n) - ...`,
//! radicands increasing) parses back to the same value, bit-exactly.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::real::Real;

/// Parses an exact real expression.
pub fn parse_real(input: &str) -> Result<Real, Error> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        input,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Invalid(alloc::format!(
            "parse error at column {} of {:?}: {msg}",
            self.pos + 1,
            self.input
        ))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.pos), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Real, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Real, Error> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Real, Error> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_alphabetic() => {
                let word = self.ident();
                if word == "sqrt" {
                    if !self.eat('(') {
                        return Err(self.error("expected '(' after sqrt"));
                    }
                    let inner = self.expr()?;
                    if !self.eat(')') {
                        return Err(self.error("expected ')'"));
                    }
                    let r = inner
                        .as_rational()
                        .ok_or_else(|| self.error("sqrt argument must be rational"))?;
                    Real::sqrt_rational(&r)
                } else {
                    Err(self.error("unknown identifier"))
                }
            }
            _ => Err(self.error("expected a number, 'sqrt', '(' or '-'")),
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.chars.get(self.pos), Some(c) if c.is_alphabetic()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn digits(&mut self) -> Result<String, Error> {
        let start = self.pos;
        while matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<Real, Error> {
        self.skip_ws();
        let int_part = self.digits()?;
        let mut value: BigRational =
            BigRational::from_integer(int_part.parse::<BigInt>().expect("digits"));
        if matches!(self.chars.get(self.pos), Some('.')) {
            self.pos += 1;
            let frac = self.digits()?;
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac_num = frac.parse::<BigInt>().expect("digits");
            value += BigRational::new(frac_num, scale);
        }
        if matches!(self.chars.get(self.pos), Some('/')) {
            self.pos += 1;
            let den = self.digits()?;
            let den: BigInt = den.parse().expect("digits");
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            value /= BigRational::from_integer(den);
        }
        Ok(Real::from_rational(value))
    }
}

/// Canonical rendering (the same form `Real` displays); guaranteed to
/// re-parse to an equal value.
pub fn render_real(x: &Real) -> String {
    x.to_string()
}
