//! Scalar literal parser, shared with the R-matrix file format.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' int)?
//! atom   := integer | 'q' | '(' expr ')'
//! ```
//!
//! Examples: `q^-1 + (3/2)*q`, `13/6`, `(q^2 - 1)/(q^2 + 1)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{QContext, Scalar};
use crate::error::{Error, Result};

pub fn parse_scalar(ctx: &QContext, text: &str) -> Result<Scalar> {
    let mut p = Parser {
        ctx,
        chars: text.char_indices().collect(),
        pos: 0,
        text,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    ctx: &'a QContext,
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        let offset = self
            .chars
            .get(self.pos)
            .map(|(o, _)| *o)
            .unwrap_or(self.text.len());
        Error::Parse(format!("offset {offset} in `{}`: {msg}", self.text))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.checked_mul(&self.factor()?)?;
            } else if self.eat('/') {
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.signed_int()?;
            if base.is_zero() && e < 0 {
                return Err(self.err("zero raised to a negative power"));
            }
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        self.skip_ws();
        match self.peek() {
            Some('q') => {
                self.pos += 1;
                Ok(self.ctx.q())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.ctx.from_rat(super::Rat::from_integer(n)))
            }
            _ => Err(self.err("expected integer, `q`, or `(`")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos]
            .iter()
            .map(|(_, c)| *c)
            .collect();
        s.parse().map_err(|_| self.err("bad integer"))
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let n = self.integer()?;
        let v = n.to_i64().ok_or_else(|| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rat;

    #[test]
    fn parses_the_format_example() {
        let ctx = QContext::Formal;
        let v = parse_scalar(&ctx, "q^-1 + (3/2)*q").unwrap();
        let expect = &ctx.q_pow(-1)
            + &ctx
                .from_rat(parse_rat("3/2").unwrap())
                .checked_mul(&ctx.q())
                .unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn numeric_backend_specializes_q() {
        let ctx = QContext::numeric_from_parts(3, 2);
        let v = parse_scalar(&ctx, "q + q^-1").unwrap();
        assert_eq!(v, ctx.from_rat(parse_rat("13/6").unwrap()));
    }

    #[test]
    fn rejects_malformed_literals() {
        let ctx = QContext::Formal;
        for bad in ["q^", "1 +", "(q", "3/2/", "^2", "q q", ""] {
            assert!(parse_scalar(&ctx, bad).is_err(), "should reject `{bad}`");
        }
    }

    #[test]
    fn display_round_trips_through_parser() {
        let ctx = QContext::Formal;
        let samples = [
            "q + q^-1",
            "-3/2*q^2 + 1",
            "(q^2 - 1)/(q^2 + 1)",
            "q^-5",
            "0",
            "-1",
            "(2*q - 2)/(3*q^3 + 1)",
        ];
        for s in samples {
            let v = parse_scalar(&ctx, s).unwrap();
            let round = parse_scalar(&ctx, &v.to_string()).unwrap();
            assert_eq!(v, round, "`{s}` → `{v}`");
        }
    }

    #[test]
    fn division_builds_rational_functions() {
        let ctx = QContext::Formal;
        let v = parse_scalar(&ctx, "(q - q^-1)/(q^2 - q^-2)").unwrap();
        // = 1/2_q = q/(q^2+1)
        let two_q = ctx.q_number(2).unwrap();
        assert_eq!(v, two_q.inv().unwrap());
    }
}
