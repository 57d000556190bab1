//! Polynomial syntax: `+ - * / ^`, parentheses, integer literals and
//! variable names. Division is only allowed by nonzero constants.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

struct P<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

pub fn parse(text: &str, vars: &[String]) -> Result<Poly, ParseError> {
    let mut p = P { s: text.as_bytes(), pos: 0, vars };
    let out = p.sum()?;
    p.ws();
    if p.pos < p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

impl P<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.product()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    let c = match d.0.iter().next() {
                        Some((e, c)) if d.0.len() == 1 && e.iter().all(|&x| x == 0) => c.clone(),
                        _ => return Err(self.err("division by a non-constant")),
                    };
                    let inv = BigRational::one() / c;
                    acc = acc.mul(&Poly::constant(self.vars.len(), inv));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            let mut out = Poly::constant(self.vars.len(), BigRational::one());
            for _ in 0..e {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap();
                Ok(Poly::constant(self.vars.len(), BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let i = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| ParseError { pos: start, msg: format!("unknown variable {name}") })?;
                let mut e = vec![0; self.vars.len()];
                e[i] = 1;
                Ok(Poly::monomial(&e))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_and_powers() {
        let v = vec!["x".to_string(), "y".to_string()];
        let p = parse("3/2*x^2 - (x - y)*(x + y)", &v).unwrap();
        let q = parse("1/2*x^2 + y^2", &v).unwrap();
        assert_eq!(p, q);
        assert!(parse("x / y", &v).is_err());
        assert!(parse("z", &v).is_err());
    }
}
