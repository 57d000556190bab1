//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialOrder};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// k[x₁..xₙ] with positive variable weights and a degree-compatible order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub order: MonomialOrder,
}

/// Terms are kept sorted by decreasing monomial with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>) -> Result<Self> {
        let n = vars.len();
        Self::with_weights(field, vars, vec![1; n], MonomialOrder::Grevlex)
    }

    pub fn with_weights(field: Field, vars: Vec<String>, weights: Vec<u32>, order: MonomialOrder) -> Result<Self> {
        if weights.len() != vars.len() {
            return Err(Error::Invalid("one weight per variable required".into()));
        }
        if weights.contains(&0) {
            return Err(Error::Invalid("variable degrees must be positive".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable {v}")));
            }
            if v.is_empty() || !v.chars().next().unwrap().is_alphabetic() {
                return Err(Error::Invalid(format!("bad variable name '{v}'")));
            }
        }
        Ok(PolyRing { field, vars, weights, order })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(&self.weights, a, b)
    }

    pub fn mono_degree(&self, m: &Monomial) -> i64 {
        m.degree(&self.weights)
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Monomial::one(self.nvars()), c)] }
        }
    }

    pub fn from_i64(&self, n: i64) -> Poly {
        self.constant(self.field.from_i64(n))
    }

    pub fn one(&self) -> Poly {
        self.from_i64(1)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly { terms: vec![(Monomial::var(self.nvars(), i), self.field.one())] }
    }

    pub fn monomial(&self, m: Monomial, c: Scalar) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, Scalar)>) -> Poly {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|t| t.1.is_zero()) {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    /// `a + c·m·b`.
    pub fn add_scaled(&self, a: &Poly, c: &Scalar, m: &Monomial, b: &Poly) -> Poly {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &(Monomial, Scalar)| (t.0.mul(m), t.1.mul(c));
        while i < a.terms.len() || j < b.terms.len() {
            if j == b.terms.len() {
                out.push(a.terms[i].clone());
                i += 1;
                continue;
            }
            let bj = shifted(&b.terms[j]);
            if i == a.terms.len() {
                out.push(bj);
                j += 1;
                continue;
            }
            match self.cmp(&a.terms[i].0, &bj.0) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bj);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a.terms[i].1.add(&bj.1);
                    if !s.is_zero() {
                        out.push((bj.0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.add_scaled(a, &self.field.one(), &Monomial::one(self.nvars()), b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add_scaled(a, &self.field.from_i64(-1), &Monomial::one(self.nvars()), b)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly { terms: a.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, a: &Poly, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect() }
    }

    pub fn mul_term(&self, a: &Poly, c: &Scalar, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(n, x)| (n.mul(m), x.mul(c))).collect() }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let (small, big) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
        let mut acc = Poly::zero();
        for (m, c) in &small.terms {
            acc = self.add_scaled(&acc, c, m, big);
        }
        acc
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Largest weighted degree of a term; `None` for zero.
    pub fn degree(&self, a: &Poly) -> Option<i64> {
        a.terms.iter().map(|(m, _)| self.mono_degree(m)).max()
    }

    pub fn is_homogeneous(&self, a: &Poly) -> bool {
        let mut degs = a.terms.iter().map(|(m, _)| self.mono_degree(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self, a: &Poly) -> Poly {
        match a.leading() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(a, &c.inv().unwrap()),
        }
    }

    pub fn format(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in a.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            if mono.is_empty() {
                let _ = write!(s, "{abs}");
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{abs}*{mono}");
            }
        }
        s
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        parts.join("*")
    }

    /// Parses ASCII polynomial syntax: `^` powers, optional `*`, rational
    /// literals such as `3/2`, parentheses.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let tokens = tokenize(text)?;
        let mut p = Parser { ring: self, tokens, pos: 0, len: text.len() };
        let out = p.expr()?;
        if p.pos < p.tokens.len() {
            return Err(Error::Parse {
                col: p.tokens[p.pos].col,
                msg: format!("unexpected {}", p.tokens[p.pos].kind.describe()),
            });
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Op(c) => format!("'{c}'"),
        }
    }
}

struct Token {
    kind: Tok,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (col, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().map(|p| p.1).collect();
            out.push(Token { kind: Tok::Num(s.parse().unwrap()), col: col + 1 });
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            let s: String = chars[i..j].iter().map(|p| p.1).collect();
            out.push(Token { kind: Tok::Ident(s), col: col + 1 });
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push(Token { kind: Tok::Op(c), col: col + 1 });
            i += 1;
        } else {
            return Err(Error::Parse { col: col + 1, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    tokens: Vec<Token>,
    pos: usize,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map(|t| t.col).unwrap_or(self.len + 1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { col: self.col(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let t = self.term()?;
                self.ring.neg(&t)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Op('+')) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some(Tok::Op('-')) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = self.ring.mul(&acc, &f);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let col = self.col();
                    match self.peek().cloned() {
                        Some(Tok::Num(n)) => {
                            self.pos += 1;
                            let q = BigRational::from_integer(n);
                            let c = self.ring.field.from_rational(&q)?;
                            let inv = c
                                .inv()
                                .ok_or(Error::Parse { col, msg: "division by zero".into() })?;
                            acc = self.ring.scale(&acc, &inv);
                        }
                        _ => return self.err("only division by an integer literal is allowed"),
                    }
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    let f = self.power()?;
                    acc = self.ring.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Parse {
                        col: self.col(),
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(self.ring.pow(&base, e));
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = self.ring.field.from_rational(&BigRational::from_integer(n))?;
                Ok(self.ring.constant(c))
            }
            Some(Tok::Ident(name)) => match self.ring.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(self.ring.var(i))
                }
                None => self.err(format!("unknown variable '{name}'")),
            },
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(t) => self.err(format!("unexpected {}", t.describe())),
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy() -> PolyRing {
        PolyRing::new(Field::Rationals, vec!["x".into(), "y".into()]).unwrap()
    }

    #[test]
    fn parse_and_format() {
        let r = qxy();
        let p = r.parse("(x - y)*(x + y)").unwrap();
        assert_eq!(r.format(&p), "x^2 - y^2");
        let q = r.parse("3/2 x^2y - y + 1").unwrap();
        assert_eq!(r.format(&q), "3/2*x^2*y - y + 1");
        assert_eq!(r.format(&r.parse("x*y - y*x").unwrap()), "0");
    }

    #[test]
    fn parse_errors_carry_columns() {
        let r = qxy();
        match r.parse("x + z") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("{other:?}"),
        }
        assert!(r.parse("x^").is_err());
        assert!(r.parse("(x").is_err());
    }

    #[test]
    fn duplicate_variables_rejected() {
        assert!(PolyRing::new(Field::Rationals, vec!["x".into(), "x".into()]).is_err());
    }

    #[test]
    fn prime_field_literals() {
        let r = PolyRing::new(Field::prime(3).unwrap(), vec!["x".into()]).unwrap();
        assert_eq!(r.format(&r.parse("3x + 4").unwrap()), "1");
    }
}
