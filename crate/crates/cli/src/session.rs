//! Session files: one declaration per line, `#` starts a comment.
//!
//! ```text
//! ring R = QQ[x, y] / (x*y)
//! ideal I = (x, y)
//! module M = R/(x - y)
//! module F = coker [[x, y]] degrees [0]
//! complex P = [R(-1) -(x - y)-> R] at 0
//! complex W = sum(P, shift(P, 2))
//! complex K = koszul(x, y)
//! map f : P -> P = {0: [[1]], 1: [[1]]}
//! map g = identity(P)
//! spec S = fl & support(I)
//! seed 7
//! budget degree 40 steps 1000000 retries 32
//! ```
//!
//! Complex terms are written from the highest homological degree down, with
//! `at n` giving the degree of the rightmost term. `R(a)` has its generator in
//! degree −a, `R^n` is free of rank n, terms can be added with `+`, and any
//! declared module name is a term.

use std::collections::BTreeMap;

use koszulator_core::complex::{ChainMap, Complex};
use koszulator_core::koszul::koszul_complex;
use koszulator_core::module::fpmodule::{column_is_homogeneous, FpModule};
use koszulator_core::module::resolution::residue_field;
use koszulator_core::serre::SerreSpec;
use koszulator_core::{Budget, Error as CoreError, Field, Ideal, Matrix, QuotientRing};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct SessionError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// Command-line overrides applied on top of the file's `seed`/`budget`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub budget_degree: Option<i64>,
    pub budget_steps: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub text: String,
    pub ring_name: String,
    pub ring: QuotientRing,
    pub ideals: BTreeMap<String, Ideal>,
    pub modules: BTreeMap<String, FpModule>,
    pub complexes: BTreeMap<String, Complex>,
    pub maps: BTreeMap<String, ChainMap>,
    pub specs: BTreeMap<String, SerreSpec>,
    pub seed: u64,
    pub budget: Budget,
}

impl Session {
    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.get(name)
    }
}

pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    parse_session_with(text, Overrides::default())
}

type Res<T> = Result<T, SessionError>;

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, at: &str, msg: impl Into<String>) -> SessionError {
        SessionError { line: self.no, col: self.col_of(at), msg: msg.into() }
    }

    /// 1-based column of a subslice of this line.
    fn col_of(&self, at: &str) -> usize {
        let base = self.text.as_ptr() as usize;
        let p = at.as_ptr() as usize;
        if p >= base && p <= base + self.text.len() {
            p - base + 1
        } else {
            1
        }
    }

    fn core(&self, at: &str, e: CoreError) -> SessionError {
        match e {
            CoreError::Parse { col, msg } => SessionError { line: self.no, col: self.col_of(at) + col.saturating_sub(1), msg },
            other => self.err(at, other.to_string()),
        }
    }
}

pub fn parse_session_with(text: &str, ov: Overrides) -> Res<Session> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line { no: i + 1, text: l.split('#').next().unwrap_or("") })
        .filter(|l| !l.text.trim().is_empty())
        .collect();

    // seed and budget first so the ring carries the right caps
    let mut seed = 0u64;
    let mut budget = Budget::default();
    for l in &lines {
        let t = l.text.trim();
        if let Some(rest) = keyword(t, "seed") {
            seed = rest.trim().parse().map_err(|_| l.err(rest, "seed must be a non-negative integer"))?;
        } else if let Some(rest) = keyword(t, "budget") {
            parse_budget(l, rest, &mut budget)?;
        }
    }
    if let Some(s) = ov.seed {
        seed = s;
    }
    if let Some(d) = ov.budget_degree {
        budget.max_degree = d;
    }
    if let Some(s) = ov.budget_steps {
        budget.max_steps = s;
    }

    let mut ring: Option<(String, QuotientRing)> = None;
    let mut b = Builder::default();
    for l in &lines {
        let t = l.text.trim();
        let kw = t.split_whitespace().next().unwrap_or("");
        match kw {
            "seed" | "budget" => {}
            "ring" => {
                if ring.is_some() {
                    return Err(l.err(t, "a session declares exactly one ring"));
                }
                let (name, rhs) = declaration(l, keyword(t, "ring").unwrap())?;
                let r = parse_ring(l, rhs)?.with_budget(budget);
                b.names.push(name.to_string());
                ring = Some((name.to_string(), r));
            }
            "ideal" | "module" | "complex" | "map" | "spec" => {
                let Some((_, r)) = &ring else {
                    return Err(l.err(t, "declare the ring first"));
                };
                b.declare(l, kw, keyword(t, kw).unwrap(), r)?;
            }
            _ => return Err(l.err(t, format!("unknown declaration `{kw}`"))),
        }
    }
    let Some((ring_name, ring)) = ring else {
        return Err(SessionError { line: 1, col: 1, msg: "no ring declared".into() });
    };
    Ok(Session {
        text: text.to_string(),
        ring_name,
        ring,
        ideals: b.ideals,
        modules: b.modules,
        complexes: b.complexes,
        maps: b.maps,
        specs: b.specs,
        seed,
        budget,
    })
}

fn keyword<'a>(t: &'a str, kw: &str) -> Option<&'a str> {
    let rest = t.strip_prefix(kw)?;
    (rest.is_empty() || rest.starts_with(char::is_whitespace)).then_some(rest)
}

fn parse_budget(l: &Line, rest: &str, budget: &mut Budget) -> Res<()> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    if !words.len().is_multiple_of(2) || words.is_empty() {
        return Err(l.err(rest, "expected `budget <degree|steps|retries> <n> ...`"));
    }
    for pair in words.chunks(2) {
        let bad = || l.err(pair[1], format!("bad value for {}", pair[0]));
        match pair[0] {
            "degree" => budget.max_degree = pair[1].parse().map_err(|_| bad())?,
            "steps" => budget.max_steps = pair[1].parse().map_err(|_| bad())?,
            "retries" => budget.max_retries = pair[1].parse().map_err(|_| bad())?,
            other => return Err(l.err(pair[0], format!("unknown budget `{other}`"))),
        }
    }
    Ok(())
}

/// `NAME = rhs`, returning trimmed slices of the line.
fn declaration<'a>(l: &Line<'a>, rest: &'a str) -> Res<(&'a str, &'a str)> {
    let Some((lhs, rhs)) = rest.split_once('=') else {
        return Err(l.err(rest, "expected `NAME = ...`"));
    };
    let name = lhs.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '~') {
        return Err(l.err(lhs, format!("bad name `{name}`")));
    }
    Ok((name, rhs.trim()))
}

fn parse_ring(l: &Line, rhs: &str) -> Res<QuotientRing> {
    let (head, rels) = match split_top_once(rhs, '/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (rhs, None),
    };
    let open = head.find('[').ok_or_else(|| l.err(head, "expected FIELD[vars]"))?;
    if !head.ends_with(']') {
        return Err(l.err(head, "expected `]` after the variables"));
    }
    let field_txt = head[..open].trim();
    let field = match field_txt {
        "QQ" | "Q" => Field::Rationals,
        f => {
            let p = f
                .strip_prefix("GF(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.trim().parse::<u64>().ok())
                .ok_or_else(|| l.err(field_txt, format!("unknown field `{f}`")))?;
            Field::prime(p).map_err(|e| l.core(field_txt, e))?
        }
    };
    let vars: Vec<&str> = head[open + 1..head.len() - 1].split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if vars.is_empty() {
        return Err(l.err(head, "a ring needs at least one variable"));
    }
    let rel_list: Vec<&str> = match rels {
        Some(r) => parenthesized_list(l, r)?,
        None => vec![],
    };
    QuotientRing::parse(field, &vars, &rel_list).map_err(|e| l.core(rels.unwrap_or(head), e))
}

/// `(a, b, c)` → ["a", "b", "c"].
fn parenthesized_list<'a>(l: &Line, s: &'a str) -> Res<Vec<&'a str>> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| l.err(s, "expected a parenthesized list"))?;
    Ok(split_top(inner, ',').into_iter().map(str::trim).filter(|t| !t.is_empty()).collect())
}

/// Splits at separators outside any brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn split_top_once(s: &str, sep: char) -> Option<(&str, &str)> {
    let parts = split_top(s, sep);
    if parts.len() < 2 {
        return None;
    }
    let first = parts[0];
    Some((first, &s[first.len() + sep.len_utf8()..]))
}

#[derive(Default)]
struct Builder {
    names: Vec<String>,
    ideals: BTreeMap<String, Ideal>,
    modules: BTreeMap<String, FpModule>,
    complexes: BTreeMap<String, Complex>,
    maps: BTreeMap<String, ChainMap>,
    specs: BTreeMap<String, SerreSpec>,
}

impl Builder {
    fn declare(&mut self, l: &Line, kw: &str, rest: &str, r: &QuotientRing) -> Res<()> {
        if kw == "map" {
            return self.declare_map(l, rest, r);
        }
        let (name, rhs) = declaration(l, rest)?;
        if self.names.iter().any(|n| n == name) {
            return Err(l.err(name, format!("`{name}` is already declared")));
        }
        match kw {
            "ideal" => {
                let gens = if let Some(i) = self.ideals.get(rhs) { i.clone() } else { self.ideal_expr(l, rhs, r)? };
                self.ideals.insert(name.into(), gens);
            }
            "module" => {
                let m = self.module_expr(l, rhs, r)?;
                self.modules.insert(name.into(), m);
            }
            "complex" => {
                let c = self.complex_expr(l, rhs, r)?;
                self.complexes.insert(name.into(), c);
            }
            "spec" => {
                let ideals = self.ideals.clone();
                let s = SerreSpec::parse(r, rhs, &|n| ideals.get(n).cloned()).map_err(|e| l.core(rhs, e))?;
                self.specs.insert(name.into(), s);
            }
            _ => unreachable!(),
        }
        self.names.push(name.into());
        Ok(())
    }

    fn ideal_expr(&self, l: &Line, s: &str, r: &QuotientRing) -> Res<Ideal> {
        let gens = parenthesized_list(l, s)?;
        let mut polys = Vec::new();
        for g in gens {
            polys.push(r.parse_element(g).map_err(|e| l.core(g, e))?);
        }
        let i = Ideal::new(r, polys).map_err(|e| l.core(s, e))?;
        if !i.is_homogeneous() {
            return Err(l.err(s, "ideal generators must be homogeneous"));
        }
        Ok(i)
    }

    fn module_expr(&self, l: &Line, s: &str, r: &QuotientRing) -> Res<FpModule> {
        let s = s.trim();
        if s == "k" || s == "residue_field" {
            return residue_field(r).map_err(|e| l.core(s, e));
        }
        if let Some(rest) = s.strip_prefix("coker") {
            let (mat, degs) = rest.split_once("degrees").ok_or_else(|| l.err(s, "expected `coker [[...]] degrees [..]`"))?;
            let degrees = int_list(l, degs)?;
            let rel = self.matrix(l, mat.trim(), r, Some(degrees.len()))?;
            let m = FpModule::new(r, degrees.clone(), rel).map_err(|e| l.core(mat, e))?;
            let rd = m.relations().clone();
            for j in 0..rd.cols() {
                if !column_is_homogeneous(r, &rd.column(j), &degrees) {
                    return Err(l.err(mat, format!("relation column {} is not homogeneous", j + 1)));
                }
            }
            return Ok(m);
        }
        if let Some(degs) = s.strip_prefix("free") {
            return Ok(FpModule::free(r, int_list(l, degs)?));
        }
        if let Some((head, tail)) = split_top_once(s, '/') {
            if head.trim().is_empty() {
                return Err(l.err(s, "expected `R/(...)`"));
            }
            let tail = tail.trim();
            let ideal = match self.ideals.get(tail) {
                Some(i) => i.clone(),
                None => self.ideal_expr(l, tail, r)?,
            };
            return Ok(FpModule::cyclic(&ideal));
        }
        if let Some(m) = self.modules.get(s) {
            return Ok(m.clone());
        }
        let degrees = free_term_degrees(l, s)?;
        Ok(FpModule::free(r, degrees))
    }

    fn matrix(&self, l: &Line, s: &str, r: &QuotientRing, rows: Option<usize>) -> Res<Matrix> {
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| l.err(s, "expected a bracketed matrix [[..], [..]]"))?;
        let mut out = Vec::new();
        let mut width = None;
        for row in split_top(inner, ',') {
            let row = row.trim();
            if row.is_empty() {
                continue;
            }
            let body = row
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| l.err(row, "expected a bracketed row"))?;
            let mut entries = Vec::new();
            for e in split_top(body, ',') {
                let e = e.trim();
                if e.is_empty() {
                    continue;
                }
                entries.push(r.parse_element(e).map_err(|err| l.core(e, err))?);
            }
            if *width.get_or_insert(entries.len()) != entries.len() {
                return Err(l.err(row, "rows have different lengths"));
            }
            out.push(entries);
        }
        let ncols = width.unwrap_or(0);
        if let Some(n) = rows {
            if out.is_empty() && n > 0 {
                return Ok(Matrix::zero(n, 0));
            }
            if out.len() != n {
                return Err(l.err(s, format!("expected {n} rows, found {}", out.len())));
            }
        }
        Matrix::from_rows(out, ncols).map_err(|e| l.core(s, e))
    }

    fn complex_ref(&self, l: &Line, s: &str, r: &QuotientRing) -> Res<Complex> {
        let s = s.trim();
        match self.complexes.get(s) {
            Some(c) => Ok(c.clone()),
            None => self.complex_expr(l, s, r),
        }
    }

    fn complex_expr(&self, l: &Line, s: &str, r: &QuotientRing) -> Res<Complex> {
        let s = s.trim();
        if let Some(c) = self.complexes.get(s) {
            return Ok(c.clone());
        }
        if let Some(args) = call(s, "shift") {
            let a = split_top(args, ',');
            if a.len() != 2 {
                return Err(l.err(s, "shift takes a complex and an integer"));
            }
            let n: i64 = a[1].trim().parse().map_err(|_| l.err(a[1], "expected an integer"))?;
            return Ok(self.complex_ref(l, a[0], r)?.shift(n));
        }
        if let Some(args) = call(s, "sum") {
            let parts = split_top(args, ',').into_iter().map(|p| self.complex_ref(l, p, r)).collect::<Res<Vec<_>>>()?;
            let refs: Vec<&Complex> = parts.iter().collect();
            return Complex::direct_sum(&refs).map_err(|e| l.core(s, e));
        }
        if let Some(args) = call(s, "cone") {
            let f = self.maps.get(args.trim()).ok_or_else(|| l.err(args, format!("unknown map `{}`", args.trim())))?;
            return Complex::cone(f).map(|c| c.0).map_err(|e| l.core(s, e));
        }
        if let Some(args) = call(s, "koszul") {
            let mut fs = Vec::new();
            for g in split_top(args, ',') {
                fs.push(r.parse_element(g.trim()).map_err(|e| l.core(g, e))?);
            }
            return koszul_complex(r, &fs, &[0], 0).map_err(|e| l.core(s, e));
        }
        let (body, at) = match s.rfind(" at ") {
            Some(i) if s[..i].trim_end().ends_with(']') => {
                let n: i64 = s[i + 4..].trim().parse().map_err(|_| l.err(&s[i + 4..], "expected an integer after `at`"))?;
                (s[..i].trim(), n)
            }
            _ => (s, 0),
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| l.err(s, "expected `[T -d-> T ...] at n`, shift, sum, cone or koszul"))?;
        self.arrow_complex(l, inner, at, r)
    }

    /// `T_k -d_k-> … -d_1-> T_0`, rightmost term in degree `at`.
    fn arrow_complex(&self, l: &Line, s: &str, at: i64, r: &QuotientRing) -> Res<Complex> {
        let mut terms: Vec<&str> = Vec::new();
        let mut arrows: Vec<&str> = Vec::new();
        let b = s.as_bytes();
        let mut depth = 0i32;
        let mut start = 0;
        let mut i = 0;
        while i < b.len() {
            match b[i] {
                b'(' | b'[' | b'{' => depth += 1,
                b')' | b']' | b'}' => depth -= 1,
                b'-' if depth == 0 => {
                    // an arrow label runs to the matching `->` at depth zero
                    let mut j = i + 1;
                    let mut d2 = 0i32;
                    let mut end = None;
                    while j + 1 < b.len() {
                        match b[j] {
                            b'(' | b'[' => d2 += 1,
                            b')' | b']' => d2 -= 1,
                            b'-' if d2 == 0 && b[j + 1] == b'>' => {
                                end = Some(j);
                                break;
                            }
                            _ => {}
                        }
                        j += 1;
                    }
                    let end = end.ok_or_else(|| l.err(&s[i..], "unterminated arrow, expected `->`"))?;
                    terms.push(s[start..i].trim());
                    arrows.push(s[i + 1..end].trim());
                    i = end + 2;
                    start = i;
                    continue;
                }
                _ => {}
            }
            i += 1;
        }
        terms.push(s[start..].trim());
        // terms[0] is the highest degree
        let mut modules = Vec::new();
        for t in terms.iter().rev() {
            if t.is_empty() {
                return Err(l.err(s, "empty term"));
            }
            modules.push(if *t == "0" { FpModule::zero(r) } else { self.module_expr(l, t, r)? });
        }
        let mut diffs = Vec::new();
        for (k, a) in arrows.iter().rev().enumerate() {
            let (tgt, src) = (&modules[k], &modules[k + 1]);
            let m = if *a == "0" {
                Matrix::zero(tgt.rank(), src.rank())
            } else if a.starts_with('[') {
                self.matrix(l, a, r, Some(tgt.rank()))?
            } else {
                let inner = a.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(a);
                if tgt.rank() != 1 || src.rank() != 1 {
                    return Err(l.err(a, "a scalar label needs rank-one terms; use a [[...]] matrix"));
                }
                let p = r.parse_element(inner).map_err(|e| l.core(inner, e))?;
                Matrix::from_rows(vec![vec![p]], 1).map_err(|e| l.core(a, e))?
            };
            if m.rows() != tgt.rank() || m.cols() != src.rank() {
                return Err(l.err(a, format!("map is {}x{}, terms need {}x{}", m.rows(), m.cols(), tgt.rank(), src.rank())));
            }
            for j in 0..m.cols() {
                let col = m.column(j);
                let deg = koszulator_core::module::fpmodule::column_degree(r, &col, tgt.degrees());
                if !column_is_homogeneous(r, &col, tgt.degrees()) || (col.iter().any(|p| !r.reduce(p).is_zero()) && deg != src.degrees()[j]) {
                    return Err(l.err(a, format!("column {} of d_{} is not homogeneous of degree {}", j + 1, at + k as i64 + 1, src.degrees()[j])));
                }
            }
            diffs.push(m);
        }
        Complex::new(r, at, modules, diffs).map_err(|e| l.core(s, e))
    }

    fn declare_map(&mut self, l: &Line, rest: &str, r: &QuotientRing) -> Res<()> {
        // `f : P -> Q = {n: [[..]], ...}` or `f = identity(P)` / `zero(P, Q)`
        let (lhs, rhs) = rest.split_once('=').ok_or_else(|| l.err(rest, "expected `NAME : P -> Q = {...}`"))?;
        let (name, sig) = match lhs.split_once(':') {
            Some((n, s)) => (n.trim(), Some(s)),
            None => (lhs.trim(), None),
        };
        if name.is_empty() || self.names.iter().any(|n| n == name) {
            return Err(l.err(lhs, format!("bad or duplicate name `{name}`")));
        }
        let rhs = rhs.trim();
        let f = if let Some(arg) = call(rhs, "identity") {
            self.complex_ref(l, arg, r)?.identity()
        } else if let Some(args) = call(rhs, "zero") {
            let a = split_top(args, ',');
            if a.len() != 2 {
                return Err(l.err(rhs, "zero takes two complexes"));
            }
            ChainMap::zero(&self.complex_ref(l, a[0], r)?, &self.complex_ref(l, a[1], r)?)
        } else {
            let sig = sig.ok_or_else(|| l.err(lhs, "explicit maps need a signature `: P -> Q`"))?;
            let (src, tgt) = sig.split_once("->").ok_or_else(|| l.err(sig, "expected `P -> Q`"))?;
            let source = self.complex_ref(l, src, r)?;
            let target = self.complex_ref(l, tgt, r)?;
            let body = rhs
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(|| l.err(rhs, "expected `{degree: [[...]], ...}`"))?;
            let mut comps = BTreeMap::new();
            for entry in split_top(body, ',') {
                let entry = entry.trim();
                if entry.is_empty() {
                    continue;
                }
                let (deg, mat) = entry.split_once(':').ok_or_else(|| l.err(entry, "expected `degree: [[...]]`"))?;
                let n: i64 = deg.trim().parse().map_err(|_| l.err(deg, "expected an integer degree"))?;
                let m = self.matrix(l, mat.trim(), r, Some(target.rank(n)))?;
                let m = if m.cols() == 0 && source.rank(n) > 0 { Matrix::zero(target.rank(n), source.rank(n)) } else { m };
                comps.insert(n, m);
            }
            ChainMap::new(&source, &target, comps).map_err(|e| l.core(rhs, e))?
        };
        self.maps.insert(name.into(), f);
        self.names.push(name.into());
        Ok(())
    }
}

fn call<'a>(s: &'a str, f: &str) -> Option<&'a str> {
    s.strip_prefix(f)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

fn int_list(l: &Line, s: &str) -> Res<Vec<i64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| l.err(s, "expected [d1, d2, ...]"))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| l.err(t, "expected an integer")))
        .collect()
}

/// `R`, `R^2`, `R(-1)`, `R(-1)^2`, and `+`-sums of those.
fn free_term_degrees(l: &Line, s: &str) -> Res<Vec<i64>> {
    let mut out = Vec::new();
    for part in split_top(s, '+') {
        let p = part.trim();
        let (base, count) = match p.rsplit_once('^') {
            Some((b, n)) => (b.trim(), n.trim().parse::<usize>().map_err(|_| l.err(n, "expected a rank"))?),
            None => (p, 1),
        };
        let twist = if let Some(inner) = base.strip_prefix("R(").and_then(|t| t.strip_suffix(')')) {
            inner.trim().parse::<i64>().map_err(|_| l.err(inner, "expected an integer twist"))?
        } else if base == "R" {
            0
        } else {
            return Err(l.err(p, format!("unknown term `{p}`")));
        };
        out.extend(std::iter::repeat_n(-twist, count));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CORPUS: &str = "ring R = QQ[x, y] / (x*y)\ncomplex P = [R(-1) -(x - y)-> R]\n";

    #[test]
    fn ring_only() {
        let s = parse_session("ring R = QQ[x,y]").unwrap();
        assert!(s.complexes.is_empty() && s.ring.nvars() == 2);
    }

    #[test]
    fn corpus_complex() {
        let s = parse_session(CORPUS).unwrap();
        let p = &s.complexes["P"];
        assert_eq!(p.ranks(), vec![(0, 1), (1, 1)]);
        assert_eq!(p.degrees(1), vec![1]);
    }

    #[test]
    fn d_squared_error_names_degree() {
        let text = "ring R = QQ[x, y]\ncomplex B = [R(-2) -(x)-> R(-1) -(y)-> R]\n";
        let e = parse_session(text).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.msg.contains("d_1 ∘ d_2"), "{e}");
    }

    #[test]
    fn syntax_errors_are_located() {
        let e = parse_session("ring R = QQ[x, y]\nideal I = (x +* y)\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.col > 11, "{e}");
        let e = parse_session("ring R = QQ[x]\nfoo\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 1));
        let e = parse_session("ring R = QQ[x]\nmodule M = R/(x)\nmodule M = R/(x^2)\n").unwrap_err();
        assert!(e.msg.contains("already declared"));
        let e = parse_session("ring R = QQ[x, y]\ncomplex P = [R -(x)-> R]\n").unwrap_err();
        assert!(e.msg.contains("homogeneous"), "{e}");
    }

    #[test]
    fn combinators_and_maps() {
        let text = format!(
            "{CORPUS}complex W = sum(P, shift(P, 2))\ncomplex K = koszul(x, y)\nmap f : P -> P = {{0: [[2]], 1: [[2]]}}\nmap g = identity(W)\nmodule M = R/(x - y)\ncomplex T = [M] at 0\nspec S = fl & codim>=1\nseed 9\nbudget degree 30 retries 16\n"
        );
        let s = parse_session(&text).unwrap();
        assert_eq!(s.complexes["W"].ranks(), vec![(0, 1), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(s.complexes["K"].ranks(), vec![(0, 1), (1, 2), (2, 1)]);
        assert_eq!(s.seed, 9);
        assert_eq!(s.budget.max_retries, 16);
        assert!(s.maps.contains_key("f") && s.maps.contains_key("g"));
        assert_eq!(s.complexes["T"].rank(0), 1);
        let e = parse_session(&format!("{CORPUS}map h : P -> P = {{0: [[x]], 1: [[1]]}}\n")).unwrap_err();
        assert!(e.msg.contains("chain map"), "{e}");
    }
}
