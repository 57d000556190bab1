//! Bounded chain complexes of finitely presented modules, chain maps and
//! homotopies.
//!
//! One type covers both free complexes (no term has relations) and complexes
//! of presented modules; differentials are stored on generators and checked
//! modulo relations.
//!
//! Sign conventions: `(TⁿX)_i = X_{i−n}` with differential multiplied by
//! `(−1)ⁿ`; `cone(f)_n = X_{n−1} ⊕ Y_n` with differential `[−d_X, 0; −f, d_Y]`.

pub mod hom;
pub mod homology;
pub mod truncate;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::matrix::Matrix;
use crate::kernel::ring::QuotientRing;
use crate::module::fpmodule::FpModule;

pub use homology::{is_quasi_isomorphism, Homology, QisReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    ring: QuotientRing,
    low: i64,
    terms: Vec<FpModule>,
    /// `diffs[k]` is d_{low+k+1}: X_{low+k+1} → X_{low+k}.
    diffs: Vec<Matrix>,
}

/// Homological statistics. For an acyclic complex `min`/`max` are `None` and
/// the width is 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexStats {
    pub min_c: i64,
    pub max_c: i64,
    pub min: Option<i64>,
    pub max: Option<i64>,
    pub wid: i64,
    pub supph: BTreeSet<i64>,
}

pub(crate) fn all_zero_in(module: &FpModule, m: &Matrix) -> Result<bool> {
    for j in 0..m.cols() {
        if !module.is_zero_element(&m.column(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Complex {
    /// Validates shapes, that each differential respects relations, and d² = 0.
    pub fn new(ring: &QuotientRing, low: i64, terms: Vec<FpModule>, diffs: Vec<Matrix>) -> Result<Self> {
        let c = Complex::new_unchecked(ring, low, terms, diffs)?;
        c.validate()?;
        Ok(c.trimmed())
    }

    pub(crate) fn new_unchecked(ring: &QuotientRing, low: i64, terms: Vec<FpModule>, diffs: Vec<Matrix>) -> Result<Self> {
        if terms.iter().any(|t| t.ring() != ring) {
            return Err(Error::AmbientMismatch);
        }
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::ShapeMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != terms[k].rank() || d.cols() != terms[k + 1].rank() {
                return Err(Error::ShapeMismatch(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    low + k as i64 + 1,
                    d.rows(),
                    d.cols(),
                    terms[k].rank(),
                    terms[k + 1].rank()
                )));
            }
        }
        let diffs = diffs.into_iter().map(|d| d.reduce(ring)).collect();
        Ok(Complex { ring: ring.clone(), low, terms, diffs })
    }

    fn validate(&self) -> Result<()> {
        for n in self.low + 1..=self.high() {
            let d = self.d(n);
            let img = d.mul(self.term(n).relations(), &self.ring)?;
            if !all_zero_in(&self.term(n - 1), &img)? {
                return Err(Error::Precondition(format!("d_{n} does not respect the relations of its source")));
            }
            if n > self.low + 1 {
                let dd = self.d(n - 1).mul(&d, &self.ring)?;
                if !all_zero_in(&self.term(n - 2), &dd)? {
                    return Err(Error::Precondition(format!("d_{} ∘ d_{} ≠ 0", n - 1, n)));
                }
            }
        }
        Ok(())
    }

    /// Drops rank-zero terms at both ends.
    pub fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(|t| t.rank() == 0) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(|t| t.rank() == 0) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.low += 1;
        }
        if self.terms.is_empty() {
            self.low = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn zero(ring: &QuotientRing) -> Self {
        Complex { ring: ring.clone(), low: 0, terms: vec![], diffs: vec![] }
    }

    pub fn one_term(module: &FpModule, degree: i64) -> Self {
        Complex { ring: module.ring().clone(), low: degree, terms: vec![module.clone()], diffs: vec![] }.trimmed()
    }

    /// Free complex from ranks/degrees per homological degree.
    pub fn free(ring: &QuotientRing, low: i64, degrees: Vec<Vec<i64>>, diffs: Vec<Matrix>) -> Result<Self> {
        let terms = degrees.into_iter().map(|d| FpModule::free(ring, d)).collect();
        Complex::new(ring, low, terms, diffs)
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    /// Lowest stored degree (equals `high() + 1` for the zero complex).
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    pub fn is_zero_complex(&self) -> bool {
        self.terms.iter().all(|t| t.rank() == 0)
    }

    pub fn term(&self, n: i64) -> FpModule {
        if n < self.low || n > self.high() {
            return FpModule::zero(&self.ring);
        }
        self.terms[(n - self.low) as usize].clone()
    }

    pub fn term_ref(&self, n: i64) -> Option<&FpModule> {
        if n < self.low || n > self.high() {
            return None;
        }
        Some(&self.terms[(n - self.low) as usize])
    }

    pub fn rank(&self, n: i64) -> usize {
        self.term_ref(n).map(|t| t.rank()).unwrap_or(0)
    }

    pub fn degrees(&self, n: i64) -> Vec<i64> {
        self.term_ref(n).map(|t| t.degrees().to_vec()).unwrap_or_default()
    }

    /// d_n: X_n → X_{n−1}.
    pub fn d(&self, n: i64) -> Matrix {
        if n <= self.low || n > self.high() {
            return Matrix::zero(self.rank(n - 1), self.rank(n));
        }
        self.diffs[(n - self.low - 1) as usize].clone()
    }

    pub fn is_free(&self) -> bool {
        self.terms.iter().all(|t| !t.has_relations())
    }

    pub fn ranks(&self) -> Vec<(i64, usize)> {
        (self.low..=self.high()).map(|n| (n, self.rank(n))).collect()
    }

    pub fn shift(&self, n: i64) -> Complex {
        if self.is_zero_complex() {
            return self.clone();
        }
        let diffs = if n % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(|d| d.neg(&self.ring)).collect() };
        Complex { ring: self.ring.clone(), low: self.low + n, terms: self.terms.clone(), diffs }
    }

    pub fn direct_sum(parts: &[&Complex]) -> Result<Complex> {
        let Some(first) = parts.first() else {
            return Err(Error::Precondition("empty direct sum".into()));
        };
        let ring = first.ring.clone();
        if parts.iter().any(|p| p.ring != ring) {
            return Err(Error::AmbientMismatch);
        }
        let nonzero: Vec<&&Complex> = parts.iter().filter(|p| !p.is_zero_complex()).collect();
        if nonzero.is_empty() {
            return Ok(Complex::zero(&ring));
        }
        let low = nonzero.iter().map(|p| p.low).min().unwrap();
        let high = nonzero.iter().map(|p| p.high()).max().unwrap();
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for n in low..=high {
            let ts: Vec<FpModule> = parts.iter().map(|p| p.term(n)).collect();
            let refs: Vec<&FpModule> = ts.iter().collect();
            terms.push(FpModule::direct_sum(&refs)?);
            if n > low {
                let ds: Vec<Matrix> = parts.iter().map(|p| p.d(n)).collect();
                let refs: Vec<&Matrix> = ds.iter().collect();
                diffs.push(Matrix::block_diag(&refs));
            }
        }
        Ok(Complex::new_unchecked(&ring, low, terms, diffs)?.trimmed())
    }

    /// Cone of f: X → Y with the injection Y → cone and projection cone → TX.
    pub fn cone(f: &ChainMap) -> Result<(Complex, ChainMap, ChainMap)> {
        let x = &f.source;
        let y = &f.target;
        let ring = x.ring.clone();
        if x.is_zero_complex() && y.is_zero_complex() {
            let z = Complex::zero(&ring);
            return Ok((z.clone(), ChainMap::zero(y, &z), ChainMap::zero(&z, &x.shift(1))));
        }
        let lows = [x.low + 1, y.low];
        let highs = [x.high() + 1, y.high()];
        let low = if x.is_zero_complex() { lows[1] } else if y.is_zero_complex() { lows[0] } else { lows[0].min(lows[1]) };
        let high =
            if x.is_zero_complex() { highs[1] } else if y.is_zero_complex() { highs[0] } else { highs[0].max(highs[1]) };
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for n in low..=high {
            let xa = x.term(n - 1);
            let yb = y.term(n);
            terms.push(FpModule::direct_sum(&[&xa, &yb])?);
            if n > low {
                let (a, b) = (x.rank(n - 1), y.rank(n));
                let (a2, b2) = (x.rank(n - 2), y.rank(n - 1));
                let mut m = Matrix::zero(a2 + b2, a + b);
                m.place(0, 0, &x.d(n - 1).neg(&ring));
                m.place(a2, 0, &f.component(n - 1).neg(&ring));
                m.place(a2, a, &y.d(n));
                diffs.push(m);
            }
        }
        let cone = Complex::new_unchecked(&ring, low, terms, diffs)?;
        let tx = x.shift(1);
        let mut inj = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for n in low..=high {
            let (a, b) = (x.rank(n - 1), y.rank(n));
            if b > 0 {
                let mut m = Matrix::zero(a + b, b);
                m.place(a, 0, &Matrix::identity(&ring, b));
                inj.insert(n, m);
            }
            if a > 0 {
                let mut m = Matrix::zero(a, a + b);
                m.place(0, 0, &Matrix::identity(&ring, a));
                proj.insert(n, m);
            }
        }
        let inj = ChainMap::new_unchecked(y, &cone, inj);
        let proj = ChainMap::new_unchecked(&cone, &tx, proj);
        Ok((cone, inj, proj))
    }

    pub fn homology(&self, n: i64) -> Result<Homology> {
        Homology::compute(self, n)
    }

    pub fn is_acyclic(&self) -> Result<bool> {
        for n in self.low..=self.high() {
            if !self.homology(n)?.module.is_zero()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn stats(&self) -> Result<ComplexStats> {
        let mut supph = BTreeSet::new();
        for n in self.low..=self.high() {
            if !self.homology(n)?.module.is_zero()? {
                supph.insert(n);
            }
        }
        let min = supph.iter().next().copied();
        let max = supph.iter().next_back().copied();
        let (min_c, max_c) = if self.is_zero_complex() { (0, 0) } else { (self.low, self.high()) };
        Ok(ComplexStats { min_c, max_c, min, max, wid: max.zip(min).map(|(a, b)| a - b).unwrap_or(0), supph })
    }

    pub fn identity(&self) -> ChainMap {
        let comps = (self.low..=self.high())
            .filter(|&n| self.rank(n) > 0)
            .map(|n| (n, Matrix::identity(&self.ring, self.rank(n))))
            .collect();
        ChainMap::new_unchecked(self, self, comps)
    }
}

/// The map cone(f₁) → cone(f₂) induced by u: A₁ → A₂ and v: B₁ → B₂, where
/// h (if given) satisfies dh + hd = v∘f₁ − f₂∘u; without h the square must
/// commute on the nose. In components (a, b) ↦ (u a, v b − h a).
pub fn cone_map(f1: &ChainMap, f2: &ChainMap, u: &ChainMap, v: &ChainMap, h: Option<&Homotopy>) -> Result<ChainMap> {
    if u.source != f1.source || u.target != f2.source || v.source != f1.target || v.target != f2.target {
        return Err(Error::ShapeMismatch("cone map endpoints do not match".into()));
    }
    let ring = f1.source.ring.clone();
    let (c1, _, _) = Complex::cone(f1)?;
    let (c2, _, _) = Complex::cone(f2)?;
    let mut comps = BTreeMap::new();
    if !c1.is_zero_complex() && !c2.is_zero_complex() {
        for n in c1.low..=c1.high() {
            let (a1, b1) = (f1.source.rank(n - 1), f1.target.rank(n));
            let (a2, b2) = (f2.source.rank(n - 1), f2.target.rank(n));
            if a1 + b1 == 0 || a2 + b2 == 0 {
                continue;
            }
            let mut m = Matrix::zero(a2 + b2, a1 + b1);
            m.place(0, 0, &u.component(n - 1));
            m.place(a2, a1, &v.component(n));
            if let Some(h) = h {
                m.place(a2, 0, &h.component(n - 1).neg(&ring));
            }
            comps.insert(n, m);
        }
    }
    let map = ChainMap::new_unchecked(&c1, &c2, comps);
    if !map.is_chain_map()? {
        return Err(Error::Invariant("induced map of cones is not a chain map".into()));
    }
    Ok(map)
}

/// Degree-0 chain map given by generator matrices; missing components are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    comps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    pub fn new(source: &Complex, target: &Complex, comps: BTreeMap<i64, Matrix>) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::AmbientMismatch);
        }
        for (n, m) in &comps {
            if m.rows() != target.rank(*n) || m.cols() != source.rank(*n) {
                return Err(Error::ShapeMismatch(format!(
                    "component {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank(*n),
                    source.rank(*n)
                )));
            }
        }
        let f = ChainMap::new_unchecked(source, target, comps);
        if let Some(n) = f.failing_degree()? {
            return Err(Error::Precondition(format!("not a chain map in degree {n}")));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Complex, target: &Complex, comps: BTreeMap<i64, Matrix>) -> Self {
        let ring = &source.ring;
        let comps = comps
            .into_iter()
            .filter(|(n, m)| source.rank(*n) > 0 && target.rank(*n) > 0 && !m.is_zero())
            .map(|(n, m)| (n, m.reduce(ring)))
            .collect();
        ChainMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        ChainMap::new_unchecked(source, target, BTreeMap::new())
    }

    pub fn component(&self, n: i64) -> Matrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.target.rank(n), self.source.rank(n)))
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.comps
    }

    fn degree_span(&self) -> (i64, i64) {
        let lo = self.source.low.min(self.target.low);
        let hi = self.source.high().max(self.target.high());
        (lo, hi + 1)
    }

    /// First degree where commutation or well-definedness fails.
    pub fn failing_degree(&self) -> Result<Option<i64>> {
        let ring = &self.source.ring;
        let (lo, hi) = self.degree_span();
        for n in lo..=hi {
            let f = self.component(n);
            let y = self.target.term(n);
            if !all_zero_in(&y, &f.mul(self.source.term(n).relations(), ring)?)? {
                return Ok(Some(n));
            }
            let lhs = self.target.d(n).mul(&f, ring)?;
            let rhs = self.component(n - 1).mul(&self.source.d(n), ring)?;
            if !all_zero_in(&self.target.term(n - 1), &lhs.sub(&rhs, ring)?)? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    pub fn is_chain_map(&self) -> Result<bool> {
        Ok(self.failing_degree()?.is_none())
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("chain maps are not composable".into()));
        }
        let ring = &self.source.ring;
        let mut comps = BTreeMap::new();
        for (n, a) in &first.comps {
            if let Some(b) = self.comps.get(n) {
                comps.insert(*n, b.mul(a, ring)?);
            }
        }
        Ok(ChainMap::new_unchecked(&first.source, &self.target, comps))
    }

    fn combine(&self, other: &ChainMap, sign: bool) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("chain maps with different endpoints".into()));
        }
        let ring = &self.source.ring;
        let keys: BTreeSet<i64> = self.comps.keys().chain(other.comps.keys()).copied().collect();
        let mut comps = BTreeMap::new();
        for n in keys {
            let a = self.component(n);
            let b = other.component(n);
            comps.insert(n, if sign { a.add(&b, ring)? } else { a.sub(&b, ring)? });
        }
        Ok(ChainMap::new_unchecked(&self.source, &self.target, comps))
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.combine(other, false)
    }

    pub fn scale(&self, f: &crate::kernel::poly::Poly) -> ChainMap {
        let ring = &self.source.ring;
        let comps = self.comps.iter().map(|(n, m)| (*n, m.scale(f, ring))).collect();
        ChainMap::new_unchecked(&self.source, &self.target, comps)
    }

    /// Tⁿf between shifted complexes (components unchanged, reindexed).
    pub fn shift(&self, n: i64) -> ChainMap {
        let comps = self.comps.iter().map(|(k, m)| (k + n, m.clone())).collect();
        ChainMap::new_unchecked(&self.source.shift(n), &self.target.shift(n), comps)
    }

    /// Whether every component vanishes modulo target relations.
    pub fn is_zero(&self) -> Result<bool> {
        for (n, m) in &self.comps {
            if !all_zero_in(&self.target.term(*n), m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same components viewed between other (equal-shaped) endpoints.
    pub fn retarget(&self, source: &Complex, target: &Complex) -> ChainMap {
        ChainMap::new_unchecked(source, target, self.comps.clone())
    }
}

/// Degree-raising maps h_n: X_n → Y_{n+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub source: Complex,
    pub target: Complex,
    comps: BTreeMap<i64, Matrix>,
}

impl Homotopy {
    pub fn new(source: &Complex, target: &Complex, comps: BTreeMap<i64, Matrix>) -> Result<Self> {
        for (n, m) in &comps {
            if m.rows() != target.rank(n + 1) || m.cols() != source.rank(*n) {
                return Err(Error::ShapeMismatch(format!("homotopy component {n} has the wrong shape")));
            }
        }
        let ring = source.ring();
        let comps = comps
            .into_iter()
            .filter(|(_, m)| !m.is_zero() && m.rows() > 0 && m.cols() > 0)
            .map(|(n, m)| (n, m.reduce(ring)))
            .collect();
        Ok(Homotopy { source: source.clone(), target: target.clone(), comps })
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        Homotopy { source: source.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    pub fn component(&self, n: i64) -> Matrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.target.rank(n + 1), self.source.rank(n)))
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.comps
    }

    /// The chain map dh + hd.
    pub fn boundary(&self) -> Result<ChainMap> {
        let ring = self.source.ring();
        let lo = self.source.low.min(self.target.low) - 1;
        let hi = self.source.high().max(self.target.high()) + 1;
        let mut comps = BTreeMap::new();
        for n in lo..=hi {
            let a = self.target.d(n + 1).mul(&self.component(n), ring)?;
            let b = self.component(n - 1).mul(&self.source.d(n), ring)?;
            comps.insert(n, a.add(&b, ring)?);
        }
        Ok(ChainMap::new_unchecked(&self.source, &self.target, comps))
    }

    /// Whether dh + hd = f modulo target relations.
    pub fn witnesses(&self, f: &ChainMap) -> Result<bool> {
        self.boundary()?.sub(&f.retarget(&self.source, &self.target))?.is_zero()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::kernel::ring::Ideal;
    use crate::kernel::scalar::Field;
    use crate::module::fpmodule::Length;

    fn rxy() -> QuotientRing {
        QuotientRing::parse(Field::Rationals, &["x", "y"], &["x*y"]).unwrap()
    }

    pub(crate) fn basic(r: &QuotientRing) -> Complex {
        let d = Matrix::from_rows(vec![vec![r.parse_element("x - y").unwrap()]], 1).unwrap();
        Complex::free(r, 0, vec![vec![0], vec![1]], vec![d]).unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        let r = QuotientRing::parse(Field::Rationals, &["x", "y"], &[]).unwrap();
        let x = r.parse_element("x").unwrap();
        let d1 = Matrix::from_rows(vec![vec![x.clone()]], 1).unwrap();
        let d2 = Matrix::from_rows(vec![vec![x]], 1).unwrap();
        match Complex::free(&r, 0, vec![vec![0], vec![1], vec![2]], vec![d1, d2]) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("d_1 ∘ d_2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn homology_of_basic_complex() {
        let r = rxy();
        let p = basic(&r);
        let h0 = p.homology(0).unwrap();
        assert_eq!(h0.module.length().unwrap(), Length::Finite(2));
        assert_eq!(h0.module.annihilator().unwrap(), Ideal::parse(&r, &["x - y"]).unwrap());
        assert!(p.homology(1).unwrap().module.is_zero().unwrap());
        let s = p.stats().unwrap();
        assert_eq!((s.min_c, s.max_c, s.min, s.max, s.wid), (0, 1, Some(0), Some(0), 0));
    }

    #[test]
    fn zero_differential_homology() {
        let r = rxy();
        let p = Complex::free(&r, 0, vec![vec![0], vec![0]], vec![Matrix::zero(1, 1)]).unwrap();
        assert_eq!(p.homology(0).unwrap().module.rank(), 1);
        assert_eq!(p.homology(1).unwrap().module.rank(), 1);
        assert!(!p.homology(1).unwrap().module.has_relations());
    }

    #[test]
    fn shift_and_sum_stats() {
        let r = rxy();
        let p = basic(&r);
        assert_eq!(p.shift(0), p);
        assert_eq!(p.shift(1).shift(-1), p);
        let w = Complex::direct_sum(&[&p, &p.shift(2)]).unwrap();
        let s = w.stats().unwrap();
        assert_eq!(s.supph, BTreeSet::from([0, 2]));
        assert_eq!(s.wid, 2);
        let z = Complex::zero(&r).stats().unwrap();
        assert_eq!(z.wid, 0);
        assert!(z.supph.is_empty());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let r = rxy();
        let p = basic(&r);
        let (c, inj, proj) = Complex::cone(&p.identity()).unwrap();
        assert!(c.is_acyclic().unwrap());
        assert!(inj.is_chain_map().unwrap());
        assert!(proj.is_chain_map().unwrap());
    }

    #[test]
    fn cone_of_zero_map_splits() {
        let r = rxy();
        let p = basic(&r);
        let (c, _, _) = Complex::cone(&ChainMap::zero(&p, &p)).unwrap();
        let s = c.stats().unwrap();
        assert_eq!(s.supph, BTreeSet::from([0, 1]));
    }
}
