//! Quotient rings R = k[x]/I and their ideals.

use std::fmt;
use std::sync::Arc;

use super::groebner::{ideal_groebner, poly_normal_form};
use super::lift::LiftSystem;
use super::matrix::Matrix;
use super::monomial::Monomial;
use super::poly::{Poly, PolyRing};
use super::scalar::Field;
use super::Budget;
use crate::error::{Error, Result};

struct RingData {
    poly: PolyRing,
    gens: Vec<Poly>,
    gb: Vec<Poly>,
    budget: Budget,
    graded: bool,
}

/// A quotient of a polynomial ring by an ideal, with the reduced Gröbner basis
/// of the defining ideal cached. Cloning is cheap.
#[derive(Clone)]
pub struct QuotientRing(Arc<RingData>);

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.poly == other.0.poly && self.0.gb == other.0.gb)
    }
}

impl Eq for QuotientRing {}

impl QuotientRing {
    pub fn new(poly: PolyRing, gens: Vec<Poly>, budget: Budget) -> Result<Self> {
        let gb = ideal_groebner(&poly, &gens, &budget)?;
        let graded = gens.iter().all(|g| poly.is_homogeneous(g));
        Ok(QuotientRing(Arc::new(RingData { poly, gens, gb, budget, graded })))
    }

    /// The polynomial ring itself (defining ideal zero).
    pub fn polynomial(poly: PolyRing) -> Self {
        QuotientRing(Arc::new(RingData { poly, gens: vec![], gb: vec![], budget: Budget::default(), graded: true }))
    }

    /// Convenience constructor: `QuotientRing::parse(Field::Rationals, &["x","y"], &["x*y"])`.
    pub fn parse(field: Field, vars: &[&str], rels: &[&str]) -> Result<Self> {
        let poly = PolyRing::new(field, vars.iter().map(|s| s.to_string()).collect())?;
        let gens = rels.iter().map(|s| poly.parse(s)).collect::<Result<Vec<_>>>()?;
        QuotientRing::new(poly, gens, Budget::default())
    }

    pub fn with_budget(&self, budget: Budget) -> Self {
        let d = &self.0;
        QuotientRing(Arc::new(RingData {
            poly: d.poly.clone(),
            gens: d.gens.clone(),
            gb: d.gb.clone(),
            budget,
            graded: d.graded,
        }))
    }

    pub fn poly(&self) -> &PolyRing {
        &self.0.poly
    }

    pub fn field(&self) -> Field {
        self.0.poly.field
    }

    pub fn nvars(&self) -> usize {
        self.0.poly.nvars()
    }

    pub fn defining_generators(&self) -> &[Poly] {
        &self.0.gens
    }

    /// Reduced Gröbner basis of the defining ideal.
    pub fn gb(&self) -> &[Poly] {
        &self.0.gb
    }

    pub fn budget(&self) -> &Budget {
        &self.0.budget
    }

    /// Whether the defining ideal is homogeneous for the variable degrees.
    pub fn is_graded(&self) -> bool {
        self.0.graded
    }

    pub fn is_zero_ring(&self) -> bool {
        self.gb().iter().any(|g| g.is_constant())
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        poly_normal_form(self.poly(), f, self.gb())
    }

    pub fn parse_element(&self, s: &str) -> Result<Poly> {
        Ok(self.reduce(&self.poly().parse(s)?))
    }

    pub fn zero(&self) -> Poly {
        Poly::zero()
    }

    pub fn one(&self) -> Poly {
        self.reduce(&self.poly().one())
    }

    pub fn var(&self, i: usize) -> Poly {
        self.reduce(&self.poly().var(i))
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.poly().add(a, b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.poly().sub(a, b)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        self.poly().neg(a)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&self.poly().mul(a, b))
    }

    pub fn format(&self, a: &Poly) -> String {
        self.poly().format(a)
    }

    /// Degree used for grading bookkeeping; zero for the zero polynomial.
    pub fn degree(&self, a: &Poly) -> i64 {
        self.poly().degree(a).unwrap_or(0)
    }

    pub fn describe(&self) -> String {
        let p = self.poly();
        let gens: Vec<String> = self.0.gens.iter().map(|g| p.format(g)).collect();
        format!("{}[{}]/({})", p.field.name(), p.vars.join(","), gens.join(", "))
    }

    /// Krull dimension of R; `None` for the zero ring.
    pub fn dimension(&self) -> Option<usize> {
        let lts: Vec<Monomial> = self.gb().iter().map(|g| g.terms[0].0.clone()).collect();
        monomial_ideal_dimension(self.nvars(), &lts)
    }

    /// The quotient R/J as a new ring over the same polynomial ring.
    pub fn quotient(&self, j: &Ideal) -> Result<QuotientRing> {
        if j.ring() != self {
            return Err(Error::AmbientMismatch);
        }
        let mut gens = self.0.gens.clone();
        gens.extend(j.generators().iter().cloned());
        QuotientRing::new(self.poly().clone(), gens, *self.budget())
    }

    /// The homogeneous maximal ideal generated by the variables.
    pub fn irrelevant_ideal(&self) -> Result<Ideal> {
        Ideal::new(self, (0..self.nvars()).map(|i| self.var(i)).collect())
    }
}

/// Krull dimension of k[x]/L for a monomial ideal L given by generators:
/// the largest set of variables containing the support of no generator.
pub fn monomial_ideal_dimension(nvars: usize, gens: &[Monomial]) -> Option<usize> {
    if gens.iter().any(|m| m.is_one()) {
        return None;
    }
    let masks: Vec<u64> = gens.iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
    let mut best = 0;
    for u in 0u64..(1u64 << nvars) {
        let size = u.count_ones() as usize;
        if size <= best {
            continue;
        }
        if masks.iter().all(|&g| g & !u != 0) {
            best = size;
        }
    }
    Some(best)
}

/// An ideal J of a quotient ring R, stored with the Gröbner basis of its
/// preimage in the polynomial ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: QuotientRing,
    gens: Vec<Poly>,
    gb: Vec<Poly>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gb == other.gb
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(ring: &QuotientRing, gens: Vec<Poly>) -> Result<Self> {
        let gens: Vec<Poly> = gens.iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        let mut all = ring.gb().to_vec();
        all.extend(gens.iter().cloned());
        let gb = ideal_groebner(ring.poly(), &all, ring.budget())?;
        Ok(Ideal { ring: ring.clone(), gens, gb })
    }

    pub fn parse(ring: &QuotientRing, gens: &[&str]) -> Result<Self> {
        let ps = gens.iter().map(|s| ring.parse_element(s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, ps)
    }

    pub fn zero(ring: &QuotientRing) -> Self {
        Ideal { ring: ring.clone(), gens: vec![], gb: ring.gb().to_vec() }
    }

    pub fn unit(ring: &QuotientRing) -> Self {
        let one = ring.poly().one();
        Ideal { ring: ring.clone(), gens: vec![one.clone()], gb: vec![one] }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Gröbner basis of the preimage J + I in the polynomial ring.
    pub fn groebner(&self) -> &[Poly] {
        &self.gb
    }

    /// Gröbner basis elements that are nonzero in R: a canonical generating set.
    pub fn canonical_generators(&self) -> Vec<Poly> {
        self.gb.iter().filter(|g| !self.ring.reduce(g).is_zero()).map(|g| self.ring.reduce(g)).collect()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        poly_normal_form(self.ring.poly(), f, &self.gb).is_zero()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        poly_normal_form(self.ring.poly(), f, &self.gb)
    }

    pub fn is_unit(&self) -> bool {
        self.gb.iter().any(|g| g.is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(self.ring.mul(a, b));
            }
        }
        Ideal::new(&self.ring, g)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    fn relation_row(&self) -> Matrix {
        Matrix::from_rows(vec![self.gens.clone()], self.gens.len()).unwrap()
    }

    /// (J : f) = {g | g·f ∈ J}. Colon by zero is the unit ideal.
    pub fn colon(&self, f: &Poly) -> Result<Ideal> {
        let f = self.ring.reduce(f);
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let a = Matrix::from_rows(vec![vec![f.clone()]], 1)?;
        let sys = LiftSystem::new(&self.ring, &[0], &a, &[self.ring.degree(&f)], &self.relation_row())?;
        let (k, _) = sys.kernel();
        Ideal::new(&self.ring, k.row_vec(0))
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let one = self.ring.one();
        let a = Matrix::from_rows(vec![vec![one.clone()], vec![one]], 1)?;
        let rel = Matrix::block_diag(&[&self.relation_row(), &other.relation_row()]);
        let sys = LiftSystem::new(&self.ring, &[0, 0], &a, &[0], &rel)?;
        let (k, _) = sys.kernel();
        Ideal::new(&self.ring, k.row_vec(0))
    }

    /// Krull dimension of R/J; `None` when J is the unit ideal.
    pub fn krull_dimension(&self) -> Option<usize> {
        let lts: Vec<Monomial> = self.gb.iter().map(|g| g.terms[0].0.clone()).collect();
        monomial_ideal_dimension(self.ring.nvars(), &lts)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| self.ring.poly().is_homogeneous(g))
    }

    pub fn format(&self) -> String {
        let g: Vec<String> = self.gens.iter().map(|p| self.ring.format(p)).collect();
        format!("({})", g.join(", "))
    }
}

/// Whether multiplication by f is injective on R.
pub fn is_regular_on_ring(ring: &QuotientRing, f: &Poly) -> Result<bool> {
    let f = ring.reduce(f);
    if f.is_zero() {
        return Ok(false);
    }
    Ok(Ideal::zero(ring).colon(&f)?.is_zero_in_ring())
}

impl Ideal {
    /// True when every generator vanishes in R.
    pub fn is_zero_in_ring(&self) -> bool {
        self.gens.iter().all(|g| self.ring.reduce(g).is_zero())
    }
}
