//! Kernels and lifts for a matrix over R = S/I modulo a relation submodule.
//!
//! For A: R^s → R^r and relations N ⊂ R^r, we compute one Gröbner basis over
//! S of the submodule of S^{r+s} spanned by (a_j; e_j), (n_k; 0) and
//! (g·e_i; 0) for g in the basis of I. With position-over-term ordering the
//! first r positions are eliminated first, which yields both
//! {x | A x ∈ N} and solutions of A x ≡ b (mod N).

use super::groebner::{groebner, reduce, Vector};
use super::matrix::Matrix;
use super::poly::Poly;
use super::ring::QuotientRing;
use crate::error::{Error, Result};

pub struct LiftSystem {
    ring: QuotientRing,
    r: usize,
    s: usize,
    shifts: Vec<i64>,
    gb: Vec<Vector>,
}

impl LiftSystem {
    /// `row_degrees` are the degrees of the target generators, `col_degrees`
    /// the degrees of the columns of `a` (images of source generators).
    pub fn new(ring: &QuotientRing, row_degrees: &[i64], a: &Matrix, col_degrees: &[i64], rel: &Matrix) -> Result<Self> {
        let r = a.rows();
        let s = a.cols();
        if row_degrees.len() != r || col_degrees.len() != s || rel.rows() != r {
            return Err(Error::ShapeMismatch(format!(
                "lift system: {r}x{s} matrix, {} row degrees, {} column degrees, relations with {} rows",
                row_degrees.len(),
                col_degrees.len(),
                rel.rows()
            )));
        }
        let p = ring.poly();
        let mut shifts = row_degrees.to_vec();
        shifts.extend_from_slice(col_degrees);
        let mut gens = Vec::with_capacity(s + rel.cols() + r * ring.gb().len());
        for j in 0..s {
            let mut col = a.column(j);
            let mut unit = vec![Poly::zero(); s];
            unit[j] = p.one();
            col.extend(unit);
            gens.push(Vector::normalize(p, Vector::from_polys(&col, 0).terms));
        }
        for k in 0..rel.cols() {
            gens.push(Vector::normalize(p, Vector::from_polys(&rel.column(k), 0).terms));
        }
        for i in 0..r {
            for g in ring.gb() {
                gens.push(Vector::normalize(p, Vector::from_polys([g], i).terms));
            }
        }
        let gb = groebner(p, &gens, &shifts, ring.budget())?;
        Ok(LiftSystem { ring: ring.clone(), r, s, shifts, gb })
    }

    /// Membership structure for the submodule N + I·S^r of S^r.
    pub fn membership(ring: &QuotientRing, row_degrees: &[i64], rel: &Matrix) -> Result<Self> {
        LiftSystem::new(ring, row_degrees, &Matrix::zero(rel.rows(), 0), &[], rel)
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn basis(&self) -> &[Vector] {
        &self.gb
    }

    /// Generators of {x ∈ R^s | A x ∈ N} and their degrees. Zero columns are
    /// dropped; order is the Gröbner basis order, hence deterministic.
    pub fn kernel(&self) -> (Matrix, Vec<i64>) {
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for g in &self.gb {
            if g.leading().unwrap().pos < self.r {
                continue;
            }
            let polys = g.to_polys(self.r + self.s);
            let x: Vec<Poly> = polys[self.r..].iter().map(|p| self.ring.reduce(p)).collect();
            if x.iter().all(|p| p.is_zero()) {
                continue;
            }
            degs.push(g.degree(self.ring.poly(), &self.shifts));
            cols.push(x);
        }
        (Matrix::from_columns(self.s, &cols), degs)
    }

    /// Normal form of a target vector modulo image(A) + N + I.
    pub fn normal_form(&self, b: &[Poly]) -> Vec<Poly> {
        let v = Vector::normalize(self.ring.poly(), Vector::from_polys(b, 0).terms);
        let rem = reduce(self.ring.poly(), &v, &self.gb);
        rem.to_polys(self.r + self.s)[..self.r].to_vec()
    }

    /// Some x with A x ≡ b (mod N), or `None`.
    pub fn lift_column(&self, b: &[Poly]) -> Option<Vec<Poly>> {
        assert_eq!(b.len(), self.r, "lift target length");
        let v = Vector::normalize(self.ring.poly(), Vector::from_polys(b, 0).terms);
        let rem = reduce(self.ring.poly(), &v, &self.gb);
        if rem.leading().is_some_and(|t| t.pos < self.r) {
            return None;
        }
        let polys = rem.to_polys(self.r + self.s);
        Some(polys[self.r..].iter().map(|p| self.ring.reduce(&self.ring.neg(p))).collect())
    }

    /// Column-by-column lift; on failure reports the first column without one.
    pub fn lift(&self, b: &Matrix) -> std::result::Result<Matrix, usize> {
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            match self.lift_column(&b.column(j)) {
                Some(x) => cols.push(x),
                None => return Err(j),
            }
        }
        Ok(Matrix::from_columns(self.s, &cols))
    }

    /// Whether b ∈ image(A) + N.
    pub fn contains(&self, b: &[Poly]) -> bool {
        self.normal_form(b).iter().all(|p| p.is_zero())
    }
}
