//! A deliberately naive cross-check for graded computations over ℚ.
//!
//! Everything is done one degree at a time: the degree-d part of an ideal is
//! the span of all products m·g with m a monomial, and questions about
//! membership, colons, syzygies and lengths become Gaussian elimination on
//! those spans. No Gröbner bases are involved. Only the standard grading is
//! supported, and all inputs must be homogeneous.

mod parse;
mod space;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use parse::ParseError;
pub use space::{Key, Space, Vector};

pub type Exponent = Vec<u32>;

/// A polynomial as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(pub BTreeMap<Exponent, BigRational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.0.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.0.clone();
        for (e, c) in &other.0 {
            let v = out.entry(e.clone()).or_insert_with(BigRational::zero);
            *v += c;
            if v.is_zero() {
                out.remove(e);
            }
        }
        Poly(out)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(e, c)| (e.clone(), -c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let mut t = BTreeMap::new();
                t.insert(e, c1 * c2);
                out = out.add(&Poly(t));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &[u32]) -> Poly {
        Poly(self.0.iter().map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone())).collect())
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.0.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.0.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// Homogeneous components by degree.
    pub fn components(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.0 {
            out.entry(e.iter().sum()).or_default().0.insert(e.clone(), c.clone());
        }
        out
    }

    fn as_vector(&self, component: usize) -> Vector {
        self.0.iter().map(|(e, c)| ((component, e.clone()), c.clone())).collect()
    }
}

/// All exponent vectors of total degree d in n variables.
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A standard graded ring ℚ[vars]/(relations) with a degree cap.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub vars: Vec<String>,
    pub relations: Vec<Poly>,
    pub max_degree: u32,
}

impl Oracle {
    pub fn new(vars: &[&str], relations: &[&str], max_degree: u32) -> Result<Self, ParseError> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut o = Oracle { vars, relations: vec![], max_degree };
        o.relations = relations.iter().map(|r| o.parse(r)).collect::<Result<_, _>>()?;
        Ok(o)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn parse(&self, text: &str) -> Result<Poly, ParseError> {
        parse::parse(text, &self.vars)
    }

    fn check_homogeneous(polys: &[Poly]) {
        assert!(polys.iter().all(Poly::is_homogeneous), "oracle inputs must be homogeneous");
    }

    /// Degree-d part of the ideal (relations + gens) of the polynomial ring,
    /// placed in the given component.
    fn ideal_span_into(&self, gens: &[Poly], d: u32, component: usize, space: &mut Space) {
        for g in self.relations.iter().chain(gens) {
            let Some(e) = g.degree() else { continue };
            if e > d {
                continue;
            }
            for m in monomials(self.nvars(), d - e) {
                space.insert(g.mul_monomial(&m).as_vector(component));
            }
        }
    }

    pub fn ideal_space(&self, gens: &[Poly], d: u32) -> Space {
        Self::check_homogeneous(gens);
        let mut s = Space::new();
        self.ideal_span_into(gens, d, 0, &mut s);
        s
    }

    /// f ∈ (gens) in the quotient ring, checked on every homogeneous component.
    pub fn is_member(&self, f: &Poly, gens: &[Poly]) -> bool {
        f.components().iter().all(|(&d, part)| self.ideal_space(gens, d).contains(&part.as_vector(0)))
    }

    /// dim_ℚ of the degree-d part of R/(gens).
    pub fn hilbert(&self, gens: &[Poly], d: u32) -> usize {
        monomials(self.nvars(), d).len() - self.ideal_space(gens, d).rank()
    }

    /// Length of R/(gens) if the Hilbert function vanishes at some degree up
    /// to the cap. A vanishing degree-d part of a quotient of a standard
    /// graded ring forces all higher parts to vanish.
    pub fn length(&self, gens: &[Poly]) -> Option<usize> {
        let mut total = 0;
        for d in 0..=self.max_degree {
            let h = self.hilbert(gens, d);
            if h == 0 {
                return Some(total);
            }
            total += h;
        }
        None
    }

    /// Degree-d part of ((gens) : f), as polynomials of degree d.
    pub fn colon_space(&self, gens: &[Poly], f: &Poly, d: u32) -> Space {
        Self::check_homogeneous(gens);
        assert!(f.is_homogeneous() && !f.is_zero());
        let e = f.degree().unwrap();
        let target = self.ideal_space(gens, d + e);
        let basis = monomials(self.nvars(), d);
        let images: Vec<Vector> = basis
            .iter()
            .map(|m| target.reduce(&f.mul_monomial(m).as_vector(0)))
            .collect();
        let sources: Vec<Vector> = basis.iter().map(|m| Poly::monomial(m).as_vector(0)).collect();
        space::kernel_combinations(&images, &sources)
    }

    /// Syzygies of degree d of a row [a_1 … a_n]: tuples (q_i) with q_i of
    /// degree d − col_degrees[i] and Σ q_i a_i = 0 in R. Tuples with every
    /// q_i in the relations are included.
    pub fn syzygy_space(&self, row: &[Poly], col_degrees: &[u32], d: u32) -> Space {
        assert_eq!(row.len(), col_degrees.len());
        Self::check_homogeneous(row);
        let target = self.ideal_space(&[], d);
        let mut images = Vec::new();
        let mut sources = Vec::new();
        for (i, a) in row.iter().enumerate() {
            if col_degrees[i] > d {
                continue;
            }
            for m in monomials(self.nvars(), d - col_degrees[i]) {
                images.push(target.reduce(&a.mul_monomial(&m).as_vector(0)));
                sources.push(Poly::monomial(&m).as_vector(i));
            }
        }
        space::kernel_combinations(&images, &sources)
    }

    /// Degree-d part of the submodule of R^n generated by `cols`, where the
    /// free generators sit in `row_degrees` and column j has degree
    /// `col_degrees[j]`; relations of R are included in every component.
    pub fn module_space(&self, cols: &[Vec<Poly>], row_degrees: &[u32], col_degrees: &[u32], d: u32) -> Space {
        let mut s = Space::new();
        for (i, &e) in row_degrees.iter().enumerate() {
            if e <= d {
                self.ideal_span_into(&[], d - e, i, &mut s);
            }
        }
        for (col, &e) in cols.iter().zip(col_degrees) {
            if e > d {
                continue;
            }
            for m in monomials(self.nvars(), d - e) {
                let mut v = Vector::new();
                for (i, p) in col.iter().enumerate() {
                    v.extend(p.mul_monomial(&m).as_vector(i));
                }
                s.insert(v);
            }
        }
        s
    }

    /// Whether `gens` (columns of degrees `gen_degrees`) span exactly the
    /// degree-d syzygies of `row`, whose entries have degrees `row_degrees`.
    pub fn compare_syzygies(&self, row: &[Poly], row_degrees: &[u32], gens: &[Vec<Poly>], gen_degrees: &[u32], d: u32) -> bool {
        let oracle = self.syzygy_space(row, row_degrees, d);
        let core = self.module_space(gens, row_degrees, gen_degrees, d);
        oracle.same_span(&core)
    }
}

impl Poly {
    pub fn monomial(e: &[u32]) -> Poly {
        let mut p = Poly::zero();
        p.0.insert(e.to_vec(), BigRational::one());
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 3).len(), 4);
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(0, 0).len(), 1);
    }

    #[test]
    fn membership_and_hilbert() {
        let o = Oracle::new(&["x", "y"], &[], 6).unwrap();
        let g = vec![o.parse("x^2 - x*y").unwrap(), o.parse("x*y").unwrap()];
        assert!(o.is_member(&o.parse("x^2").unwrap(), &g));
        assert!(!o.is_member(&o.parse("y^2").unwrap(), &g));
        assert!(o.is_member(&o.parse("x^3 + x^2*y").unwrap(), &g));
        assert_eq!(o.hilbert(&g, 2), 1);
        let r = Oracle::new(&["x", "y"], &["x*y"], 6).unwrap();
        let m = vec![r.parse("x - y").unwrap()];
        assert_eq!(r.length(&m), Some(2));
        let m2 = vec![r.parse("(x - y)^2").unwrap()];
        assert_eq!(r.length(&m2), Some(4));
        assert_eq!(r.length(&[]), None);
    }

    #[test]
    fn colon() {
        let o = Oracle::new(&["x", "y"], &[], 6).unwrap();
        let xy = vec![o.parse("x*y").unwrap()];
        let c = o.colon_space(&xy, &o.parse("x").unwrap(), 1);
        let y = o.ideal_space(&[o.parse("y").unwrap()], 1);
        assert!(c.same_span(&y));
        let c = o.colon_space(&xy, &o.parse("x - y").unwrap(), 2);
        assert!(c.same_span(&o.ideal_space(&xy, 2)));
    }

    #[test]
    fn syzygies() {
        let r = Oracle::new(&["x", "y"], &["x*y"], 6).unwrap();
        let row = vec![r.parse("x").unwrap()];
        let gens = vec![vec![r.parse("y").unwrap()]];
        for d in 0..=4 {
            assert!(r.compare_syzygies(&row, &[1], &gens, &[2], d), "degree {d}");
        }
        let wrong = vec![vec![r.parse("y^2").unwrap()]];
        assert!(!r.compare_syzygies(&row, &[1], &wrong, &[3], 2));
    }
}
