//! The Hom complex Hom(X, Y) for a bounded free complex X, and the linear
//! problems built on it: homotopy classes, null-homotopies, lifting along
//! quasi-isomorphisms.
//!
//! Hom_n = ⊕_p Hom(X_p, Y_{p+n}) with D(φ) = d_Y φ − (−1)ⁿ φ d_X, so degree-0
//! cycles are chain maps and D(h) for h ∈ Hom_1 is dh + hd.

use std::collections::BTreeMap;

use super::{ChainMap, Complex, Homotopy};
use crate::error::{Error, Result};
use crate::kernel::lift::LiftSystem;
use crate::kernel::matrix::Matrix;
use crate::kernel::poly::Poly;
use crate::module::fpmodule::FpModule;

/// Block layout of Hom_n: (p, offset) for each p with nonzero block.
type Layout = Vec<(i64, usize)>;

pub struct HomComplex {
    pub source: Complex,
    pub target: Complex,
    pub complex: Complex,
    layouts: BTreeMap<i64, Layout>,
}

impl HomComplex {
    pub fn new(x: &Complex, y: &Complex) -> Result<Self> {
        if x.ring() != y.ring() {
            return Err(Error::AmbientMismatch);
        }
        if !x.is_free() {
            return Err(Error::Precondition("Hom complex needs a free source".into()));
        }
        let ring = x.ring();
        if x.is_zero_complex() || y.is_zero_complex() {
            return Ok(HomComplex {
                source: x.clone(),
                target: y.clone(),
                complex: Complex::zero(ring),
                layouts: BTreeMap::new(),
            });
        }
        let lo = y.low() - x.high() - 1;
        let hi = y.high() - x.low() + 1;
        let mut layouts = BTreeMap::new();
        let mut terms = Vec::new();
        for n in lo..=hi {
            let mut layout = Vec::new();
            let mut degrees = Vec::new();
            let mut rels = Vec::new();
            let mut off = 0;
            for p in x.low()..=x.high() {
                let (a, b) = (x.rank(p), y.rank(p + n));
                if a == 0 || b == 0 {
                    continue;
                }
                layout.push((p, off));
                let yt = y.term(p + n);
                for j in 0..a {
                    let dx = x.degrees(p)[j];
                    degrees.extend(yt.degrees().iter().map(|d| d - dx));
                    rels.push(yt.relations().clone());
                }
                off += a * b;
            }
            let refs: Vec<&Matrix> = rels.iter().collect();
            let rel = if refs.is_empty() { Matrix::zero(0, 0) } else { Matrix::block_diag(&refs) };
            terms.push(FpModule::new(ring, degrees, rel)?);
            layouts.insert(n, layout);
        }
        let mut diffs = Vec::new();
        for n in lo + 1..=hi {
            diffs.push(Self::differential(x, y, n, &layouts[&n], &layouts[&(n - 1)], terms[(n - 1 - lo) as usize].rank(), terms[(n - lo) as usize].rank()));
        }
        let complex = Complex::new_unchecked(ring, lo, terms, diffs)?;
        Ok(HomComplex { source: x.clone(), target: y.clone(), complex, layouts })
    }

    fn offset(layout: &Layout, p: i64) -> Option<usize> {
        layout.iter().find(|(q, _)| *q == p).map(|(_, o)| *o)
    }

    fn differential(x: &Complex, y: &Complex, n: i64, src: &Layout, dst: &Layout, rows: usize, cols: usize) -> Matrix {
        let ring = x.ring();
        let p_ring = ring.poly();
        let mut m = Matrix::zero(rows, cols);
        let sign = if n % 2 == 0 { -1 } else { 1 };
        for &(p, off) in src {
            let (a, b) = (x.rank(p), y.rank(p + n));
            let dy = y.d(p + n);
            let dx = x.d(p + 1);
            let b_down = y.rank(p + n - 1);
            let a_up = x.rank(p + 1);
            let tgt_p = Self::offset(dst, p);
            let tgt_up = Self::offset(dst, p + 1);
            for j in 0..a {
                for i in 0..b {
                    let col = off + j * b + i;
                    if let Some(t) = tgt_p {
                        for i2 in 0..b_down {
                            let e = dy.get(i2, i);
                            if !e.is_zero() {
                                m.set(t + j * b_down + i2, col, e.clone());
                            }
                        }
                    }
                    if let Some(t) = tgt_up {
                        for j2 in 0..a_up {
                            let e = dx.get(j, j2);
                            if !e.is_zero() {
                                let v = p_ring.scale(e, &ring.field().from_i64(sign));
                                let idx = t + j2 * b + i;
                                let cur = m.get(idx, col).clone();
                                m.set(idx, col, ring.add(&cur, &v));
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// Flattens maps φ_p: X_p → Y_{p+n} into a vector of Hom_n.
    pub fn to_vector(&self, n: i64, comps: &BTreeMap<i64, Matrix>) -> Vec<Poly> {
        let mut v = vec![Poly::zero(); self.complex.rank(n)];
        if let Some(layout) = self.layouts.get(&n) {
            for &(p, off) in layout {
                let Some(m) = comps.get(&p) else { continue };
                let b = self.target.rank(p + n);
                for j in 0..m.cols() {
                    for i in 0..m.rows() {
                        v[off + j * b + i] = m.get(i, j).clone();
                    }
                }
            }
        }
        v
    }

    pub fn from_vector(&self, n: i64, v: &[Poly]) -> BTreeMap<i64, Matrix> {
        let mut out = BTreeMap::new();
        if let Some(layout) = self.layouts.get(&n) {
            for &(p, off) in layout {
                let (a, b) = (self.source.rank(p), self.target.rank(p + n));
                let mut m = Matrix::zero(b, a);
                for j in 0..a {
                    for i in 0..b {
                        m.set(i, j, v[off + j * b + i].clone());
                    }
                }
                out.insert(p, m);
            }
        }
        out
    }

    pub fn chain_map_vector(&self, f: &ChainMap) -> Vec<Poly> {
        self.to_vector(0, f.components())
    }

    pub fn chain_map_from(&self, v: &[Poly]) -> ChainMap {
        ChainMap::new_unchecked(&self.source, &self.target, self.from_vector(0, v))
    }

    pub fn homotopy_from(&self, v: &[Poly]) -> Result<Homotopy> {
        Homotopy::new(&self.source, &self.target, self.from_vector(1, v))
    }

    /// Matrix of φ ↦ v∘φ from Hom_n(X, A) to Hom_n(X, B) (`self` is Hom(X, A)).
    pub fn postcompose(&self, other: &HomComplex, v: &ChainMap, n: i64) -> Result<Matrix> {
        let ring = self.source.ring();
        let rows = other.complex.rank(n);
        let cols = self.complex.rank(n);
        let mut m = Matrix::zero(rows, cols);
        let (Some(src), Some(dst)) = (self.layouts.get(&n), other.layouts.get(&n)) else {
            return Ok(m);
        };
        for &(p, off) in src {
            let Some(t) = Self::offset(dst, p) else { continue };
            let vp = v.component(p + n);
            let (a, b) = (self.source.rank(p), self.target.rank(p + n));
            let b2 = other.target.rank(p + n);
            for j in 0..a {
                for i in 0..b {
                    for i2 in 0..b2 {
                        let e = vp.get(i2, i);
                        if !e.is_zero() {
                            m.set(t + j * b2 + i2, off + j * b + i, ring.reduce(e));
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn d(&self, n: i64) -> Matrix {
        self.complex.d(n)
    }
}

/// Chain maps X → Y modulo homotopy, as a module.
pub fn homotopy_classes(x: &Complex, y: &Complex) -> Result<FpModule> {
    let h = HomComplex::new(x, y)?;
    Ok(h.complex.homology(0)?.module)
}

/// Solves dh + hd = f, or reports an obstruction.
pub fn null_homotopy(f: &ChainMap) -> Result<Homotopy> {
    let h = HomComplex::new(&f.source, &f.target)?;
    let ring = f.source.ring();
    let target = h.complex.term(0);
    let v = h.chain_map_vector(f);
    if v.iter().all(|p| p.is_zero()) {
        return Ok(Homotopy::zero(&f.source, &f.target));
    }
    let sys = LiftSystem::new(ring, target.degrees(), &h.d(1), h.complex.term(1).degrees(), target.relations())?;
    match sys.lift_column(&v) {
        Some(x) => {
            let hom = h.homotopy_from(&x)?;
            if !hom.witnesses(f)? {
                return Err(Error::Invariant("null-homotopy failed verification".into()));
            }
            Ok(hom)
        }
        None => Err(Error::NotNullHomotopic { degree: obstruction_degree(f)? }),
    }
}

fn obstruction_degree(f: &ChainMap) -> Result<i64> {
    let rep = super::homology::is_quasi_isomorphism(f);
    if let Ok(rep) = rep {
        for d in &rep.degrees {
            if !d.map.is_zero()? {
                return Ok(d.degree);
            }
        }
    }
    Ok(f.components().keys().next().copied().unwrap_or(f.source.low()))
}

/// Given a quasi-isomorphism v: A → B and f: X → B with X bounded free,
/// returns g: X → A and h with dh + hd = v∘g − f.
pub fn lift_along_qis(x: &Complex, v: &ChainMap, f: &ChainMap) -> Result<(ChainMap, Homotopy)> {
    if f.source != *x || f.target != v.target {
        return Err(Error::ShapeMismatch("lift_along_qis endpoints do not match".into()));
    }
    let ring = x.ring();
    let ha = HomComplex::new(x, &v.source)?;
    let hb = HomComplex::new(x, &v.target)?;
    let a0 = ha.complex.rank(0);
    let b1 = hb.complex.rank(1);
    let am1 = ha.complex.term(-1);
    let b0 = hb.complex.term(0);
    let fv = hb.chain_map_vector(f);
    if fv.iter().all(|p| p.is_zero()) {
        return Ok((ChainMap::zero(x, &v.source), Homotopy::zero(x, &v.target)));
    }
    let vstar = ha.postcompose(&hb, v, 0)?;
    let mut a = Matrix::zero(am1.rank() + b0.rank(), a0 + b1);
    a.place(0, 0, &ha.d(0));
    a.place(am1.rank(), 0, &vstar);
    a.place(am1.rank(), a0, &hb.d(1).neg(ring));
    let mut row_deg = am1.degrees().to_vec();
    row_deg.extend_from_slice(b0.degrees());
    let mut col_deg = ha.complex.degrees(0);
    col_deg.extend(hb.complex.degrees(1));
    let rel = Matrix::block_diag(&[am1.relations(), b0.relations()]);
    let sys = LiftSystem::new(ring, &row_deg, &a, &col_deg, &rel)?;
    let mut rhs = vec![Poly::zero(); am1.rank()];
    rhs.extend(fv);
    let sol = sys
        .lift_column(&rhs)
        .ok_or_else(|| Error::Invariant("no lift along a quasi-isomorphism from a free complex".into()))?;
    let g = ha.chain_map_from(&sol[..a0]);
    let h = hb.homotopy_from(&sol[a0..])?;
    if !g.is_chain_map()? {
        return Err(Error::Invariant("lifted map is not a chain map".into()));
    }
    let diff = v.compose(&g)?.sub(f)?;
    if !h.witnesses(&diff)? {
        return Err(Error::Invariant("lift homotopy failed verification".into()));
    }
    Ok((g, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ring::{Ideal, QuotientRing};
    use crate::kernel::scalar::Field;
    use crate::module::fpmodule::Length;

    fn setup() -> (QuotientRing, Complex) {
        let r = QuotientRing::parse(Field::Rationals, &["x", "y"], &["x*y"]).unwrap();
        let p = super::super::tests::basic(&r);
        (r, p)
    }

    #[test]
    fn endomorphisms_of_basic_complex() {
        let (r, p) = setup();
        let e = homotopy_classes(&p, &p).unwrap();
        assert_eq!(e.length().unwrap(), Length::Finite(2));
        assert_eq!(e.annihilator().unwrap(), Ideal::parse(&r, &["x - y"]).unwrap());
    }

    #[test]
    fn scalar_multiple_is_null_homotopic() {
        let (r, p) = setup();
        let f = p.identity().scale(&r.parse_element("x - y").unwrap());
        let h = null_homotopy(&f).unwrap();
        assert!(h.witnesses(&f).unwrap());
        assert_eq!(h.component(0), Matrix::identity(&r, 1));
        assert!(matches!(null_homotopy(&p.identity()), Err(Error::NotNullHomotopic { degree: 0 })));
    }

    #[test]
    fn lift_along_augmentation() {
        let (r, p) = setup();
        let m = p.homology(0).unwrap().module;
        let t = Complex::one_term(&m, 0);
        let aug = ChainMap::new(&p, &t, BTreeMap::from([(0, Matrix::identity(&r, 1))])).unwrap();
        let (g, h) = lift_along_qis(&p, &aug, &aug).unwrap();
        let diff = g.sub(&p.identity()).unwrap();
        assert!(null_homotopy(&diff).is_ok());
        assert!(h.witnesses(&aug.compose(&g).unwrap().sub(&aug).unwrap()).unwrap());
    }
}
