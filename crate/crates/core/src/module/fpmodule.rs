//! Finitely presented graded modules and their morphisms.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::lift::LiftSystem;
use crate::kernel::matrix::Matrix;
use crate::kernel::monomial::Monomial;
use crate::kernel::poly::Poly;
use crate::kernel::ring::{monomial_ideal_dimension, Ideal, QuotientRing};

/// Degree of a column vector whose row i sits in degree `row_degrees[i]`:
/// the largest term degree plus row shift. Zero columns get degree 0.
pub fn column_degree(ring: &QuotientRing, col: &[Poly], row_degrees: &[i64]) -> i64 {
    col.iter()
        .zip(row_degrees)
        .filter_map(|(p, d)| ring.poly().degree(p).map(|e| e + d))
        .max()
        .unwrap_or(0)
}

pub fn column_is_homogeneous(ring: &QuotientRing, col: &[Poly], row_degrees: &[i64]) -> bool {
    let mut seen = None;
    for (p, d) in col.iter().zip(row_degrees) {
        for (m, _) in &p.terms {
            let e = ring.poly().mono_degree(m) + d;
            match seen {
                None => seen = Some(e),
                Some(x) if x != e => return false,
                _ => {}
            }
        }
    }
    true
}

pub fn column_degrees(ring: &QuotientRing, m: &Matrix, row_degrees: &[i64]) -> Vec<i64> {
    (0..m.cols()).map(|j| column_degree(ring, &m.column(j), row_degrees)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<usize> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

/// Cokernel of a presentation matrix R^t → ⊕ R(−d_i).
#[derive(Clone)]
pub struct FpModule {
    ring: QuotientRing,
    degrees: Vec<i64>,
    rel: Matrix,
    rel_degrees: Vec<i64>,
    graded: bool,
    membership: OnceLock<Arc<LiftSystem>>,
}

impl fmt::Debug for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FpModule")
            .field("degrees", &self.degrees)
            .field("relations", &self.rel.format(&self.ring))
            .finish()
    }
}

impl PartialEq for FpModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.degrees == other.degrees && self.rel == other.rel
    }
}

impl Eq for FpModule {}

/// A module after removing generators that relations express in terms of the
/// others; `to_new` maps old generators into the new module and `from_new`
/// expresses new generators through old ones.
#[derive(Clone, Debug)]
pub struct Pruned {
    pub module: FpModule,
    pub to_new: Matrix,
    pub from_new: Matrix,
}

impl FpModule {
    pub fn new(ring: &QuotientRing, degrees: Vec<i64>, rel: Matrix) -> Result<Self> {
        if rel.rows() != degrees.len() {
            return Err(Error::ShapeMismatch(format!(
                "presentation has {} rows but {} generators",
                rel.rows(),
                degrees.len()
            )));
        }
        let rel = rel.reduce(ring);
        let keep: Vec<usize> = (0..rel.cols()).filter(|&j| rel.column(j).iter().any(|p| !p.is_zero())).collect();
        let rel = rel.select_columns(&keep);
        let graded = ring.is_graded()
            && (0..rel.cols()).all(|j| column_is_homogeneous(ring, &rel.column(j), &degrees));
        let rel_degrees = column_degrees(ring, &rel, &degrees);
        Ok(FpModule { ring: ring.clone(), degrees, rel, rel_degrees, graded, membership: OnceLock::new() })
    }

    pub fn free(ring: &QuotientRing, degrees: Vec<i64>) -> Self {
        let n = degrees.len();
        FpModule::new(ring, degrees, Matrix::zero(n, 0)).unwrap()
    }

    pub fn zero(ring: &QuotientRing) -> Self {
        FpModule::free(ring, vec![])
    }

    /// R/J generated in degree 0.
    pub fn cyclic(ideal: &Ideal) -> Self {
        let ring = ideal.ring();
        let gens = ideal.generators().to_vec();
        let rel = Matrix::from_rows(vec![gens.clone()], gens.len()).unwrap();
        FpModule::new(ring, vec![0], rel).unwrap()
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn relations(&self) -> &Matrix {
        &self.rel
    }

    pub fn relation_degrees(&self) -> &[i64] {
        &self.rel_degrees
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn has_relations(&self) -> bool {
        self.rel.cols() > 0
    }

    /// Gröbner data for N + I·S^r, built once.
    pub fn membership(&self) -> Result<Arc<LiftSystem>> {
        if let Some(m) = self.membership.get() {
            return Ok(m.clone());
        }
        let sys = Arc::new(LiftSystem::membership(&self.ring, &self.degrees, &self.rel)?);
        Ok(self.membership.get_or_init(|| sys).clone())
    }

    /// Canonical representative of an element given in generator coordinates.
    pub fn normal_form(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if !self.has_relations() {
            return Ok(v.iter().map(|p| self.ring.reduce(p)).collect());
        }
        Ok(self.membership()?.normal_form(v))
    }

    pub fn is_zero_element(&self, v: &[Poly]) -> Result<bool> {
        Ok(self.normal_form(v)?.iter().all(|p| p.is_zero()))
    }

    pub fn is_zero(&self) -> Result<bool> {
        if self.rank() == 0 {
            return Ok(true);
        }
        if !self.has_relations() {
            return Ok(self.ring.is_zero_ring());
        }
        for i in 0..self.rank() {
            let mut e = vec![Poly::zero(); self.rank()];
            e[i] = self.ring.one();
            if !self.is_zero_element(&e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Leading monomials of N + I·S^r, grouped by position.
    fn leading_ideals(&self) -> Result<Vec<Vec<Monomial>>> {
        let mut out = vec![Vec::new(); self.rank()];
        if !self.has_relations() {
            for l in &mut out {
                l.extend(self.ring.gb().iter().map(|g| g.terms[0].0.clone()));
            }
            return Ok(out);
        }
        let sys = self.membership()?;
        for g in sys.basis() {
            let t = g.leading().unwrap();
            out[t.pos].push(t.mono.clone());
        }
        Ok(out)
    }

    /// Dimension over the coefficient field.
    pub fn length(&self) -> Result<Length> {
        let n = self.ring.nvars();
        let mut total = 0usize;
        for lts in self.leading_ideals()? {
            if lts.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut bounds = vec![0u32; n];
            for (v, b) in bounds.iter_mut().enumerate() {
                let pure = lts
                    .iter()
                    .filter(|m| m.support().all(|i| i == v))
                    .map(|m| m.0[v])
                    .min();
                match pure {
                    Some(e) => *b = e,
                    None => return Ok(Length::Infinite),
                }
            }
            total += count_standard(&bounds, &lts);
        }
        Ok(Length::Finite(total))
    }

    /// Krull dimension of the support; `None` for the zero module.
    pub fn dimension(&self) -> Result<Option<usize>> {
        let n = self.ring.nvars();
        Ok(self
            .leading_ideals()?
            .iter()
            .filter_map(|lts| monomial_ideal_dimension(n, lts))
            .max())
    }

    /// (0 : M), the intersection over generators of their annihilators.
    pub fn annihilator(&self) -> Result<Ideal> {
        let r = self.rank();
        if r == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut a = Matrix::zero(r * r, 1);
        let mut row_degrees = Vec::with_capacity(r * r);
        for i in 0..r {
            a.set(i * r + i, 0, self.ring.one());
            row_degrees.extend(self.degrees.iter().map(|d| d - self.degrees[i]));
        }
        let blocks: Vec<&Matrix> = vec![&self.rel; r];
        let rel = Matrix::block_diag(&blocks);
        let sys = LiftSystem::new(&self.ring, &row_degrees, &a, &[0], &rel)?;
        let (k, _) = sys.kernel();
        Ideal::new(&self.ring, k.row_vec(0))
    }

    pub fn direct_sum(parts: &[&FpModule]) -> Result<FpModule> {
        let ring = match parts.first() {
            Some(p) => p.ring.clone(),
            None => return Err(Error::Precondition("empty direct sum".into())),
        };
        if parts.iter().any(|p| p.ring != ring) {
            return Err(Error::AmbientMismatch);
        }
        let degrees = parts.iter().flat_map(|p| p.degrees.iter().copied()).collect();
        let rels: Vec<&Matrix> = parts.iter().map(|p| &p.rel).collect();
        FpModule::new(&ring, degrees, Matrix::block_diag(&rels))
    }

    /// Twist: every generator degree raised by `d`.
    pub fn twist(&self, d: i64) -> FpModule {
        let degrees = self.degrees.iter().map(|x| x + d).collect();
        FpModule::new(&self.ring, degrees, self.rel.clone()).unwrap()
    }

    /// Submodule of R^r/N generated by the columns of `gens`, presented on
    /// those columns.
    pub fn subquotient(ambient: &FpModule, gens: &Matrix) -> Result<FpModule> {
        let ring = &ambient.ring;
        let gdeg = column_degrees(ring, gens, &ambient.degrees);
        let sys = LiftSystem::new(ring, &ambient.degrees, gens, &gdeg, &ambient.rel)?;
        let (k, _) = sys.kernel();
        FpModule::new(ring, gdeg, k)
    }

    /// Removes generators made redundant by relations with a unit entry, then
    /// drops non-minimal relations (graded modules only).
    pub fn prune(&self) -> Result<Pruned> {
        let ring = &self.ring;
        let p = ring.poly();
        let mut degrees = self.degrees.clone();
        let mut rel = self.rel.clone();
        let mut to_new = Matrix::identity(ring, self.rank());
        let mut from_new = Matrix::identity(ring, self.rank());
        loop {
            let mut pivot = None;
            'search: for j in 0..rel.cols() {
                for i in 0..rel.rows() {
                    if rel.get(i, j).is_constant() {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((i, j)) = pivot else { break };
            let u = rel.get(i, j).terms[0].1.clone();
            let factor = p.constant(u.inv().unwrap().neg());
            // e_i = -u^{-1} Σ_{k≠i} c_k e_k
            let keep_rows: Vec<usize> = (0..rel.rows()).filter(|&k| k != i).collect();
            let mut sub = Matrix::zero(keep_rows.len(), 1);
            for (a, &k) in keep_rows.iter().enumerate() {
                sub.set(a, 0, ring.mul(&factor, rel.get(k, j)));
            }
            // projection old -> new: rows of kept generators plus substitution
            let mut proj = Matrix::zero(keep_rows.len(), rel.rows());
            for (a, &k) in keep_rows.iter().enumerate() {
                proj.set(a, k, ring.one());
                proj.set(a, i, sub.get(a, 0).clone());
            }
            let mut incl = Matrix::zero(rel.rows(), keep_rows.len());
            for (a, &k) in keep_rows.iter().enumerate() {
                incl.set(k, a, ring.one());
            }
            let others: Vec<usize> = (0..rel.cols()).filter(|&k| k != j).collect();
            rel = proj.mul(&rel.select_columns(&others), ring)?;
            to_new = proj.mul(&to_new, ring)?;
            from_new = from_new.mul(&incl, ring)?;
            degrees = keep_rows.iter().map(|&k| degrees[k]).collect();
            let nz: Vec<usize> = (0..rel.cols()).filter(|&k| rel.column(k).iter().any(|q| !q.is_zero())).collect();
            rel = rel.select_columns(&nz);
        }
        let mut module = FpModule::new(ring, degrees, rel)?;
        if module.graded && module.rel.cols() > 1 {
            let keep = crate::module::resolution::minimal_columns(
                ring,
                &module.degrees,
                &module.rel,
                &module.rel_degrees,
                &Matrix::zero(module.rank(), 0),
            )?;
            module = FpModule::new(ring, module.degrees.clone(), module.rel.select_columns(&keep))?;
        }
        Ok(Pruned { module, to_new, from_new })
    }

    pub fn identity(&self) -> ModuleMorphism {
        ModuleMorphism {
            source: self.clone(),
            target: self.clone(),
            matrix: Matrix::identity(&self.ring, self.rank()),
        }
    }

    pub fn format(&self) -> String {
        format!(
            "coker {:?} degrees {:?}",
            self.rel.format(&self.ring),
            self.degrees
        )
    }
}

fn count_standard(bounds: &[u32], lts: &[Monomial]) -> usize {
    let n = bounds.len();
    let mut e = vec![0u32; n];
    let mut count = 0;
    loop {
        let m = Monomial(e.clone());
        if !lts.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            e[k] += 1;
            if e[k] < bounds[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

/// A homomorphism given on generators: column j is the image of source
/// generator j in target generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism {
    pub source: FpModule,
    pub target: FpModule,
    pub matrix: Matrix,
}

impl ModuleMorphism {
    pub fn new(source: &FpModule, target: &FpModule, matrix: Matrix) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::AmbientMismatch);
        }
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::ShapeMismatch(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        let f = ModuleMorphism { source: source.clone(), target: target.clone(), matrix: matrix.reduce(&source.ring) };
        if !f.is_well_defined()? {
            return Err(Error::Precondition("matrix does not map relations into relations".into()));
        }
        Ok(f)
    }

    pub fn is_well_defined(&self) -> Result<bool> {
        let img = self.matrix.mul(self.source.relations(), self.source.ring())?;
        for j in 0..img.cols() {
            if !self.target.is_zero_element(&img.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn compose(&self, first: &ModuleMorphism) -> Result<ModuleMorphism> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("morphisms are not composable".into()));
        }
        Ok(ModuleMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix, self.source.ring())?,
        })
    }

    /// Whether two maps with the same source and target agree.
    pub fn equals(&self, other: &ModuleMorphism) -> Result<bool> {
        let d = self.matrix.sub(&other.matrix, self.source.ring())?;
        for j in 0..d.cols() {
            if !self.target.is_zero_element(&d.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self) -> Result<bool> {
        for j in 0..self.matrix.cols() {
            if !self.target.is_zero_element(&self.matrix.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A map g with f∘g = id on the target, when f is surjective.
    pub fn section_on_generators(&self) -> Result<Option<Matrix>> {
        let ring = self.source.ring();
        let sys = LiftSystem::new(
            ring,
            self.target.degrees(),
            &self.matrix,
            self.source.degrees(),
            self.target.relations(),
        )?;
        match sys.lift(&Matrix::identity(ring, self.target.rank())) {
            Ok(g) => Ok(Some(g)),
            Err(_) => Ok(None),
        }
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.section_on_generators()?.is_some())
    }

    /// Generators of the kernel, in source coordinates.
    pub fn kernel_generators(&self) -> Result<Matrix> {
        let sys = LiftSystem::new(
            self.source.ring(),
            self.target.degrees(),
            &self.matrix,
            self.source.degrees(),
            self.target.relations(),
        )?;
        Ok(sys.kernel().0)
    }

    pub fn is_injective(&self) -> Result<bool> {
        let k = self.kernel_generators()?;
        for j in 0..k.cols() {
            if !self.source.is_zero_element(&k.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The inverse map when this one is bijective, verified on both sides.
    pub fn inverse(&self) -> Result<Option<ModuleMorphism>> {
        if !self.is_injective()? {
            return Ok(None);
        }
        let Some(g) = self.section_on_generators()? else { return Ok(None) };
        let inv = ModuleMorphism { source: self.target.clone(), target: self.source.clone(), matrix: g };
        if !inv.is_well_defined()? {
            return Err(Error::Invariant("inverse of a bijection is not well defined".into()));
        }
        let left = inv.compose(self)?;
        let right = self.compose(&inv)?;
        if !left.equals(&self.source.identity())? || !right.equals(&self.target.identity())? {
            return Err(Error::Invariant("inverse witness failed verification".into()));
        }
        Ok(Some(inv))
    }
}
