//! Syzygies, lifts, free resolutions and the invariants derived from them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::hom::HomComplex;
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::kernel::lift::LiftSystem;
use crate::kernel::matrix::Matrix;
use crate::kernel::ring::{Ideal, QuotientRing};
use crate::module::fpmodule::{column_degrees, FpModule};

/// Greedy minimal generating subset of the columns of `cands` modulo the
/// columns of `base`, scanning by increasing degree. Over a graded ring with
/// homogeneous input the result is a minimal generating set.
pub fn minimal_columns(
    ring: &QuotientRing,
    row_degrees: &[i64],
    cands: &Matrix,
    cand_degrees: &[i64],
    base: &Matrix,
) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..cands.cols()).collect();
    order.sort_by_key(|&j| (cand_degrees[j], j));
    let mut kept: Vec<usize> = Vec::new();
    let mut span: Option<LiftSystem> = None;
    for j in order {
        let col = cands.column(j);
        if col.iter().all(|p| p.is_zero()) {
            continue;
        }
        let redundant = match &span {
            Some(sys) => sys.contains(&col),
            None => {
                if base.cols() == 0 {
                    col.iter().all(|p| ring.reduce(p).is_zero())
                } else {
                    LiftSystem::membership(ring, row_degrees, base)?.contains(&col)
                }
            }
        };
        if redundant {
            continue;
        }
        kept.push(j);
        let mut sorted = kept.clone();
        sorted.sort();
        let gens = Matrix::hstack(&[base, &cands.select_columns(&sorted)])?;
        span = Some(LiftSystem::membership(ring, row_degrees, &gens)?);
    }
    kept.sort();
    Ok(kept)
}

/// Generators of the kernel of A: R^s → R^r.
pub fn syzygy_module(ring: &QuotientRing, a: &Matrix) -> Result<Matrix> {
    let rows = vec![0; a.rows()];
    let cols = column_degrees(ring, a, &rows);
    let sys = LiftSystem::new(ring, &rows, a, &cols, &Matrix::zero(a.rows(), 0))?;
    Ok(sys.kernel().0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Lift(Matrix),
    NoLift { column: usize },
}

/// X with A·X = B, or the first column of B outside the image of A.
pub fn lift_through(ring: &QuotientRing, a: &Matrix, b: &Matrix) -> Result<LiftOutcome> {
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!("A has {} rows, B has {}", a.rows(), b.rows())));
    }
    let rows = vec![0; a.rows()];
    let cols = column_degrees(ring, a, &rows);
    let sys = LiftSystem::new(ring, &rows, a, &cols, &Matrix::zero(a.rows(), 0))?;
    Ok(match sys.lift(b) {
        Ok(x) => LiftOutcome::Lift(x),
        Err(column) => LiftOutcome::NoLift { column },
    })
}

/// Free resolution F → M together with the augmentation F_0 → M (matrix
/// expressing the generators of F_0 in the generators of M).
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: Complex,
    pub augmentation: Matrix,
    /// True if the last computed kernel was zero, i.e. the resolution is complete.
    pub complete: bool,
}

impl Resolution {
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.complex.high().max(0)).map(|n| self.complex.rank(n)).collect()
    }

    pub fn augmentation_map(&self, m: &FpModule) -> ChainMap {
        let target = Complex::one_term(m, 0);
        let mut comps = BTreeMap::new();
        comps.insert(0, self.augmentation.clone());
        ChainMap::new_unchecked(&self.complex, &target, comps)
    }
}

/// Resolution with differentials d_1..d_{max_steps}.
pub fn free_resolution(m: &FpModule, max_steps: usize, minimal: bool) -> Result<Resolution> {
    let ring = m.ring();
    if minimal && !m.is_graded() {
        return Err(Error::NotGraded("minimal resolutions need a graded module".into()));
    }
    let pruned = m.prune()?;
    let m0 = &pruned.module;
    let mut degrees = vec![m0.degrees().to_vec()];
    let mut diffs: Vec<Matrix> = Vec::new();
    let mut complete = false;
    if m0.rank() == 0 {
        complete = true;
    } else if max_steps > 0 {
        let rel = m0.relations().clone();
        if rel.cols() == 0 {
            complete = true;
        } else {
            degrees.push(m0.relation_degrees().to_vec());
            diffs.push(rel);
        }
    }
    while !complete && diffs.len() < max_steps {
        let d = diffs.last().unwrap();
        let src = degrees.last().unwrap().clone();
        let tgt = &degrees[degrees.len() - 2];
        let sys = LiftSystem::new(ring, tgt, d, &src, &Matrix::zero(d.rows(), 0))?;
        let (k, kdeg) = sys.kernel();
        let keep = minimal_columns(ring, &src, &k, &kdeg, &Matrix::zero(k.rows(), 0))?;
        if keep.is_empty() {
            complete = true;
            break;
        }
        degrees.push(keep.iter().map(|&j| kdeg[j]).collect());
        diffs.push(k.select_columns(&keep));
    }
    if !complete && diffs.len() == max_steps {
        let d = diffs.last();
        complete = match d {
            None => m0.relations().cols() == 0,
            Some(d) => {
                let src = degrees.last().unwrap().clone();
                let tgt = &degrees[degrees.len() - 2];
                let sys = LiftSystem::new(ring, tgt, d, &src, &Matrix::zero(d.rows(), 0))?;
                sys.kernel().0.cols() == 0
            }
        };
    }
    let complex = Complex::free(ring, 0, degrees, diffs)?;
    Ok(Resolution { complex, augmentation: pruned.from_new, complete })
}

/// Ext^i(M, N) as the homology of Hom(F, N) in degree −i.
pub fn ext_module(m: &FpModule, n: &FpModule, i: usize) -> Result<FpModule> {
    let res = free_resolution(m, i + 1, m.is_graded())?;
    ext_from_resolution(&res, n, i)
}

pub fn ext_from_resolution(res: &Resolution, n: &FpModule, i: usize) -> Result<FpModule> {
    let hom = HomComplex::new(&res.complex, &Complex::one_term(n, 0))?;
    Ok(hom.complex.homology(-(i as i64))?.module)
}

/// The residue field k = R/(variables).
pub fn residue_field(ring: &QuotientRing) -> Result<FpModule> {
    Ok(FpModule::cyclic(&ring.irrelevant_ideal()?))
}

/// min{i : Ext^i(k, M) ≠ 0}.
pub fn depth(m: &FpModule) -> Result<usize> {
    if m.is_zero()? {
        return Err(Error::ZeroModule);
    }
    let dim = m.dimension()?.unwrap_or(0);
    let k = residue_field(m.ring())?;
    let res = free_resolution(&k, dim + 1, true)?;
    for i in 0..=dim {
        if !ext_from_resolution(&res, m, i)?.is_zero()? {
            return Ok(i);
        }
    }
    Err(Error::Invariant("no nonvanishing Ext against the residue field up to the dimension".into()))
}

pub fn ring_depth(ring: &QuotientRing) -> Result<usize> {
    depth(&FpModule::free(ring, vec![0]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProjDim {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug)]
pub struct PdReport {
    pub pd: ProjDim,
    pub ring_depth: usize,
    pub betti: Vec<usize>,
    /// The syzygy past the depth bound, when it is nonzero.
    pub witness_syzygy: Option<FpModule>,
}

/// Minimal resolution to depth(R) + 1 steps; finite pd forces pd ≤ depth R.
pub fn projective_dimension_report(m: &FpModule) -> Result<PdReport> {
    if !m.is_graded() {
        return Err(Error::NotGraded("projective dimension needs a graded module".into()));
    }
    let d = ring_depth(m.ring())?;
    let res = free_resolution(m, d + 1, true)?;
    let betti = res.betti();
    if res.complex.rank(d as i64 + 1) > 0 {
        let c = &res.complex;
        let syz = FpModule::subquotient(&c.term(d as i64), &c.d(d as i64 + 1))?;
        return Ok(PdReport { pd: ProjDim::Infinite, ring_depth: d, betti, witness_syzygy: Some(syz) });
    }
    let pd = (0..=d).rev().find(|&i| res.complex.rank(i as i64) > 0).unwrap_or(0);
    Ok(PdReport { pd: ProjDim::Finite(pd), ring_depth: d, betti, witness_syzygy: None })
}

pub fn projective_dimension(m: &FpModule) -> Result<ProjDim> {
    Ok(projective_dimension_report(m)?.pd)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExtVanishing {
    /// Ext^i(M, C) = 0 for n < i ≤ cutoff (checked only up to the cutoff).
    UpTo(usize),
    AboveCutoff,
}

pub fn ext_vanishing_dimension(m: &FpModule, c: &FpModule, cutoff: usize) -> Result<ExtVanishing> {
    if cutoff == 0 {
        return Err(Error::Precondition("cutoff must be at least 1".into()));
    }
    let res = free_resolution(m, cutoff + 1, m.is_graded())?;
    if !ext_from_resolution(&res, c, cutoff)?.is_zero()? {
        return Ok(ExtVanishing::AboveCutoff);
    }
    for i in (1..cutoff).rev() {
        if !ext_from_resolution(&res, c, i)?.is_zero()? {
            return Ok(ExtVanishing::UpTo(i));
        }
    }
    Ok(ExtVanishing::UpTo(0))
}

/// Hom_R(M, N) as Ext⁰.
pub fn hom_module(m: &FpModule, n: &FpModule) -> Result<FpModule> {
    ext_module(m, n, 0)
}

/// R/(gens) from polynomial strings.
pub fn cyclic_module(ring: &QuotientRing, gens: &[&str]) -> Result<FpModule> {
    Ok(FpModule::cyclic(&Ideal::parse(ring, gens)?))
}
