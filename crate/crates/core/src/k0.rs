//! Length Euler characteristics and Hom-level comparisons.

use serde::Serialize;

use crate::complex::hom::{lift_along_qis, null_homotopy, HomComplex};
use crate::complex::truncate::{free_replacement, FreeUpTo};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::kernel::matrix::Matrix;
use crate::module::fpmodule::{FpModule, Length, ModuleMorphism};
use crate::module::resolution::hom_module;

/// Σ (−1)^i length H_i(X).
pub fn euler_characteristic_fl(x: &Complex) -> Result<i64> {
    let mut chi = 0i64;
    if x.is_zero_complex() {
        return Ok(0);
    }
    for n in x.low()..=x.high() {
        match x.homology(n)?.module.length()? {
            Length::Finite(l) => chi += if n.rem_euclid(2) == 0 { l as i64 } else { -(l as i64) },
            Length::Infinite => {
                return Err(Error::Precondition(format!("homology in degree {n} has infinite length")));
            }
        }
    }
    Ok(chi)
}

#[derive(Clone, Debug, Serialize)]
pub struct HomVanishing {
    pub classes_zero: bool,
    /// Generators of the chain maps P → Q that were checked.
    pub sampled: usize,
    pub witnesses_verified: bool,
    pub trivial: bool,
}

impl HomVanishing {
    pub fn holds(&self) -> bool {
        self.classes_zero && self.witnesses_verified
    }
}

/// Every chain map P → Q is null-homotopic when min P > max Q. Checks the
/// homotopy-class module and null-homotopes a generating set of chain maps.
pub fn hom_vanishing_check(p: &Complex, q: &Complex) -> Result<HomVanishing> {
    let ps = p.stats()?;
    let qs = q.stats()?;
    let (Some(pmin), Some(qmax)) = (ps.min, qs.max) else {
        return Ok(HomVanishing { classes_zero: true, sampled: 0, witnesses_verified: true, trivial: true });
    };
    if pmin <= qmax {
        return Err(Error::Precondition(format!("min(P) = {pmin} is not above max(Q) = {qmax}")));
    }
    let hom = HomComplex::new(p, q)?;
    let h0 = hom.complex.homology(0)?;
    let classes_zero = h0.module.is_zero()?;
    let ring = p.ring();
    let z0 = hom.complex.term(0);
    let (cycles, _) = if hom.complex.rank(-1) == 0 {
        (Matrix::identity(ring, z0.rank()), vec![])
    } else {
        let prev = hom.complex.term(-1);
        crate::kernel::lift::LiftSystem::new(ring, prev.degrees(), &hom.d(0), z0.degrees(), prev.relations())?.kernel()
    };
    let mut witnesses_verified = true;
    for j in 0..cycles.cols() {
        let f = hom.chain_map_from(&cycles.column(j));
        match null_homotopy(&f) {
            Ok(h) => witnesses_verified &= h.witnesses(&f)?,
            Err(Error::NotNullHomotopic { .. }) => witnesses_verified = false,
            Err(e) => return Err(e),
        }
    }
    Ok(HomVanishing { classes_zero, sampled: cycles.cols(), witnesses_verified, trivial: false })
}

#[derive(Clone, Debug)]
pub struct HomComparison {
    /// Hom_R(M, N) computed from a presentation.
    pub module_hom: FpModule,
    /// Chain maps T⁰M → T⁰N out of a free realization of M.
    pub hom_to_module: FpModule,
    /// Homotopy classes between free realizations.
    pub classes: FpModule,
    /// classes → Hom(U_M, T⁰N), postcomposing with the realization of N.
    pub forward: ModuleMorphism,
    /// Hom(U_M, T⁰N) → classes, lifting along the realization of N.
    pub backward: ModuleMorphism,
    pub mutually_inverse: bool,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HomComparisonSummary {
    pub module_hom_length: Option<usize>,
    pub classes_length: Option<usize>,
    pub mutually_inverse: bool,
}

impl HomComparison {
    pub fn summary(&self) -> Result<HomComparisonSummary> {
        Ok(HomComparisonSummary {
            module_hom_length: self.module_hom.length()?.finite(),
            classes_length: self.classes.length()?.finite(),
            mutually_inverse: self.mutually_inverse,
        })
    }

    pub fn holds(&self) -> Result<bool> {
        let s = self.summary()?;
        Ok(s.mutually_inverse && s.module_hom_length.is_some() && s.module_hom_length == s.classes_length)
    }
}

/// Hom_R(M, N) against homotopy classes of maps between free realizations,
/// with explicit inverse isomorphisms.
pub fn module_hom_comparison(m: &FpModule, n: &FpModule) -> Result<HomComparison> {
    let (um, _qm) = free_replacement(&Complex::one_term(m, 0), FreeUpTo::All)?;
    let tn = Complex::one_term(n, 0);
    let (un, qn) = free_replacement(&tn, FreeUpTo::All)?;
    let to_module = HomComplex::new(&um, &tn)?;
    let between = HomComplex::new(&um, &un)?;
    let ha = to_module.complex.homology(0)?;
    let hb = between.complex.homology(0)?;
    let mut fwd = Vec::new();
    for j in 0..hb.cycles.cols() {
        let b = between.chain_map_from(&hb.cycles.column(j));
        let img = qn.compose(&b)?;
        let v = to_module.chain_map_vector(&img);
        fwd.push(ha.class_of(&v).ok_or_else(|| Error::Invariant("image is not a chain map".into()))?);
    }
    let forward = ModuleMorphism::new(&hb.module, &ha.module, Matrix::from_columns(ha.module.rank(), &fwd))?;

    let mut back = Vec::new();
    for j in 0..ha.cycles.cols() {
        let a = to_module.chain_map_from(&ha.cycles.column(j));
        let (g, _) = lift_along_qis(&um, &qn, &a)?;
        let v = between.chain_map_vector(&g);
        back.push(hb.class_of(&v).ok_or_else(|| Error::Invariant("lift is not a chain map".into()))?);
    }
    let backward = ModuleMorphism::new(&ha.module, &hb.module, Matrix::from_columns(hb.module.rank(), &back))?;

    let mutually_inverse = forward.compose(&backward)?.equals(&ha.module.identity())?
        && backward.compose(&forward)?.equals(&hb.module.identity())?;
    Ok(HomComparison {
        module_hom: hom_module(m, n)?,
        hom_to_module: ha.module,
        classes: hb.module,
        forward,
        backward,
        mutually_inverse,
    })
}
