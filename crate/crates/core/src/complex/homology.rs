use std::sync::Arc;

use serde::Serialize;

use super::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::kernel::lift::LiftSystem;
use crate::kernel::matrix::Matrix;
use crate::kernel::poly::Poly;
use crate::module::fpmodule::{FpModule, ModuleMorphism};

/// H_n = Z_n / (B_n + relations), presented on cycle representatives.
#[derive(Clone)]
pub struct Homology {
    pub degree: i64,
    pub module: FpModule,
    /// Column j: the cycle in X_n representing generator j.
    pub cycles: Matrix,
    classes: Arc<LiftSystem>,
    to_new: Matrix,
}

impl std::fmt::Debug for Homology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Homology").field("degree", &self.degree).field("module", &self.module).finish()
    }
}

impl Homology {
    pub fn compute(x: &Complex, n: i64) -> Result<Homology> {
        let ring = x.ring();
        let xn = x.term(n);
        let (k, kdeg) = if x.rank(n - 1) == 0 {
            (Matrix::identity(ring, xn.rank()), xn.degrees().to_vec())
        } else {
            let prev = x.term(n - 1);
            let sys = LiftSystem::new(ring, prev.degrees(), &x.d(n), xn.degrees(), prev.relations())?;
            sys.kernel()
        };
        let bound = Matrix::hstack(&[xn.relations(), &x.d(n + 1)])?;
        let classes = LiftSystem::new(ring, xn.degrees(), &k, &kdeg, &bound)?;
        let (rel, _) = classes.kernel();
        let raw = FpModule::new(ring, kdeg, rel)?;
        let pruned = raw.prune()?;
        let cycles = k.mul(&pruned.from_new, ring)?;
        Ok(Homology { degree: n, module: pruned.module, cycles, classes: Arc::new(classes), to_new: pruned.to_new })
    }

    /// Coordinates of the class of a cycle; `None` if `z` is not a cycle.
    pub fn class_of(&self, z: &[Poly]) -> Option<Vec<Poly>> {
        let c = self.classes.lift_column(z)?;
        Some(self.to_new.mul_vec(&c, self.classes.ring()))
    }
}

/// Result of the quasi-isomorphism test. For every degree where either side
/// has homology, the induced map and (when bijective) its verified inverse.
#[derive(Clone, Debug)]
pub struct QisReport {
    pub verdict: bool,
    pub degrees: Vec<QisDegree>,
}

#[derive(Clone, Debug)]
pub struct QisDegree {
    pub degree: i64,
    pub map: ModuleMorphism,
    pub inverse: Option<ModuleMorphism>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QisSummary {
    pub degree: i64,
    pub source_generators: usize,
    pub target_generators: usize,
    pub bijective: bool,
}

impl QisReport {
    pub fn summary(&self) -> Vec<QisSummary> {
        self.degrees
            .iter()
            .map(|d| QisSummary {
                degree: d.degree,
                source_generators: d.map.source.rank(),
                target_generators: d.map.target.rank(),
                bijective: d.inverse.is_some(),
            })
            .collect()
    }
}

/// The map H_n(f) in terms of the generators of the two homology modules.
pub fn homology_map(f: &ChainMap, hx: &Homology, hy: &Homology) -> Result<ModuleMorphism> {
    let ring = f.source.ring();
    let img = f.component(hx.degree).mul(&hx.cycles, ring)?;
    let mut cols = Vec::with_capacity(img.cols());
    for j in 0..img.cols() {
        let c = hy
            .class_of(&img.column(j))
            .ok_or_else(|| Error::Invariant(format!("image of a cycle is not a cycle in degree {}", hx.degree)))?;
        cols.push(c);
    }
    let m = Matrix::from_columns(hy.module.rank(), &cols);
    ModuleMorphism::new(&hx.module, &hy.module, m)
}

pub fn is_quasi_isomorphism(f: &ChainMap) -> Result<QisReport> {
    if !f.is_chain_map()? {
        return Ok(QisReport { verdict: false, degrees: vec![] });
    }
    let lo = f.source.low().min(f.target.low());
    let hi = f.source.high().max(f.target.high());
    let mut verdict = true;
    let mut degrees = Vec::new();
    for n in lo..=hi {
        let hx = f.source.homology(n)?;
        let hy = f.target.homology(n)?;
        if hx.module.rank() == 0 && hy.module.rank() == 0 {
            continue;
        }
        let map = homology_map(f, &hx, &hy)?;
        let inverse = map.inverse()?;
        if inverse.is_none() {
            verdict = false;
        }
        degrees.push(QisDegree { degree: n, map, inverse });
    }
    Ok(QisReport { verdict, degrees })
}
