//! Smart truncation, free replacement, and collapsing a complex with a single
//! homology to that module.

use std::collections::BTreeMap;

use super::{ChainMap, Complex};
use crate::equivalence::zigzag::{Direction, ZigzagCertificate};
use crate::error::{Error, Result};
use crate::kernel::lift::LiftSystem;
use crate::kernel::matrix::Matrix;
use crate::module::fpmodule::FpModule;
use crate::module::resolution::{minimal_columns, projective_dimension, ring_depth, ProjDim};

/// Replaces X_m by the cycles Z_m and drops everything below. Requires the
/// homology of X to vanish below m.
pub fn smart_truncate(x: &Complex, m: i64) -> Result<(Complex, ChainMap)> {
    let ring = x.ring();
    for n in x.low()..m.min(x.high() + 1) {
        if !x.homology(n)?.module.is_zero()? {
            return Err(Error::Precondition(format!("homology in degree {n} below the truncation degree {m}")));
        }
    }
    if x.low() >= m || x.is_zero_complex() {
        return Ok((x.clone(), x.identity()));
    }
    if m > x.high() {
        let z = Complex::zero(ring);
        return Ok((z.clone(), ChainMap::zero(&z, x)));
    }
    let xm = x.term(m);
    let (k, kdeg) = {
        let prev = x.term(m - 1);
        LiftSystem::new(ring, prev.degrees(), &x.d(m), xm.degrees(), prev.relations())?.kernel()
    };
    let keep = minimal_columns(ring, xm.degrees(), &k, &kdeg, xm.relations())?;
    let k = k.select_columns(&keep);
    let z = FpModule::subquotient(&xm, &k)?.prune()?;
    let kp = k.mul(&z.from_new, ring)?;
    let zmod = z.module;
    let mut terms = vec![zmod.clone()];
    let mut diffs = Vec::new();
    if x.high() > m {
        let sys = LiftSystem::new(ring, xm.degrees(), &kp, zmod.degrees(), xm.relations())?;
        let d = sys
            .lift(&x.d(m + 1))
            .map_err(|_| Error::Invariant("boundaries are not cycles".into()))?;
        diffs.push(d);
        for n in m + 1..=x.high() {
            terms.push(x.term(n));
            if n > m + 1 {
                diffs.push(x.d(n));
            }
        }
    }
    let xt = Complex::new(ring, m, terms, diffs)?;
    let mut comps = BTreeMap::new();
    comps.insert(m, kp);
    for n in m + 1..=x.high() {
        comps.insert(n, Matrix::identity(ring, x.rank(n)));
    }
    let incl = ChainMap::new_unchecked(&xt, x, comps);
    if !incl.is_chain_map()? {
        return Err(Error::Invariant("truncation inclusion is not a chain map".into()));
    }
    Ok((xt, incl))
}

/// Where free replacement stops making terms free.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeUpTo {
    /// Terms below this degree are free; the term in this degree may not be.
    Degree(i64),
    All,
}

/// A quasi-isomorphism q: U → X with U free below the requested degree.
///
/// U_n is generated by cycles (u, x) of cone(q) in degree n, with d e = u and
/// q e = x, so each step kills the cone's homology in that degree.
pub fn free_replacement(x: &Complex, upto: FreeUpTo) -> Result<(Complex, ChainMap)> {
    let ring = x.ring();
    if x.is_free() {
        return Ok((x.clone(), x.identity()));
    }
    let low = x.low();
    let stop_t = match upto {
        FreeUpTo::Degree(t) if t < low => return Ok((x.clone(), x.identity())),
        FreeUpTo::Degree(t) => Some(t),
        FreeUpTo::All => None,
    };
    let limit = match stop_t {
        Some(t) => t,
        None => x.high() + ring_depth(ring)? as i64 + 2,
    };
    // U_{low-1} = 0
    let mut u_terms: Vec<FpModule> = Vec::new();
    let mut u_diffs: Vec<Matrix> = Vec::new();
    let mut q: BTreeMap<i64, Matrix> = BTreeMap::new();
    let udeg = |terms: &Vec<FpModule>, n: i64| -> Vec<i64> {
        if n < low || n >= low + terms.len() as i64 {
            vec![]
        } else {
            terms[(n - low) as usize].degrees().to_vec()
        }
    };
    let ud = |terms: &Vec<FpModule>, diffs: &Vec<Matrix>, n: i64| -> Matrix {
        let rows = udeg(terms, n - 1).len();
        let cols = udeg(terms, n).len();
        if n <= low || n >= low + terms.len() as i64 {
            Matrix::zero(rows, cols)
        } else {
            diffs[(n - low - 1) as usize].clone()
        }
    };
    let mut n = low;
    loop {
        let a_deg = udeg(&u_terms, n - 1);
        let a = a_deg.len();
        let xn = x.term(n);
        let b = xn.rank();
        let xprev = x.term(n - 1);
        let up2 = udeg(&u_terms, n - 2);
        let qprev = q.get(&(n - 1)).cloned().unwrap_or_else(|| Matrix::zero(xprev.rank(), a));
        let mut sys_a = Matrix::zero(up2.len() + xprev.rank(), a + b);
        sys_a.place(0, 0, &ud(&u_terms, &u_diffs, n - 1));
        sys_a.place(up2.len(), 0, &qprev);
        sys_a.place(up2.len(), a, &x.d(n).neg(ring));
        let mut row_deg = up2.clone();
        row_deg.extend_from_slice(xprev.degrees());
        let mut col_deg = a_deg.clone();
        col_deg.extend_from_slice(xn.degrees());
        let mut rel = Matrix::zero(up2.len() + xprev.rank(), xprev.relations().cols());
        rel.place(up2.len(), 0, xprev.relations());
        let (cyc, cdeg) = if row_deg.is_empty() {
            (Matrix::identity(ring, a + b), col_deg.clone())
        } else {
            LiftSystem::new(ring, &row_deg, &sys_a, &col_deg, &rel)?.kernel()
        };
        // ambient U_{n-1} ⊕ X_n with relations (0; rel X_n)
        let mut amb_rel = Matrix::zero(a + b, xn.relations().cols());
        amb_rel.place(a, 0, xn.relations());
        let ambient = FpModule::new(ring, col_deg.clone(), amb_rel.clone())?;

        if stop_t == Some(n) {
            let keep = minimal_columns(ring, &col_deg, &cyc, &cdeg, &amb_rel)?;
            let gens = cyc.select_columns(&keep);
            let z = FpModule::subquotient(&ambient, &gens)?.prune()?;
            let zg = gens.mul(&z.from_new, ring)?;
            let zmod = z.module;
            u_terms.push(zmod.clone());
            if n > low {
                u_diffs.push(zg.submatrix(0, a, 0, zg.cols()));
            }
            q.insert(n, zg.submatrix(a, b, 0, zg.cols()));
            if x.high() > n {
                let mut emb = Matrix::zero(a + b, x.rank(n + 1));
                emb.place(a, 0, &x.d(n + 1));
                let sys = LiftSystem::new(ring, &col_deg, &zg, zmod.degrees(), &amb_rel)?;
                let d = sys.lift(&emb).map_err(|_| Error::Invariant("boundary outside the cycle module".into()))?;
                u_terms.push(x.term(n + 1));
                u_diffs.push(d);
                q.insert(n + 1, Matrix::identity(ring, x.rank(n + 1)));
                for k in n + 2..=x.high() {
                    u_terms.push(x.term(k));
                    u_diffs.push(x.d(k));
                    q.insert(k, Matrix::identity(ring, x.rank(k)));
                }
            }
            break;
        }

        let mut base = Matrix::zero(a + b, x.rank(n + 1));
        base.place(a, 0, &x.d(n + 1));
        let base = Matrix::hstack(&[&base, &amb_rel])?;
        let keep = minimal_columns(ring, &col_deg, &cyc, &cdeg, &base)?;
        if keep.is_empty() && n > x.high() {
            break;
        }
        if n > limit {
            let term = (x.low()..=x.high())
                .find(|&i| matches!(projective_dimension(&x.term(i)), Ok(ProjDim::Infinite)))
                .unwrap_or(x.high());
            return Err(Error::InfinitePd { term });
        }
        let gens = cyc.select_columns(&keep);
        u_terms.push(FpModule::free(ring, keep.iter().map(|&j| cdeg[j]).collect()));
        if n > low {
            u_diffs.push(gens.submatrix(0, a, 0, gens.cols()));
        }
        q.insert(n, gens.submatrix(a, b, 0, gens.cols()));
        n += 1;
    }
    let u = Complex::new(ring, low, u_terms, u_diffs)?;
    let q = ChainMap::new_unchecked(&u, x, q);
    if !q.is_chain_map()? {
        return Err(Error::Invariant("free replacement map is not a chain map".into()));
    }
    Ok((u, q))
}

/// For a complex with homology only in degree m: the one-term complex
/// T^m H_m(X) and the zigzag X ← τ_{≥m}X → T^m H_m(X).
pub fn collapse_to_module(x: &Complex) -> Result<(Complex, ZigzagCertificate)> {
    let stats = x.stats()?;
    if stats.supph.len() != 1 {
        return Err(Error::Precondition(format!("homology support {:?} is not a single degree", stats.supph)));
    }
    let m = stats.min.unwrap();
    if x.low() == m && x.high() == m {
        return Ok((x.clone(), ZigzagCertificate::trivial(x)));
    }
    let (xt, incl) = smart_truncate(x, m)?;
    let h = xt.homology(m)?;
    let y = Complex::one_term(&h.module, m);
    let zm = xt.term(m);
    let mut cols = Vec::with_capacity(zm.rank());
    for j in 0..zm.rank() {
        let mut e = vec![ring_zero(x); zm.rank()];
        e[j] = x.ring().one();
        cols.push(h.class_of(&e).ok_or_else(|| Error::Invariant("generator of Z_m is not a cycle".into()))?);
    }
    let proj = ChainMap::new_unchecked(&xt, &y, BTreeMap::from([(m, Matrix::from_columns(h.module.rank(), &cols))]));
    let mut cert = ZigzagCertificate::start(x);
    cert.push(Direction::Backward, &xt, incl)?;
    cert.push(Direction::Forward, &y, proj)?;
    Ok((y, cert))
}

fn ring_zero(x: &Complex) -> crate::kernel::poly::Poly {
    x.ring().zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_quasi_isomorphism;
    use crate::kernel::ring::{Ideal, QuotientRing};
    use crate::kernel::scalar::Field;
    use crate::module::fpmodule::Length;
    use crate::module::resolution::residue_field;

    fn rxy() -> QuotientRing {
        QuotientRing::parse(Field::Rationals, &["x", "y"], &["x*y"]).unwrap()
    }

    #[test]
    fn truncation_is_quasi_isomorphism() {
        let r = rxy();
        let p = super::super::tests::basic(&r).shift(1);
        let (t, incl) = smart_truncate(&p, 1).unwrap();
        assert_eq!(t.low(), 1);
        assert!(is_quasi_isomorphism(&incl).unwrap().verdict);
        let (t0, _) = smart_truncate(&t, 1).unwrap();
        assert_eq!(t0, t);
    }

    #[test]
    fn truncation_above_acyclic_is_zero() {
        let r = rxy();
        let p = super::super::tests::basic(&r);
        let (c, _, _) = Complex::cone(&p.identity()).unwrap();
        let (t, _) = smart_truncate(&c, c.high() + 1).unwrap();
        assert!(t.is_zero_complex());
    }

    #[test]
    fn free_replacement_of_cyclic_module() {
        let r = rxy();
        let m = FpModule::cyclic(&Ideal::parse(&r, &["x - y"]).unwrap());
        let x = Complex::one_term(&m, 0);
        let (u, q) = free_replacement(&x, FreeUpTo::All).unwrap();
        assert!(u.is_free());
        assert_eq!(u.ranks(), vec![(0, 1), (1, 1)]);
        assert!(is_quasi_isomorphism(&q).unwrap().verdict);
    }

    #[test]
    fn partial_free_replacement_of_residue_field() {
        let r = rxy();
        let x = Complex::one_term(&residue_field(&r).unwrap(), 0);
        let (u, q) = free_replacement(&x, FreeUpTo::Degree(3)).unwrap();
        assert_eq!(u.ranks().iter().map(|p| p.1).collect::<Vec<_>>()[..3], [1, 2, 2]);
        for n in 0..3 {
            assert!(!u.term(n).has_relations());
        }
        assert!(is_quasi_isomorphism(&q).unwrap().verdict);
        assert!(matches!(free_replacement(&x, FreeUpTo::All), Err(Error::InfinitePd { term: 0 })));
    }

    #[test]
    fn collapse_basic_complex() {
        let r = rxy();
        let p = super::super::tests::basic(&r);
        let (y, mut cert) = collapse_to_module(&p).unwrap();
        assert_eq!(y.term(0).length().unwrap(), Length::Finite(2));
        assert!(cert.verify().unwrap());
    }
}
