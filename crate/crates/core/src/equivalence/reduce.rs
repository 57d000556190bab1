//! From a bounded free complex with homology in a Serre subcategory to a
//! complex of modules in the subcategory of finite projective dimension, by
//! recursion on the width of the homology.

use std::collections::BTreeMap;

use serde::Serialize;

use super::zigzag::{Direction, ZigzagCertificate};
use crate::complex::hom::null_homotopy;
use crate::complex::truncate::{collapse_to_module, free_replacement, FreeUpTo};
use crate::complex::{cone_map, ChainMap, Complex, ComplexStats};
use crate::error::{Error, Result};
use crate::k0::euler_characteristic_fl;
use crate::kernel::lift::LiftSystem;
use crate::kernel::matrix::Matrix;
use crate::koszul::{cone_width_report, koszul_cover, morphism_cover, MorphismSquare, SquareVerdicts};
use crate::module::resolution::{projective_dimension, ProjDim};
use crate::serre::{is_cohen_macaulay, serre_member, SerreSpec};

/// One level of the width recursion.
#[derive(Clone, Debug, Serialize)]
pub struct LevelLog {
    pub depth: usize,
    pub width: i64,
    pub cone_width: i64,
    pub m: i64,
    pub sequence: Vec<String>,
    pub koszul_ranks: Vec<(i64, usize)>,
    pub closed_form: bool,
}

/// P̃ together with a free complex Z and quasi-isomorphisms P ← Z → P̃.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub ptilde: Complex,
    pub free: Complex,
    pub to_p: ChainMap,
    pub to_ptilde: ChainMap,
    pub levels: Vec<LevelLog>,
}

impl Reduction {
    pub fn certificate(&self) -> Result<ZigzagCertificate> {
        let mut cert = ZigzagCertificate::start(&self.to_p.target);
        cert.push(Direction::Backward, &self.free, self.to_p.clone())?;
        cert.push(Direction::Forward, &self.ptilde, self.to_ptilde.clone())?;
        Ok(cert)
    }
}

fn check_inputs(p: &Complex, spec: &SerreSpec) -> Result<()> {
    let cm = is_cohen_macaulay(p.ring())?;
    if !cm.cohen_macaulay {
        // Over a non-CM ring no nonzero finite-length module has finite pd,
        // so there is nothing to reduce to.
        return Err(Error::NotCohenMacaulay { depth: cm.depth, dim: cm.dimension });
    }
    if !p.is_free() {
        return Err(Error::Precondition("reduction needs a complex of free modules".into()));
    }
    for n in p.stats()?.supph {
        if !serre_member(&p.homology(n)?.module, spec)? {
            return Err(Error::Precondition(format!("homology in degree {n} is not in {spec}")));
        }
    }
    Ok(())
}

/// P̃ with every term in the subcategory and of finite projective dimension,
/// and a certificate P ← Z → P̃ of verified quasi-isomorphisms.
pub fn reduce_object(p: &Complex, spec: &SerreSpec, seed: u64) -> Result<(Reduction, ZigzagCertificate)> {
    check_inputs(p, spec)?;
    let red = reduce_rec(p, spec, seed, 0)?;
    let mut cert = red.certificate()?;
    if !cert.verify()? {
        return Err(Error::Invariant("reduction certificate failed verification".into()));
    }
    Ok((red, cert))
}

fn reduce_rec(p: &Complex, spec: &SerreSpec, seed: u64, depth: usize) -> Result<Reduction> {
    let ring = p.ring();
    let stats = p.stats()?;
    if stats.supph.is_empty() {
        let z = Complex::zero(ring);
        return Ok(Reduction {
            ptilde: z.clone(),
            free: z.clone(),
            to_p: ChainMap::zero(&z, p),
            to_ptilde: ChainMap::zero(&z, &z),
            levels: vec![],
        });
    }
    if stats.wid == 0 {
        return collapse(p);
    }

    let cover = koszul_cover(p, spec, None, seed.wrapping_add(depth as u64))?;
    let report = cone_width_report(&cover, p)?;
    let m = cover.m;
    let (c, _, proj) = Complex::cone(&cover.alpha)?;
    let sub = reduce_rec(&c, spec, seed, depth + 1)?;
    let mut levels = vec![LevelLog {
        depth,
        width: stats.wid,
        cone_width: report.cone.wid,
        m,
        sequence: cover.sequence.elements.iter().map(|f| ring.format(f)).collect(),
        koszul_ranks: cover.k.ranks(),
        closed_form: cover.verdicts.closed_form,
    }];
    levels.extend(sub.levels.iter().cloned());

    let k = &cover.k;
    let (mk, eps) = cover.bottom_homology()?;
    // δ: T⁻¹C → K, the projection onto K.
    let tc = c.shift(-1);
    let delta = proj.shift(-1).retarget(&tc, k);
    let tu = sub.free.shift(-1);
    let delta_u = delta.compose(&sub.to_p.shift(-1))?;
    let psi_u = eps.compose(&delta_u)?;

    // ψ: T⁻¹C̃ → T^m H_m(K) agreeing with ψ_U on H_m; it only has a degree-m
    // component because C̃ starts in degree m + 1.
    let ct = &sub.ptilde;
    let tct = ct.shift(-1);
    if !sub.free.is_zero_complex() && sub.free.low() <= m {
        return Err(Error::Invariant("free model of the cone starts too low".into()));
    }
    let mut comps = BTreeMap::new();
    if tct.rank(m) > 0 && mk.rank(m) > 0 {
        let top = ct.term(m + 1);
        let qc = sub.to_ptilde.component(m + 1);
        let a = Matrix::hstack(&[&qc, &ct.d(m + 2)])?;
        let mut col_deg = sub.free.degrees(m + 1);
        col_deg.extend(ct.degrees(m + 2));
        let sys = LiftSystem::new(ring, top.degrees(), &a, &col_deg, top.relations())?;
        let x = sys
            .lift(&Matrix::identity(ring, top.rank()))
            .map_err(|_| Error::Invariant("bottom homology of the cone model is not hit".into()))?;
        let u = x.submatrix(0, qc.cols(), 0, x.cols());
        comps.insert(m, psi_u.component(m).mul(&u, ring)?);
    }
    let psi = ChainMap::new(&tct, &mk, comps)?;
    let psi_q = psi.compose(&sub.to_ptilde.shift(-1))?;
    let h = null_homotopy(&psi_u.sub(&psi_q)?)?;

    let (ptilde, _, _) = Complex::cone(&psi)?;
    let (z, _, _) = Complex::cone(&delta_u)?;

    // Z → cone(δ) → P, the latter (k', x, k) ↦ x − α(k).
    let to_cone_delta = cone_map(&delta_u, &delta, &sub.to_p.shift(-1), &k.identity(), None)?;
    let (cd, _, _) = Complex::cone(&delta)?;
    let mut theta = BTreeMap::new();
    if !cd.is_zero_complex() {
        for n in cd.low()..=cd.high() {
            let (a, pn, kn) = (k.rank(n - 1), p.rank(n), k.rank(n));
            if pn == 0 {
                continue;
            }
            let mut t = Matrix::zero(pn, a + pn + kn);
            t.place(0, a, &Matrix::identity(ring, pn));
            t.place(0, a + pn, &cover.alpha.component(n).neg(ring));
            theta.insert(n, t);
        }
    }
    let theta = ChainMap::new(&cd, p, theta)?;
    let to_p = theta.compose(&to_cone_delta)?;

    let id_tu = tu.identity();
    let s1 = cone_map(&delta_u, &psi_u, &id_tu, &eps, None)?;
    let s2 = cone_map(&psi_u, &psi_q, &id_tu, &mk.identity(), Some(&h))?;
    let s3 = cone_map(&psi_q, &psi, &sub.to_ptilde.shift(-1), &mk.identity(), None)?;
    let to_ptilde = s3.compose(&s2)?.compose(&s1)?;
    debug_assert_eq!(to_p.source, z);
    Ok(Reduction { ptilde, free: z, to_p, to_ptilde, levels })
}

/// Width zero: T^m H_m(P), with Z a free model of the truncation.
fn collapse(p: &Complex) -> Result<Reduction> {
    let (y, cert) = collapse_to_module(p)?;
    if cert.arrows.is_empty() {
        return Ok(Reduction { ptilde: y.clone(), free: p.clone(), to_p: p.identity(), to_ptilde: y.identity(), levels: vec![] });
    }
    let incl = &cert.arrows[0].map;
    let proj = &cert.arrows[1].map;
    let (f, q) = free_replacement(&incl.source, FreeUpTo::All)?;
    Ok(Reduction { ptilde: y, free: f, to_p: incl.compose(&q)?, to_ptilde: proj.compose(&q)?, levels: vec![] })
}

/// A free complex U with a verified quasi-isomorphism U → P̃.
pub fn realize_in_projectives(ptilde: &Complex) -> Result<(Complex, ZigzagCertificate)> {
    if !ptilde.is_zero_complex() {
        for n in ptilde.low()..=ptilde.high() {
            let t = ptilde.term(n);
            if t.rank() > 0 && projective_dimension(&t)? == ProjDim::Infinite {
                return Err(Error::InfinitePd { term: n });
            }
        }
    }
    let (u, q) = free_replacement(ptilde, FreeUpTo::All)?;
    let mut cert = ZigzagCertificate::start(ptilde);
    cert.push(Direction::Backward, &u, q)?;
    if !cert.verify()? {
        return Err(Error::Invariant("realization is not a quasi-isomorphism".into()));
    }
    Ok((u, cert))
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyRow {
    pub degree: i64,
    pub length: Option<usize>,
    pub annihilator: Vec<String>,
}

pub fn homology_table(x: &Complex) -> Result<Vec<HomologyRow>> {
    let mut rows = Vec::new();
    for n in x.stats()?.supph {
        let h = x.homology(n)?.module;
        let ann = h.annihilator()?;
        rows.push(HomologyRow {
            degree: n,
            length: h.length()?.finite(),
            annihilator: ann.canonical_generators().iter().map(|g| x.ring().format(g)).collect(),
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct TermCheck {
    pub degree: i64,
    pub in_spec: bool,
    pub projective_dimension: Option<usize>,
    pub length: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Roundtrip {
    pub reduction: Reduction,
    pub realization: Complex,
    pub certificate: ZigzagCertificate,
    pub report: RoundtripReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    pub arrows_verified: bool,
    pub euler: Vec<i64>,
    pub euler_constant: bool,
    pub input_homology: Vec<HomologyRow>,
    pub output_homology: Vec<HomologyRow>,
    pub homology_matches: bool,
    pub ptilde_terms: Vec<TermCheck>,
    pub terms_ok: bool,
    pub levels: Vec<LevelLog>,
    pub verdict: bool,
}

/// Reduce, realize, and re-check everything from scratch.
pub fn roundtrip_verify(p: &Complex, spec: &SerreSpec, seed: u64) -> Result<Roundtrip> {
    let (red, cert) = reduce_object(p, spec, seed)?;
    let (u, back) = realize_in_projectives(&red.ptilde)?;
    let mut certificate = cert;
    certificate.append(&back)?;
    let arrows_verified = certificate.verify()?;
    let euler = certificate.nodes.iter().map(euler_characteristic_fl).collect::<Result<Vec<_>>>()?;
    let euler_constant = euler.windows(2).all(|w| w[0] == w[1]);
    let input_homology = homology_table(p)?;
    let output_homology = homology_table(&u)?;
    let homology_matches = input_homology.len() == output_homology.len()
        && input_homology
            .iter()
            .zip(&output_homology)
            .all(|(a, b)| a.degree == b.degree && a.length == b.length && a.annihilator == b.annihilator);
    let mut ptilde_terms = Vec::new();
    let pt = &red.ptilde;
    if !pt.is_zero_complex() {
        for n in pt.low()..=pt.high() {
            let t = pt.term(n);
            let pd = if t.is_zero()? {
                Some(0)
            } else {
                match projective_dimension(&t)? {
                    ProjDim::Finite(d) => Some(d),
                    ProjDim::Infinite => None,
                }
            };
            ptilde_terms.push(TermCheck { degree: n, in_spec: serre_member(&t, spec)?, projective_dimension: pd, length: t.length()?.finite() });
        }
    }
    let terms_ok = ptilde_terms.iter().all(|t| t.in_spec && t.projective_dimension.is_some());
    let verdict = arrows_verified && euler_constant && homology_matches && terms_ok;
    let report = RoundtripReport {
        arrows_verified,
        euler,
        euler_constant,
        input_homology,
        output_homology,
        homology_matches,
        ptilde_terms,
        terms_ok,
        levels: red.levels.clone(),
        verdict,
    };
    Ok(Roundtrip { reduction: red, realization: u, certificate, report })
}

#[derive(Clone, Debug, Serialize)]
pub struct TransportReport {
    pub width: i64,
    pub square: SquareVerdicts,
    pub cone_x: ComplexStats,
    pub cone_y: ComplexStats,
    /// wid(C^X ⊕ C^Y) < k, when k > 0.
    pub cones_narrower: Option<bool>,
    /// wid(C^X ⊕ Y) ≤ k.
    pub cone_x_with_y_bounded: bool,
    /// wid(C^X ⊕ Y) ≤ k − 1 when min X < min Y.
    pub cone_x_with_y_strict: Option<bool>,
    /// When min X > max Y, whether g is null-homotopic on a free model of X.
    pub hom_vanishing: Option<bool>,
    pub verdict: bool,
}

#[derive(Clone, Debug)]
pub struct TransportStep {
    pub square: MorphismSquare,
    pub cone_x: Complex,
    pub cone_y: Complex,
    pub report: TransportReport,
}

/// One induction step for a morphism g: X → Y of complexes of modules: the
/// covering square and the cones of both covers, with width bounds checked.
pub fn transport_morphism_step(g: &ChainMap, spec: &SerreSpec, seed: u64) -> Result<TransportStep> {
    let x = &g.source;
    let y = &g.target;
    let xs = x.stats()?;
    let ys = y.stats()?;
    for c in [x, y] {
        if c.is_zero_complex() {
            continue;
        }
        for n in c.low()..=c.high() {
            if !serre_member(&c.term(n), spec)? {
                return Err(Error::Precondition(format!("transport needs terms in {spec}; degree {n} is not")));
            }
        }
    }
    let k = Complex::direct_sum(&[x, y])?.stats()?.wid;
    let square = morphism_cover(g, spec, seed)?;
    let (cx, _, _) = Complex::cone(&square.beta_x)?;
    let (cy, _, _) = Complex::cone(&square.beta_y)?;
    let cones = Complex::direct_sum(&[&cx, &cy])?.stats()?;
    let cxy = Complex::direct_sum(&[&cx, y])?.stats()?;
    let cones_narrower = (k > 0).then_some(cones.wid < k);
    let cone_x_with_y_bounded = cxy.wid <= k;
    let cone_x_with_y_strict = match (xs.min, ys.min) {
        (Some(a), Some(b)) if a < b => Some(cxy.wid < k),
        _ => None,
    };
    let hom_vanishing = match (xs.min, ys.max) {
        (Some(a), Some(b)) if a > b => {
            let (_, q) = free_replacement(x, FreeUpTo::All)?;
            let f = g.compose(&q)?;
            Some(match null_homotopy(&f) {
                Ok(h) => h.witnesses(&f)?,
                Err(Error::NotNullHomotopic { .. }) => false,
                Err(e) => return Err(e),
            })
        }
        _ => None,
    };
    let verdict = square.verdicts.all()
        && cones_narrower.unwrap_or(true)
        && cone_x_with_y_bounded
        && cone_x_with_y_strict.unwrap_or(true)
        && hom_vanishing.unwrap_or(true);
    let report = TransportReport {
        width: k,
        square: square.verdicts.clone(),
        cone_x: cx.stats()?,
        cone_y: cy.stats()?,
        cones_narrower,
        cone_x_with_y_bounded,
        cone_x_with_y_strict,
        hom_vanishing,
        verdict,
    };
    Ok(TransportStep { square, cone_x: cx, cone_y: cy, report })
}
