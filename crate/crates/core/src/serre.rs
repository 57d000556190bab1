//! Serre subcategories of finitely generated modules, regular sequences cutting
//! out quotients inside them, and the Cohen–Macaulay test.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::monomial::monomials_of_degree;
use crate::kernel::poly::Poly;
use crate::kernel::ring::{is_regular_on_ring, Ideal, QuotientRing};
use crate::module::fpmodule::{FpModule, Length};
use crate::module::resolution::{depth, projective_dimension_report, ring_depth, ProjDim};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SerreSpec {
    FiniteLength,
    /// Modules killed by a power of every generator of J.
    SupportIn(Ideal),
    /// dim R − dim Supp(M) ≥ c.
    CodimAtLeast(usize),
    Intersection(Vec<SerreSpec>),
}

impl fmt::Display for SerreSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SerreSpec::FiniteLength => write!(f, "fl"),
            SerreSpec::SupportIn(j) => {
                let g: Vec<String> = j.generators().iter().map(|p| j.ring().format(p)).collect();
                write!(f, "support({})", g.join(", "))
            }
            SerreSpec::CodimAtLeast(c) => write!(f, "codim>={c}"),
            SerreSpec::Intersection(parts) => {
                let p: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
                write!(f, "{}", p.join(" & "))
            }
        }
    }
}

impl SerreSpec {
    /// Parses `fl`, `support(f, g, ...)`, `support(NAME)`, `codim>=c` and
    /// `&`-joined intersections. Names are resolved through `ideals`.
    pub fn parse(ring: &QuotientRing, text: &str, ideals: &dyn Fn(&str) -> Option<Ideal>) -> Result<SerreSpec> {
        let parts: Vec<&str> = text.split('&').map(str::trim).collect();
        if parts.len() > 1 {
            let specs = parts.iter().map(|p| SerreSpec::parse(ring, p, ideals)).collect::<Result<Vec<_>>>()?;
            return Ok(SerreSpec::Intersection(specs));
        }
        let t = parts[0];
        if t == "fl" {
            return Ok(SerreSpec::FiniteLength);
        }
        if let Some(c) = t.strip_prefix("codim>=") {
            let c = c.trim().parse().map_err(|_| Error::Invalid(format!("bad codimension in `{t}`")))?;
            return Ok(SerreSpec::CodimAtLeast(c));
        }
        if let Some(inner) = t.strip_prefix("support(").and_then(|r| r.strip_suffix(')')) {
            let inner = inner.trim();
            if let Some(j) = ideals(inner) {
                return Ok(SerreSpec::SupportIn(j));
            }
            let gens: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            return Ok(SerreSpec::SupportIn(Ideal::parse(ring, &gens)?));
        }
        Err(Error::Invalid(format!("unknown subcategory `{t}`")))
    }
}

/// Exponent used for the radical-membership surrogate of `SupportIn`.
pub fn support_power_bound(ann: &Ideal) -> u32 {
    let gb = ann.groebner();
    let maxdeg = gb.iter().filter_map(|g| ann.ring().poly().degree(g)).max().unwrap_or(1).max(1);
    (gb.len() as i64 * maxdeg).max(1) as u32
}

pub fn serre_member(m: &FpModule, spec: &SerreSpec) -> Result<bool> {
    if m.is_zero()? {
        return Ok(true);
    }
    match spec {
        SerreSpec::FiniteLength => Ok(matches!(m.length()?, Length::Finite(_))),
        SerreSpec::SupportIn(j) => {
            let ann = m.annihilator()?;
            let n = support_power_bound(&ann);
            let ring = m.ring();
            Ok(j.generators().iter().all(|g| ann.contains(&ring.poly().pow(g, n))))
        }
        SerreSpec::CodimAtLeast(c) => {
            let dim_r = m.ring().dimension().unwrap_or(0);
            let dim_m = m.dimension()?.unwrap_or(0);
            Ok(dim_r >= dim_m + c)
        }
        SerreSpec::Intersection(parts) => {
            for p in parts {
                if !serre_member(m, p)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Whether R/J lies in the subcategory.
pub fn quotient_member(j: &Ideal, spec: &SerreSpec) -> Result<bool> {
    serre_member(&FpModule::cyclic(j), spec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CmReport {
    pub cohen_macaulay: bool,
    pub depth: usize,
    pub dimension: usize,
}

pub fn is_cohen_macaulay(ring: &QuotientRing) -> Result<CmReport> {
    if ring.is_zero_ring() {
        return Err(Error::ZeroModule);
    }
    let d = ring_depth(ring)?;
    let dim = ring.dimension().unwrap_or(0);
    Ok(CmReport { cohen_macaulay: d == dim, depth: d, dimension: dim })
}

#[derive(Clone, Debug)]
pub struct RegularSequence {
    pub elements: Vec<Poly>,
    /// Candidates tried, in order, including the accepted ones.
    pub attempts: usize,
}

/// f₁..f_c in J, each regular modulo the previous ones, with R/(f) in the
/// subcategory, where c = dim R − dim R/J.
///
/// Candidates are random homogeneous k-combinations of the degree-d part of J
/// for the smallest positive d, moving up one degree every eight failures.
pub fn find_regular_sequence(j: &Ideal, spec: &SerreSpec, seed: u64) -> Result<RegularSequence> {
    let ring = j.ring();
    if !quotient_member(j, spec)? {
        return Err(Error::Precondition(format!("R/J is not in {spec}")));
    }
    let cm = is_cohen_macaulay(ring)?;
    if !cm.cohen_macaulay {
        return Err(Error::NotCohenMacaulay { depth: cm.depth, dim: cm.dimension });
    }
    let dim_r = cm.dimension;
    let dim_q = j.krull_dimension().map(|d| d as i64).unwrap_or(-1);
    let c = (dim_r as i64 - dim_q.max(0)).max(0) as usize;
    let retries = ring.budget().max_retries as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens: Vec<Poly> = j.canonical_generators();
    let graded = ring.is_graded() && j.is_homogeneous();
    let d0 = gens.iter().map(|g| ring.degree(g).max(1)).min().unwrap_or(1);

    let mut seq: Vec<Poly> = Vec::new();
    let mut attempts = 0usize;
    let mut failures = 0usize;
    while seq.len() < c {
        if failures >= retries {
            return Err(Error::SearchFailed { attempts });
        }
        let d = d0 + (failures / 8) as i64;
        let cand = if graded { random_element_of_degree(ring, &gens, d, &mut rng) } else { random_combination(ring, &gens, &mut rng) };
        attempts += 1;
        let ok = match &cand {
            Some(f) => {
                let prev = Ideal::new(ring, seq.clone())?;
                let quotient = ring.quotient(&prev)?;
                let mut with_f = seq.clone();
                with_f.push(f.clone());
                let next = Ideal::new(ring, with_f)?;
                let regular = !next.is_unit() && is_regular_on_ring(&quotient, f)?;
                // the last element must also land in the subcategory
                regular && (seq.len() + 1 < c || quotient_member(&next, spec)?)
            }
            None => false,
        };
        if ok {
            seq.push(cand.unwrap());
            failures = 0;
        } else {
            failures += 1;
        }
    }
    if c == 0 && !quotient_member(&Ideal::zero(ring), spec)? {
        return Err(Error::SearchFailed { attempts });
    }
    Ok(RegularSequence { elements: seq, attempts })
}

fn random_coefficient(ring: &QuotientRing, rng: &mut ChaCha8Rng) -> crate::kernel::scalar::Scalar {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-7i64..=7);
    }
    ring.field().from_i64(c)
}

/// A random element of J_d, spanned by monomial multiples of the generators.
fn random_element_of_degree(ring: &QuotientRing, gens: &[Poly], d: i64, rng: &mut ChaCha8Rng) -> Option<Poly> {
    let p = ring.poly();
    let mut acc = Poly::zero();
    for g in gens {
        let e = ring.degree(g);
        if e > d {
            continue;
        }
        for m in monomials_of_degree(&p.weights, d - e) {
            let c = random_coefficient(ring, rng);
            acc = p.add_scaled(&acc, &c, &m, g);
        }
    }
    let acc = ring.reduce(&acc);
    if acc.is_zero() {
        None
    } else {
        Some(p.monic(&acc))
    }
}

fn random_combination(ring: &QuotientRing, gens: &[Poly], rng: &mut ChaCha8Rng) -> Option<Poly> {
    let p = ring.poly();
    let mut acc = Poly::zero();
    for g in gens {
        let c = random_coefficient(ring, rng);
        acc = p.add(&acc, &p.scale(g, &c));
    }
    let acc = ring.reduce(&acc);
    (!acc.is_zero()).then(|| p.monic(&acc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DichotomyBranch {
    /// CM ring, finite length and finite pd: a witness.
    Witness,
    /// CM ring, finite length, infinite pd.
    CmInfinitePd,
    /// Non-CM ring, finite length, certified infinite pd.
    ObstructedInfinitePd,
    /// A finite-length finite-pd module over a non-CM ring: contradicts the
    /// depth bound, so this signals a bug.
    Contradiction,
    NotFiniteLength,
    Zero,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyEntry {
    pub index: usize,
    pub length: Option<usize>,
    pub pd: Option<ProjDim>,
    pub depth: Option<usize>,
    pub betti: Vec<usize>,
    /// Rank of the nonzero syzygy past the depth bound, when present.
    pub witness_syzygy_generators: Option<usize>,
    pub branch: DichotomyBranch,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReport {
    pub ring: CmReport,
    pub entries: Vec<DichotomyEntry>,
    /// True unless some entry landed in `Contradiction`.
    pub consistent: bool,
    pub witnesses: usize,
}

/// Over a CM ring, lists finite-length finite-pd witnesses. Over a non-CM
/// ring, checks every finite-length module has infinite pd: a nonzero
/// finite-length M has depth 0, so finite pd would force pd M = depth R, and a
/// minimal resolution with a nonzero syzygy past depth R rules that out.
pub fn cm_dichotomy_report(ring: &QuotientRing, corpus: &[FpModule]) -> Result<DichotomyReport> {
    let cm = is_cohen_macaulay(ring)?;
    let mut entries = Vec::new();
    for (index, m) in corpus.iter().enumerate() {
        if m.ring() != ring {
            return Err(Error::AmbientMismatch);
        }
        if m.is_zero()? {
            entries.push(DichotomyEntry {
                index,
                length: Some(0),
                pd: None,
                depth: None,
                betti: vec![],
                witness_syzygy_generators: None,
                branch: DichotomyBranch::Zero,
            });
            continue;
        }
        let length = m.length()?.finite();
        let rep = projective_dimension_report(m)?;
        let dep = if length.is_some() { Some(0) } else { Some(depth(m)?) };
        let branch = match (length, rep.pd, cm.cohen_macaulay) {
            (None, _, _) => DichotomyBranch::NotFiniteLength,
            (Some(_), ProjDim::Finite(_), true) => DichotomyBranch::Witness,
            (Some(_), ProjDim::Infinite, true) => DichotomyBranch::CmInfinitePd,
            (Some(_), ProjDim::Infinite, false) => DichotomyBranch::ObstructedInfinitePd,
            (Some(_), ProjDim::Finite(_), false) => DichotomyBranch::Contradiction,
        };
        entries.push(DichotomyEntry {
            index,
            length,
            pd: Some(rep.pd),
            depth: dep,
            betti: rep.betti,
            witness_syzygy_generators: rep.witness_syzygy.as_ref().map(|s| s.rank()),
            branch,
        });
    }
    let consistent = entries.iter().all(|e| e.branch != DichotomyBranch::Contradiction);
    let witnesses = entries.iter().filter(|e| e.branch == DichotomyBranch::Witness).count();
    Ok(DichotomyReport { ring: cm, entries, consistent, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::Field;
    use crate::module::resolution::cyclic_module;

    fn rxy() -> QuotientRing {
        QuotientRing::parse(Field::Rationals, &["x", "y"], &["x*y"]).unwrap()
    }

    #[test]
    fn membership() {
        let r = rxy();
        let m = cyclic_module(&r, &["x - y"]).unwrap();
        assert!(serre_member(&m, &SerreSpec::FiniteLength).unwrap());
        assert!(serre_member(&m, &SerreSpec::CodimAtLeast(1)).unwrap());
        assert!(!serre_member(&FpModule::free(&r, vec![0]), &SerreSpec::FiniteLength).unwrap());
        let j = Ideal::parse(&r, &["x", "y"]).unwrap();
        assert!(serre_member(&m, &SerreSpec::SupportIn(j)).unwrap());
        let jx = Ideal::parse(&r, &["x"]).unwrap();
        let ry = cyclic_module(&r, &["y"]).unwrap();
        assert!(!serre_member(&ry, &SerreSpec::SupportIn(jx.clone())).unwrap());
        let rx = cyclic_module(&r, &["x"]).unwrap();
        assert!(serre_member(&rx, &SerreSpec::SupportIn(jx)).unwrap());
    }

    #[test]
    fn spec_syntax() {
        let r = rxy();
        let s = SerreSpec::parse(&r, "fl & codim>=1", &|_| None).unwrap();
        assert_eq!(s.to_string(), "fl & codim>=1");
        let s = SerreSpec::parse(&r, "support(x, y)", &|_| None).unwrap();
        assert_eq!(s.to_string(), "support(x, y)");
        assert!(SerreSpec::parse(&r, "nope", &|_| None).is_err());
    }

    #[test]
    fn regular_sequences() {
        let r = rxy();
        let j = Ideal::parse(&r, &["x - y"]).unwrap();
        let s = find_regular_sequence(&j, &SerreSpec::FiniteLength, 0).unwrap();
        assert_eq!(s.elements.len(), 1);
        assert_eq!(r.format(&s.elements[0]), "x - y");

        let j = Ideal::parse(&r, &["x", "y"]).unwrap();
        let s = find_regular_sequence(&j, &SerreSpec::FiniteLength, 0).unwrap();
        assert_eq!(s.elements.len(), 1);
        let f = &s.elements[0];
        assert_eq!(f.terms.len(), 2);
        assert!(is_regular_on_ring(&r, f).unwrap());

        let s2 = QuotientRing::parse(Field::Rationals, &["x", "y"], &[]).unwrap();
        let s = find_regular_sequence(&Ideal::unit(&s2), &SerreSpec::FiniteLength, 7).unwrap();
        assert_eq!(s.elements.len(), 2);
        assert!(s.elements.iter().all(|f| s2.degree(f) == 1));
    }

    #[test]
    fn cohen_macaulay() {
        assert_eq!(is_cohen_macaulay(&rxy()).unwrap(), CmReport { cohen_macaulay: true, depth: 1, dimension: 1 });
        let bad = QuotientRing::parse(Field::Rationals, &["x", "y"], &["x^2", "x*y"]).unwrap();
        assert_eq!(is_cohen_macaulay(&bad).unwrap(), CmReport { cohen_macaulay: false, depth: 0, dimension: 1 });
        let poly = QuotientRing::parse(Field::Rationals, &["x", "y"], &[]).unwrap();
        assert_eq!(is_cohen_macaulay(&poly).unwrap().depth, 2);
        let j = Ideal::parse(&bad, &["x", "y"]).unwrap();
        assert!(matches!(
            find_regular_sequence(&j, &SerreSpec::FiniteLength, 0),
            Err(Error::NotCohenMacaulay { depth: 0, dim: 1 })
        ));
    }

    #[test]
    fn dichotomy() {
        let r = rxy();
        let rep = cm_dichotomy_report(&r, &[cyclic_module(&r, &["x - y"]).unwrap()]).unwrap();
        assert_eq!(rep.witnesses, 1);
        assert_eq!(rep.entries[0].pd, Some(ProjDim::Finite(1)));
        assert_eq!(rep.entries[0].length, Some(2));

        let bad = QuotientRing::parse(Field::Rationals, &["x", "y"], &["x^2", "x*y"]).unwrap();
        let corpus = [cyclic_module(&bad, &["x", "y"]).unwrap(), cyclic_module(&bad, &["y"]).unwrap()];
        let rep = cm_dichotomy_report(&bad, &corpus).unwrap();
        assert!(rep.consistent);
        assert!(rep.entries.iter().all(|e| e.branch == DichotomyBranch::ObstructedInfinitePd));

        let rep = cm_dichotomy_report(&bad, &[]).unwrap();
        assert!(rep.entries.is_empty() && !rep.ring.cohen_macaulay);
    }
}
