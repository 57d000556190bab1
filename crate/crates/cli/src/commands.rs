//! One function per command. Each returns the JSON outputs and the named
//! verification checks that decide the exit code.

use std::collections::BTreeMap;

use koszulator_core::complex::hom::homotopy_classes;
use koszulator_core::complex::{ChainMap, Complex};
use koszulator_core::equivalence::reduce::homology_table;
use koszulator_core::equivalence::{realize_in_projectives, reduce_object, roundtrip_verify, transport_morphism_step};
use koszulator_core::k0::{euler_characteristic_fl, hom_vanishing_check, module_hom_comparison};
use koszulator_core::koszul::{cone_width_report, koszul_cover};
use koszulator_core::module::fpmodule::FpModule;
use koszulator_core::module::resolution::{depth, free_resolution, projective_dimension_report, ring_depth, ProjDim};
use koszulator_core::serre::{cm_dichotomy_report, is_cohen_macaulay, serre_member, SerreSpec};
use koszulator_core::{Error as CoreError, Ideal};
use serde_json::{json, Value};
use thiserror::Error;

use crate::certificate::Certificate;
use crate::json;
use crate::session::Session;

pub const COMMANDS: &[&str] = &[
    "gb",
    "resolve",
    "homology",
    "depth",
    "cm-check",
    "koszul-cover",
    "reduce",
    "realize",
    "roundtrip",
    "k0",
    "hom-vanish",
    "hom-compare",
    "transport",
];

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("unknown command `{0}`")]
    Unknown(String),
    #[error("{command}: {msg}")]
    Usage { command: String, msg: String },
    #[error("{command}: {source}")]
    Core { command: String, source: CoreError },
}

type Verdicts = BTreeMap<String, bool>;
type Out = Result<(Value, Verdicts), CommandError>;

struct Ctx<'a> {
    s: &'a Session,
    cmd: &'a str,
    args: &'a [String],
}

impl Ctx<'_> {
    fn usage(&self, msg: impl Into<String>) -> CommandError {
        CommandError::Usage { command: self.cmd.into(), msg: msg.into() }
    }

    fn core(&self) -> impl Fn(CoreError) -> CommandError + '_ {
        move |source| CommandError::Core { command: self.cmd.into(), source }
    }

    fn arg(&self, i: usize, what: &str) -> Result<&str, CommandError> {
        self.args.get(i).map(String::as_str).ok_or_else(|| self.usage(format!("missing {what}")))
    }

    fn complex(&self, i: usize) -> Result<Complex, CommandError> {
        let name = self.arg(i, "complex")?;
        if let Some(c) = self.s.complexes.get(name) {
            return Ok(c.clone());
        }
        if let Some(m) = self.s.modules.get(name) {
            return Ok(Complex::one_term(m, 0));
        }
        Err(self.usage(format!("no complex named `{name}`")))
    }

    fn module(&self, i: usize) -> Result<FpModule, CommandError> {
        let name = self.arg(i, "module")?;
        if let Some(m) = self.s.modules.get(name) {
            return Ok(m.clone());
        }
        if let Some(j) = self.s.ideals.get(name) {
            return Ok(FpModule::cyclic(j));
        }
        Err(self.usage(format!("no module named `{name}`")))
    }

    fn map(&self, i: usize) -> Result<ChainMap, CommandError> {
        let name = self.arg(i, "map")?;
        self.s.maps.get(name).cloned().ok_or_else(|| self.usage(format!("no map named `{name}`")))
    }

    /// A declared spec name or a literal such as `fl`.
    fn spec(&self, i: usize) -> Result<SerreSpec, CommandError> {
        let text = self.args.get(i).map(String::as_str).unwrap_or("fl");
        if let Some(s) = self.s.specs.get(text) {
            return Ok(s.clone());
        }
        SerreSpec::parse(&self.s.ring, text, &|n| self.s.ideal(n).cloned()).map_err(self.core())
    }
}

/// Runs `command args…` against the session.
pub fn run_command(session: &Session, command: &str, args: &[String]) -> Result<Certificate, CommandError> {
    let ctx = Ctx { s: session, cmd: command, args };
    let (outputs, verdicts) = match command {
        "gb" => gb(&ctx),
        "resolve" => resolve(&ctx),
        "homology" => homology(&ctx),
        "depth" => depth_cmd(&ctx),
        "cm-check" => cm_check(&ctx),
        "koszul-cover" => cover(&ctx),
        "reduce" => reduce(&ctx),
        "realize" => realize(&ctx),
        "roundtrip" => roundtrip(&ctx),
        "k0" => k0(&ctx),
        "hom-vanish" => hom_vanish(&ctx),
        "hom-compare" => hom_compare(&ctx),
        "transport" => transport(&ctx),
        other => return Err(CommandError::Unknown(other.into())),
    }?;
    let mut echo = vec![command.to_string()];
    echo.extend(args.iter().cloned());
    Ok(Certificate::new(session, &echo, outputs, verdicts))
}

fn fmt_all(s: &Session, ps: &[koszulator_core::Poly]) -> Vec<String> {
    ps.iter().map(|p| s.ring.format(p)).collect()
}

fn gb(c: &Ctx) -> Out {
    let r = &c.s.ring;
    let ideal = match c.args.first() {
        Some(n) => c.s.ideals.get(n).cloned().ok_or_else(|| c.usage(format!("no ideal named `{n}`")))?,
        None => Ideal::zero(r),
    };
    let members = ideal.generators().iter().all(|g| ideal.contains(g));
    let out = json!({
        "ring": r.describe(),
        "ring_groebner": fmt_all(c.s, r.gb()),
        "generators": fmt_all(c.s, ideal.generators()),
        "groebner": fmt_all(c.s, ideal.groebner()),
        "krull_dimension": ideal.krull_dimension(),
        "unit": ideal.is_unit(),
    });
    Ok((out, BTreeMap::from([("generators_reduce_to_zero".into(), members)])))
}

fn resolve(c: &Ctx) -> Out {
    let m = c.module(0)?;
    let steps = match c.args.get(1) {
        Some(t) => t.parse().map_err(|_| c.usage("steps must be a non-negative integer"))?,
        None => ring_depth(&c.s.ring).map_err(c.core())? + 2,
    };
    let res = free_resolution(&m, steps, true).map_err(c.core())?;
    let x = &res.complex;
    let mut exact = true;
    if !x.is_zero_complex() {
        for n in 1..x.high() {
            exact &= x.homology(n).map_err(c.core())?.module.is_zero().map_err(c.core())?;
        }
    }
    let h0 = x.homology(0).map_err(c.core())?.module;
    let same_length = h0.length().map_err(c.core())? == m.length().map_err(c.core())?;
    let pd = projective_dimension_report(&m).map_err(c.core())?;
    let out = json!({
        "betti": res.betti(),
        "complete": res.complete,
        "resolution": json::complex(x),
        "projective_dimension": pd.pd,
        "ring_depth": pd.ring_depth,
    });
    Ok((out, BTreeMap::from([("exact_in_positive_degrees".into(), exact), ("h0_length_matches".into(), same_length)])))
}

fn homology(c: &Ctx) -> Out {
    let x = c.complex(0)?;
    let out = json!({
        "stats": x.stats().map_err(c.core())?,
        "homology": homology_table(&x).map_err(c.core())?,
        "ranks": x.ranks(),
    });
    Ok((out, BTreeMap::new()))
}

fn depth_cmd(c: &Ctx) -> Out {
    let (what, d) = match c.args.first() {
        Some(_) => ("module", depth(&c.module(0)?).map_err(c.core())?),
        None => ("ring", ring_depth(&c.s.ring).map_err(c.core())?),
    };
    Ok((json!({ "of": what, "depth": d }), BTreeMap::new()))
}

fn cm_check(c: &Ctx) -> Out {
    let cm = is_cohen_macaulay(&c.s.ring).map_err(c.core())?;
    let corpus: Vec<FpModule> = c.s.modules.values().cloned().collect();
    let names: Vec<&String> = c.s.modules.keys().collect();
    let report = cm_dichotomy_report(&c.s.ring, &corpus).map_err(c.core())?;
    let out = json!({ "cm": cm, "dichotomy": report, "module_names": names });
    Ok((
        out,
        BTreeMap::from([
            ("depth_at_most_dimension".into(), cm.depth <= cm.dimension),
            ("dichotomy_consistent".into(), report.consistent),
        ]),
    ))
}

fn cover(c: &Ctx) -> Out {
    let p = c.complex(0)?;
    let spec = c.spec(1)?;
    let cov = koszul_cover(&p, &spec, None, c.s.seed).map_err(c.core())?;
    let v = &cov.verdicts;
    let mut verdicts = BTreeMap::from([
        ("d_squared_zero".into(), v.d_squared_zero),
        ("bottom_degree_is_m".into(), v.bottom_degree_is_m),
        ("homology_concentrated_in_m".into(), v.homology_concentrated_in_m),
        ("homology_in_spec".into(), v.homology_in_spec),
        ("homotopies_verified".into(), v.homotopies_verified),
        ("alpha_is_chain_map".into(), v.alpha_is_chain_map),
        ("bottom_homology_surjective".into(), v.bottom_homology_surjective),
    ]);
    let wid = p.stats().map_err(c.core())?.wid;
    let cone = if wid > 0 && !cov.degenerate {
        let rep = cone_width_report(&cov, &p).map_err(c.core())?;
        verdicts.insert("cone_width_decreases".into(), rep.holds());
        Some(rep)
    } else {
        None
    };
    let out = json!({
        "m": cov.m,
        "spec": spec.to_string(),
        "degenerate": cov.degenerate,
        "sequence": fmt_all(c.s, &cov.sequence.elements),
        "attempts": cov.sequence.attempts,
        "closed_form": v.closed_form,
        "koszul": json::complex(&cov.k),
        "koszul_stats": cov.k.stats().map_err(c.core())?,
        "alpha": json::chain_map(&cov.alpha),
        "cone_widths": cone,
    });
    Ok((out, verdicts))
}

fn pd_finite(m: &FpModule) -> Result<bool, CoreError> {
    Ok(m.is_zero()? || projective_dimension_report(m)?.pd != ProjDim::Infinite)
}

fn reduce(c: &Ctx) -> Out {
    let p = c.complex(0)?;
    let spec = c.spec(1)?;
    let (red, cert) = reduce_object(&p, &spec, c.s.seed).map_err(c.core())?;
    let mut verdicts: Verdicts = cert
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| (format!("arrow_{i}_quasi_isomorphism"), a.verdict == Some(true)))
        .collect();
    let mut in_spec = true;
    let mut finite_pd = true;
    if !red.ptilde.is_zero_complex() {
        for n in red.ptilde.low()..=red.ptilde.high() {
            let t = red.ptilde.term(n);
            in_spec &= serre_member(&t, &spec).map_err(c.core())?;
            finite_pd &= pd_finite(&t).map_err(c.core())?;
        }
    }
    verdicts.insert("terms_in_spec".into(), in_spec);
    verdicts.insert("terms_finite_pd".into(), finite_pd);
    let widths: Vec<i64> = red.levels.iter().map(|l| l.width).collect();
    verdicts.insert("width_decreases".into(), widths.windows(2).all(|w| w[0] > w[1]));
    let out = json!({
        "spec": spec.to_string(),
        "ptilde": json::complex(&red.ptilde),
        "levels": red.levels,
        "certificate": json::zigzag(&cert).map_err(c.core())?,
    });
    Ok((out, verdicts))
}

fn realize(c: &Ctx) -> Out {
    let x = c.complex(0)?;
    let (u, cert) = realize_in_projectives(&x).map_err(c.core())?;
    let verdicts = BTreeMap::from([
        ("arrows_verified".into(), cert.arrows.iter().all(|a| a.verdict == Some(true))),
        ("free".into(), u.is_free()),
    ]);
    let out = json!({ "realization": json::complex(&u), "certificate": json::zigzag(&cert).map_err(c.core())? });
    Ok((out, verdicts))
}

fn roundtrip(c: &Ctx) -> Out {
    let p = c.complex(0)?;
    let spec = c.spec(1)?;
    let rt = roundtrip_verify(&p, &spec, c.s.seed).map_err(c.core())?;
    let r = &rt.report;
    let verdicts = BTreeMap::from([
        ("arrows_verified".into(), r.arrows_verified),
        ("euler_constant".into(), r.euler_constant),
        ("homology_matches".into(), r.homology_matches),
        ("terms_ok".into(), r.terms_ok),
    ]);
    let out = json!({
        "spec": spec.to_string(),
        "report": r,
        "ptilde": json::complex(&rt.reduction.ptilde),
        "realization": json::complex(&rt.realization),
        "certificate": json::zigzag(&rt.certificate).map_err(c.core())?,
    });
    Ok((out, verdicts))
}

fn k0(c: &Ctx) -> Out {
    let x = c.complex(0)?;
    let chi = euler_characteristic_fl(&x).map_err(c.core())?;
    Ok((json!({ "euler": chi, "homology": homology_table(&x).map_err(c.core())? }), BTreeMap::new()))
}

fn hom_vanish(c: &Ctx) -> Out {
    let p = c.complex(0)?;
    let q = c.complex(1)?;
    let v = hom_vanishing_check(&p, &q).map_err(c.core())?;
    let classes = if v.trivial { None } else { Some(homotopy_classes(&p, &q).map_err(c.core())?.rank()) };
    let verdicts =
        BTreeMap::from([("classes_zero".into(), v.classes_zero), ("witnesses_verified".into(), v.witnesses_verified)]);
    Ok((json!({ "report": v, "class_generators": classes }), verdicts))
}

fn hom_compare(c: &Ctx) -> Out {
    let m = c.module(0)?;
    let n = c.module(1)?;
    let cmp = module_hom_comparison(&m, &n).map_err(c.core())?;
    let s = cmp.summary().map_err(c.core())?;
    let verdicts = BTreeMap::from([
        ("mutually_inverse".into(), s.mutually_inverse),
        ("lengths_agree".into(), s.module_hom_length.is_some() && s.module_hom_length == s.classes_length),
    ]);
    let out = json!({
        "summary": s,
        "module_hom": json::module(&cmp.module_hom),
        "classes": json::module(&cmp.classes),
        "forward": json::matrix(&c.s.ring, &cmp.forward.matrix),
        "backward": json::matrix(&c.s.ring, &cmp.backward.matrix),
    });
    Ok((out, verdicts))
}

fn transport(c: &Ctx) -> Out {
    let g = c.map(0)?;
    let spec = c.spec(1)?;
    let step = transport_morphism_step(&g, &spec, c.s.seed).map_err(c.core())?;
    let r = &step.report;
    let mut verdicts = BTreeMap::from([
        ("square".into(), r.square.all()),
        ("cone_x_with_y_bounded".into(), r.cone_x_with_y_bounded),
    ]);
    if let Some(b) = r.cones_narrower {
        verdicts.insert("cones_narrower".into(), b);
    }
    if let Some(b) = r.cone_x_with_y_strict {
        verdicts.insert("cone_x_with_y_strict".into(), b);
    }
    if let Some(b) = r.hom_vanishing {
        verdicts.insert("hom_vanishing".into(), b);
    }
    let out = json!({
        "report": r,
        "beta_x": json::chain_map(&step.square.beta_x),
        "beta_y": json::chain_map(&step.square.beta_y),
        "cone_x": json::complex(&step.cone_x),
        "cone_y": json::complex(&step.cone_y),
    });
    Ok((out, verdicts))
}
