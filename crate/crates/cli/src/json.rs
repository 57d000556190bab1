//! JSON encodings of algebraic objects. Every matrix is written out in full
//! so a certificate can be re-checked without this tool.

use koszulator_core::complex::{ChainMap, Complex};
use koszulator_core::equivalence::reduce::homology_table;
use koszulator_core::equivalence::ZigzagCertificate;
use koszulator_core::k0::euler_characteristic_fl;
use koszulator_core::module::fpmodule::FpModule;
use koszulator_core::{Matrix, QuotientRing, Result};
use serde_json::{json, Value};

pub fn matrix(r: &QuotientRing, m: &Matrix) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": m.format(r) })
}

pub fn module(m: &FpModule) -> Value {
    json!({
        "generator_degrees": m.degrees(),
        "relations": matrix(m.ring(), m.relations()),
    })
}

pub fn complex(x: &Complex) -> Value {
    if x.is_zero_complex() {
        return json!({ "terms": [], "differentials": [] });
    }
    let r = x.ring();
    let terms: Vec<Value> = (x.low()..=x.high()).map(|n| json!({ "degree": n, "module": module(&x.term(n)) })).collect();
    let diffs: Vec<Value> = (x.low() + 1..=x.high()).map(|n| json!({ "degree": n, "matrix": matrix(r, &x.d(n)) })).collect();
    json!({ "low": x.low(), "high": x.high(), "terms": terms, "differentials": diffs })
}

pub fn chain_map(f: &ChainMap) -> Value {
    let r = f.source.ring();
    let comps: Vec<Value> = f.components().iter().map(|(n, m)| json!({ "degree": n, "matrix": matrix(r, m) })).collect();
    json!({ "components": comps })
}

/// Node summaries (ranks, χ, homology) plus every arrow with its matrices.
pub fn zigzag(cert: &ZigzagCertificate) -> Result<Value> {
    let mut nodes = Vec::new();
    for (i, x) in cert.nodes.iter().enumerate() {
        let stats = x.stats()?;
        nodes.push(json!({
            "index": i,
            "ranks": x.ranks(),
            "euler": euler_characteristic_fl(x).ok(),
            "homology": homology_table(x)?,
            "stats": stats,
            "complex": complex(x),
        }));
    }
    let arrows: Vec<Value> = cert
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            json!({
                "index": i,
                "direction": a.direction,
                "verdict": a.verdict,
                "homology": a.homology,
                "map": chain_map(&a.map),
            })
        })
        .collect();
    Ok(json!({ "nodes": nodes, "arrows": arrows }))
}
