//! Worked examples rerun from scratch and compared with committed output.

use std::sync::Arc;

use serde_json::{json, Value};
use ttgeo_core::catmod::{internal_hom, trivial_simple, FunctorModule, HomSpace};
use ttgeo_core::fixtures::{chain, crown};
use ttgeo_core::gorcm::cm_spectrum;
use ttgeo_core::groupact::{GPoset, PermGroup, TransporterCategory};
use ttgeo_core::ttspec::{classify_ideals, spc_poset};
use ttgeo_core::F2;

use crate::output::{CliError, CliResult, Outcome};

pub const EXAMPLES: &[(&str, &str, &str)] = &[
    (
        "rigidity",
        "crown poset, M = S_y + S_z, N = S_w: the internal hom vanishes but D(M) tensor N does not",
        include_str!("../expected/rigidity.json"),
    ),
    ("chain3-primes", "the three primes and eight ideals of x0 < x1 < x2", include_str!("../expected/chain3-primes.json")),
    (
        "cm-empty-poset",
        "posets carry the trivial group, so every CM component is empty",
        include_str!("../expected/cm-empty-poset.json"),
    ),
];

fn rigidity() -> CliResult<Value> {
    let c = Arc::new(crown());
    let m = FunctorModule::direct_sum(&[&trivial_simple::<F2>(c.clone(), &[2]), &trivial_simple(c.clone(), &[3])])?;
    let n = trivial_simple::<F2>(c.clone(), &[0]);
    let hom = internal_hom(&m, &n)?;
    let dual = internal_hom(&m, &FunctorModule::trivial(c.clone()))?;
    let t = dual.tensor(&n)?;
    Ok(json!({
        "objects": c.objects(),
        "field": "F2",
        "hom_dim": HomSpace::compute(&m, &n)?.dim(),
        "internal_hom_dims": hom.dims(),
        "dual_dims": dual.dims(),
        "dual_tensor_dims": t.dims(),
        "rigid": false,
    }))
}

fn chain3_primes() -> CliResult<Value> {
    let c = Arc::new(chain(3));
    let primes = spc_poset(&c)?;
    let ideals = classify_ideals::<F2>(&c)?;
    let prime_ideals: Vec<&Vec<String>> = ideals.iter().filter(|r| r.prime).map(|r| &r.objset).collect();
    Ok(json!({
        "objects": c.objects(),
        "primes": primes.iter().map(|p| &p.description).collect::<Vec<_>>(),
        "prime_count": primes.len(),
        "ideal_count": ideals.len(),
        "prime_ideals": prime_ideals,
    }))
}

fn cm_empty_poset() -> CliResult<Value> {
    let mut rows = Vec::new();
    for (name, p) in [("chain3", chain(3)), ("crown", crown())] {
        let t = TransporterCategory::build(GPoset::trivial(Arc::new(p), PermGroup::trivial())?)?;
        let s = cm_spectrum::<F2>(&t)?;
        rows.push(json!({
            "poset": name,
            "components": s.components.len(),
            "empty": s.components.iter().filter(|c| c.kind == ttgeo_core::gorcm::CmKind::Empty).count(),
            "zero": s.is_zero(),
            "consistent": s.consistent,
        }));
    }
    Ok(json!({"field": "F2", "posets": rows}))
}

pub fn compute(id: &str) -> CliResult<Value> {
    match id {
        "rigidity" => rigidity(),
        "chain3-primes" => chain3_primes(),
        "cm-empty-poset" => cm_empty_poset(),
        _ => Err(unknown(id)),
    }
}

fn unknown(id: &str) -> CliError {
    let ids: Vec<&str> = EXAMPLES.iter().map(|e| e.0).collect();
    CliError::Usage(format!("unknown example `{id}`; available: list, all, {}", ids.join(", ")))
}

/// Paths at which two JSON values differ.
pub fn diff(expected: &Value, actual: &Value, path: &str, out: &mut Vec<String>) {
    match (expected, actual) {
        (Value::Object(a), Value::Object(b)) => {
            for k in a.keys().chain(b.keys().filter(|k| !a.contains_key(*k))) {
                let p = format!("{path}/{k}");
                match (a.get(k), b.get(k)) {
                    (Some(x), Some(y)) => diff(x, y, &p, out),
                    (x, y) => out.push(format!("{p}: expected {}, got {}", show(x), show(y))),
                }
            }
        }
        (Value::Array(a), Value::Array(b)) if a.len() == b.len() => {
            for (i, (x, y)) in a.iter().zip(b).enumerate() {
                diff(x, y, &format!("{path}/{i}"), out);
            }
        }
        (x, y) if x != y => out.push(format!("{}: expected {x}, got {y}", if path.is_empty() { "/" } else { path })),
        _ => {}
    }
}

fn show(v: Option<&Value>) -> String {
    v.map_or_else(|| "nothing".to_string(), Value::to_string)
}

fn check(id: &str) -> CliResult<Value> {
    let expected = EXAMPLES.iter().find(|e| e.0 == id).ok_or_else(|| unknown(id))?;
    let want: Value = serde_json::from_str(expected.2).expect("committed expectation is valid JSON");
    let got = compute(id)?;
    let mut lines = Vec::new();
    diff(&want, &got, "", &mut lines);
    let report = json!({"id": id, "description": expected.1, "matches": lines.is_empty(), "report": got});
    if lines.is_empty() {
        Ok(report)
    } else {
        Err(CliError::Mismatch { diff: lines.join("\n"), report })
    }
}

pub fn run(id: &str) -> CliResult<Outcome> {
    match id {
        "list" => Ok(Outcome::ok(json!({
            "examples": EXAMPLES.iter().map(|e| json!({"id": e.0, "description": e.1})).collect::<Vec<_>>()
        }))),
        "all" => {
            let reports = EXAMPLES.iter().map(|e| check(e.0)).collect::<CliResult<Vec<_>>>()?;
            Ok(Outcome::ok(json!({"examples": reports})))
        }
        _ => Ok(Outcome::ok(check(id)?)),
    }
}
