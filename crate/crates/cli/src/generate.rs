use std::path::Path;

use rand::Rng;
use serde_json::json;
use ttgeo_core::dcat::BoundedComplex;
use ttgeo_core::fincat::{write_category, FiniteCategory};
use ttgeo_core::fixtures::{chain, crown, random_complex, random_poset, rng};
use ttgeo_core::groupact::{write_action, GPoset, PermGroup, TransporterCategory};
use ttgeo_core::{with_field, Error, Field};

use crate::args::GenerateCmd;
use crate::commands::{category_report, transporter_report, write_complex_dir};
use crate::load::{self, LoadedComplex};
use crate::output::{CliResult, Outcome};

fn write_poset(out: &Path, p: &FiniteCategory) -> CliResult<Outcome> {
    load::write(out, &write_category(p))?;
    Ok(Outcome::ok(json!({"files": [out.display().to_string()], "category": category_report(p)?})))
}

pub fn run(cmd: GenerateCmd) -> CliResult<Outcome> {
    match cmd {
        GenerateCmd::Chain { n, out } => {
            if n == 0 {
                return Err(Error::InvalidParams("a chain needs at least one object".into()).into());
            }
            write_poset(&out, &chain(n))
        }
        GenerateCmd::Crown { out } => write_poset(&out, &crown()),
        GenerateCmd::RandomPoset { n, density, seed, out } => write_poset(&out, &random_poset(n, density, &mut rng(seed))?),
        GenerateCmd::GroupAction { order, n, fixed, density, seed, out } => {
            let gp = rotated_copies(order, n, fixed, density, seed)?;
            load::create_dir(&out)?;
            load::write(&out.join("poset.cat"), &write_category(&gp.poset))?;
            load::write(&out.join("action.act"), &write_action(&gp, Some("poset.cat")))?;
            let t = load::transporter(&out.join("action.act"), None)?;
            Ok(Outcome::ok(json!({"files": ["poset.cat", "action.act"], "transporter": transporter_report(&t)?})))
        }
        GenerateCmd::RandomComplex { category, low, len, seed, field, out } => {
            let cat = load::category(&category)?;
            let spec = load::field(&field.field)?;
            with_field!(spec, F => {
                (|| {
                    let c = random_complex::<F, _>(&cat, low, len, &mut rng(seed))?;
                    load::create_dir(&out)?;
                    load::write(&out.join("category.cat"), &write_category(&cat))?;
                    let mut files = vec!["category.cat".to_string()];
                    files.extend(write_complex_dir(&out, &c, Some("category.cat"))?);
                    let back: BoundedComplex<F> = LoadedComplex::open(&out.join("complex.cpx"), None)?.build::<F>(&cat)?;
                    if back != c {
                        return Err(Error::Internal("written complex does not reload to itself".into()).into());
                    }
                    Ok(Outcome::ok(json!({
                        "files": files,
                        "field": F::spec().to_string(),
                        "seed": seed,
                        "cohomology": c.cohomology_dims().into_iter().map(|(d, dims)| json!({"degree": d, "dims": dims})).collect::<Vec<_>>(),
                    })))
                })()
            })?
        }
    }
}

/// `Z/order` cycling `order` copies of a random `n`-point poset, plus
/// `fixed` points fixed by the group. A copy element lies below a fixed
/// point in every copy or in none.
fn rotated_copies(order: usize, n: usize, fixed: usize, density: f64, seed: u64) -> CliResult<GPoset> {
    if order == 0 || n + fixed == 0 {
        return Err(Error::InvalidParams("need a positive group order and at least one object".into()).into());
    }
    let mut r = rng(seed);
    let base = random_poset(n, density, &mut r)?;
    let below: Vec<Vec<bool>> = (0..n).map(|_| (0..fixed).map(|_| r.gen_bool(density)).collect()).collect();
    let mut objects = Vec::new();
    for k in 0..order {
        objects.extend((0..n).map(|i| format!("c{k}v{i}")));
    }
    objects.extend((0..fixed).map(|j| format!("f{j}")));
    let id = |k: usize, i: usize| k * n + i;
    let mut rel = Vec::new();
    for k in 0..order {
        for i in 0..n {
            for j in 0..n {
                if i != j && base.reaches(i, j) {
                    rel.push((id(k, i), id(k, j)));
                }
            }
            for (j, &b) in below[i].iter().enumerate() {
                if b {
                    rel.push((id(k, i), order * n + j));
                }
            }
        }
    }
    let poset = FiniteCategory::poset(objects, &rel)?;
    let act: Vec<usize> = (0..order * n + fixed)
        .map(|x| if x < order * n { id((x / n + 1) % order, x % n) } else { x })
        .collect();
    let gp = GPoset::new(std::sync::Arc::new(poset), PermGroup::cyclic(order), vec![act])?;
    TransporterCategory::build(gp.clone())?;
    Ok(gp)
}
