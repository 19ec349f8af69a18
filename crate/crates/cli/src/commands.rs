use std::path::Path;

use serde_json::{json, Value};
use ttgeo_core::catmod::{
    internal_hom, is_projective, is_simple, projective_dimension, simple_modules, write_module, FunctorModule, HomSpace,
};
use ttgeo_core::cohom::{ext_ring, simplicial_cohomology, GradedRingDescription};
use ttgeo_core::dcat::{kunneth_check, write_complex, BoundedComplex};
use ttgeo_core::fincat::{write_category, FiniteCategory};
use ttgeo_core::gorcm::{cm_spectrum, gorenstein_report};
use ttgeo_core::groupact::{automorphism_descriptor, GPoset, PermGroup, TransporterCategory};
use ttgeo_core::ttspec::{classify_ideals, oracle_ideal_census, presheaf_section, spc_ei, spc_poset, CensusConfig};
use ttgeo_core::{with_field, Field, FieldSpec};

use crate::args::*;
use crate::load::{self, LoadedComplex, LoadedModule};
use crate::output::{CliError, CliResult, Outcome};

pub fn run(cmd: Command) -> CliResult<Outcome> {
    match cmd {
        Command::Category(CategoryCmd::Check { input }) => Ok(Outcome::ok(category_report(&*load::category(&input)?)?)),
        Command::Transporter(TransporterCmd::Build { poset, action, out }) => {
            let t = load::transporter(&action, poset.as_deref())?;
            if let Some(out) = &out {
                load::write(out, &write_category(&t.cat))?;
            }
            Ok(Outcome::ok(transporter_report(&t)?))
        }
        Command::Module(m) => module(m),
        Command::Complex(c) => complex(c),
        Command::Spectrum(a) => spectrum(&a),
        Command::Ideals(i) => ideals(i),
        Command::Gorenstein(a) => {
            let t = load::transporter(&a.transporter, a.poset.as_deref())?;
            let bound = a.bound.unwrap_or(t.cat.object_count());
            let r = with_field!(load::field(&a.field.field)?, F => gorenstein_report::<F>(&t, bound))??;
            let mut failure = None;
            if !r.skew.passed() {
                failure = Some("the skew group algebra map is not an isomorphism".to_string());
            } else if !r.is_gorenstein() {
                failure = Some(format!("an injective dimension exceeds the bound {bound}"));
            }
            let report = json!({
                "field": load::field(&a.field.field)?.to_string(),
                "gorenstein": r.is_gorenstein(),
                "report": r,
            });
            Ok(Outcome::checked(report, failure))
        }
        Command::CmSpectrum(a) => {
            let t = load::transporter(&a.transporter, a.poset.as_deref())?;
            cm_outcome(&t, a.characteristic)
        }
        Command::Cohomology(a) => cohomology(&a),
        Command::Reproduce(a) => crate::reproduce::run(&a.id),
        Command::Generate(g) => crate::generate::run(g),
    }
}

pub fn names(cat: &FiniteCategory, ids: impl IntoIterator<Item = usize>) -> Vec<String> {
    ids.into_iter().map(|x| cat.object_name(x).to_string()).collect()
}

pub fn category_report(cat: &FiniteCategory) -> CliResult<Value> {
    let cls = cat.classify()?;
    let classes: Vec<Value> = cls
        .classes
        .iter()
        .enumerate()
        .map(|(c, objs)| {
            let aut = automorphism_descriptor(cat, cls.representatives[c]);
            json!({"class": c, "objects": names(cat, objs.iter().copied()), "aut": aut.label(), "aut_order": aut.order})
        })
        .collect();
    let mut order = Vec::new();
    for a in 0..cls.class_count() {
        for b in 0..cls.class_count() {
            if a != b && cls.leq[a][b] {
                order.push(json!({"below": a, "above": b}));
            }
        }
    }
    Ok(json!({
        "objects": cat.objects(),
        "morphisms": cat.morphism_count(),
        "ei": cat.is_ei(),
        "poset": cat.is_poset(),
        "classes": classes,
        "order": order,
        "linear_extension": cls.linear_extension(),
    }))
}

pub fn transporter_report(t: &TransporterCategory) -> CliResult<Value> {
    t.check_iota_pi()?;
    t.check_isotropy()?;
    let orbits: Vec<Value> = t
        .orbits
        .iter()
        .enumerate()
        .map(|(o, objs)| {
            let d = t.isotropy_descriptor(objs[0]);
            json!({"orbit": o, "objects": names(&t.base.poset, objs.iter().copied()), "isotropy": d.label(), "isotropy_order": d.order})
        })
        .collect();
    Ok(json!({
        "group_order": t.group().order(),
        "objects": t.cat.object_count(),
        "morphisms": t.cat.morphism_count(),
        "ei": t.cat.is_ei(),
        "orbits": orbits,
    }))
}

fn module_value<F: Field>(m: &FunctorModule<F>) -> Value {
    json!({"dims": m.dims(), "total_dim": m.total_dim(), "support": names(m.category(), m.support())})
}

fn write_module_to<F: Field>(out: Option<&Path>, m: &FunctorModule<F>) -> CliResult<()> {
    if let Some(out) = out {
        load::write(out, &write_module(m, None))?;
    }
    Ok(())
}

fn module(cmd: ModuleCmd) -> CliResult<Outcome> {
    match cmd {
        ModuleCmd::Check { input, category } => {
            let l = LoadedModule::open(&input, category.as_deref())?;
            let v = with_field!(l.spec.field, F => module_check::<F>(&l))??;
            Ok(Outcome::ok(v))
        }
        ModuleCmd::Tensor { left, right, category, out } => {
            let (a, b) = load::module_pair(&left, &right, category.as_deref())?;
            let v = with_field!(a.spec.field, F => {
                (|| {
                    let t = a.build::<F>(&a.cat)?.tensor(&b.build::<F>(&a.cat)?)?;
                    write_module_to(out.as_deref(), &t)?;
                    Ok::<_, CliError>(json!({"objects": a.cat.objects(), "field": F::spec().to_string(), "tensor": module_value(&t)}))
                })()
            })??;
            Ok(Outcome::ok(v))
        }
        ModuleCmd::Hom { left, right, category, out } => {
            let (a, b) = load::module_pair(&left, &right, category.as_deref())?;
            let v = with_field!(a.spec.field, F => {
                (|| {
                    let (m, n) = (a.build::<F>(&a.cat)?, b.build::<F>(&a.cat)?);
                    let h = HomSpace::compute(&m, &n)?;
                    let ih = internal_hom(&m, &n)?;
                    write_module_to(out.as_deref(), &ih)?;
                    Ok::<_, CliError>(json!({
                        "objects": a.cat.objects(),
                        "field": F::spec().to_string(),
                        "hom_dim": h.dim(),
                        "internal_hom": module_value(&ih),
                    }))
                })()
            })??;
            Ok(Outcome::ok(v))
        }
        ModuleCmd::Filtrate { input, category } => {
            let l = LoadedModule::open(&input, category.as_deref())?;
            let v = with_field!(l.spec.field, F => {
                (|| {
                    let m = l.build::<F>(&l.cat)?;
                    let steps: Vec<Value> = m
                        .filtration()?
                        .iter()
                        .map(|s| {
                            json!({
                                "class": s.class,
                                "objects": names(&l.cat, s.objects.iter().copied()),
                                "sub_dims": s.sub.dims(),
                                "quotient_dims": s.projection.tgt.dims(),
                            })
                        })
                        .collect();
                    Ok::<_, CliError>(json!({"objects": l.cat.objects(), "module": module_value(&m), "steps": steps, "exact": true}))
                })()
            })??;
            Ok(Outcome::ok(v))
        }
    }
}

fn module_check<F: Field>(l: &LoadedModule) -> CliResult<Value> {
    let m = l.build::<F>(&l.cat)?;
    let cutoff = l.cat.object_count() + 2;
    let pd = projective_dimension(&m, cutoff)?;
    let simples: Vec<Value> = simple_modules::<F>(l.cat.clone(), None)?
        .iter()
        .map(|f| serde_json::to_value(f.summary(&l.cat)).expect("serialisable"))
        .collect();
    Ok(json!({
        "objects": l.cat.objects(),
        "field": F::spec().to_string(),
        "module": module_value(&m),
        "simple": is_simple(&m)?,
        "projective": is_projective(&m)?,
        "projective_dimension": pd,
        "projective_dimension_cutoff": cutoff,
        "simples": simples,
    }))
}

fn cohomology_rows<F: Field>(c: &BoundedComplex<F>) -> Vec<Value> {
    c.cohomology_dims().into_iter().map(|(d, dims)| json!({"degree": d, "dims": dims})).collect()
}

fn complex_value<F: Field>(c: &BoundedComplex<F>) -> Value {
    let (low, high) = if c.is_zero_complex() { (Value::Null, Value::Null) } else { (json!(c.low()), json!(c.high())) };
    json!({
        "low": low,
        "high": high,
        "acyclic": c.is_acyclic(),
        "cohomology": cohomology_rows(c),
        "support": names(c.category(), c.support()),
    })
}

/// Writes `c` as `complex.cpx` plus one module file per degree into `dir`.
pub fn write_complex_dir<F: Field>(dir: &Path, c: &BoundedComplex<F>, category_rel: Option<&str>) -> CliResult<Vec<String>> {
    load::create_dir(dir)?;
    let mut files = Vec::new();
    let mut term_paths = Vec::new();
    if !c.is_zero_complex() {
        for n in c.degrees() {
            let name = format!("term_{}.mod", if n < 0 { format!("m{}", -n) } else { n.to_string() });
            load::write(&dir.join(&name), &write_module(c.term(n).expect("in range"), category_rel))?;
            files.push(name.clone());
            term_paths.push(name);
        }
    }
    load::write(&dir.join("complex.cpx"), &write_complex(c, category_rel, &term_paths))?;
    files.push("complex.cpx".into());
    Ok(files)
}

fn complex(cmd: ComplexCmd) -> CliResult<Outcome> {
    match cmd {
        ComplexCmd::Cohomology { input, category } => {
            let l = LoadedComplex::open(&input, category.as_deref())?;
            let v = with_field!(l.spec.field, F => {
                l.build::<F>(&l.cat).map(|c| json!({"objects": l.cat.objects(), "field": F::spec().to_string(), "complex": complex_value(&c)}))
            })??;
            Ok(Outcome::ok(v))
        }
        ComplexCmd::Support { input, category } => {
            let l = LoadedComplex::open(&input, category.as_deref())?;
            let v = with_field!(l.spec.field, F => {
                (|| {
                    let c = l.build::<F>(&l.cat)?;
                    let cls = l.cat.classify()?;
                    let coarse: Vec<Value> = c
                        .coarse_support()?
                        .into_iter()
                        .map(|k| json!({"class": k, "objects": names(&l.cat, cls.classes[k].iter().copied())}))
                        .collect();
                    Ok::<_, CliError>(json!({
                        "objects": l.cat.objects(),
                        "support": names(&l.cat, c.support()),
                        "coarse_support": coarse,
                    }))
                })()
            })??;
            Ok(Outcome::ok(v))
        }
        ComplexCmd::Tensor { left, right, category, out } => {
            let (a, b) = load::complex_pair(&left, &right, category.as_deref())?;
            let (v, ok) = with_field!(a.spec.field, F => {
                (|| {
                    let (c, d) = (a.build::<F>(&a.cat)?, b.build::<F>(&a.cat)?);
                    let t = c.tensor(&d)?;
                    let ok = kunneth_check(&c, &d)?;
                    let files = match &out {
                        Some(dir) => {
                            let cat_file = "category.cat";
                            load::create_dir(dir)?;
                            load::write(&dir.join(cat_file), &write_category(&a.cat))?;
                            let mut f = vec![cat_file.to_string()];
                            f.extend(write_complex_dir(dir, &t, Some(cat_file))?);
                            f
                        }
                        None => Vec::new(),
                    };
                    Ok::<_, CliError>((
                        json!({
                            "objects": a.cat.objects(),
                            "field": F::spec().to_string(),
                            "tensor": complex_value(&t),
                            "kunneth": ok,
                            "files": files,
                        }),
                        ok,
                    ))
                })()
            })??;
            Ok(Outcome::checked(v, (!ok).then(|| "Künneth formula fails on this pair".to_string())))
        }
    }
}

fn spectrum(a: &SpectrumArgs) -> CliResult<Outcome> {
    let spec = FieldSpec::from_characteristic(a.characteristic)?;
    if let Some(path) = &a.transporter {
        let t = load::transporter(path, None)?;
        if a.cm {
            return cm_outcome(&t, a.characteristic);
        }
        return Ok(Outcome::ok(json!({"field": spec.to_string(), "spectrum": spc_ei(&t.cat, a.characteristic)?})));
    }
    let cat = load::category(a.input.as_deref().expect("clap requires input or transporter"))?;
    if a.cm {
        let t = TransporterCategory::build(GPoset::trivial(cat, PermGroup::trivial())?)?;
        return cm_outcome(&t, a.characteristic);
    }
    let mut v = json!({"field": spec.to_string(), "spectrum": spc_ei(&cat, a.characteristic)?});
    if cat.is_poset() {
        v["primes"] = serde_json::to_value(spc_poset(&cat)?).expect("serialisable");
    }
    Ok(Outcome::ok(v))
}

pub fn cm_outcome(t: &TransporterCategory, characteristic: u64) -> CliResult<Outcome> {
    let spec = FieldSpec::from_characteristic(characteristic)?;
    let s = with_field!(spec, F => cm_spectrum::<F>(t))??;
    let failure = (!s.consistent).then(|| "empty components differ from the coprime orbits".to_string());
    Ok(Outcome::checked(json!({"field": spec.to_string(), "zero": s.is_zero(), "cm_spectrum": s}), failure))
}

fn ideals(cmd: IdealsCmd) -> CliResult<Outcome> {
    match cmd {
        IdealsCmd::Classify { input, field } => {
            let cat = load::category(&input)?;
            let spec = load::field(&field.field)?;
            let rows = with_field!(spec, F => classify_ideals::<F>(&cat))??;
            Ok(Outcome::ok(json!({
                "field": spec.to_string(),
                "ideal_count": rows.len(),
                "prime_count": rows.iter().filter(|r| r.prime).count(),
                "ideals": rows,
            })))
        }
        IdealsCmd::Census { input, field, seed, cones, pool, max_objects } => {
            let cat = load::category(&input)?;
            let spec = load::field(&field.field)?;
            let cfg = CensusConfig { seed, cone_samples: cones, pool_size: pool, max_objects };
            let r = with_field!(spec, F => oracle_ideal_census::<F>(&cat, &cfg))??;
            let violations = r.violation_count();
            let report = json!({"field": spec.to_string(), "seed": seed, "violations": violations, "census": r});
            Ok(Outcome::checked(report, (violations > 0).then(|| format!("{violations} census violations"))))
        }
    }
}

fn cohomology(a: &CohomologyArgs) -> CliResult<Outcome> {
    let cat = load::category(&a.poset)?;
    let spec = load::field(&a.field.field)?;
    if !a.remove.is_empty() {
        let removed = a
            .remove
            .iter()
            .map(|n| cat.object_id(n).ok_or_else(|| CliError::Usage(format!("unknown object `{n}`"))))
            .collect::<CliResult<Vec<_>>>()?;
        let r = with_field!(spec, F => presheaf_section::<F>(&cat, &removed, a.cutoff))??;
        return Ok(Outcome::ok(json!({"field": spec.to_string(), "sections": r})));
    }
    let run = |engine: Engine| -> CliResult<GradedRingDescription> {
        let r = match engine {
            Engine::Simplicial => with_field!(spec, F => simplicial_cohomology::<F>(&cat, a.cutoff))?,
            _ => with_field!(spec, F => ext_ring::<F>(&cat, a.cutoff, true))?,
        };
        Ok(r?)
    };
    let mut v = json!({"field": spec.to_string(), "cutoff": a.cutoff});
    let mut failure = None;
    match a.engine {
        Engine::Simplicial => v["simplicial"] = serde_json::to_value(run(Engine::Simplicial)?).expect("serialisable"),
        Engine::Ext => v["ext"] = serde_json::to_value(run(Engine::Ext)?).expect("serialisable"),
        Engine::Both => {
            let (s, e) = rayon::join(|| run(Engine::Simplicial), || run(Engine::Ext));
            let (s, e) = (s?, e?);
            v["agree"] = json!(s.dims == e.dims);
            if s.dims != e.dims {
                failure = Some(format!("graded dimensions differ: {:?} vs {:?}", s.dims, e.dims));
            }
            v["simplicial"] = serde_json::to_value(s).expect("serialisable");
            v["ext"] = serde_json::to_value(e).expect("serialisable");
        }
    }
    Ok(Outcome::checked(v, failure))
}
