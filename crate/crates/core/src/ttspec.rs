//! Balmer spectra of `K(C)`: the discrete spectrum of a poset, the
//! subset/ideal classification, preimages of primes along convex
//! subcategories, and the component decomposition for EI categories.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catmod::{trivial_simple, FunctorModule};
use crate::cohom::{section_ring, GradedRingDescription};
use crate::dcat::{chain_map_basis, random_chain_map, BoundedComplex, ChainMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::{FiniteCategory, ObjId};
use crate::fixtures::{random_complex, rng};
use crate::groupact::{automorphism_descriptor, GroupDescriptor};

fn names(cat: &FiniteCategory, objs: impl IntoIterator<Item = ObjId>) -> Vec<String> {
    objs.into_iter().map(|x| cat.object_name(x).to_string()).collect()
}

fn require_poset(cat: &FiniteCategory) -> Result<()> {
    if !cat.is_poset() {
        return Err(Error::NotAPoset("expected a poset".into()));
    }
    Ok(())
}

/// The prime `P^x` attached to the iso-class of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeDescriptor {
    pub class: usize,
    pub objects: Vec<String>,
    pub aut: GroupDescriptor,
    pub description: String,
}

/// `P^x = ker Res_{P_x}` for every object `x` of a poset.
pub fn spc_poset(cat: &FiniteCategory) -> Result<Vec<PrimeDescriptor>> {
    require_poset(cat)?;
    Ok((0..cat.object_count())
        .map(|x| PrimeDescriptor {
            class: x,
            objects: vec![cat.object_name(x).to_string()],
            aut: GroupDescriptor::trivial(),
            description: format!("ker Res_{{{}}}", cat.object_name(x)),
        })
        .collect())
}

/// The ideal `I(S) = ⟨S_x | x ∈ S⟩`, i.e. complexes supported in `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IdealDescriptor {
    pub objset: BTreeSet<ObjId>,
}

impl IdealDescriptor {
    pub fn new(objs: impl IntoIterator<Item = ObjId>) -> Self {
        IdealDescriptor { objset: objs.into_iter().collect() }
    }

    /// Subsets of `n` objects enumerated by bitmask.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Self::new((0..n).filter(|&x| mask >> x & 1 == 1))
    }

    pub fn contains<F: Field>(&self, c: &BoundedComplex<F>) -> bool {
        c.support().iter().all(|x| self.objset.contains(x))
    }

    /// `⊕_{x ∈ S} S_x` in degree `0`.
    pub fn generator<F: Field>(&self, cat: &Arc<FiniteCategory>) -> Result<BoundedComplex<F>> {
        let parts: Vec<FunctorModule<F>> = self.objset.iter().map(|&x| trivial_simple(cat.clone(), &[x])).collect();
        let m = if parts.is_empty() {
            FunctorModule::zero(cat.clone())
        } else {
            FunctorModule::direct_sum(&parts.iter().collect::<Vec<_>>())?
        };
        BoundedComplex::stalk(m, 0)
    }
}

pub fn ideal_membership<F: Field>(c: &BoundedComplex<F>, ideal: &IdealDescriptor) -> bool {
    ideal.contains(c)
}

/// One row of the correspondence subsets ↔ closed subsets of `Spc` ↔
/// subposets ↔ ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealRow {
    pub objset: Vec<String>,
    pub generators: Vec<String>,
    /// Union of the supports of the generators.
    pub support: Vec<String>,
    /// `{P^x : S_x ⊗̂ I = 0}`.
    pub vanishing_locus: Vec<String>,
    pub prime: bool,
    pub zero: bool,
    pub improper: bool,
}

/// All `2^{|Ob P|}` ideals, each with its support and vanishing locus
/// computed from the generating complex.
pub fn classify_ideals<F: Field>(cat: &Arc<FiniteCategory>) -> Result<Vec<IdealRow>> {
    require_poset(cat)?;
    let n = cat.object_count();
    if n > 16 {
        return Err(Error::BudgetExceeded(format!("{n} objects give 2^{n} ideals")));
    }
    let simples: Vec<BoundedComplex<F>> = (0..n)
        .map(|x| BoundedComplex::stalk(trivial_simple(cat.clone(), &[x]), 0))
        .collect::<Result<_>>()?;
    (0..1u64 << n)
        .map(|mask| {
            let ideal = IdealDescriptor::from_mask(mask, n);
            let g = ideal.generator::<F>(cat)?;
            let support = g.support();
            let mut vanishing = Vec::new();
            for (x, s) in simples.iter().enumerate() {
                if s.tensor(&g)?.is_acyclic() {
                    vanishing.push(x);
                }
            }
            Ok(IdealRow {
                objset: names(cat, ideal.objset.iter().copied()),
                generators: ideal.objset.iter().map(|&x| format!("S_{}", cat.object_name(x))).collect(),
                support: names(cat, support),
                vanishing_locus: vanishing.iter().map(|&x| format!("P^{}", cat.object_name(x))).collect(),
                prime: ideal.objset.len() + 1 == n,
                zero: ideal.objset.is_empty(),
                improper: ideal.objset.len() == n,
            })
        })
        .collect()
}

/// `⟨Inc_E(I), S_{x,V} | x ∉ E⟩` for an ideal `I` of `K(E)` given by the
/// ambient objects of its support set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preimage {
    pub subcategory: Vec<String>,
    pub generators: Vec<String>,
    /// Support set of the preimage when the ambient category is a poset.
    pub objset: Vec<String>,
    #[serde(skip)]
    pub ideal: IdealDescriptor,
}

impl Preimage {
    pub fn contains<F: Field>(&self, c: &BoundedComplex<F>) -> bool {
        self.ideal.contains(c)
    }
}

pub fn prime_preimage(cat: &FiniteCategory, e: &[ObjId], inner: &IdealDescriptor) -> Result<Preimage> {
    if let Some(w) = cat.convexity_witness(e) {
        return Err(Error::NotConvex(cat.object_name(w).to_string()));
    }
    let eset: BTreeSet<ObjId> = e.iter().copied().collect();
    if let Some(&x) = inner.objset.iter().find(|x| !eset.contains(x)) {
        return Err(Error::InvalidParams(format!("`{}` is not an object of E", cat.object_name(x))));
    }
    let outside: Vec<ObjId> = (0..cat.object_count()).filter(|x| !eset.contains(x)).collect();
    let mut generators: Vec<String> = inner.objset.iter().map(|&x| format!("Inc(S_{})", cat.object_name(x))).collect();
    generators.extend(outside.iter().map(|&x| format!("S_{{{},V}}", cat.object_name(x))));
    let ideal = IdealDescriptor::new(inner.objset.iter().copied().chain(outside));
    Ok(Preimage {
        subcategory: names(cat, eset.iter().copied()),
        generators,
        objset: names(cat, ideal.objset.iter().copied()),
        ideal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentKind {
    ExactPoint,
    SymbolicSpecH,
    SymbolicProjH,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumComponent {
    pub class: usize,
    pub objects: Vec<String>,
    pub aut: GroupDescriptor,
    pub kind: ComponentKind,
    pub label: String,
    /// The component is a single point: `Aut` is trivial or its order is
    /// invertible in `k`.
    pub single_point: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumDescriptor {
    pub characteristic: u64,
    pub components: Vec<SpectrumComponent>,
}

impl SpectrumDescriptor {
    /// Components met by the support of `c`.
    pub fn components_meeting<F: Field>(&self, c: &BoundedComplex<F>) -> Result<Vec<usize>> {
        c.coarse_support()
    }
}

/// `Spc K(C) ≅ ⊔_{[x]} Spec^h H^·(Aut_C(x))`, one component per iso-class.
pub fn spc_ei(cat: &FiniteCategory, characteristic: u64) -> Result<SpectrumDescriptor> {
    let cls = cat.classify()?;
    let components = cls
        .classes
        .iter()
        .enumerate()
        .map(|(c, objs)| {
            let aut = automorphism_descriptor(cat, cls.representatives[c]);
            let (kind, label) = if aut.is_trivial() {
                (ComponentKind::ExactPoint, "point".to_string())
            } else {
                let k = if characteristic == 0 { "Q".to_string() } else { format!("F{characteristic}") };
                (ComponentKind::SymbolicSpecH, format!("Spec^h H(G; {k}), G = {}", aut.label()))
            };
            let single_point = aut.is_trivial() || characteristic == 0 || aut.order as u64 % characteristic != 0;
            SpectrumComponent { class: c, objects: names(cat, objs.iter().copied()), aut, kind, label, single_point }
        })
        .collect();
    Ok(SpectrumDescriptor { characteristic, components })
}

/// Sections of the structure presheaf over the complement of
/// `{P^x : x ∈ removed}`: `H^*(P \ Q)`.
pub fn presheaf_section<F: Field>(cat: &FiniteCategory, removed: &[ObjId], cutoff: usize) -> Result<GradedRingDescription> {
    require_poset(cat)?;
    section_ring::<F>(cat, removed, cutoff)
}

/// Sampling parameters of [`oracle_ideal_census`].
#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub seed: u64,
    /// Chain maps sampled for cone closure, per ideal.
    pub cone_samples: usize,
    /// Random complexes in the pool shared by all checks.
    pub pool_size: usize,
    pub max_objects: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { seed: 0x5eed, cone_samples: 200, pool_size: 24, max_objects: 3 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureCounts {
    pub shifts: usize,
    pub cones: usize,
    pub summands: usize,
    pub tensor: usize,
    pub radical: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub objset: Vec<String>,
    pub checked: ClosureCounts,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinctnessWitness {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub ideals: Vec<CensusRow>,
    pub witnesses: Vec<DistinctnessWitness>,
    pub distinct: bool,
}

impl CensusReport {
    pub fn violation_count(&self) -> usize {
        self.ideals.iter().map(|r| r.violations.len()).sum::<usize>() + usize::from(!self.distinct)
    }
}

/// Checks, for every subset `S`, that the complexes supported in `S` are
/// closed under shifts, sampled cones, summands, tensoring and tensor
/// roots, and that distinct subsets give distinct ideals.
pub fn oracle_ideal_census<F: Field>(cat: &Arc<FiniteCategory>, config: &CensusConfig) -> Result<CensusReport> {
    require_poset(cat)?;
    let n = cat.object_count();
    if n > config.max_objects {
        return Err(Error::BudgetExceeded(format!("census limited to {} objects, got {n}", config.max_objects)));
    }
    let mut r = rng(config.seed);
    let mut pool: Vec<BoundedComplex<F>> = (0..n)
        .map(|x| BoundedComplex::stalk(trivial_simple(cat.clone(), &[x]), 0))
        .collect::<Result<_>>()?;
    pool.push(BoundedComplex::stalk(FunctorModule::trivial(cat.clone()), 0)?);
    while pool.len() < config.pool_size.max(n + 1) {
        let len = r.gen_range(1..=3);
        pool.push(random_complex::<F, _>(cat, r.gen_range(-1..=0), len, &mut r)?);
    }
    let rows: Vec<CensusRow> = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| census_row(cat, &pool, IdealDescriptor::from_mask(mask, n), config, mask))
        .collect::<Result<_>>()?;
    let mut witnesses = Vec::new();
    let mut distinct = true;
    for a in 0..1u64 << n {
        for b in a + 1..1u64 << n {
            let (ia, ib) = (IdealDescriptor::from_mask(a, n), IdealDescriptor::from_mask(b, n));
            let found = (0..n).find(|&x| ia.contains(&pool[x]) != ib.contains(&pool[x]));
            match found {
                Some(x) => witnesses.push(DistinctnessWitness {
                    left: names(cat, ia.objset.iter().copied()),
                    right: names(cat, ib.objset.iter().copied()),
                    witness: format!("S_{}", cat.object_name(x)),
                }),
                None => distinct = false,
            }
        }
    }
    Ok(CensusReport { ideals: rows, witnesses, distinct })
}

fn census_row<F: Field>(
    cat: &Arc<FiniteCategory>,
    pool: &[BoundedComplex<F>],
    ideal: IdealDescriptor,
    config: &CensusConfig,
    mask: u64,
) -> Result<CensusRow> {
    let mut r = rng(config.seed ^ (mask.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
    let mut counts = ClosureCounts::default();
    let mut violations = Vec::new();
    let members: Vec<&BoundedComplex<F>> = pool.iter().filter(|c| ideal.contains(*c)).collect();
    for (i, c) in members.iter().enumerate() {
        for k in [-1, 1] {
            counts.shifts += 1;
            if !ideal.contains(&c.shift(k)?) {
                violations.push(format!("shift [{k}] of member {i} leaves the ideal"));
            }
        }
        for (j, d) in pool.iter().enumerate() {
            counts.tensor += 1;
            if !ideal.contains(&c.tensor(d)?) {
                violations.push(format!("member {i} ⊗ pool {j} leaves the ideal"));
            }
        }
    }
    for (i, c) in pool.iter().enumerate() {
        for (j, d) in pool.iter().enumerate().skip(i) {
            counts.summands += 1;
            if ideal.contains(&c.direct_sum(d)?) && !(ideal.contains(c) && ideal.contains(d)) {
                violations.push(format!("summand of pool {i} ⊕ pool {j} escapes the ideal"));
            }
        }
        counts.radical += 1;
        if ideal.contains(&c.tensor(c)?) && !ideal.contains(c) {
            violations.push(format!("pool {i} has its square in the ideal but is not in it"));
        }
    }
    if !members.is_empty() {
        let mut bases: HashMap<(usize, usize, i32), (BoundedComplex<F>, Vec<ChainMap<F>>)> = HashMap::new();
        for s in 0..config.cone_samples {
            let key = (r.gen_range(0..members.len()), r.gen_range(0..members.len()), r.gen_range(-1..=1));
            let (src, basis) = match bases.entry(key) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => {
                    let src = members[key.0].shift(key.2)?;
                    let basis = chain_map_basis(&src, members[key.1])?;
                    e.insert((src, basis))
                }
            };
            let f = random_chain_map(basis, src, members[key.1], &mut r);
            counts.cones += 1;
            if !ideal.contains(&f.cone()?) {
                violations.push(format!("cone sample {s} leaves the ideal"));
            }
        }
    }
    Ok(CensusRow { objset: names(cat, ideal.objset.iter().copied()), checked: counts, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{chain, crown, discrete, transporter_fixtures};
    use crate::{F2, F3};

    #[test]
    fn chain_primes_and_ideals() {
        let c = Arc::new(chain(3));
        assert_eq!(spc_poset(&c).unwrap().len(), 3);
        let rows = classify_ideals::<F2>(&c).unwrap();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows.iter().filter(|r| r.prime).count(), 3);
        assert_eq!(rows.iter().filter(|r| r.zero).count(), 1);
        assert_eq!(rows.iter().filter(|r| r.improper).count(), 1);
        for r in &rows {
            assert_eq!(r.support, r.objset);
            assert_eq!(r.vanishing_locus.len() + r.objset.len(), 3);
        }
        let point = Arc::new(chain(1));
        assert_eq!(classify_ideals::<F3>(&point).unwrap().len(), 2);
    }

    #[test]
    fn membership() {
        let c = Arc::new(chain(2));
        let k = BoundedComplex::stalk(FunctorModule::<F2>::trivial(c.clone()), 0).unwrap();
        let sx = BoundedComplex::stalk(trivial_simple::<F2>(c.clone(), &[0]), 0).unwrap();
        assert!(ideal_membership(&sx, &IdealDescriptor::new([0])));
        assert!(!ideal_membership(&sx, &IdealDescriptor::new([1])));
        assert!(!ideal_membership(&k, &IdealDescriptor::new([0])));
        assert!(ideal_membership(&k, &IdealDescriptor::new([0, 1])));
        assert!(ideal_membership(&BoundedComplex::<F2>::zero(c), &IdealDescriptor::new([])));
    }

    #[test]
    fn preimages() {
        let c = chain(2);
        let p = prime_preimage(&c, &[0], &IdealDescriptor::new([])).unwrap();
        assert_eq!(p.objset, vec!["x1"]);
        let whole = prime_preimage(&c, &[0, 1], &IdealDescriptor::new([1])).unwrap();
        assert_eq!(whole.ideal, IdealDescriptor::new([1]));
        let c3 = chain(3);
        assert!(matches!(prime_preimage(&c3, &[0, 2], &IdealDescriptor::new([])), Err(Error::NotConvex(_))));
    }

    #[test]
    fn ei_components() {
        let s = spc_ei(&crown(), 2).unwrap();
        assert!(s.components.iter().all(|c| c.kind == ComponentKind::ExactPoint));
        for (_, t) in transporter_fixtures() {
            let s = spc_ei(&t.cat, 2).unwrap();
            assert_eq!(s.components.len(), t.orbits.len());
            for (c, orbit) in s.components.iter().zip(&t.orbits) {
                assert_eq!(c.aut, t.isotropy_descriptor(orbit[0]));
            }
        }
        assert!(spc_ei(&discrete(2), 0).unwrap().components.len() == 2);
    }

    #[test]
    fn census_on_two_chain() {
        let c = Arc::new(chain(2));
        let cfg = CensusConfig { cone_samples: 30, pool_size: 8, ..CensusConfig::default() };
        let report = oracle_ideal_census::<F2>(&c, &cfg).unwrap();
        assert_eq!(report.ideals.len(), 4);
        assert_eq!(report.violation_count(), 0);
        assert_eq!(report.witnesses.len(), 6);
        let big = Arc::new(chain(4));
        assert!(matches!(oracle_ideal_census::<F2>(&big, &cfg), Err(Error::BudgetExceeded(_))));
    }
}
