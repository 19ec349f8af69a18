//! Named fixture categories and seeded random modules and complexes.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catmod::{trivial_simple, FunctorModule, HomSpace, ModuleMap, ProjSum};
use crate::dcat::BoundedComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::FiniteCategory;
use crate::groupact::{GPoset, PermGroup, TransporterCategory};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `x0 < x1 < … < x{n-1}`.
pub fn chain(n: usize) -> FiniteCategory {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    FiniteCategory::poset(names, &rel).expect("chain")
}

/// `w, x < y, z`.
pub fn crown() -> FiniteCategory {
    FiniteCategory::poset(["w", "x", "y", "z"], &[(0, 2), (0, 3), (1, 2), (1, 3)]).expect("crown")
}

/// `n` incomparable points.
pub fn discrete(n: usize) -> FiniteCategory {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    FiniteCategory::poset(names, &[]).expect("discrete")
}

/// A random poset on `n` points: each pair `i < j` is related with
/// probability `density`, then closed transitively.
pub fn random_poset<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Result<FiniteCategory> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParams(format!("density {density} outside [0, 1]")));
    }
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut rel = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(density) {
                rel.push((i, j));
            }
        }
    }
    FiniteCategory::poset(names, &rel)
}

/// Posets used across the property suites.
pub fn poset_fixtures() -> Vec<(String, Arc<FiniteCategory>)> {
    let mut out: Vec<(String, FiniteCategory)> = vec![
        ("point".into(), chain(1)),
        ("chain2".into(), chain(2)),
        ("chain3".into(), chain(3)),
        ("discrete2".into(), discrete(2)),
        ("crown".into(), crown()),
    ];
    for seed in 1..=3 {
        let p = random_poset(4 + (seed as usize % 2), 0.5, &mut rng(seed)).expect("valid density");
        out.push((format!("random{seed}"), p));
    }
    out.into_iter().map(|(n, c)| (n, Arc::new(c))).collect()
}

fn swap_group() -> PermGroup {
    PermGroup::cyclic(2)
}

/// Transporter categories covering trivial, free and mixed-stabiliser actions.
pub fn transporter_fixtures() -> Vec<(String, TransporterCategory)> {
    let mk = |p: FiniteCategory, g: PermGroup, acts: Vec<Vec<usize>>| {
        TransporterCategory::build(GPoset::new(Arc::new(p), g, acts).expect("valid action")).expect("transporter")
    };
    let s3 = PermGroup::symmetric(3).expect("S3");
    let s3_gens = s3.generators().to_vec();
    let ab_c = FiniteCategory::poset(["a", "b", "c"], &[(0, 2), (1, 2)]).expect("poset");
    vec![
        ("trivial-group-chain3".into(), mk(chain(3), PermGroup::trivial(), vec![])),
        ("c2-trivial-chain2".into(), mk(chain(2), swap_group(), vec![vec![0, 1]])),
        ("c2-swap-points".into(), mk(discrete(2), swap_group(), vec![vec![1, 0]])),
        ("c2-mixed-vee".into(), mk(ab_c, swap_group(), vec![vec![1, 0, 2]])),
        ("c3-point".into(), mk(chain(1), PermGroup::cyclic(3), vec![vec![0]])),
        ("c2-free-crown".into(), mk(crown(), swap_group(), vec![vec![1, 0, 3, 2]])),
        ("s3-three-points".into(), mk(discrete(3), s3, s3_gens)),
    ]
}

/// `Z/2 ∝ (x < y)` with the trivial action.
pub fn c2_times_chain2() -> TransporterCategory {
    TransporterCategory::build(GPoset::trivial(Arc::new(chain(2)), swap_group()).expect("action")).expect("transporter")
}

/// A random natural transformation `M → N`.
pub fn random_map<F: Field, R: Rng + ?Sized>(m: &FunctorModule<F>, n: &FunctorModule<F>, rng: &mut R) -> Result<ModuleMap<F>> {
    let h = HomSpace::compute(m, n)?;
    let coords: Vec<F> = (0..h.dim()).map(|_| F::random(rng)).collect();
    Ok(h.map_from_coords(&coords))
}

/// A random module: a simple, the trivial module, a representable, or the
/// cokernel of a random map between sums of representables.
pub fn random_module<F: Field, R: Rng + ?Sized>(cat: &Arc<FiniteCategory>, rng: &mut R) -> Result<FunctorModule<F>> {
    let n = cat.object_count();
    let cls = cat.classify()?;
    Ok(match rng.gen_range(0..5) {
        0 => {
            let c = rng.gen_range(0..cls.classes.len());
            trivial_simple(cat.clone(), &cls.classes[c])
        }
        1 => FunctorModule::trivial(cat.clone()),
        2 => FunctorModule::representable(cat.clone(), rng.gen_range(0..n)),
        _ => {
            let tgt = ProjSum::new(cat.clone(), (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..n)).collect());
            let src = ProjSum::new(cat.clone(), (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..n)).collect());
            let p = tgt.module::<F>();
            let images: Vec<Vec<F>> =
                src.summands.iter().map(|&x| (0..p.dim_at(x)).map(|_| F::random(rng)).collect()).collect();
            src.map_to(&p, &images).cokernel().tgt
        }
    })
}

/// A random complex with `len` terms starting in degree `low`; each
/// differential factors through the cokernel of the previous one.
pub fn random_complex<F: Field, R: Rng + ?Sized>(cat: &Arc<FiniteCategory>, low: i32, len: usize, rng: &mut R) -> Result<BoundedComplex<F>> {
    if len == 0 {
        return Ok(BoundedComplex::zero(cat.clone()));
    }
    let mut terms = vec![random_module::<F, R>(cat, rng)?];
    let mut diffs: Vec<ModuleMap<F>> = Vec::new();
    for _ in 1..len {
        let next = random_module::<F, R>(cat, rng)?;
        let prev = terms.last().unwrap();
        let d = match diffs.last() {
            None => random_map(prev, &next, rng)?,
            Some(d) => {
                let q = d.cokernel();
                let psi = random_map(&q.tgt, &next, rng)?;
                psi.compose(&q)?
            }
        };
        diffs.push(d);
        terms.push(next);
    }
    BoundedComplex::new(cat.clone(), low, terms, diffs)
}

/// A random complex with nonzero cohomology.
pub fn random_nonacyclic_complex<F: Field, R: Rng + ?Sized>(cat: &Arc<FiniteCategory>, rng: &mut R) -> Result<BoundedComplex<F>> {
    loop {
        let len = rng.gen_range(1..=3);
        let low = *[-1, 0, 1].choose(rng).expect("nonempty");
        let c = random_complex::<F, R>(cat, low, len, rng)?;
        if !c.is_acyclic() {
            return Ok(c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::F2;

    #[test]
    fn fixtures_are_valid() {
        assert!(poset_fixtures().iter().all(|(_, p)| p.is_poset()));
        let ts = transporter_fixtures();
        assert!(ts.len() >= 5);
        for (_, t) in &ts {
            t.check_iota_pi().unwrap();
            t.check_isotropy().unwrap();
        }
    }

    #[test]
    fn random_complexes_are_deterministic() {
        let cat = Arc::new(chain(3));
        let a = random_complex::<F2, _>(&cat, 0, 3, &mut rng(7)).unwrap();
        let b = random_complex::<F2, _>(&cat, 0, 3, &mut rng(7)).unwrap();
        assert_eq!(a, b);
        for seed in 0..20 {
            random_complex::<F2, _>(&cat, -1, 3, &mut rng(seed)).unwrap();
        }
    }
}
