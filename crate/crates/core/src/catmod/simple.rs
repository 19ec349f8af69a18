use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{generated_submodule, FunctorModule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::{FiniteCategory, ObjId};
use crate::groupact::automorphism_descriptor;
use crate::linalg::Matrix;

const SWEEP_LIMIT: u128 = 1_000_000;

/// `S_{x,k}`: the constant value `k` on the objects `objs` (an iso-class),
/// zero elsewhere.
pub fn trivial_simple<F: Field>(cat: Arc<FiniteCategory>, objs: &[ObjId]) -> FunctorModule<F> {
    let dims: Vec<usize> = (0..cat.object_count()).map(|x| usize::from(objs.contains(&x))).collect();
    let maps = cat
        .morphisms()
        .iter()
        .map(|m| if dims[m.src] == 1 && dims[m.tgt] == 1 { Matrix::identity(1) } else { Matrix::zeros(dims[m.tgt], dims[m.src]) })
        .collect();
    FunctorModule::new_unchecked(cat, dims, maps)
}

/// `S_{x,V}` for a representation `V` of `Aut_C(x)`, given as one matrix per
/// element of `cat.hom(x, x)` in id order, spread over the class of `x` by
/// fixed transversal isomorphisms.
pub fn simple_from_representation<F: Field>(
    cat: Arc<FiniteCategory>,
    class: &[ObjId],
    rep: &[Matrix<F>],
) -> Result<FunctorModule<F>> {
    let x0 = *class.first().ok_or_else(|| Error::InvalidParams("empty class".into()))?;
    let aut = cat.hom(x0, x0).to_vec();
    if rep.len() != aut.len() {
        return Err(Error::InvalidParams(format!("{} matrices for a group of order {}", rep.len(), aut.len())));
    }
    let d = rep[0].rows();
    let mut transversal = BTreeMap::new();
    for &y in class {
        let t = cat
            .hom(x0, y)
            .iter()
            .copied()
            .find(|&t| cat.is_iso(t))
            .ok_or_else(|| Error::InvalidParams("objects are not isomorphic".into()))?;
        transversal.insert(y, t);
    }
    let dims: Vec<usize> = (0..cat.object_count()).map(|x| if class.contains(&x) { d } else { 0 }).collect();
    let maps = cat
        .morphisms()
        .iter()
        .enumerate()
        .map(|(f, m)| match (transversal.get(&m.src), transversal.get(&m.tgt)) {
            (Some(&ty), Some(&tz)) => {
                let tz_inv = cat.inverse(tz).expect("iso");
                let g = cat.compose(tz_inv, cat.compose(f, ty).expect("composable")).expect("composable");
                rep[aut.iter().position(|&a| a == g).expect("automorphism")].clone()
            }
            _ => Matrix::zeros(dims[m.tgt], dims[m.src]),
        })
        .collect();
    FunctorModule::new(cat, dims, maps)
}

/// The simple modules supported on one iso-class.
#[derive(Clone, Debug)]
pub struct SimpleFamily<F: Field> {
    pub class: usize,
    pub objects: Vec<ObjId>,
    pub modules: Vec<FunctorModule<F>>,
    /// Whether `modules` is the full list for this class.
    pub complete: bool,
    pub warning: Option<String>,
}

/// Summary of a [`SimpleFamily`] without the modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleSummary {
    pub class: usize,
    pub objects: Vec<String>,
    pub dimensions: Vec<usize>,
    pub complete: bool,
    pub warning: Option<String>,
}

impl<F: Field> SimpleFamily<F> {
    pub fn summary(&self, cat: &FiniteCategory) -> SimpleSummary {
        SimpleSummary {
            class: self.class,
            objects: self.objects.iter().map(|&o| cat.object_name(o).to_string()).collect(),
            dimensions: self.modules.iter().map(|m| m.dim_at(self.objects[0])).collect(),
            complete: self.complete,
            warning: self.warning.clone(),
        }
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Homomorphisms `G → k^×` for `G = Aut_C(x)`, as value lists on
/// `cat.hom(x, x)`.
fn linear_characters<F: Field>(cat: &FiniteCategory, x: ObjId, exponent: usize) -> Option<Vec<Vec<F>>> {
    let roots: Vec<F> = match F::elements() {
        Some(els) => els.into_iter().filter(|r| !r.is_zero() && r.pow(exponent as u64).is_one()).collect(),
        None => [F::one(), -F::one()].into_iter().filter(|r| r.pow(exponent as u64).is_one()).collect(),
    };
    if roots.len() < exponent {
        return None;
    }
    let aut = cat.hom(x, x);
    let n = aut.len();
    let pos = |f| aut.iter().position(|&a| a == f).expect("automorphism");
    let mul = |a: usize, b: usize| pos(cat.compose(aut[a], aut[b]).expect("composable"));
    // greedy generating set
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut gens = Vec::new();
    for g in 0..n {
        if reached[g] {
            continue;
        }
        gens.push(g);
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..n {
                if reached[a] {
                    for &s in &gens {
                        let b = mul(s, a);
                        if !reached[b] {
                            reached[b] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    let mut out: Vec<Vec<F>> = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let mut chi: Vec<Option<F>> = vec![None; n];
        chi[0] = Some(F::one());
        let mut queue = vec![0];
        let mut ok = true;
        while let Some(a) = queue.pop() {
            for (k, &s) in gens.iter().enumerate() {
                let b = mul(s, a);
                let v = roots[choice[k]].clone() * chi[a].clone().expect("assigned");
                match &chi[b] {
                    Some(w) if *w != v => ok = false,
                    Some(_) => {}
                    None => {
                        chi[b] = Some(v);
                        queue.push(b);
                    }
                }
            }
        }
        if ok {
            let chi: Vec<F> = chi.into_iter().map(|c| c.expect("generated")).collect();
            let hom = (0..n).all(|a| (0..n).all(|b| chi[mul(a, b)] == chi[a].clone() * chi[b].clone()));
            if hom && !out.contains(&chi) {
                out.push(chi);
            }
        }
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < roots.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    Some(out)
}

/// Simple `kC`-modules class by class.
///
/// `irreps` may supply, per class index, representations of the
/// automorphism group of the class representative. Otherwise the list is
/// complete when the group is trivial, a `p`-group in characteristic `p`, or
/// abelian of order prime to the characteristic with enough roots of unity
/// in `k`; in the remaining cases only `S_{x,k}` is emitted, with a warning.
pub fn simple_modules<F: Field>(
    cat: Arc<FiniteCategory>,
    irreps: Option<&BTreeMap<usize, Vec<Vec<Matrix<F>>>>>,
) -> Result<Vec<SimpleFamily<F>>> {
    let cls = cat.classify()?;
    let p = F::CHARACTERISTIC as usize;
    let mut out = Vec::new();
    for (c, objs) in cls.classes.iter().enumerate() {
        let x = cls.representatives[c];
        let desc = automorphism_descriptor(&cat, x);
        let mut family = SimpleFamily { class: c, objects: objs.clone(), modules: Vec::new(), complete: true, warning: None };
        if let Some(reps) = irreps.and_then(|m| m.get(&c)) {
            for rep in reps {
                let s = simple_from_representation(cat.clone(), objs, rep)?;
                if !is_simple(&s)? {
                    return Err(Error::NotSimple(format!(
                        "supplied representation of dimension {} at `{}`",
                        rep[0].rows(),
                        cat.object_name(x)
                    )));
                }
                family.modules.push(s);
            }
        } else if desc.order == 1 || (p > 0 && is_power_of(desc.order, p)) {
            family.modules.push(trivial_simple(cat.clone(), objs));
        } else if desc.abelian && (p == 0 || desc.order % p != 0) {
            match linear_characters::<F>(&cat, x, desc.exponent) {
                Some(chars) => {
                    for chi in chars {
                        let rep: Vec<Matrix<F>> = chi.into_iter().map(|v| Matrix::from_vec(1, 1, vec![v])).collect();
                        family.modules.push(simple_from_representation(cat.clone(), objs, &rep)?);
                    }
                }
                None => {
                    family.modules.push(trivial_simple(cat.clone(), objs));
                    family.complete = false;
                    family.warning = Some(format!(
                        "k lacks the roots of unity of order {} needed to split Aut({}); only S_(x,k) listed",
                        desc.exponent,
                        cat.object_name(x)
                    ));
                }
            }
        } else {
            family.modules.push(trivial_simple(cat.clone(), objs));
            family.complete = false;
            family.warning = Some(format!(
                "Aut({}) = {} needs supplied irreducible representations; only S_(x,k) listed",
                cat.object_name(x),
                desc
            ));
        }
        out.push(family);
    }
    Ok(out)
}

/// Decides simplicity by checking that every nonzero vector, up to scalars,
/// generates the whole module. Refuses sweeps above `10^6` vectors and
/// rational modules with a value of dimension above one.
pub fn is_simple<F: Field>(m: &FunctorModule<F>) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let total = m.total_dim();
    for y in m.support() {
        let d = m.dim_at(y);
        let elems = match F::elements() {
            Some(e) => e,
            None if d == 1 => vec![F::zero(), F::one()],
            None => {
                return Err(Error::UnsupportedScale(format!(
                    "simplicity sweep over Q with dim {d} at `{}`",
                    m.category().object_name(y)
                )))
            }
        };
        let q = elems.len() as u128;
        if q.checked_pow(d as u32).is_none_or(|t| t > SWEEP_LIMIT) {
            return Err(Error::UnsupportedScale(format!("simplicity sweep of {q}^{d} vectors")));
        }
        // vectors whose first nonzero entry is 1
        for lead in 0..d {
            let free = d - lead - 1;
            let mut idx = vec![0usize; free];
            loop {
                let mut v = vec![F::zero(); d];
                v[lead] = F::one();
                for (k, &i) in idx.iter().enumerate() {
                    v[lead + 1 + k] = elems[i].clone();
                }
                let gen: usize = generated_submodule(m, &[(y, v)]).iter().map(|b| b.cols()).sum();
                if gen != total {
                    return Ok(false);
                }
                let mut k = 0;
                while k < free {
                    idx[k] += 1;
                    if idx[k] < elems.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == free {
                    break;
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::groupact::{GPoset, PermGroup, TransporterCategory};
    use crate::{F2, F3, F5, Q};

    #[test]
    fn poset_simples() {
        let c = Arc::new(FiniteCategory::poset(["x", "y", "z"], &[(0, 1), (1, 2)]).unwrap());
        let fams = simple_modules::<F2>(c.clone(), None).unwrap();
        assert_eq!(fams.len(), 3);
        for (i, f) in fams.iter().enumerate() {
            assert!(f.complete);
            assert_eq!(f.modules.len(), 1);
            assert_eq!(f.modules[0].support(), vec![i]);
            assert!(is_simple(&f.modules[0]).unwrap());
        }
        assert!(!is_simple(&FunctorModule::<F2>::trivial(c)).unwrap());
    }

    #[test]
    fn group_simples() {
        let z2 = Arc::new(PermGroup::cyclic(2).as_category());
        let f2 = simple_modules::<F2>(z2.clone(), None).unwrap();
        assert_eq!(f2[0].modules.len(), 1);
        let f3 = simple_modules::<F3>(z2.clone(), None).unwrap();
        assert_eq!(f3[0].modules.len(), 2);
        let q = simple_modules::<Q>(z2, None).unwrap();
        assert_eq!(q[0].modules.len(), 2);
        let z4 = Arc::new(PermGroup::cyclic(4).as_category());
        assert_eq!(simple_modules::<F5>(z4.clone(), None).unwrap()[0].modules.len(), 4);
        let f3 = simple_modules::<F3>(z4, None).unwrap();
        assert!(!f3[0].complete);
        let s3 = Arc::new(PermGroup::symmetric(3).unwrap().as_category());
        let fam = simple_modules::<F5>(s3, None).unwrap();
        assert!(fam[0].warning.is_some());
    }

    #[test]
    fn z2_times_chain_char2() {
        let p = Arc::new(FiniteCategory::poset(["x", "y"], &[(0, 1)]).unwrap());
        let t = TransporterCategory::build(GPoset::trivial(p, PermGroup::cyclic(2)).unwrap()).unwrap();
        let fams = simple_modules::<F2>(t.cat.clone(), None).unwrap();
        let n: usize = fams.iter().map(|f| f.modules.len()).sum();
        assert_eq!(n, 2);
    }

    #[test]
    fn supplied_irreps_checked() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let c = Arc::new(s3.as_category());
        // the permutation representation of S3 on 3 points is not simple
        let perm: Vec<Matrix<F5>> = (0..6)
            .map(|g| {
                let p = s3.element(g);
                let mut m = Matrix::zeros(3, 3);
                for (i, &j) in p.iter().enumerate() {
                    m[(j, i)] = F5::one();
                }
                m
            })
            .collect();
        let mut irreps = BTreeMap::new();
        irreps.insert(0, vec![perm]);
        assert!(matches!(simple_modules(c, Some(&irreps)), Err(Error::NotSimple(_))));
    }

    #[test]
    fn groupoid_class_simple() {
        let p = Arc::new(FiniteCategory::poset(["a", "b"], &[]).unwrap());
        let t = TransporterCategory::build(GPoset::new(p, PermGroup::cyclic(2), vec![vec![1, 0]]).unwrap()).unwrap();
        let fams = simple_modules::<F2>(t.cat.clone(), None).unwrap();
        assert_eq!(fams.len(), 1);
        assert_eq!(fams[0].modules[0].dims(), &[1, 1]);
        assert!(is_simple(&fams[0].modules[0]).unwrap());
    }
}
