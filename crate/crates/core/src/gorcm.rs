//! Gorenstein checks for transporter category algebras: the skew group
//! algebra isomorphism, injective dimensions of the regular modules, the
//! per-orbit finite projective dimension criterion and the CM spectrum.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::catmod::{is_projective, projective_dimension, FunctorModule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::{FiniteCategory, MorId, ObjId};
use crate::groupact::{GroupDescriptor, TransporterCategory};
use crate::linalg::Matrix;
use crate::ttspec::{spc_ei, SpectrumDescriptor};

/// `kP[G]` with basis `(α, g)` for `α` a morphism of `P` and product
/// `(α, g)(β, h) = (α ∘ g(β), gh)`.
pub struct SkewAlgebra<'a> {
    pub transporter: &'a TransporterCategory,
    /// `g(β)` for every group element and poset morphism.
    act_on_morphisms: Vec<Vec<MorId>>,
}

impl<'a> SkewAlgebra<'a> {
    pub fn new(t: &'a TransporterCategory) -> Self {
        let p = &t.base.poset;
        let act_on_morphisms = (0..t.group().order())
            .map(|g| {
                p.morphisms()
                    .iter()
                    .map(|m| {
                        let (gx, gy) = (t.base.act(g, m.src), t.base.act(g, m.tgt));
                        p.hom(gx, gy)[0]
                    })
                    .collect()
            })
            .collect();
        SkewAlgebra { transporter: t, act_on_morphisms }
    }

    pub fn dimension(&self) -> usize {
        self.transporter.base.poset.morphism_count() * self.transporter.group().order()
    }

    pub fn product(&self, a: (MorId, usize), b: (MorId, usize)) -> Option<(MorId, usize)> {
        let p = &self.transporter.base.poset;
        let gb = self.act_on_morphisms[a.1][b.0];
        p.compose(a.0, gb).map(|c| (c, self.transporter.group().mul(a.1, b.1)))
    }

    /// `(g, gx ≤ y) ↦ (gx ≤ y, g)`.
    pub fn image(&self, f: MorId) -> (MorId, usize) {
        let tag = self.transporter.tags[f];
        let p = &self.transporter.base.poset;
        (p.hom(self.transporter.base.act(tag.g, tag.src), tag.tgt)[0], tag.g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewIsoReport {
    pub dimension: usize,
    pub products_checked: usize,
    pub bijective: bool,
    pub multiplicative: bool,
}

impl SkewIsoReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.multiplicative
    }
}

/// Compares structure constants of `k(G∝P)` and `kP[G]` on all pairs of
/// basis elements.
pub fn skew_iso_check(t: &TransporterCategory) -> SkewIsoReport {
    let skew = SkewAlgebra::new(t);
    let cat = &t.cat;
    let images: Vec<(MorId, usize)> = (0..cat.morphism_count()).map(|f| skew.image(f)).collect();
    let mut seen: HashMap<(MorId, usize), MorId> = HashMap::new();
    let bijective = images.iter().enumerate().all(|(f, &i)| seen.insert(i, f).is_none()) && images.len() == skew.dimension();
    let mut multiplicative = true;
    let mut checked = 0;
    for b in 0..cat.morphism_count() {
        for a in 0..cat.morphism_count() {
            checked += 1;
            let left = cat.compose(b, a).map(|c| images[c]);
            if left != skew.product(images[b], images[a]) {
                multiplicative = false;
            }
        }
    }
    SkewIsoReport { dimension: skew.dimension(), products_checked: checked, bijective, multiplicative }
}

/// The `k`-dual `DM`, a module over the opposite category.
pub fn dual<F: Field>(m: &FunctorModule<F>, opposite: &Arc<FiniteCategory>) -> Result<FunctorModule<F>> {
    let maps = m.maps().iter().map(|a| a.transpose()).collect();
    FunctorModule::new(opposite.clone(), m.dims().to_vec(), maps)
}

/// `kC` as a left module, i.e. the sum of all representables.
pub fn regular_module<F: Field>(cat: &Arc<FiniteCategory>) -> Result<FunctorModule<F>> {
    let reps: Vec<FunctorModule<F>> = (0..cat.object_count()).map(|x| FunctorModule::representable(cat.clone(), x)).collect();
    FunctorModule::direct_sum(&reps.iter().collect::<Vec<_>>())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Injective dimension of the regular module on one side, computed as
/// the projective dimension of its dual over the opposite algebra.
pub fn injective_dimension<F: Field>(cat: &Arc<FiniteCategory>, side: Side, bound: usize) -> Result<usize> {
    if bound < cat.object_count() {
        return Err(Error::InvalidParams(format!("bound {bound} is below the object count {}", cat.object_count())));
    }
    let op = Arc::new(cat.opposite());
    let (regular_over, dual_over) = match side {
        Side::Left => (cat, &op),
        Side::Right => (&op, cat),
    };
    let d = dual(&regular_module::<F>(regular_over)?, dual_over)?;
    projective_dimension(&d, bound)?.ok_or(Error::AboveBound(bound))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub bound: usize,
    pub skew: SkewIsoReport,
}

impl GorensteinReport {
    pub fn is_gorenstein(&self) -> bool {
        self.left.is_some() && self.right.is_some()
    }
}

pub fn gorenstein_report<F: Field>(t: &TransporterCategory, bound: usize) -> Result<GorensteinReport> {
    let side = |s| match injective_dimension::<F>(&t.cat, s, bound) {
        Ok(d) => Ok(Some(d)),
        Err(Error::AboveBound(_)) => Ok(None),
        Err(e) => Err(e),
    };
    Ok(GorensteinReport { left: side(Side::Left)?, right: side(Side::Right)?, bound, skew: skew_iso_check(t) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitVerdict {
    pub orbit: usize,
    pub representative: String,
    pub stabilizer: GroupDescriptor,
    pub projective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitePdReport {
    pub finite: bool,
    pub orbits: Vec<OrbitVerdict>,
    pub failing: Vec<usize>,
}

/// `M(x)` as a `kG_x`-module.
pub fn restrict_to_stabilizer<F: Field>(t: &TransporterCategory, m: &FunctorModule<F>, x: ObjId) -> Result<FunctorModule<F>> {
    m.restrict(&t.cat.full_subcategory(&[x]))
}

/// `pd M < ∞` iff every `M(x)` is projective over `kG_x`, tested on orbit
/// representatives.
pub fn finite_projdim<F: Field>(t: &TransporterCategory, m: &FunctorModule<F>) -> Result<FinitePdReport> {
    let mut orbits = Vec::with_capacity(t.orbits.len());
    for (o, members) in t.orbits.iter().enumerate() {
        let x = members[0];
        let projective = is_projective(&restrict_to_stabilizer(t, m, x)?)?;
        orbits.push(OrbitVerdict {
            orbit: o,
            representative: t.cat.object_name(x).to_string(),
            stabilizer: t.isotropy_descriptor(x),
            projective,
        });
    }
    let failing: Vec<usize> = orbits.iter().filter(|v| !v.projective).map(|v| v.orbit).collect();
    Ok(FinitePdReport { finite: failing.is_empty(), orbits, failing })
}

/// Finiteness of `pd M` read off a truncated resolution with cutoff
/// `|Ob| + 2`.
pub fn finite_projdim_by_resolution<F: Field>(m: &FunctorModule<F>) -> Result<bool> {
    let cutoff = m.category().object_count() + 2;
    Ok(projective_dimension(m, cutoff)?.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CmKind {
    Empty,
    SymbolicProjH,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmComponent {
    pub orbit: usize,
    pub objects: Vec<String>,
    pub stabilizer: GroupDescriptor,
    pub kind: CmKind,
    pub label: String,
    /// `char k ∤ |G_x|`.
    pub coprime: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmSpectrum {
    pub characteristic: u64,
    pub components: Vec<CmComponent>,
    pub ambient: SpectrumDescriptor,
    pub localization: [String; 3],
    /// Empty components are exactly the coprime ones and every component
    /// sits in an ambient component.
    pub consistent: bool,
}

impl CmSpectrum {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.kind == CmKind::Empty)
    }
}

/// One component per orbit: empty when `k̲` is projective over `kG_x`,
/// a symbolic `Proj H^·(G_x)` otherwise.
pub fn cm_spectrum<F: Field>(t: &TransporterCategory) -> Result<CmSpectrum> {
    let p = F::spec().characteristic();
    let k = FunctorModule::<F>::trivial(t.cat.clone());
    let ambient = spc_ei(&t.cat, p)?;
    let mut components = Vec::with_capacity(t.orbits.len());
    for (o, members) in t.orbits.iter().enumerate() {
        let x = members[0];
        let stabilizer = t.isotropy_descriptor(x);
        let semisimple = is_projective(&restrict_to_stabilizer(t, &k, x)?)?;
        let coprime = p == 0 || stabilizer.order as u64 % p != 0;
        let (kind, label) = if semisimple {
            (CmKind::Empty, "empty".to_string())
        } else {
            (CmKind::SymbolicProjH, format!("Proj H(G; F{p}), G = {}", stabilizer.label()))
        };
        components.push(CmComponent {
            orbit: o,
            objects: members.iter().map(|&y| t.cat.object_name(y).to_string()).collect(),
            stabilizer,
            kind,
            label,
            coprime,
        });
    }
    let consistent = components.len() == ambient.components.len()
        && components.iter().all(|c| (c.kind == CmKind::Empty) == c.coprime)
        && components.iter().zip(&ambient.components).all(|(c, a)| c.objects == a.objects && c.stabilizer == a.aut);
    Ok(CmSpectrum {
        characteristic: p,
        components,
        ambient,
        localization: ["D^b(proj)".into(), "K".into(), "CM".into()],
        consistent,
    })
}

/// `π^*(kG)`: the regular representation of `G` pulled back along
/// `π: G∝P → G`.
pub fn pulled_back_regular<F: Field>(t: &TransporterCategory) -> Result<FunctorModule<F>> {
    let g = t.group();
    let n = g.order();
    let maps = t
        .tags
        .iter()
        .map(|tag| {
            let mut data = vec![F::zero(); n * n];
            for h in 0..n {
                data[g.mul(tag.g, h) * n + h] = F::one();
            }
            Matrix::from_vec(n, n, data)
        })
        .collect();
    FunctorModule::new(t.cat.clone(), vec![n; t.cat.object_count()], maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c2_times_chain2, chain, rng, random_module, transporter_fixtures};
    use crate::groupact::{GPoset, PermGroup};
    use crate::{F2, F3};

    fn c2_point() -> TransporterCategory {
        TransporterCategory::build(GPoset::trivial(Arc::new(chain(1)), PermGroup::cyclic(2)).unwrap()).unwrap()
    }

    #[test]
    fn skew_isomorphism() {
        for (_, t) in transporter_fixtures() {
            assert!(skew_iso_check(&t).passed());
        }
        let swap = &transporter_fixtures()[2].1;
        assert_eq!(skew_iso_check(swap).products_checked, 16);
    }

    #[test]
    fn injective_dimensions() {
        let g = c2_point();
        assert_eq!(injective_dimension::<F2>(&g.cat, Side::Left, 2).unwrap(), 0);
        assert_eq!(injective_dimension::<F2>(&g.cat, Side::Right, 2).unwrap(), 0);
        let p = Arc::new(chain(2));
        assert!(injective_dimension::<F2>(&p, Side::Left, 2).unwrap() <= 1);
        let t = c2_times_chain2();
        let l = injective_dimension::<F2>(&t.cat, Side::Left, 3).unwrap();
        let r = injective_dimension::<F2>(&t.cat, Side::Right, 3).unwrap();
        assert!(l > 0 && l <= 3 && r <= 3);
        assert!(matches!(injective_dimension::<F2>(&t.cat, Side::Left, 1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn projective_dimension_criterion() {
        let g = c2_point();
        let k = FunctorModule::<F2>::trivial(g.cat.clone());
        let r = finite_projdim(&g, &k).unwrap();
        assert!(!r.finite);
        assert_eq!(r.failing, vec![0]);
        assert!(!finite_projdim_by_resolution(&k).unwrap());
        let t = c2_times_chain2();
        let reg = pulled_back_regular::<F2>(&t).unwrap();
        assert!(finite_projdim(&t, &reg).unwrap().finite);
        let p = FunctorModule::<F2>::representable(t.cat.clone(), 0);
        assert!(finite_projdim(&t, &p).unwrap().finite);
        for seed in 0..10 {
            for (_, t) in transporter_fixtures().iter().take(6) {
                let m = random_module::<F2, _>(&t.cat, &mut rng(seed)).unwrap();
                assert_eq!(finite_projdim(t, &m).unwrap().finite, finite_projdim_by_resolution(&m).unwrap());
            }
        }
    }

    #[test]
    fn cm_components() {
        for (_, t) in transporter_fixtures() {
            let s = cm_spectrum::<F2>(&t).unwrap();
            assert!(s.consistent);
            let s3 = cm_spectrum::<F3>(&t).unwrap();
            assert!(s3.consistent);
        }
        let trivial = &transporter_fixtures()[0].1;
        assert!(cm_spectrum::<F2>(trivial).unwrap().is_zero());
        let g = cm_spectrum::<F2>(&c2_point()).unwrap();
        assert_eq!(g.components[0].kind, CmKind::SymbolicProjH);
        let swap = cm_spectrum::<F2>(&transporter_fixtures()[2].1).unwrap();
        assert_eq!(swap.components.len(), 1);
        assert_eq!(swap.components[0].kind, CmKind::Empty);
    }
}
