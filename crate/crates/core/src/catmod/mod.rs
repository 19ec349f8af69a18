//! Modules over the category algebra `kC`, represented as functors
//! `C → Vect_k`.

mod hom;
mod parse;
mod radical;
mod resolution;
mod simple;

use std::sync::Arc;



use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::{FiniteCategory, MorId, ObjId, Subcategory};
use crate::linalg::{Matrix, Subquotient};

pub use hom::{internal_hom, is_isomorphic, is_projective, projective_cover, HomSpace, IsoVerdict, ProjSum};
pub use parse::{parse_module, write_module, ModuleSpec, MODULE_HEADER};
pub(crate) use parse::{build_matrix, matrix_literal, parse_field, parse_matrix_literal};
pub use radical::{group_algebra_radical, radical_dimension, radical_submodule, top_generators, CategoryAlgebra};
pub use resolution::{projective_dimension, Resolution, TERM_DIM_LIMIT};
pub use simple::{is_simple, simple_from_representation, simple_modules, trivial_simple, SimpleFamily, SimpleSummary};

pub(crate) fn same_category(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A finite-dimensional `kC`-module: a vector space per object and a matrix
/// per morphism, `maps[f]` of shape `dim(tgt f) × dim(src f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorModule<F: Field> {
    cat: Arc<FiniteCategory>,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> FunctorModule<F> {
    /// Validates shapes, identities and every composite.
    pub fn new(cat: Arc<FiniteCategory>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != cat.object_count() || maps.len() != cat.morphism_count() {
            return Err(Error::InvalidModule("wrong number of dimensions or matrices".into()));
        }
        for (f, m) in cat.morphisms().iter().enumerate() {
            if maps[f].rows() != dims[m.tgt] || maps[f].cols() != dims[m.src] {
                return Err(Error::InvalidModule(format!(
                    "matrix of `{}` is {}x{}, expected {}x{}",
                    m.name,
                    maps[f].rows(),
                    maps[f].cols(),
                    dims[m.tgt],
                    dims[m.src]
                )));
            }
        }
        let module = FunctorModule { cat, dims, maps };
        module.check()?;
        Ok(module)
    }

    pub(crate) fn new_unchecked(cat: Arc<FiniteCategory>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        debug_assert!(FunctorModule { cat: cat.clone(), dims: dims.clone(), maps: maps.clone() }.check().is_ok());
        FunctorModule { cat, dims, maps }
    }

    /// Functoriality on identities and all composable pairs.
    pub fn check(&self) -> Result<()> {
        for x in 0..self.cat.object_count() {
            if self.maps[x] != Matrix::identity(self.dims[x]) {
                return Err(Error::InvalidModule(format!(
                    "identity of `{}` does not act as the identity",
                    self.cat.object_name(x)
                )));
            }
        }
        for (f, g, h) in self.cat.composable_pairs() {
            if self.cat.is_identity(f) || self.cat.is_identity(g) {
                continue;
            }
            if self.maps[f].mul(&self.maps[g]) != self.maps[h] {
                return Err(Error::InvalidModule(format!(
                    "M({}) M({}) differs from M({})",
                    self.cat.morphism(f).name,
                    self.cat.morphism(g).name,
                    self.cat.morphism(h).name
                )));
            }
        }
        Ok(())
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.cat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, x: ObjId) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn map(&self, f: MorId) -> &Matrix<F> {
        &self.maps[f]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    /// Objects where the module is nonzero.
    pub fn support(&self) -> Vec<ObjId> {
        (0..self.dims.len()).filter(|&x| self.dims[x] > 0).collect()
    }

    pub fn zero(cat: Arc<FiniteCategory>) -> Self {
        let maps = cat.morphisms().iter().map(|_| Matrix::zeros(0, 0)).collect();
        FunctorModule { dims: vec![0; cat.object_count()], maps, cat }
    }

    /// The constant functor `k̲`.
    pub fn trivial(cat: Arc<FiniteCategory>) -> Self {
        let maps = cat.morphisms().iter().map(|_| Matrix::identity(1)).collect();
        FunctorModule { dims: vec![1; cat.object_count()], maps, cat }
    }

    /// The representable projective `kC·1_x = kHom_C(x, -)`; the basis of
    /// `P_x(y)` is `hom(x, y)` in id order.
    pub fn representable(cat: Arc<FiniteCategory>, x: ObjId) -> Self {
        let n = cat.object_count();
        let dims: Vec<usize> = (0..n).map(|y| cat.hom(x, y).len()).collect();
        let maps = cat
            .morphisms()
            .iter()
            .enumerate()
            .map(|(f, m)| {
                let src = cat.hom(x, m.src);
                let tgt = cat.hom(x, m.tgt);
                let mut a = Matrix::zeros(tgt.len(), src.len());
                for (j, &h) in src.iter().enumerate() {
                    let fh = cat.compose(f, h).expect("composable");
                    let i = tgt.iter().position(|&t| t == fh).expect("composite in hom set");
                    a[(i, j)] = F::one();
                }
                a
            })
            .collect();
        FunctorModule { cat, dims, maps }
    }

    /// `M ⊕ N ⊕ …`, with bases concatenated in order.
    pub fn direct_sum(parts: &[&Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidParams("empty direct sum".into()))?;
        for p in parts {
            if !same_category(&p.cat, &first.cat) {
                return Err(Error::CategoryMismatch);
            }
        }
        let cat = first.cat.clone();
        let dims = (0..cat.object_count()).map(|x| parts.iter().map(|p| p.dims[x]).sum()).collect();
        let maps = (0..cat.morphism_count())
            .map(|f| Matrix::block_diag(&parts.iter().map(|p| &p.maps[f]).collect::<Vec<_>>()))
            .collect();
        Ok(FunctorModule { cat, dims, maps })
    }

    /// Pointwise tensor product; `M(x) ⊗ N(x)` has basis `i * dim N(x) + j`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if !same_category(&self.cat, &other.cat) {
            return Err(Error::CategoryMismatch);
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a * b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.kron(b)).collect();
        Ok(FunctorModule { cat: self.cat.clone(), dims, maps })
    }

    /// Restriction to a full subcategory.
    pub fn restrict(&self, sub: &Subcategory) -> Result<Self> {
        if sub.objects.iter().any(|&o| o >= self.cat.object_count()) {
            return Err(Error::CategoryMismatch);
        }
        let dims = sub.objects.iter().map(|&o| self.dims[o]).collect();
        let maps = sub.morphisms.iter().map(|&f| self.maps[f].clone()).collect();
        Ok(FunctorModule { cat: sub.cat.clone(), dims, maps })
    }

    /// Extension by zero from a convex full subcategory to `ambient`.
    pub fn include(&self, sub: &Subcategory, ambient: Arc<FiniteCategory>) -> Result<Self> {
        if !same_category(&self.cat, &sub.cat) {
            return Err(Error::CategoryMismatch);
        }
        if let Some(w) = ambient.convexity_witness(&sub.objects) {
            return Err(Error::NotConvex(ambient.object_name(w).to_string()));
        }
        let mut dims = vec![0; ambient.object_count()];
        for (i, &o) in sub.objects.iter().enumerate() {
            dims[o] = self.dims[i];
        }
        let mut maps: Vec<Matrix<F>> =
            ambient.morphisms().iter().map(|m| Matrix::zeros(dims[m.tgt], dims[m.src])).collect();
        for (i, &f) in sub.morphisms.iter().enumerate() {
            maps[f] = self.maps[i].clone();
        }
        Ok(FunctorModule { cat: ambient, dims, maps })
    }

    /// `M_x`: the values of `M` on the class `objs`, extended by zero.
    pub fn filtration_component(&self, objs: &[ObjId]) -> Self {
        let mut dims = vec![0; self.dims.len()];
        for &o in objs {
            dims[o] = self.dims[o];
        }
        let maps = self
            .cat
            .morphisms()
            .iter()
            .enumerate()
            .map(|(f, m)| {
                if dims[m.src] > 0 && dims[m.tgt] > 0 && objs.contains(&m.src) && objs.contains(&m.tgt) {
                    self.maps[f].clone()
                } else {
                    Matrix::zeros(dims[m.tgt], dims[m.src])
                }
            })
            .collect();
        FunctorModule { cat: self.cat.clone(), dims, maps }
    }

    /// The filtration by iso-classes: repeatedly split off `M_x` for a
    /// maximal class `[x]` of the remaining support, in the order of
    /// the class linear extension read from the top.
    pub fn filtration(&self) -> Result<Vec<FiltrationStep<F>>> {
        let cls = self.cat.classify()?;
        let mut steps = Vec::new();
        let mut current = self.clone();
        loop {
            let live: Vec<usize> =
                (0..cls.class_count()).filter(|&c| cls.classes[c].iter().any(|&o| current.dims[o] > 0)).collect();
            let Some(&top) = cls.maximal_among(&live).iter().max() else {
                break;
            };
            let objs = &cls.classes[top];
            let sub = current.filtration_component(objs);
            let rest: Vec<ObjId> = (0..self.dims.len()).filter(|o| !objs.contains(o)).collect();
            let quotient = current.filtration_component(&rest);
            let inclusion = ModuleMap::new(
                sub.clone(),
                current.clone(),
                (0..self.dims.len())
                    .map(|o| {
                        if objs.contains(&o) {
                            Matrix::identity(current.dims[o])
                        } else {
                            Matrix::zeros(current.dims[o], 0)
                        }
                    })
                    .collect(),
            )?;
            let projection = ModuleMap::new(
                current.clone(),
                quotient.clone(),
                (0..self.dims.len())
                    .map(|o| {
                        if objs.contains(&o) {
                            Matrix::zeros(0, current.dims[o])
                        } else {
                            Matrix::identity(current.dims[o])
                        }
                    })
                    .collect(),
            )?;
            check_short_exact(&inclusion, &projection)?;
            steps.push(FiltrationStep { class: top, objects: objs.clone(), sub, inclusion, projection });
            current = quotient;
        }
        Ok(steps)
    }
}

/// One short exact sequence `0 → M_x → M → M/M_x → 0` of the filtration.
#[derive(Clone, Debug)]
pub struct FiltrationStep<F: Field> {
    pub class: usize,
    pub objects: Vec<ObjId>,
    pub sub: FunctorModule<F>,
    pub inclusion: ModuleMap<F>,
    pub projection: ModuleMap<F>,
}

/// Checks `0 → A → B → C → 0` is exact objectwise.
pub fn check_short_exact<F: Field>(i: &ModuleMap<F>, p: &ModuleMap<F>) -> Result<()> {
    for x in 0..i.tgt.dims.len() {
        let (a, b) = (&i.components[x], &p.components[x]);
        let ok = a.rank() == a.cols() && b.rank() == b.rows() && b.mul(a).is_zero() && a.cols() + b.rows() == a.rows();
        if !ok {
            return Err(Error::Internal(format!("sequence is not exact at `{}`", i.tgt.cat.object_name(x))));
        }
    }
    Ok(())
}

/// A natural transformation between modules over the same category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap<F: Field> {
    pub src: FunctorModule<F>,
    pub tgt: FunctorModule<F>,
    pub components: Vec<Matrix<F>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(src: FunctorModule<F>, tgt: FunctorModule<F>, components: Vec<Matrix<F>>) -> Result<Self> {
        let m = ModuleMap { src, tgt, components };
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(src: FunctorModule<F>, tgt: FunctorModule<F>, components: Vec<Matrix<F>>) -> Self {
        ModuleMap { src, tgt, components }
    }

    /// Shapes and every naturality square.
    pub fn check(&self) -> Result<()> {
        if !same_category(&self.src.cat, &self.tgt.cat) {
            return Err(Error::CategoryMismatch);
        }
        let cat = &self.src.cat;
        if self.components.len() != cat.object_count() {
            return Err(Error::NotNatural("wrong number of components".into()));
        }
        for x in 0..cat.object_count() {
            let c = &self.components[x];
            if c.rows() != self.tgt.dims[x] || c.cols() != self.src.dims[x] {
                return Err(Error::NotNatural(format!("component at `{}` has the wrong shape", cat.object_name(x))));
            }
        }
        for (f, m) in cat.morphisms().iter().enumerate() {
            if cat.is_identity(f) {
                continue;
            }
            let left = self.tgt.maps[f].mul(&self.components[m.src]);
            let right = self.components[m.tgt].mul(&self.src.maps[f]);
            if left != right {
                return Err(Error::NotNatural(format!("square of `{}` does not commute", m.name)));
            }
        }
        Ok(())
    }

    pub fn zero(src: FunctorModule<F>, tgt: FunctorModule<F>) -> Self {
        let components = (0..src.dims.len()).map(|x| Matrix::zeros(tgt.dims[x], src.dims[x])).collect();
        ModuleMap { src, tgt, components }
    }

    pub fn identity(m: FunctorModule<F>) -> Self {
        let components = m.dims.iter().map(|&d| Matrix::identity(d)).collect();
        ModuleMap { src: m.clone(), tgt: m, components }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap<F>) -> Result<Self> {
        if self.src != other.tgt {
            return Err(Error::CategoryMismatch);
        }
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.mul(b)).collect();
        Ok(ModuleMap { src: other.src.clone(), tgt: self.tgt.clone(), components })
    }

    pub fn add(&self, other: &ModuleMap<F>) -> Self {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        ModuleMap { src: self.src.clone(), tgt: self.tgt.clone(), components }
    }

    pub fn scale(&self, s: &F) -> Self {
        let components = self.components.iter().map(|a| a.scale(s)).collect();
        ModuleMap { src: self.src.clone(), tgt: self.tgt.clone(), components }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|c| c.is_invertible())
    }

    /// Componentwise tensor product of two maps.
    pub fn tensor(&self, other: &ModuleMap<F>) -> Result<Self> {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.kron(b)).collect();
        Ok(ModuleMap { src: self.src.tensor(&other.src)?, tgt: self.tgt.tensor(&other.tgt)?, components })
    }

    pub fn restrict(&self, sub: &Subcategory) -> Result<Self> {
        let components = sub.objects.iter().map(|&o| self.components[o].clone()).collect();
        Ok(ModuleMap { src: self.src.restrict(sub)?, tgt: self.tgt.restrict(sub)?, components })
    }

    /// The kernel with its inclusion into the source.
    pub fn kernel(&self) -> ModuleMap<F> {
        let cat = self.src.cat.clone();
        let bases: Vec<Matrix<F>> = self.components.iter().map(|c| c.kernel()).collect();
        let lefts: Vec<Matrix<F>> = bases.iter().map(|b| b.left_inverse().unwrap_or_else(|| Matrix::zeros(0, b.rows()))).collect();
        let maps = cat
            .morphisms()
            .iter()
            .enumerate()
            .map(|(f, m)| lefts[m.tgt].mul(&self.src.maps[f]).mul(&bases[m.src]))
            .collect();
        let dims = bases.iter().map(|b| b.cols()).collect();
        let k = FunctorModule::new_unchecked(cat, dims, maps);
        ModuleMap::new_unchecked(k, self.src.clone(), bases)
    }

    /// The cokernel with the projection from the target.
    pub fn cokernel(&self) -> ModuleMap<F> {
        let cat = self.src.cat.clone();
        let quotients: Vec<Subquotient<F>> = (0..cat.object_count())
            .map(|x| {
                let n = self.tgt.dims[x];
                Subquotient::new(n, &Matrix::identity(n), &self.components[x])
            })
            .collect();
        let maps = cat
            .morphisms()
            .iter()
            .enumerate()
            .map(|(f, m)| quotients[m.tgt].coords_matrix(&self.tgt.maps[f].mul(&quotients[m.src].reps)))
            .collect();
        let dims = quotients.iter().map(|q| q.dim()).collect();
        let c = FunctorModule::new_unchecked(cat, dims, maps);
        let proj = (0..quotients.len()).map(|x| quotients[x].coords_matrix(&Matrix::identity(self.tgt.dims[x]))).collect();
        ModuleMap::new_unchecked(self.tgt.clone(), c, proj)
    }

    /// The image as a submodule of the target, with its inclusion.
    pub fn image(&self) -> ModuleMap<F> {
        let cat = self.src.cat.clone();
        let bases: Vec<Matrix<F>> = self
            .components
            .iter()
            .zip(&self.tgt.dims)
            .map(|(c, &n)| if c.cols() == 0 { Matrix::zeros(n, 0) } else { c.column_basis() })
            .collect();
        submodule_from_bases(&self.tgt, cat, bases)
    }
}

/// The submodule spanned objectwise by the columns of `bases` (assumed
/// stable under the action), with its inclusion.
pub(crate) fn submodule_from_bases<F: Field>(
    m: &FunctorModule<F>,
    cat: Arc<FiniteCategory>,
    bases: Vec<Matrix<F>>,
) -> ModuleMap<F> {
    let lefts: Vec<Matrix<F>> = bases.iter().map(|b| b.left_inverse().unwrap_or_else(|| Matrix::zeros(0, b.rows()))).collect();
    let maps = cat
        .morphisms()
        .iter()
        .enumerate()
        .map(|(f, mo)| lefts[mo.tgt].mul(&m.maps[f]).mul(&bases[mo.src]))
        .collect();
    let dims = bases.iter().map(|b| b.cols()).collect();
    let s = FunctorModule::new_unchecked(cat, dims, maps);
    ModuleMap::new_unchecked(s, m.clone(), bases)
}

/// Smallest submodule containing the given vectors, as a basis per object.
pub fn generated_submodule<F: Field>(m: &FunctorModule<F>, gens: &[(ObjId, Vec<F>)]) -> Vec<Matrix<F>> {
    let cat = &m.cat;
    let mut spans: Vec<crate::linalg::EchelonSpan<F>> =
        m.dims.iter().map(|&d| crate::linalg::EchelonSpan::new(d)).collect();
    for (x, v) in gens {
        for &f in cat.out_of(*x) {
            let w = m.maps[f].mul_vec(v);
            spans[cat.tgt(f)].insert(&w);
        }
    }
    spans.iter().map(|s| s.basis()).collect()
}

/// Structure constants of `kC`: `β · α = β ∘ α` when composable, else `0`.
pub fn algebra_product(cat: &FiniteCategory, beta: MorId, alpha: MorId) -> Option<MorId> {
    cat.compose(beta, alpha)
}

/// `1 = Σ_x 1_x` as a coefficient vector on `Mor C`.
pub fn algebra_unit<F: Field>(cat: &FiniteCategory) -> Vec<F> {
    (0..cat.morphism_count()).map(|f| if cat.is_identity(f) { F::one() } else { F::zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, F3, Q};

    fn chain(n: usize) -> Arc<FiniteCategory> {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Arc::new(FiniteCategory::poset(names, &rel).unwrap())
    }

    #[test]
    fn representable_and_trivial() {
        let c = chain(3);
        let p0 = FunctorModule::<F2>::representable(c.clone(), 0);
        assert_eq!(p0.dims(), &[1, 1, 1]);
        p0.check().unwrap();
        let p1 = FunctorModule::<F2>::representable(c.clone(), 1);
        assert_eq!(p1.dims(), &[0, 1, 1]);
        let k = FunctorModule::<F2>::trivial(c.clone());
        assert_eq!(k.tensor(&k).unwrap(), k);
        assert_eq!(k.tensor(&p1).unwrap(), p1);
    }

    #[test]
    fn representable_of_group_is_regular() {
        let g = Arc::new(crate::groupact::PermGroup::symmetric(3).unwrap().as_category());
        let p = FunctorModule::<F3>::representable(g, 0);
        assert_eq!(p.dims(), &[6]);
        p.check().unwrap();
    }

    #[test]
    fn bad_module_rejected() {
        let c = chain(2);
        let maps = vec![Matrix::identity(1), Matrix::identity(1), Matrix::zeros(1, 1)];
        let mut maps2 = maps.clone();
        maps2[0] = Matrix::zeros(1, 1);
        assert!(FunctorModule::<Q>::new(c.clone(), vec![1, 1], maps).is_ok());
        assert!(FunctorModule::<Q>::new(c, vec![1, 1], maps2).is_err());
    }

    #[test]
    fn filtration_of_trivial_on_chain() {
        let c = chain(2);
        let k = FunctorModule::<F2>::trivial(c.clone());
        let steps = k.filtration().unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].objects, vec![1]);
        assert_eq!(steps[0].sub.dims(), &[0, 1]);
        assert_eq!(steps[1].sub.dims(), &[1, 0]);
        let total: usize = steps.iter().map(|s| s.sub.total_dim()).sum();
        assert_eq!(total, k.total_dim());
    }

    #[test]
    fn restrict_include() {
        let c = chain(3);
        let e = c.full_subcategory(&[1, 2]);
        let k = FunctorModule::<F2>::trivial(c.clone());
        let ke = k.restrict(&e).unwrap();
        assert_eq!(ke, FunctorModule::trivial(e.cat.clone()));
        let inc = ke.include(&e, c.clone()).unwrap();
        assert_eq!(inc.restrict(&e).unwrap(), ke);
        let rest = c.full_subcategory(&[0]);
        assert!(inc.restrict(&rest).unwrap().is_zero());
        let bad = c.full_subcategory(&[0, 2]);
        let kb = FunctorModule::<F2>::trivial(bad.cat.clone());
        assert!(matches!(kb.include(&bad, c), Err(Error::NotConvex(_))));
    }

    #[test]
    fn kernel_cokernel_image() {
        let c = chain(2);
        let p0 = FunctorModule::<F3>::representable(c.clone(), 0);
        let k = FunctorModule::<F3>::trivial(c.clone());
        let phi = ModuleMap::new(p0.clone(), k.clone(), vec![Matrix::identity(1), Matrix::identity(1)]).unwrap();
        assert!(phi.kernel().src.is_zero());
        assert!(phi.cokernel().tgt.is_zero());
        let p1 = FunctorModule::<F3>::representable(c.clone(), 1);
        let incl = ModuleMap::new(p1.clone(), p0.clone(), vec![Matrix::zeros(1, 0), Matrix::identity(1)]).unwrap();
        let q = incl.cokernel();
        q.tgt.check().unwrap();
        assert_eq!(q.tgt.dims(), &[1, 0]);
        q.check().unwrap();
        let im = incl.image();
        im.check().unwrap();
        assert_eq!(im.src.dims(), &[0, 1]);
    }
}
