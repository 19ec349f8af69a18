use std::sync::Arc;


use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{radical::top_generators, same_category, FunctorModule, ModuleMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::{FiniteCategory, ObjId};
use crate::linalg::Matrix;

/// `Hom_{kC}(M, N)` as a subspace of `⊕_x Hom_k(M(x), N(x))`, flattened
/// object by object in row-major order.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub src: FunctorModule<F>,
    pub tgt: FunctorModule<F>,
    offsets: Vec<usize>,
    /// Basis vectors as columns.
    pub basis: Matrix<F>,
}

impl<F: Field> HomSpace<F> {
    pub fn compute(m: &FunctorModule<F>, n: &FunctorModule<F>) -> Result<Self> {
        if !same_category(m.category(), n.category()) {
            return Err(Error::CategoryMismatch);
        }
        let cat = m.category().clone();
        let mut offsets = Vec::with_capacity(cat.object_count() + 1);
        let mut total = 0;
        for x in 0..cat.object_count() {
            offsets.push(total);
            total += m.dim_at(x) * n.dim_at(x);
        }
        offsets.push(total);
        let mut rows: Vec<Vec<F>> = Vec::new();
        for &f in cat.generating_morphisms() {
            let (x, y) = (cat.src(f), cat.tgt(f));
            let (mx, my, ny) = (m.dim_at(x), m.dim_at(y), n.dim_at(y));
            let nx = n.dim_at(x);
            let (nf, mf) = (n.map(f), m.map(f));
            for i in 0..ny {
                for j in 0..mx {
                    let mut row = vec![F::zero(); total];
                    for k in 0..nx {
                        let c = &nf[(i, k)];
                        if !c.is_zero() {
                            let idx = offsets[x] + k * mx + j;
                            row[idx] = row[idx].clone() + c.clone();
                        }
                    }
                    for k in 0..my {
                        let c = &mf[(k, j)];
                        if !c.is_zero() {
                            let idx = offsets[y] + i * my + k;
                            row[idx] = row[idx].clone() - c.clone();
                        }
                    }
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let basis = if rows.is_empty() {
            Matrix::identity(total)
        } else {
            Matrix::from_rows(rows).kernel()
        };
        Ok(HomSpace { src: m.clone(), tgt: n.clone(), offsets, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn map_from_vector(&self, v: &[F]) -> ModuleMap<F> {
        let components = (0..self.src.dims().len())
            .map(|x| {
                let (r, c) = (self.tgt.dim_at(x), self.src.dim_at(x));
                Matrix::from_vec(r, c, v[self.offsets[x]..self.offsets[x] + r * c].to_vec())
            })
            .collect();
        ModuleMap::new_unchecked(self.src.clone(), self.tgt.clone(), components)
    }

    pub fn vector_of(&self, phi: &ModuleMap<F>) -> Vec<F> {
        phi.components.iter().flat_map(|c| c.data().iter().cloned()).collect()
    }

    /// Map given by coordinates in the basis.
    pub fn map_from_coords(&self, c: &[F]) -> ModuleMap<F> {
        self.map_from_vector(&self.basis.mul_vec(c))
    }

    /// Coordinates of a natural transformation in the basis.
    pub fn coords(&self, phi: &ModuleMap<F>) -> Option<Vec<F>> {
        self.basis.solve_vec(&self.vector_of(phi))
    }

    pub fn basis_maps(&self) -> Vec<ModuleMap<F>> {
        self.basis.columns().iter().map(|v| self.map_from_vector(v)).collect()
    }
}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoVerdict<F: Field> {
    Isomorphic(ModuleMap<F>),
    NotIsomorphic,
    /// No isomorphism was found and none could be ruled out exactly.
    Undecided,
}

impl<F: Field> IsoVerdict<F> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

const ISO_RANDOM_TRIALS: usize = 32;
const ISO_EXHAUSTIVE_LIMIT: u128 = 1_000_000;

/// Decides `M ≅ N` by looking for an invertible element of `Hom(M, N)`:
/// random combinations first, then exhaustive search over small finite
/// fields, then dimension certificates.
pub fn is_isomorphic<F: Field>(m: &FunctorModule<F>, n: &FunctorModule<F>) -> Result<IsoVerdict<F>> {
    if !same_category(m.category(), n.category()) {
        return Err(Error::CategoryMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let h = HomSpace::compute(m, n)?;
    if m.is_zero() {
        return Ok(IsoVerdict::Isomorphic(h.map_from_vector(&[])));
    }
    if h.dim() == 0 {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..ISO_RANDOM_TRIALS {
        let c: Vec<F> = (0..h.dim()).map(|_| F::random(&mut rng)).collect();
        let phi = h.map_from_coords(&c);
        if phi.is_iso() {
            return Ok(IsoVerdict::Isomorphic(phi));
        }
    }
    if let Some(elems) = F::elements() {
        let q = elems.len() as u128;
        if q.checked_pow(h.dim() as u32).is_some_and(|t| t <= ISO_EXHAUSTIVE_LIMIT) {
            let mut idx = vec![0usize; h.dim()];
            loop {
                let c: Vec<F> = idx.iter().map(|&i| elems[i].clone()).collect();
                let phi = h.map_from_coords(&c);
                if phi.is_iso() {
                    return Ok(IsoVerdict::Isomorphic(phi));
                }
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < elems.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    return Ok(IsoVerdict::NotIsomorphic);
                }
            }
        }
    }
    let em = HomSpace::compute(m, m)?.dim();
    let en = HomSpace::compute(n, n)?.dim();
    let back = HomSpace::compute(n, m)?.dim();
    if em != en || h.dim() != em || back != em {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    Ok(IsoVerdict::Undecided)
}

/// A finite direct sum `⊕_i kC·1_{x_i}` of representable projectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjSum {
    pub cat: Arc<FiniteCategory>,
    pub summands: Vec<ObjId>,
}

impl ProjSum {
    pub fn new(cat: Arc<FiniteCategory>, summands: Vec<ObjId>) -> Self {
        ProjSum { cat, summands }
    }

    pub fn module<F: Field>(&self) -> FunctorModule<F> {
        if self.summands.is_empty() {
            return FunctorModule::zero(self.cat.clone());
        }
        let parts: Vec<FunctorModule<F>> =
            self.summands.iter().map(|&x| FunctorModule::representable(self.cat.clone(), x)).collect();
        FunctorModule::direct_sum(&parts.iter().collect::<Vec<_>>()).expect("same category")
    }

    /// Position of `(summand i, morphism h)` in the basis at `tgt(h)`.
    pub fn basis_index(&self, i: usize, h: usize) -> usize {
        let y = self.cat.tgt(h);
        let before: usize = self.summands[..i].iter().map(|&x| self.cat.hom(x, y).len()).sum();
        before + self.cat.hom(self.summands[i], y).iter().position(|&g| g == h).expect("h starts at summand")
    }

    /// The map sending the generator `1_{x_i}` of summand `i` to `images[i]`.
    pub fn map_to<F: Field>(&self, m: &FunctorModule<F>, images: &[Vec<F>]) -> ModuleMap<F> {
        let cat = &self.cat;
        let p = self.module::<F>();
        let components = (0..cat.object_count())
            .map(|y| {
                let mut cols = Vec::new();
                for (i, &x) in self.summands.iter().enumerate() {
                    for &h in cat.hom(x, y) {
                        cols.push(m.map(h).mul_vec(&images[i]));
                    }
                }
                Matrix::from_columns(m.dim_at(y), &cols)
            })
            .collect();
        ModuleMap::new_unchecked(p, m.clone(), components)
    }

    /// Generator `1_{x_i}` of summand `i` as a vector of the sum at `x_i`.
    pub fn generator<F: Field>(&self, i: usize) -> Vec<F> {
        let x = self.summands[i];
        let dim: usize = self.summands.iter().map(|&s| self.cat.hom(s, x).len()).sum();
        let mut v = vec![F::zero(); dim];
        v[self.basis_index(i, self.cat.identity(x))] = F::one();
        v
    }
}

/// Surjection onto `M` from a sum of representables, one per top generator.
pub fn projective_cover<F: Field>(m: &FunctorModule<F>) -> Result<(ProjSum, ModuleMap<F>)> {
    let gens = top_generators(m)?;
    let p = ProjSum::new(m.category().clone(), gens.iter().map(|(x, _)| *x).collect());
    let images: Vec<Vec<F>> = gens.into_iter().map(|(_, v)| v).collect();
    let pi = p.map_to(m, &images);
    Ok((p, pi))
}

/// Whether `M` is projective: the cover `π: P → M` admits a section.
pub fn is_projective<F: Field>(m: &FunctorModule<F>) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    let (_, pi) = projective_cover(m)?;
    let h = HomSpace::compute(m, &pi.src)?;
    let end_layout = HomSpace { src: m.clone(), tgt: m.clone(), offsets: endo_offsets(m), basis: Matrix::zeros(0, 0) };
    let cols: Vec<Vec<F>> = h
        .basis_maps()
        .iter()
        .map(|s| end_layout.vector_of(&pi.compose(s).expect("composable")))
        .collect();
    let target = end_layout.vector_of(&ModuleMap::identity(m.clone()));
    if cols.is_empty() {
        return Ok(false);
    }
    let a = Matrix::from_columns(target.len(), &cols);
    Ok(a.solve_vec(&target).is_some())
}

fn endo_offsets<F: Field>(m: &FunctorModule<F>) -> Vec<usize> {
    let mut offsets = vec![0];
    for &d in m.dims() {
        offsets.push(offsets.last().unwrap() + d * d);
    }
    offsets
}

/// The internal hom `Hom(M, N)(x) = Hom_{kC}(kC·1_x ⊗̂ M, N)`, covariant
/// in `x` through precomposition with `kC·1_y → kC·1_x`, `h ↦ h ∘ f`.
pub fn internal_hom<F: Field>(m: &FunctorModule<F>, n: &FunctorModule<F>) -> Result<FunctorModule<F>> {
    if !same_category(m.category(), n.category()) {
        return Err(Error::CategoryMismatch);
    }
    let cat = m.category().clone();
    let reps: Vec<FunctorModule<F>> =
        (0..cat.object_count()).map(|x| FunctorModule::representable(cat.clone(), x)).collect();
    let spaces: Vec<HomSpace<F>> =
        reps.iter().map(|p| HomSpace::compute(&p.tensor(m)?, n)).collect::<Result<_>>()?;
    let lefts: Vec<Option<Matrix<F>>> = spaces.iter().map(|s| s.basis.left_inverse()).collect();
    let mut maps = Vec::with_capacity(cat.morphism_count());
    for (f, mo) in cat.morphisms().iter().enumerate() {
        let (x, y) = (mo.src, mo.tgt);
        let (hx, hy) = (&spaces[x], &spaces[y]);
        if hx.dim() == 0 || hy.dim() == 0 {
            maps.push(Matrix::zeros(hy.dim(), hx.dim()));
            continue;
        }
        // ρ_f ⊗ id : P_y ⊗ M → P_x ⊗ M
        let rho: Vec<Matrix<F>> = (0..cat.object_count())
            .map(|z| {
                let mut r = Matrix::zeros(cat.hom(x, z).len(), cat.hom(y, z).len());
                for (j, &h) in cat.hom(y, z).iter().enumerate() {
                    let hf = cat.compose(h, f).expect("composable");
                    let i = cat.hom(x, z).iter().position(|&g| g == hf).expect("in hom set");
                    r[(i, j)] = F::one();
                }
                r.kron(&Matrix::identity(m.dim_at(z)))
            })
            .collect();
        let left = lefts[y].as_ref().expect("basis has full column rank");
        let mut cols = Vec::with_capacity(hx.dim());
        for phi in hx.basis_maps() {
            let comps: Vec<Matrix<F>> = phi.components.iter().zip(&rho).map(|(a, r)| a.mul(r)).collect();
            let v: Vec<F> = comps.iter().flat_map(|c| c.data().iter().cloned()).collect();
            cols.push(left.mul_vec(&v));
        }
        maps.push(Matrix::from_columns(hy.dim(), &cols));
    }
    let dims = spaces.iter().map(|s| s.dim()).collect();
    FunctorModule::new(cat, dims, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catmod::trivial_simple;
    use crate::{F2, F3, Q};

    fn crown() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::poset(["w", "x", "y", "z"], &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap())
    }

    #[test]
    fn rigidity_failure_on_crown() {
        let c = crown();
        let sy = trivial_simple::<Q>(c.clone(), &[2]);
        let sz = trivial_simple::<Q>(c.clone(), &[3]);
        let sw = trivial_simple::<Q>(c.clone(), &[0]);
        let m = FunctorModule::direct_sum(&[&sy, &sz]).unwrap();
        assert!(internal_hom(&m, &sw).unwrap().is_zero());
        let dual = internal_hom(&m, &FunctorModule::trivial(c.clone())).unwrap();
        assert_eq!(dual.tensor(&sw).unwrap().dim_at(0), 2);
    }

    #[test]
    fn internal_hom_of_trivial_counts_components() {
        let c = crown();
        let k = FunctorModule::<F2>::trivial(c.clone());
        let h = internal_hom(&k, &k).unwrap();
        // P_{≥w} = {w, y, z} is connected, P_{≥y} = {y}
        assert_eq!(h.dims(), &[1, 1, 1, 1]);
        let disc = Arc::new(FiniteCategory::poset(["a", "b", "c"], &[(0, 1), (0, 2)]).unwrap());
        let k = FunctorModule::<F2>::trivial(disc.clone());
        assert_eq!(internal_hom(&k, &k).unwrap().dims(), &[1, 1, 1]);
    }

    #[test]
    fn hom_between_representables() {
        let c = crown();
        let pw = FunctorModule::<F3>::representable(c.clone(), 0);
        let py = FunctorModule::<F3>::representable(c.clone(), 2);
        // Hom(P_y, P_w) ≅ P_w(y)
        assert_eq!(HomSpace::compute(&py, &pw).unwrap().dim(), 1);
        assert_eq!(HomSpace::compute(&pw, &py).unwrap().dim(), 0);
    }

    #[test]
    fn projectivity() {
        let c = crown();
        for x in 0..4 {
            assert!(is_projective(&FunctorModule::<F2>::representable(c.clone(), x)).unwrap());
        }
        assert!(!is_projective(&FunctorModule::<F2>::trivial(c.clone())).unwrap());
        let g = Arc::new(crate::groupact::PermGroup::cyclic(2).as_category());
        assert!(!is_projective(&FunctorModule::<F2>::trivial(g.clone())).unwrap());
        assert!(is_projective(&FunctorModule::<F3>::trivial(g)).unwrap());
    }

    #[test]
    fn iso_verdicts() {
        let c = crown();
        let k = FunctorModule::<F2>::trivial(c.clone());
        let kk = FunctorModule::direct_sum(&[&k, &k]).unwrap();
        assert!(is_isomorphic(&k.tensor(&kk).unwrap(), &kk).unwrap().is_isomorphic());
        let sy = trivial_simple::<F2>(c.clone(), &[2]);
        let sz = trivial_simple::<F2>(c.clone(), &[3]);
        assert!(matches!(is_isomorphic(&sy, &sz).unwrap(), IsoVerdict::NotIsomorphic));
        let a = FunctorModule::direct_sum(&[&sy, &sz]).unwrap();
        let b = FunctorModule::direct_sum(&[&sz, &sy]).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap().is_isomorphic());
    }
}
