//! Projective resolutions by iterated covers.

use std::sync::Arc;

use super::{is_projective, projective_cover, radical_submodule, FunctorModule, ModuleMap, ProjSum};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fincat::FiniteCategory;
use crate::linalg::Matrix;

/// Largest total dimension a single resolution term may have.
pub const TERM_DIM_LIMIT: usize = 4096;

/// `… → P_1 → P_0 → M → 0`.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub target: FunctorModule<F>,
    pub terms: Vec<ProjSum>,
    pub modules: Vec<FunctorModule<F>>,
    /// `P_0 → M`.
    pub augmentation: ModuleMap<F>,
    /// `diffs[n - 1] = d_n: P_n → P_{n-1}`.
    pub diffs: Vec<ModuleMap<F>>,
    /// `syzygies[n]` is the inclusion `Ω^{n+1} M → P_n`.
    pub syzygies: Vec<ModuleMap<F>>,
}

impl<F: Field> Resolution<F> {
    /// Resolves `m` through `P_len`, stopping early once a syzygy vanishes.
    pub fn compute(m: &FunctorModule<F>, len: usize) -> Result<Self> {
        let (p0, eps) = projective_cover(m)?;
        let mut res = Resolution {
            target: m.clone(),
            modules: vec![eps.src.clone()],
            terms: vec![p0],
            syzygies: vec![eps.kernel()],
            augmentation: eps,
            diffs: Vec::new(),
        };
        for _ in 0..len {
            let k = res.syzygies.last().unwrap().clone();
            if k.src.is_zero() {
                break;
            }
            let (p, cover) = projective_cover(&k.src)?;
            let total = p.module::<F>().total_dim();
            if total > TERM_DIM_LIMIT {
                return Err(Error::CutoffTooLarge(format!(
                    "resolution term {} has dimension {total} > {TERM_DIM_LIMIT}",
                    res.terms.len()
                )));
            }
            let d = k.compose(&cover)?;
            res.syzygies.push(cover.kernel());
            res.modules.push(cover.src.clone());
            res.terms.push(p);
            res.diffs.push(d);
        }
        Ok(res)
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        self.target.category()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the last computed syzygy is zero.
    pub fn is_finite(&self) -> bool {
        self.syzygies.last().is_some_and(|k| k.src.is_zero())
    }

    /// `d_n` for `n ≥ 1`, or the augmentation for `n = 0`.
    pub fn differential(&self, n: usize) -> &ModuleMap<F> {
        if n == 0 {
            &self.augmentation
        } else {
            &self.diffs[n - 1]
        }
    }

    /// Every `d_n` with `n ≥ 1` lands in `rad P_{n-1}`.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| {
            let rad = radical_submodule(&d.tgt);
            d.components.iter().zip(&rad).all(|(c, r)| {
                if c.cols() == 0 || c.rows() == 0 {
                    return true;
                }
                r.hstack(c).rank() == r.rank()
            })
        })
    }

    /// `Hom(P_•, N)` as matrices `δ^n: Hom(P_n, N) → Hom(P_{n+1}, N)` using
    /// `Hom(kC·1_x, N) ≅ N(x)`; returns `(dims, δ)`.
    pub fn hom_complex(&self, n_mod: &FunctorModule<F>) -> (Vec<usize>, Vec<Matrix<F>>) {
        let dims: Vec<usize> = self.terms.iter().map(|p| p.summands.iter().map(|&x| n_mod.dim_at(x)).sum()).collect();
        let deltas = (0..self.diffs.len()).map(|n| pullback(&self.terms[n], &self.terms[n + 1], &self.diffs[n], n_mod)).collect();
        (dims, deltas)
    }

    /// Lifts `φ: P_n → N` given on generators, where `N = M`, to a chain map
    /// `P_{n+•} → P_•` over the identity of `M`; returns its components in
    /// degrees `0..=upto`.
    pub fn lift_cocycle(&self, n: usize, values: &[F], upto: usize) -> Result<Vec<ModuleMap<F>>> {
        let src = &self.terms[n];
        let images = split_values(src, &self.target, values);
        let phi = src.map_to(&self.target, &images);
        let mut out: Vec<ModuleMap<F>> = Vec::new();
        let first = lift_along(src, &phi, &self.augmentation)?;
        out.push(first);
        for m in 1..=upto {
            if n + m >= self.len() || m >= self.len() {
                break;
            }
            let prev = out.last().unwrap();
            let target = prev.compose(&self.diffs[n + m - 1])?;
            out.push(lift_along(&self.terms[n + m], &target, &self.diffs[m - 1])?);
        }
        Ok(out)
    }
}

/// Splits a vector of `⊕_i N(x_i)` into its summand pieces.
pub(crate) fn split_values<F: Field>(p: &ProjSum, n: &FunctorModule<F>, values: &[F]) -> Vec<Vec<F>> {
    let mut out = Vec::with_capacity(p.summands.len());
    let mut at = 0;
    for &x in &p.summands {
        out.push(values[at..at + n.dim_at(x)].to_vec());
        at += n.dim_at(x);
    }
    out
}

/// Matrix of `φ ↦ φ ∘ d` for `d: Q → P`, in generator coordinates.
fn pullback<F: Field>(p: &ProjSum, q: &ProjSum, d: &ModuleMap<F>, n: &FunctorModule<F>) -> Matrix<F> {
    let cat = &p.cat;
    let rows: usize = q.summands.iter().map(|&y| n.dim_at(y)).sum();
    let cols: usize = p.summands.iter().map(|&x| n.dim_at(x)).sum();
    let mut m = Matrix::zeros(rows, cols);
    let mut r0 = 0;
    for (j, &y) in q.summands.iter().enumerate() {
        let image = d.components[y].mul_vec(&q.generator::<F>(j));
        let mut c0 = 0;
        for (i, &x) in p.summands.iter().enumerate() {
            let mut block = Matrix::zeros(n.dim_at(y), n.dim_at(x));
            for &h in cat.hom(x, y) {
                let c = &image[p.basis_index(i, h)];
                if !c.is_zero() {
                    block = block.add(&n.map(h).scale(c));
                }
            }
            m.set_block(r0, c0, &block);
            c0 += n.dim_at(x);
        }
        r0 += n.dim_at(y);
    }
    m
}

/// A map `ψ: P → Q` with `s ∘ ψ = target`, for `s: Q → N` whose image
/// contains that of `target`.
pub(crate) fn lift_along<F: Field>(p: &ProjSum, target: &ModuleMap<F>, s: &ModuleMap<F>) -> Result<ModuleMap<F>> {
    let mut images = Vec::with_capacity(p.summands.len());
    for (i, &x) in p.summands.iter().enumerate() {
        let want = target.components[x].mul_vec(&p.generator::<F>(i));
        let v = if want.iter().all(|e| e.is_zero()) {
            Some(vec![F::zero(); s.src.dim_at(x)])
        } else {
            s.components[x].solve_vec(&want)
        };
        images.push(v.ok_or_else(|| Error::Internal("lift through a non-surjection".into()))?);
    }
    Ok(p.map_to(&s.src, &images))
}

/// Projective dimension read off syzygies: the least `n ≤ cutoff` with
/// `Ω^n M` projective, or `None` beyond the cutoff.
pub fn projective_dimension<F: Field>(m: &FunctorModule<F>, cutoff: usize) -> Result<Option<usize>> {
    let mut current = m.clone();
    for n in 0..=cutoff {
        if is_projective(&current)? {
            return Ok(Some(n));
        }
        let (_, cover) = projective_cover(&current)?;
        current = cover.kernel().src;
        if current.total_dim() > TERM_DIM_LIMIT {
            return Err(Error::CutoffTooLarge(format!("syzygy {} has dimension {} > {TERM_DIM_LIMIT}", n + 1, current.total_dim())));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, F3};

    fn cyclic(n: usize) -> Arc<FiniteCategory> {
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let mult: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Arc::new(FiniteCategory::from_group_table(names, &mult).unwrap())
    }

    #[test]
    fn trivial_module_over_cyclic_group() {
        let c = cyclic(2);
        let k = FunctorModule::<F2>::trivial(c.clone());
        let r = Resolution::compute(&k, 4).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r.terms.iter().all(|p| p.summands.len() == 1));
        assert!(r.is_minimal());
        let (dims, deltas) = r.hom_complex(&k);
        assert_eq!(dims, vec![1; 5]);
        assert!(deltas.iter().all(|d| d.is_zero()));
        assert_eq!(projective_dimension(&k, 3).unwrap(), None);
        let k3 = FunctorModule::<F3>::trivial(c);
        assert_eq!(projective_dimension(&k3, 3).unwrap(), Some(0));
    }

    #[test]
    fn chain_resolution_is_finite() {
        let c = Arc::new(FiniteCategory::poset(["x", "y", "z"], &[(0, 1), (1, 2)]).unwrap());
        let s = crate::catmod::trivial_simple::<F2>(c.clone(), &[1]);
        let r = Resolution::compute(&s, 5).unwrap();
        assert!(r.is_finite());
        assert_eq!(r.len(), 2);
        assert_eq!(projective_dimension(&s, 5).unwrap(), Some(1));
        let lifted = r.lift_cocycle(0, &[F2::new(1)], 1).unwrap();
        assert_eq!(r.augmentation.compose(&lifted[0]).unwrap(), r.augmentation);
    }
}
