//! Jacobson radicals of category algebras and module tops.
//!
//! For an EI category the radical of `kC` is spanned by the non-invertible
//! morphisms together with the radicals of the automorphism group algebras.
//! Group algebra radicals in characteristic `p` come from the iterated
//! generalized trace forms of Rónyai and Cohen–Ivanyos–Wales on the regular
//! representation; in characteristic `0` or coprime to the group order the
//! group algebra is semisimple.


use super::FunctorModule;
use crate::error::Result;
use crate::field::Field;
use crate::fincat::{FiniteCategory, MorId, ObjId};
use crate::linalg::{EchelonSpan, Matrix};

/// Basis (as columns, in coordinates of `0..order`) of the radical of the
/// group algebra of a group with multiplication `mul`.
pub fn group_algebra_radical<F: Field>(order: usize, mul: impl Fn(usize, usize) -> usize) -> Matrix<F> {
    let p = F::CHARACTERISTIC;
    if p == 0 || order as u64 % p != 0 {
        return Matrix::zeros(order, 0);
    }
    let n = order;
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    let product = |a: &[F], b: &[F]| {
        let mut c = vec![F::zero(); n];
        for (g, ag) in a.iter().enumerate() {
            if ag.is_zero() {
                continue;
            }
            for (h, bh) in b.iter().enumerate() {
                if !bh.is_zero() {
                    let k = table[g][h];
                    c[k] = c[k].clone() + ag.clone() * bh.clone();
                }
            }
        }
        c
    };
    let mut l = 0;
    let mut pl = p;
    while pl <= n as u64 {
        l += 1;
        pl *= p;
    }
    // l = floor(log_p n)
    let mut basis: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut v = vec![F::zero(); n];
            v[i] = F::one();
            v
        })
        .collect();
    for i in 0..=l {
        if basis.is_empty() {
            break;
        }
        let elems: Vec<Vec<F>> = (0..n)
            .map(|b| {
                let mut v = vec![F::zero(); n];
                v[b] = F::one();
                v
            })
            .collect();
        let rows: Vec<Vec<F>> = elems
            .iter()
            .map(|b| basis.iter().map(|a| generalized_trace::<F>(&table, &product(a, b), i)).collect())
            .collect();
        let kernel = Matrix::from_rows(rows).kernel();
        basis = kernel
            .columns()
            .iter()
            .map(|c| {
                let mut v = vec![F::zero(); n];
                for (cj, a) in c.iter().zip(&basis) {
                    if !cj.is_zero() {
                        for (vk, ak) in v.iter_mut().zip(a) {
                            *vk = vk.clone() + cj.clone() * ak.clone();
                        }
                    }
                }
                v
            })
            .collect();
    }
    Matrix::from_columns(n, &basis)
}

/// `Tr(Ã^{p^i}) / p^i mod p` for the integer lift `Ã` of left
/// multiplication by `a` on the regular representation.
fn generalized_trace<F: Field>(table: &[Vec<usize>], a: &[F], i: usize) -> F {
    let p = F::CHARACTERISTIC as u128;
    let n = table.len();
    let modulus = p.pow(i as u32 + 1);
    let mut lift = vec![vec![0u128; n]; n];
    for (g, ag) in a.iter().enumerate() {
        let v = ag.residue().expect("prime field") as u128;
        if v == 0 {
            continue;
        }
        for h in 0..n {
            // g·h = table[g][h]: column h, row table[g][h]
            let k = table[g][h];
            lift[k][h] = (lift[k][h] + v) % modulus;
        }
    }
    let mut power = lift.clone();
    for _ in 0..i {
        // raise to the p-th power
        let base = power.clone();
        for _ in 1..p {
            power = mat_mul_mod(&power, &base, modulus);
        }
    }
    let trace = (0..n).fold(0u128, |t, k| (t + power[k][k]) % modulus);
    let q = p.pow(i as u32);
    debug_assert_eq!(trace % q, 0);
    F::from_i64(((trace / q) % p) as i64)
}

fn mat_mul_mod(a: &[Vec<u128>], b: &[Vec<u128>], m: u128) -> Vec<Vec<u128>> {
    let n = a.len();
    let mut c = vec![vec![0u128; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                c[i][j] = (c[i][j] + aik * b[k][j]) % m;
            }
        }
    }
    c
}

/// Radical of `k Aut_C(x)` in coordinates of `cat.hom(x, x)`.
pub(crate) fn automorphism_radical<F: Field>(cat: &FiniteCategory, x: ObjId) -> Matrix<F> {
    let aut = cat.hom(x, x);
    group_algebra_radical(aut.len(), |a, b| {
        let c = cat.compose(aut[a], aut[b]).expect("endomorphisms compose");
        aut.iter().position(|&g| g == c).expect("closed")
    })
}

/// `rad(M) = rad(kC)·M`, as a basis per object.
pub fn radical_submodule<F: Field>(m: &FunctorModule<F>) -> Vec<Matrix<F>> {
    let cat = m.category();
    let mut spans: Vec<EchelonSpan<F>> = m.dims().iter().map(|&d| EchelonSpan::new(d)).collect();
    for (f, mo) in cat.morphisms().iter().enumerate() {
        if m.dim_at(mo.src) == 0 || m.dim_at(mo.tgt) == 0 || cat.is_iso(f) {
            continue;
        }
        for col in m.map(f).columns() {
            spans[mo.tgt].insert(&col);
        }
    }
    for y in 0..cat.object_count() {
        if m.dim_at(y) == 0 {
            continue;
        }
        let aut = cat.hom(y, y);
        let rad = automorphism_radical::<F>(cat, y);
        for r in rad.columns() {
            let mut act = Matrix::zeros(m.dim_at(y), m.dim_at(y));
            for (c, &g) in r.iter().zip(aut) {
                if !c.is_zero() {
                    act = act.add(&m.map(g).scale(c));
                }
            }
            for col in act.columns() {
                spans[y].insert(&col);
            }
        }
    }
    spans.iter().map(|s| s.basis()).collect()
}

/// Lifts of a basis of `M / rad M` at iso-class representatives; these
/// generate `M`, minimally when every `Aut_C(x)` algebra is local.
pub fn top_generators<F: Field>(m: &FunctorModule<F>) -> Result<Vec<(ObjId, Vec<F>)>> {
    let cls = m.category().classify()?;
    let rad = radical_submodule(m);
    let mut gens = Vec::new();
    for &y in &cls.representatives {
        let d = m.dim_at(y);
        if d == 0 {
            continue;
        }
        let mut span = EchelonSpan::new(d);
        for col in rad[y].columns() {
            span.insert(&col);
        }
        for i in 0..d {
            let mut e = vec![F::zero(); d];
            e[i] = F::one();
            if span.insert(&e) {
                gens.push((y, e));
            }
        }
    }
    Ok(gens)
}

/// Dimension of the Jacobson radical of `kC` for an EI category.
pub fn radical_dimension<F: Field>(cat: &FiniteCategory) -> Result<usize> {
    let cls = cat.classify()?;
    let non_iso = (0..cat.morphism_count()).filter(|&f| !cat.is_iso(f)).count();
    let groups: usize = cls
        .classes
        .iter()
        .zip(&cls.representatives)
        .map(|(c, &r)| c.len() * c.len() * automorphism_radical::<F>(cat, r).cols())
        .sum();
    Ok(non_iso + groups)
}

/// The category algebra `kC` with basis `Mor C`.
#[derive(Clone, Debug)]
pub struct CategoryAlgebra<'a> {
    pub cat: &'a FiniteCategory,
}

impl<'a> CategoryAlgebra<'a> {
    pub fn new(cat: &'a FiniteCategory) -> Self {
        CategoryAlgebra { cat }
    }

    pub fn dimension(&self) -> usize {
        self.cat.morphism_count()
    }

    /// `β · α`, `None` standing for `0`.
    pub fn product(&self, beta: MorId, alpha: MorId) -> Option<MorId> {
        self.cat.compose(beta, alpha)
    }

    pub fn mul<F: Field>(&self, b: &[F], a: &[F]) -> Vec<F> {
        let mut c = vec![F::zero(); self.dimension()];
        for (f, g, h) in self.cat.composable_pairs() {
            if !b[f].is_zero() && !a[g].is_zero() {
                c[h] = c[h].clone() + b[f].clone() * a[g].clone();
            }
        }
        c
    }

    /// Associativity of the structure constants on all basis triples.
    pub fn is_associative(&self) -> bool {
        let n = self.dimension();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let left = self.product(a, b).and_then(|ab| self.product(ab, c));
                    let right = self.product(b, c).and_then(|bc| self.product(a, bc));
                    left == right
                })
            })
        })
    }

    /// `Σ_x 1_x` is a two-sided unit on every basis element.
    pub fn unit_is_neutral(&self) -> bool {
        (0..self.dimension()).all(|f| {
            let left: Vec<_> = (0..self.cat.object_count()).filter_map(|x| self.product(x, f)).collect();
            let right: Vec<_> = (0..self.cat.object_count()).filter_map(|x| self.product(f, x)).collect();
            left == vec![f] && right == vec![f]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::groupact::PermGroup;
    use crate::{F2, F3, Q};

    fn rad_dim<F: Field>(g: &PermGroup) -> usize {
        group_algebra_radical::<F>(g.order(), |a, b| g.mul(a, b)).cols()
    }

    #[test]
    fn group_radicals() {
        let z2 = PermGroup::cyclic(2);
        let z3 = PermGroup::cyclic(3);
        let s3 = PermGroup::symmetric(3).unwrap();
        let k4 = z2.product(&z2).unwrap();
        assert_eq!(rad_dim::<F2>(&z2), 1);
        assert_eq!(rad_dim::<F2>(&s3), 1);
        assert_eq!(rad_dim::<F3>(&s3), 4);
        assert_eq!(rad_dim::<F2>(&k4), 3);
        assert_eq!(rad_dim::<F2>(&z3), 0);
        assert_eq!(rad_dim::<Q>(&s3), 0);
        let z4 = PermGroup::cyclic(4);
        assert_eq!(rad_dim::<F2>(&z4), 3);
        let s4 = PermGroup::symmetric(4).unwrap();
        // F2[S4] has two simples of dimensions 1 and 2
        assert_eq!(rad_dim::<F2>(&s4), 24 - 1 - 4);
    }

    #[test]
    fn radical_is_nilpotent_ideal() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let r = group_algebra_radical::<F3>(6, |a, b| s3.mul(a, b));
        let c = s3.as_category();
        let alg = CategoryAlgebra::new(&c);
        let cols = r.columns();
        let mut span = EchelonSpan::new(6);
        for v in &cols {
            span.insert(v);
        }
        for v in &cols {
            for g in 0..6 {
                let mut e = vec![F3::zero(); 6];
                e[g] = F3::new(1);
                assert!(span.contains(&alg.mul(&e, v)));
                assert!(span.contains(&alg.mul(v, &e)));
            }
        }
        // rad^3 = 0 for F3[S3]
        for a in &cols {
            for b in &cols {
                for d in &cols {
                    assert!(alg.mul(&alg.mul(a, b), d).iter().all(|x| x.is_zero()));
                }
            }
        }
    }

    #[test]
    fn category_radicals() {
        let chain = FiniteCategory::poset(["x", "y"], &[(0, 1)]).unwrap();
        assert_eq!(radical_dimension::<F2>(&chain).unwrap(), 1);
        let alg = CategoryAlgebra::new(&chain);
        assert_eq!(alg.dimension(), 3);
        assert!(alg.is_associative());
        assert!(alg.unit_is_neutral());
    }

    #[test]
    fn tops() {
        let chain = std::sync::Arc::new(FiniteCategory::poset(["x", "y"], &[(0, 1)]).unwrap());
        let k = FunctorModule::<F2>::trivial(chain.clone());
        let gens = top_generators(&k).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].0, 0);
        let g = std::sync::Arc::new(PermGroup::cyclic(2).as_category());
        let p = FunctorModule::<F2>::representable(g, 0);
        assert_eq!(top_generators(&p).unwrap().len(), 1);
    }
}
