//! Cohomology rings: simplicial cohomology of order complexes and
//! `Ext*_{kC}(k̲, k̲)` from projective resolutions.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::catmod::{FunctorModule, ProjSum, Resolution};
use crate::error::{Error, Result};
use crate::field::{literal, Field};
use crate::fincat::{FiniteCategory, ObjId};
use crate::linalg::{Matrix, Subquotient};

pub const DEFAULT_CUTOFF: usize = 6;
/// Largest cutoff accepted by either engine.
pub const MAX_CUTOFF: usize = 32;

/// Chains `x_0 < … < x_n` of a poset, graded by `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderComplex {
    pub vertices: Vec<ObjId>,
    pub simplices: Vec<Vec<Vec<ObjId>>>,
    index: Vec<HashMap<Vec<ObjId>, usize>>,
}

impl OrderComplex {
    pub fn new(cat: &FiniteCategory) -> Result<Self> {
        let all: Vec<ObjId> = (0..cat.object_count()).collect();
        Self::on(cat, &all)
    }

    /// The order complex of the full subposet on `objs`.
    pub fn on(cat: &FiniteCategory, objs: &[ObjId]) -> Result<Self> {
        if !cat.is_poset() {
            return Err(Error::NotAPoset("the order complex needs a poset".into()));
        }
        let mut vertices = objs.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let mut simplices: Vec<Vec<Vec<ObjId>>> = Vec::new();
        let mut layer: Vec<Vec<ObjId>> = vertices.iter().map(|&v| vec![v]).collect();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for s in &layer {
                let last = *s.last().unwrap();
                for &y in &vertices {
                    if y != last && cat.reaches(last, y) {
                        let mut t = s.clone();
                        t.push(y);
                        next.push(t);
                    }
                }
            }
            simplices.push(std::mem::replace(&mut layer, next));
        }
        let index = simplices.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        Ok(OrderComplex { vertices, simplices, index })
    }

    pub fn count(&self, n: usize) -> usize {
        self.simplices.get(n).map_or(0, |l| l.len())
    }

    pub fn position(&self, simplex: &[ObjId]) -> Option<usize> {
        self.index.get(simplex.len().checked_sub(1)?)?.get(simplex).copied()
    }

    pub fn is_face_closed(&self) -> bool {
        self.simplices.iter().skip(1).flatten().all(|s| {
            (0..s.len()).all(|i| {
                let mut f = s.clone();
                f.remove(i);
                self.position(&f).is_some()
            })
        })
    }

    /// `δ^n: C^n → C^{n+1}`, `(δφ)(σ) = Σ_i (−1)^i φ(d_i σ)`.
    pub fn coboundary<F: Field>(&self, n: usize) -> Matrix<F> {
        let rows = self.count(n + 1);
        let cols = self.count(n);
        if rows == 0 || cols == 0 {
            return Matrix::zeros(rows, cols);
        }
        let mut data = vec![F::zero(); rows * cols];
        for (r, s) in self.simplices[n + 1].iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let c = self.position(&f).expect("faces are chains");
                let sign = if i % 2 == 0 { F::one() } else { -F::one() };
                data[r * cols + c] = data[r * cols + c].clone() + sign;
            }
        }
        Matrix::from_vec(rows, cols, data)
    }
}

/// A basis product `e^{left} · e^{right}` in coordinates of the target degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductEntry {
    /// `(degree, basis index)`.
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub result: Vec<String>,
}

/// Graded dimensions and basis products of a truncated cohomology ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedRingDescription {
    pub engine: String,
    pub field: String,
    pub cutoff: usize,
    pub dims: Vec<usize>,
    pub products: Vec<ProductEntry>,
    /// `ab = (−1)^{|a||b|} ba` on every stored pair.
    pub graded_commutative: bool,
    /// Coordinates of the unit in `H^0`.
    pub unit: Vec<String>,
    /// Whether the resolution differentials land in the radical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal: Option<bool>,
    /// Objects whose subposet this ring belongs to.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub section_over: Option<Vec<String>>,
}

impl GradedRingDescription {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `H^0` is spanned by the unit.
    pub fn unit_spans_degree_zero(&self) -> bool {
        self.dims.first() == Some(&1) && self.unit.iter().any(|c| c != "0")
    }
}

fn check_cutoff(cutoff: usize) -> Result<()> {
    if cutoff > MAX_CUTOFF {
        return Err(Error::CutoffTooLarge(format!("cutoff {cutoff} > {MAX_CUTOFF}")));
    }
    Ok(())
}

/// Cohomology of a cochain complex given by its coboundaries, one quotient
/// per degree `0..=cutoff`.
fn cohomology_of<F: Field>(dims: &[usize], deltas: &[Matrix<F>], cutoff: usize) -> Vec<Subquotient<F>> {
    let dim = |n: usize| dims.get(n).copied().unwrap_or(0);
    let delta = |n: usize| deltas.get(n).cloned().unwrap_or_else(|| Matrix::zeros(dim(n + 1), dim(n)));
    (0..=cutoff)
        .map(|n| {
            let z = delta(n).kernel();
            let b = if n == 0 { Matrix::zeros(dim(0), 0) } else { delta(n - 1) };
            Subquotient::new(dim(n), &z, &b)
        })
        .collect()
}

fn assemble<F: Field>(
    engine: &str,
    cutoff: usize,
    quotients: &[Subquotient<F>],
    unit: Vec<F>,
    mut product: impl FnMut(usize, &[F], usize, &[F]) -> Result<Vec<F>>,
    with_products: bool,
) -> Result<GradedRingDescription> {
    let dims: Vec<usize> = quotients.iter().map(|q| q.dim()).collect();
    let mut table: HashMap<((usize, usize), (usize, usize)), Vec<F>> = HashMap::new();
    if with_products {
        for i in 0..=cutoff {
            for j in 0..=cutoff - i {
                for a in 0..dims[i] {
                    for b in 0..dims[j] {
                        let ra = quotients[i].reps.column(a);
                        let rb = quotients[j].reps.column(b);
                        let cochain = product(i, &ra, j, &rb)?;
                        table.insert(((i, a), (j, b)), quotients[i + j].coords(&cochain));
                    }
                }
            }
        }
    }
    let graded_commutative = table.iter().all(|(&((i, a), (j, b)), v)| {
        let w = &table[&((j, b), (i, a))];
        let sign = if (i * j) % 2 == 0 { F::one() } else { -F::one() };
        v.iter().zip(w).all(|(x, y)| *x == y.clone() * sign.clone())
    });
    let mut products: Vec<ProductEntry> = table
        .into_iter()
        .map(|(k, v)| ProductEntry { left: k.0, right: k.1, result: v.iter().map(literal).collect() })
        .collect();
    products.sort_by_key(|p| (p.left.0 + p.right.0, p.left, p.right));
    let unit = if dims[0] > 0 { quotients[0].coords(&unit) } else { Vec::new() };
    Ok(GradedRingDescription {
        engine: engine.to_string(),
        field: F::spec().to_string(),
        cutoff,
        dims,
        products,
        graded_commutative,
        unit: unit.iter().map(literal).collect(),
        minimal: None,
        section_over: None,
    })
}

/// `H^*(Δ(P); k)` up to `cutoff` with cup products.
pub fn simplicial_cohomology<F: Field>(cat: &FiniteCategory, cutoff: usize) -> Result<GradedRingDescription> {
    let oc = OrderComplex::new(cat)?;
    simplicial_ring::<F>(&oc, cutoff, true)
}

fn simplicial_ring<F: Field>(oc: &OrderComplex, cutoff: usize, with_products: bool) -> Result<GradedRingDescription> {
    check_cutoff(cutoff)?;
    let dims: Vec<usize> = (0..=cutoff + 1).map(|n| oc.count(n)).collect();
    let deltas: Vec<Matrix<F>> = (0..=cutoff).map(|n| oc.coboundary(n)).collect();
    let quotients = cohomology_of(&dims, &deltas, cutoff);
    let cup = |i: usize, a: &[F], j: usize, b: &[F]| -> Result<Vec<F>> {
        let n = i + j;
        let mut out = vec![F::zero(); oc.count(n)];
        if let Some(layer) = oc.simplices.get(n) {
            for (k, s) in layer.iter().enumerate() {
                let front = oc.position(&s[..=i]).expect("front face");
                let back = oc.position(&s[i..]).expect("back face");
                out[k] = a[front].clone() * b[back].clone();
            }
        }
        Ok(out)
    };
    assemble("simplicial", cutoff, &quotients, vec![F::one(); oc.count(0)], cup, with_products)
}

/// `H^*(P \ Q)`: the ring of sections over the open complement of the
/// primes indexed by `removed`.
pub fn section_ring<F: Field>(cat: &FiniteCategory, removed: &[ObjId], cutoff: usize) -> Result<GradedRingDescription> {
    let keep: Vec<ObjId> = (0..cat.object_count()).filter(|x| !removed.contains(x)).collect();
    let oc = OrderComplex::on(cat, &keep)?;
    let mut ring = simplicial_ring::<F>(&oc, cutoff, true)?;
    ring.section_over = Some(keep.iter().map(|&x| cat.object_name(x).to_string()).collect());
    Ok(ring)
}

/// `Ext^*_{kC}(k̲, k̲)` up to `cutoff`, with Yoneda products when asked.
pub fn ext_ring<F: Field>(cat: &Arc<FiniteCategory>, cutoff: usize, with_products: bool) -> Result<GradedRingDescription> {
    check_cutoff(cutoff)?;
    let k = FunctorModule::<F>::trivial(cat.clone());
    let res = Resolution::compute(&k, cutoff + 1)?;
    let (dims, deltas) = res.hom_complex(&k);
    let quotients = cohomology_of(&dims, &deltas, cutoff);
    let yoneda = |i: usize, a: &[F], j: usize, b: &[F]| -> Result<Vec<F>> {
        if i + j >= res.len() {
            return Ok(Vec::new());
        }
        let lifted = res.lift_cocycle(i, a, j)?;
        let alpha = &lifted[j];
        let src = &res.terms[i + j];
        let tgt = &res.terms[j];
        let mut out = Vec::new();
        for (g, &x) in src.summands.iter().enumerate() {
            let v = alpha.components[x].mul_vec(&src.generator::<F>(g));
            out.extend(evaluate(tgt, &k, b, x, &v));
        }
        Ok(out)
    };
    let unit = vec![F::one(); dims.first().copied().unwrap_or(0)];
    let mut ring = assemble("ext", cutoff, &quotients, unit, yoneda, with_products)?;
    ring.minimal = Some(res.is_minimal());
    Ok(ring)
}

/// `φ(v)` for `φ: P → N` given on generators and `v ∈ P(x)`.
fn evaluate<F: Field>(p: &ProjSum, n: &FunctorModule<F>, values: &[F], x: ObjId, v: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); n.dim_at(x)];
    let mut at = 0;
    for (i, &s) in p.summands.iter().enumerate() {
        let phi = &values[at..at + n.dim_at(s)];
        at += n.dim_at(s);
        for &h in p.cat.hom(s, x) {
            let c = &v[p.basis_index(i, h)];
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(n.map(h).mul_vec(phi)) {
                *o = o.clone() + c.clone() * e;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, F3, Q};

    fn crown() -> FiniteCategory {
        FiniteCategory::poset(["w", "x", "y", "z"], &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    fn cyclic(n: usize) -> Arc<FiniteCategory> {
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let mult: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Arc::new(FiniteCategory::from_group_table(names, &mult).unwrap())
    }

    #[test]
    fn order_complexes() {
        let c = crown();
        let oc = OrderComplex::new(&c).unwrap();
        assert_eq!((oc.count(0), oc.count(1), oc.count(2)), (4, 4, 0));
        assert!(oc.is_face_closed());
        let chain = FiniteCategory::poset(["a", "b", "c"], &[(0, 1), (1, 2)]).unwrap();
        let oc = OrderComplex::new(&chain).unwrap();
        assert_eq!((oc.count(0), oc.count(1), oc.count(2)), (3, 3, 1));
        let d2: Matrix<Q> = oc.coboundary(1);
        assert!(d2.mul(&oc.coboundary::<Q>(0)).is_zero());
    }

    #[test]
    fn crown_is_a_circle() {
        let r = simplicial_cohomology::<F3>(&crown(), 4).unwrap();
        assert_eq!(r.dims, vec![1, 1, 0, 0, 0]);
        assert!(r.graded_commutative);
        assert!(r.unit_spans_degree_zero());
        let e = ext_ring::<F3>(&Arc::new(crown()), 4, true).unwrap();
        assert_eq!(e.dims, r.dims);
        assert!(e.graded_commutative);
    }

    #[test]
    fn cyclic_group_ext() {
        let e = ext_ring::<F2>(&cyclic(2), 6, true).unwrap();
        assert_eq!(e.dims, vec![1; 7]);
        assert_eq!(e.minimal, Some(true));
        assert!(e.graded_commutative);
        // x · x = x² spans degree 2
        let sq = e.products.iter().find(|p| p.left == (1, 0) && p.right == (1, 0)).unwrap();
        assert_eq!(sq.result, vec!["1"]);
        let odd = ext_ring::<F2>(&cyclic(3), 4, false).unwrap();
        assert_eq!(odd.dims, vec![1, 0, 0, 0, 0]);
        let z3 = ext_ring::<F3>(&cyclic(3), 4, true).unwrap();
        assert_eq!(z3.dims, vec![1; 5]);
        assert!(z3.graded_commutative);
    }

    #[test]
    fn sections() {
        let c = crown();
        let glob = section_ring::<F2>(&c, &[], 3).unwrap();
        assert_eq!(glob.dims, vec![1, 1, 0, 0]);
        let stalk = section_ring::<F2>(&c, &[0, 1, 3], 3).unwrap();
        assert_eq!(stalk.dims, vec![1, 0, 0, 0]);
        let minus_y = section_ring::<F2>(&c, &[2], 3).unwrap();
        assert_eq!(minus_y.dims, vec![1, 0, 0, 0]);
        assert_eq!(minus_y.section_over.as_deref(), Some(&["w".to_string(), "x".into(), "z".into()][..]));
        assert!(matches!(ext_ring::<F2>(&cyclic(2), 40, false), Err(Error::CutoffTooLarge(_))));
    }
}
