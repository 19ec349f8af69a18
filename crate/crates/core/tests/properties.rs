use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;
use ttgeo_core::catmod::{is_isomorphic, FunctorModule, IsoVerdict, ModuleMap};
use ttgeo_core::cohom::{ext_ring, simplicial_cohomology};
use ttgeo_core::dcat::{chain_map_basis, kunneth_check, random_chain_map, BoundedComplex};
use ttgeo_core::fincat::FiniteCategory;
use ttgeo_core::fixtures::{
    random_complex, random_map, random_module, random_nonacyclic_complex, random_poset, rng, transporter_fixtures,
};
use ttgeo_core::gorcm::{
    cm_spectrum, finite_projdim, finite_projdim_by_resolution, injective_dimension, skew_iso_check, CmKind, Side,
};
use ttgeo_core::groupact::{describe, GPoset, PermGroup, TransporterCategory};
use ttgeo_core::ttspec::{spc_ei, IdealDescriptor};
use ttgeo_core::{Matrix, F2, F3};

fn poset(seed: u64) -> Arc<FiniteCategory> {
    let mut r = rng(seed);
    let n = r.gen_range(2..=5);
    let d = r.gen_range(0.2..0.8);
    Arc::new(random_poset(n, d, &mut r).unwrap())
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().chain(b).copied().collect::<BTreeSet<_>>().into_iter().collect()
}

fn connected_components(p: &FiniteCategory) -> usize {
    let n = p.object_count();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut Vec<usize>, x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for x in 0..n {
        for y in 0..n {
            if p.reaches(x, y) {
                let (a, b) = (find(&mut comp, x), find(&mut comp, y));
                comp[a] = b;
            }
        }
    }
    (0..n).filter(|&x| find(&mut comp, x) == x).count()
}

/// The swap `M ⊗ N → N ⊗ M`.
fn swap<F: ttgeo_core::Field>(m: &FunctorModule<F>, n: &FunctorModule<F>) -> ModuleMap<F> {
    let (mn, nm) = (m.tensor(n).unwrap(), n.tensor(m).unwrap());
    let comps = (0..m.category().object_count())
        .map(|x| {
            let (a, b) = (m.dim_at(x), n.dim_at(x));
            let mut data = vec![F::zero(); a * b * a * b];
            for i in 0..a {
                for j in 0..b {
                    data[(j * a + i) * (a * b) + (i * b + j)] = F::one();
                }
            }
            Matrix::from_vec(a * b, a * b, data)
        })
        .collect();
    ModuleMap::new(mn, nm, comps).unwrap()
}

fn revalidate(c: &BoundedComplex<F2>) -> bool {
    if c.is_zero_complex() {
        return true;
    }
    let terms = c.terms().to_vec();
    let diffs = (c.low()..c.high()).map(|n| c.diff(n)).collect();
    BoundedComplex::new(c.category().clone(), c.low(), terms, diffs).is_ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn class_order_is_a_partial_order(seed in any::<u64>(), t in 0usize..7) {
        let cats = [poset(seed), transporter_fixtures()[t].1.cat.clone()];
        for c in cats {
            let cls = c.classify().unwrap();
            let k = cls.class_count();
            for a in 0..k {
                prop_assert!(cls.leq[a][a]);
                for b in 0..k {
                    if a != b {
                        prop_assert!(!(cls.leq[a][b] && cls.leq[b][a]));
                    }
                    for d in 0..k {
                        if cls.leq[a][b] && cls.leq[b][d] {
                            prop_assert!(cls.leq[a][d]);
                        }
                    }
                }
            }
            let all: Vec<usize> = (0..c.object_count()).collect();
            let full = c.full_subcategory(&all);
            prop_assert_eq!(&*full.cat, &*c);
            let again = full.cat.full_subcategory(&all);
            prop_assert_eq!(&*again.cat, &*full.cat);
            for class in &cls.classes {
                prop_assert!(c.is_convex(class));
            }
        }
    }

    #[test]
    fn transporter_counts_and_orbit_groupoids(seed in any::<u64>(), order in 1usize..4) {
        let p = poset(seed);
        let g = PermGroup::cyclic(order);
        let t = TransporterCategory::build(GPoset::trivial(p.clone(), g).unwrap()).unwrap();
        prop_assert!(t.cat.is_ei());
        prop_assert_eq!(t.cat.morphism_count(), order * p.morphism_count());
        for (_, t) in transporter_fixtures() {
            let n = t.cat.object_count();
            let expected: usize = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .map(|(x, y)| (0..t.group().order()).filter(|&e| t.base.poset.reaches(t.base.act(e, x), y)).count())
                .sum();
            prop_assert_eq!(t.cat.morphism_count(), expected);
            for orbit in &t.orbits {
                let sub = t.cat.full_subcategory(orbit);
                let c = &sub.cat;
                prop_assert!((0..c.object_count()).all(|x| (0..c.object_count()).all(|y| !c.hom(x, y).is_empty())));
                let aut = c.hom(0, 0);
                let d = describe(aut, c.identity(0), |f, g| c.compose(f, g).unwrap());
                prop_assert_eq!(d, t.isotropy_descriptor(orbit[0]));
            }
        }
    }

    #[test]
    fn tensor_is_a_symmetric_monoidal_product(seed in any::<u64>()) {
        let p = poset(seed);
        let mut r = rng(seed ^ 1);
        let (m, n, l) = (
            random_module::<F3, _>(&p, &mut r).unwrap(),
            random_module::<F3, _>(&p, &mut r).unwrap(),
            random_module::<F3, _>(&p, &mut r).unwrap(),
        );
        let k = FunctorModule::trivial(p.clone());
        prop_assert_eq!(k.tensor(&m).unwrap(), m.clone());
        prop_assert_eq!(m.tensor(&k).unwrap(), m.clone());
        prop_assert_eq!(m.tensor(&n).unwrap().tensor(&l).unwrap(), m.tensor(&n.tensor(&l).unwrap()).unwrap());
        let s = swap(&m, &n);
        prop_assert!(s.check().is_ok() && s.is_iso());
        prop_assert!(m.tensor(&n).unwrap().check().is_ok());
    }

    #[test]
    fn restriction_is_exact_and_filtrations_exist(seed in any::<u64>()) {
        let p = poset(seed);
        let mut r = rng(seed ^ 2);
        let m = random_module::<F2, _>(&p, &mut r).unwrap();
        let n = random_module::<F2, _>(&p, &mut r).unwrap();
        let f = random_map(&m, &n, &mut r).unwrap();
        let x = r.gen_range(0..p.object_count());
        let sub = p.full_subcategory(&[x]);
        let rf = f.restrict(&sub).unwrap();
        let (k, rk) = (f.kernel(), rf.kernel());
        let (q, rq) = (f.cokernel(), rf.cokernel());
        let (kr, qr) = (k.src.restrict(&sub).unwrap(), q.tgt.restrict(&sub).unwrap());
        prop_assert_eq!(kr.dims(), rk.src.dims());
        prop_assert_eq!(qr.dims(), rq.tgt.dims());
        prop_assert!(m.filtration().is_ok());
        let d = random_module::<F2, _>(&sub.cat, &mut r).unwrap();
        let left = m.tensor(&d.include(&sub, p.clone()).unwrap()).unwrap();
        let right = m.restrict(&sub).unwrap().tensor(&d).unwrap().include(&sub, p.clone()).unwrap();
        prop_assert_eq!(left.dims(), right.dims());
        prop_assert!(left.check().is_ok() && right.check().is_ok());
        prop_assert!(!matches!(is_isomorphic(&left, &right).unwrap(), IsoVerdict::NotIsomorphic));
    }

    #[test]
    fn complexes_tensor_cone_and_support(seed in any::<u64>()) {
        let p = poset(seed);
        let mut r = rng(seed ^ 3);
        let a = random_complex::<F2, _>(&p, -1, r.gen_range(1..=3), &mut r).unwrap();
        let b = random_complex::<F2, _>(&p, 0, r.gen_range(1..=2), &mut r).unwrap();
        let t = a.tensor(&b).unwrap();
        prop_assert!(revalidate(&t));
        prop_assert!(kunneth_check(&a, &b).unwrap());
        let basis = chain_map_basis(&a, &b).unwrap();
        let f = random_chain_map(&basis, &a, &b, &mut r);
        let cone = f.cone().unwrap();
        prop_assert!(revalidate(&cone));
        let (sa, sb) = (a.support(), b.support());
        prop_assert!(cone.support().iter().all(|x| sa.contains(x) || sb.contains(x)));
        prop_assert_eq!(a.direct_sum(&b).unwrap().support(), union(&sa, &sb));
        prop_assert_eq!(a.shift(1).unwrap().support(), sa.clone());
        let mut from_h = Vec::new();
        for (n, h) in a.cohomology() {
            from_h = union(&from_h, &BoundedComplex::stalk(h, n).unwrap().support());
        }
        prop_assert_eq!(&from_h, &sa);
        let n = p.object_count();
        for x in 0..n {
            let prime = IdealDescriptor::new((0..n).filter(|&y| y != x));
            prop_assert_eq!(prime.contains(&a), !sa.contains(&x));
        }
    }

    #[test]
    fn tensor_powers_of_nonacyclic_complexes(seed in any::<u64>()) {
        let p = poset(seed);
        let c = random_nonacyclic_complex::<F2, _>(&p, &mut rng(seed ^ 4)).unwrap();
        prop_assert!(!c.tensor_power(2).unwrap().is_acyclic());
        prop_assert!(!c.tensor_power(3).unwrap().is_acyclic());
    }

    #[test]
    fn ideal_round_trip(seed in any::<u64>(), mask in any::<u64>()) {
        let p = poset(seed);
        let n = p.object_count();
        let ideal = IdealDescriptor::from_mask(mask & ((1 << n) - 1), n);
        let g = ideal.generator::<F3>(&p).unwrap();
        prop_assert_eq!(g.support(), ideal.objset.iter().copied().collect::<Vec<_>>());
    }

    #[test]
    fn group_algebras_are_self_injective(order in 1usize..7, sym in any::<bool>()) {
        let g = if sym { PermGroup::symmetric(3).unwrap() } else { PermGroup::cyclic(order) };
        let c = Arc::new(g.as_category());
        prop_assert_eq!(injective_dimension::<F2>(&c, Side::Left, 1).unwrap(), 0);
        prop_assert_eq!(injective_dimension::<F3>(&c, Side::Right, 1).unwrap(), 0);
    }

    #[test]
    fn transporter_invariants(seed in any::<u64>(), t in 0usize..7) {
        let (_, t) = &transporter_fixtures()[t];
        prop_assert!(skew_iso_check(t).passed());
        prop_assert_eq!(spc_ei(&t.cat, 2).unwrap().components.len(), t.orbits.len());
        let m = random_module::<F2, _>(&t.cat, &mut rng(seed)).unwrap();
        prop_assert_eq!(finite_projdim(t, &m).unwrap().finite, finite_projdim_by_resolution(&m).unwrap());
        let s = cm_spectrum::<F3>(t).unwrap();
        for c in &s.components {
            prop_assert_eq!(c.kind == CmKind::Empty, c.stabilizer.order % 3 != 0);
        }
    }

    #[test]
    fn cohomology_engines_agree(seed in any::<u64>()) {
        let p = poset(seed);
        let s = simplicial_cohomology::<F3>(&p, 4).unwrap();
        let e = ext_ring::<F3>(&p, 4, true).unwrap();
        prop_assert_eq!(&s.dims, &e.dims);
        prop_assert!(s.graded_commutative && e.graded_commutative);
        let comps = connected_components(&p);
        prop_assert_eq!(s.dims[0], comps);
        if comps == 1 {
            prop_assert!(s.unit_spans_degree_zero() && e.unit_spans_degree_zero());
        }
    }
}
