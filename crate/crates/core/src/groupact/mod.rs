//! Permutation groups, G-posets and transporter categories.

mod parse;

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{CategoryBuilder, FiniteCategory, Functor, MorId, ObjId};

pub use parse::{parse_action, write_action, ActionSpec};

pub const DEFAULT_GROUP_CAP: usize = 2000;

/// A permutation of `0..n`, as the image list.
pub type Perm = Vec<usize>;

/// Writes a permutation in 1-based cycle notation, `()` for the identity.
pub fn cycle_string(p: &[usize]) -> String {
    cycles_with(p, |i| (i + 1).to_string())
}

pub(crate) fn cycles_with(p: &[usize], label: impl Fn(usize) -> String) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for i in 0..p.len() {
        if seen[i] || p[i] == i {
            continue;
        }
        let mut cyc = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            cyc.push(label(j));
            j = p[j];
        }
        s.push('(');
        s.push_str(&cyc.join(" "));
        s.push(')');
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}

fn compose_perm(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

/// Order, exponent and commutativity of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupDescriptor {
    pub order: usize,
    pub exponent: usize,
    pub abelian: bool,
}

impl GroupDescriptor {
    pub fn trivial() -> Self {
        GroupDescriptor { order: 1, exponent: 1, abelian: true }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// A short human label such as `C2`, `abelian(4, exp 2)` or `order 6`.
    pub fn label(&self) -> String {
        match (self.order, self.abelian) {
            (1, _) => "1".into(),
            (n, true) if n == self.exponent => format!("C{n}"),
            (n, true) => format!("abelian(order {n}, exponent {})", self.exponent),
            (n, false) => format!("nonabelian(order {n}, exponent {})", self.exponent),
        }
    }
}

impl std::fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Descriptor of a finite group given by a closed set of elements and a
/// multiplication.
pub fn describe<T: Copy + Eq>(elements: &[T], identity: T, mul: impl Fn(T, T) -> T) -> GroupDescriptor {
    let mut exponent = 1;
    for &g in elements {
        let mut k = 1;
        let mut p = g;
        while p != identity {
            p = mul(p, g);
            k += 1;
        }
        exponent = exponent / gcd(exponent, k) * k;
    }
    let abelian = elements.iter().all(|&a| elements.iter().all(|&b| mul(a, b) == mul(b, a)));
    GroupDescriptor { order: elements.len(), exponent, abelian }
}

/// Descriptor of `Aut_C(x)`.
pub fn automorphism_descriptor(c: &FiniteCategory, x: ObjId) -> GroupDescriptor {
    let aut = c.hom(x, x);
    describe(aut, c.identity(x), |f, g| c.compose(f, g).expect("endomorphisms compose"))
}

/// A finite permutation group with all elements enumerated.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    // element i = generators[parent[i].1] ∘ elements[parent[i].0]
    parent: Vec<Option<(usize, usize)>>,
}

impl PermGroup {
    /// Enumerates the group generated by `generators`; element `0` is the
    /// identity and `(gh)(i) = g(h(i))`.
    pub fn new(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.len() != degree || !is_permutation(g) {
                return Err(Error::InvalidParams(format!(
                    "generator {g:?} is not a permutation of degree {degree}"
                )));
            }
        }
        let id: Perm = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut parent = vec![None];
        let mut queue = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for (s, g) in generators.iter().enumerate() {
                let p = compose_perm(g, &elements[e]);
                if index.contains_key(&p) {
                    continue;
                }
                if elements.len() == cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
                parent.push(Some((e, s)));
            }
        }
        Ok(PermGroup { degree, generators, elements, index, parent })
    }

    pub fn trivial() -> Self {
        PermGroup::new(0, Vec::new(), 1).expect("trivial group")
    }

    /// `Z/n` acting regularly on `n` points.
    pub fn cyclic(n: usize) -> Self {
        let gen = (0..n).map(|i| (i + 1) % n).collect();
        PermGroup::new(n, vec![gen], DEFAULT_GROUP_CAP).expect("cyclic group")
    }

    /// The symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push((0..n).map(|i| (i + 1) % n).collect());
            let mut t: Perm = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        PermGroup::new(n, gens, DEFAULT_GROUP_CAP)
    }

    /// Direct product, acting on the disjoint union of the two domains.
    pub fn product(&self, other: &PermGroup) -> Result<Self> {
        let d = self.degree + other.degree;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(g.iter().copied().chain(self.degree..d).collect());
        }
        for g in &other.generators {
            gens.push((0..self.degree).chain(g.iter().map(|&i| i + self.degree)).collect());
        }
        PermGroup::new(d, gens, DEFAULT_GROUP_CAP.max(self.order() * other.order()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &[usize]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&compose_perm(&self.elements[a], &self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        let p = &self.elements[a];
        let mut q = vec![0; p.len()];
        for (i, &j) in p.iter().enumerate() {
            q[j] = i;
        }
        self.index[&q]
    }

    pub fn name(&self, a: usize) -> String {
        cycle_string(&self.elements[a])
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        let all: Vec<usize> = (0..self.order()).collect();
        describe(&all, 0, |a, b| self.mul(a, b))
    }

    pub fn subgroup_descriptor(&self, elements: &[usize]) -> GroupDescriptor {
        describe(elements, 0, |a, b| self.mul(a, b))
    }

    /// Full multiplication table, `table[a][b] = ab`.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|a| (0..self.order()).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// The group as a one-object category; morphism `i` is element `i`.
    pub fn as_category(&self) -> FiniteCategory {
        let names = (0..self.order()).map(|a| self.name(a)).collect();
        FiniteCategory::from_group_table(names, &self.table()).expect("group table is a category")
    }

    /// Writes element `i` as a word in the generators, applied right to left:
    /// `element(i) = gens[w[0]] ∘ … ∘ gens[w[k-1]]`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, s)) = self.parent[i] {
            w.push(s);
            i = p;
        }
        w
    }
}

/// A finite poset with an action of a permutation group by order
/// automorphisms.
#[derive(Clone, Debug)]
pub struct GPoset {
    pub poset: Arc<FiniteCategory>,
    pub group: PermGroup,
    // action[g][x] = g·x
    action: Vec<Perm>,
}

impl GPoset {
    /// `generator_actions[i]` is the permutation of objects by which group
    /// generator `i` acts.
    pub fn new(poset: Arc<FiniteCategory>, group: PermGroup, generator_actions: Vec<Perm>) -> Result<Self> {
        if !poset.is_poset() {
            return Err(Error::NotAPoset("acted-on category is not a poset".into()));
        }
        let n = poset.object_count();
        if generator_actions.len() != group.generators().len() {
            return Err(Error::ActionNotFunctorial(format!(
                "{} generator actions for {} generators",
                generator_actions.len(),
                group.generators().len()
            )));
        }
        for (i, a) in generator_actions.iter().enumerate() {
            if a.len() != n || !is_permutation(a) {
                return Err(Error::ActionNotFunctorial(format!(
                    "generator {} does not act by a bijection of objects",
                    i + 1
                )));
            }
            for x in 0..n {
                for y in 0..n {
                    if poset.reaches(x, y) && !poset.reaches(a[x], a[y]) {
                        return Err(Error::ActionNotOrderPreserving {
                            generator: i + 1,
                            x: poset.object_name(x).to_string(),
                            y: poset.object_name(y).to_string(),
                        });
                    }
                }
            }
        }
        let mut action: Vec<Perm> = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let a = match group.parent[g] {
                None => (0..n).collect(),
                Some((p, s)) => compose_perm(&generator_actions[s], &action[p]),
            };
            action.push(a);
        }
        // every Cayley-graph edge must agree with the enumeration
        for g in 0..group.order() {
            for (s, gen) in group.generators().iter().enumerate() {
                let sg = group.index[&compose_perm(gen, group.element(g))];
                if action[sg] != compose_perm(&generator_actions[s], &action[g]) {
                    return Err(Error::ActionNotFunctorial(format!(
                        "relation of the group is violated at element {} and generator {}",
                        group.name(g),
                        s + 1
                    )));
                }
            }
        }
        Ok(GPoset { poset, group, action })
    }

    /// The trivial action of `group` on `poset`.
    pub fn trivial(poset: Arc<FiniteCategory>, group: PermGroup) -> Result<Self> {
        let n = poset.object_count();
        let acts = vec![(0..n).collect(); group.generators().len()];
        GPoset::new(poset, group, acts)
    }

    pub fn act(&self, g: usize, x: ObjId) -> ObjId {
        self.action[g][x]
    }

    pub fn generator_actions(&self) -> Vec<Perm> {
        let n = self.poset.object_count();
        (0..self.group.generators().len())
            .map(|s| {
                let g = self.group.index[&self.group.generators()[s]];
                (0..n).map(|x| self.action[g][x]).collect()
            })
            .collect()
    }
}

/// Tag of a transporter morphism `(g, gx ≤ y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TransporterTag {
    pub g: usize,
    pub src: ObjId,
    pub tgt: ObjId,
}

/// The Grothendieck construction `G ∝ P`.
#[derive(Clone, Debug)]
pub struct TransporterCategory {
    pub base: GPoset,
    pub cat: Arc<FiniteCategory>,
    pub tags: Vec<TransporterTag>,
    index: HashMap<TransporterTag, MorId>,
    pub orbits: Vec<Vec<ObjId>>,
    /// Orbit index of each object.
    pub orbit_of: Vec<usize>,
    /// `G_x` as sorted element indices.
    pub isotropy: Vec<Vec<usize>>,
    /// `transversal[x] · rep = x` where `rep` is the first member of the orbit.
    pub transversal: Vec<usize>,
}

impl TransporterCategory {
    pub fn build(base: GPoset) -> Result<Self> {
        let p = &base.poset;
        let g = &base.group;
        let n = p.object_count();
        let mut b = CategoryBuilder::new(p.objects().iter().cloned());
        let mut tags: Vec<TransporterTag> = (0..n).map(|x| TransporterTag { g: 0, src: x, tgt: x }).collect();
        for x in 0..n {
            for y in 0..n {
                for e in 0..g.order() {
                    if (e, x, y) == (0, x, x) || !p.reaches(base.act(e, x), y) {
                        continue;
                    }
                    let name = format!("{}:{}->{}", g.name(e), p.object_name(x), p.object_name(y));
                    b.add_morphism(name, x, y);
                    tags.push(TransporterTag { g: e, src: x, tgt: y });
                }
            }
        }
        let index: HashMap<TransporterTag, MorId> = tags.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        for (gi, tg) in tags.iter().enumerate() {
            for (fi, tf) in tags.iter().enumerate() {
                if tf.src != tg.tgt || b_is_identity(fi, n) || b_is_identity(gi, n) {
                    continue;
                }
                let h = TransporterTag { g: g.mul(tf.g, tg.g), src: tg.src, tgt: tf.tgt };
                let hi = *index.get(&h).ok_or_else(|| {
                    Error::Internal("transporter composite missing; action is not order preserving".into())
                })?;
                b.set_composite(fi, gi, hi);
            }
        }
        let cat = b.build()?;
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        let mut transversal = vec![0; n];
        for x in 0..n {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let mut orbit = Vec::new();
            for e in 0..g.order() {
                let y = base.act(e, x);
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = orbits.len();
                    transversal[y] = e;
                    orbit.push(y);
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        let isotropy = (0..n).map(|x| (0..g.order()).filter(|&e| base.act(e, x) == x).collect()).collect();
        Ok(TransporterCategory { base, cat: Arc::new(cat), tags, index, orbits, orbit_of, isotropy, transversal })
    }

    pub fn group(&self) -> &PermGroup {
        &self.base.group
    }

    pub fn morphism(&self, tag: TransporterTag) -> Option<MorId> {
        self.index.get(&tag).copied()
    }

    /// `ι: P → G∝P` sending `x ≤ y` to `(e, x ≤ y)`.
    pub fn iota(&self) -> Functor {
        let p = &self.base.poset;
        let mor_map = p
            .morphisms()
            .iter()
            .map(|m| self.index[&TransporterTag { g: 0, src: m.src, tgt: m.tgt }])
            .collect();
        Functor { obj_map: (0..p.object_count()).collect(), mor_map }
    }

    /// `π: G∝P → G` sending `(g, gx ≤ y)` to `g`, with `G` as the category
    /// [`PermGroup::as_category`].
    pub fn pi(&self) -> Functor {
        Functor { obj_map: vec![0; self.cat.object_count()], mor_map: self.tags.iter().map(|t| t.g).collect() }
    }

    /// Checks `ι` and `π` are functors and `π ∘ ι` is constant at `e`.
    pub fn check_iota_pi(&self) -> Result<()> {
        let iota = self.iota();
        let pi = self.pi();
        iota.check(&self.base.poset, &self.cat)?;
        pi.check(&self.cat, &self.group().as_category())?;
        if iota.mor_map.iter().any(|&f| pi.mor_map[f] != 0) {
            return Err(Error::Internal("π ∘ ι is not trivial".into()));
        }
        Ok(())
    }

    /// Representative orbit of object `x`.
    pub fn representative(&self, x: ObjId) -> ObjId {
        self.orbits[self.orbit_of[x]][0]
    }

    pub fn isotropy_descriptor(&self, x: ObjId) -> GroupDescriptor {
        self.group().subgroup_descriptor(&self.isotropy[x])
    }

    /// Checks `G_x = Aut(x)` as tagged morphisms and
    /// `G_x = t G_rep t⁻¹` for the transversal element `t`.
    pub fn check_isotropy(&self) -> Result<()> {
        let g = self.group();
        for x in 0..self.cat.object_count() {
            let mut aut: Vec<usize> = self.cat.hom(x, x).iter().map(|&f| self.tags[f].g).collect();
            aut.sort_unstable();
            if aut != self.isotropy[x] {
                return Err(Error::Internal(format!("Aut of `{}` differs from its stabilizer", self.cat.object_name(x))));
            }
            let t = self.transversal[x];
            let ti = g.inv(t);
            let mut conj: Vec<usize> =
                self.isotropy[self.representative(x)].iter().map(|&h| g.mul(g.mul(t, h), ti)).collect();
            conj.sort_unstable();
            if conj != self.isotropy[x] {
                return Err(Error::Internal(format!(
                    "stabilizer of `{}` is not conjugate to its orbit representative's",
                    self.cat.object_name(x)
                )));
            }
        }
        Ok(())
    }
}

fn b_is_identity(m: MorId, n_obj: usize) -> bool {
    m < n_obj
}
