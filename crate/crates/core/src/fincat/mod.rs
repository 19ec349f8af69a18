//! Finite categories as explicit combinatorial data.
//!
//! Objects and morphisms carry dense integer ids in file order. The identity
//! of object `x` is always morphism `x`; non-identity morphisms follow in
//! insertion order. Composition is a stored table, so associativity and the
//! unit laws are checked exhaustively when a category is built.

pub(crate) mod parse;

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};

pub use parse::{parse_category, write_category};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    hom: Vec<Vec<Vec<MorId>>>,
    out: Vec<Vec<MorId>>,
    pos_in_out: Vec<usize>,
    // comp[g][pos_in_out[f]] = f ∘ g, for f with src(f) = tgt(g)
    comp: Vec<Vec<MorId>>,
    generators: OnceLock<Vec<MorId>>,
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.morphisms == other.morphisms && self.comp == other.comp
    }
}

impl Eq for FiniteCategory {}

/// Collects objects, morphisms and composites before validation.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    composites: HashMap<(MorId, MorId), MorId>,
}

impl CategoryBuilder {
    /// Starts a category on the given objects; their identities become
    /// morphisms `0..objects.len()`, named `1_<object>`.
    pub fn new<S: Into<String>>(objects: impl IntoIterator<Item = S>) -> Self {
        let objects: Vec<String> = objects.into_iter().map(Into::into).collect();
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism { name: format!("1_{o}"), src: i, tgt: i })
            .collect();
        CategoryBuilder { objects, morphisms, composites: HashMap::new() }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn add_morphism(&mut self, name: impl Into<String>, src: ObjId, tgt: ObjId) -> MorId {
        self.morphisms.push(Morphism { name: name.into(), src, tgt });
        self.morphisms.len() - 1
    }

    /// Records `h = f ∘ g`.
    pub fn set_composite(&mut self, f: MorId, g: MorId, h: MorId) {
        self.composites.insert((f, g), h);
    }

    pub fn build(self) -> Result<FiniteCategory> {
        let CategoryBuilder { objects, morphisms, composites } = self;
        let n = objects.len();
        let name = |m: MorId| morphisms[m].name.clone();
        if morphisms.iter().any(|m| m.src >= n || m.tgt >= n) {
            return Err(Error::InvalidParams("morphism endpoint out of range".into()));
        }
        let mut hom = vec![vec![Vec::new(); n]; n];
        let mut out = vec![Vec::new(); n];
        let mut pos_in_out = vec![0; morphisms.len()];
        for (id, m) in morphisms.iter().enumerate() {
            hom[m.src][m.tgt].push(id);
            pos_in_out[id] = out[m.src].len();
            out[m.src].push(id);
        }
        for (&(f, g), &h) in &composites {
            let valid = f < morphisms.len() && g < morphisms.len() && h < morphisms.len();
            if !valid || morphisms[f].src != morphisms[g].tgt {
                return Err(Error::DanglingMorphism {
                    f: morphisms.get(f).map_or(f.to_string(), |m| m.name.clone()),
                    g: morphisms.get(g).map_or(g.to_string(), |m| m.name.clone()),
                });
            }
        }
        let mut comp = Vec::with_capacity(morphisms.len());
        for (g, mg) in morphisms.iter().enumerate() {
            let mut row = Vec::with_capacity(out[mg.tgt].len());
            for &f in &out[mg.tgt] {
                let mf = &morphisms[f];
                let given = composites.get(&(f, g)).copied();
                let h = if f == mg.tgt {
                    if given.is_some_and(|h| h != g) {
                        return Err(Error::MissingIdentity {
                            object: objects[mg.tgt].clone(),
                            detail: format!("1 . {} declared as {}", name(g), name(given.unwrap())),
                        });
                    }
                    g
                } else if g == mf.src {
                    if given.is_some_and(|h| h != f) {
                        return Err(Error::MissingIdentity {
                            object: objects[mf.src].clone(),
                            detail: format!("{} . 1 declared as {}", name(f), name(given.unwrap())),
                        });
                    }
                    f
                } else {
                    given.ok_or_else(|| Error::DanglingMorphism { f: name(f), g: name(g) })?
                };
                if morphisms[h].src != mg.src || morphisms[h].tgt != mf.tgt {
                    return Err(Error::DanglingMorphism { f: name(f), g: name(g) });
                }
                row.push(h);
            }
            comp.push(row);
        }
        let cat = FiniteCategory { objects, morphisms, hom, out, pos_in_out, comp, generators: OnceLock::new() };
        cat.check_associativity()?;
        Ok(cat)
    }
}

impl FiniteCategory {
    /// The poset on `objects` generated by `relations` (pairs `a < b`),
    /// transitively closed. Morphisms `a<b` are ordered by `(a, b)`.
    pub fn poset<S: Into<String>>(
        objects: impl IntoIterator<Item = S>,
        relations: &[(ObjId, ObjId)],
    ) -> Result<Self> {
        let objects: Vec<String> = objects.into_iter().map(Into::into).collect();
        let n = objects.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidParams("relation endpoint out of range".into()));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::NotAPoset(format!(
                        "`{}` and `{}` lie on a cycle",
                        objects[i], objects[j]
                    )));
                }
            }
        }
        let mut b = CategoryBuilder::new(objects.clone());
        let mut rel = vec![vec![None; n]; n];
        for i in 0..n {
            rel[i][i] = Some(i);
            for j in 0..n {
                if i != j && leq[i][j] {
                    rel[i][j] = Some(b.add_morphism(format!("{}<{}", objects[i], objects[j]), i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i != j && j != k {
                        if let (Some(g), Some(f)) = (rel[i][j], rel[j][k]) {
                            b.set_composite(f, g, rel[i][k].expect("transitive"));
                        }
                    }
                }
            }
        }
        b.build()
    }

    /// A finite group as a one-object category from its multiplication
    /// table; element `0` must be the identity.
    pub fn from_group_table(names: Vec<String>, mult: &[Vec<usize>]) -> Result<Self> {
        let mut b = CategoryBuilder::new(["*"]);
        for name in names.iter().skip(1) {
            b.add_morphism(name.clone(), 0, 0);
        }
        for (g, row) in mult.iter().enumerate() {
            for (h, &gh) in row.iter().enumerate() {
                // morphism g ∘ h = element g·h
                b.set_composite(g, h, gh);
            }
        }
        b.build()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: MorId) -> ObjId {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        x
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        f < self.objects.len()
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.hom[x][y]
    }

    /// Morphisms with source `x`.
    pub fn out_of(&self, x: ObjId) -> &[MorId] {
        &self.out[x]
    }

    /// Position of `f` inside `out_of(src(f))`.
    pub fn position_out(&self, f: MorId) -> usize {
        self.pos_in_out[f]
    }

    /// `f ∘ g`, defined when `src(f) = tgt(g)`.
    #[inline]
    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        let mg = &self.morphisms[g];
        let mf = &self.morphisms[f];
        (mf.src == mg.tgt).then(|| self.comp[g][self.pos_in_out[f]])
    }

    /// Iterates every composable pair `(f, g)` with its composite `f ∘ g`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorId, MorId, MorId)> + '_ {
        self.morphisms.iter().enumerate().flat_map(move |(g, mg)| {
            self.out[mg.tgt].iter().zip(&self.comp[g]).map(move |(&f, &h)| (f, g, h))
        })
    }

    fn check_associativity(&self) -> Result<()> {
        for (g, mg) in self.morphisms.iter().enumerate() {
            for (&f, &fg) in self.out[mg.tgt].iter().zip(&self.comp[g]) {
                let mf = &self.morphisms[f];
                for (&h, &hf) in self.out[mf.tgt].iter().zip(&self.comp[f]) {
                    let left = self.comp[g][self.pos_in_out[hf]];
                    let right = self.comp[fg][self.pos_in_out[h]];
                    if left != right {
                        return Err(Error::NonAssociative {
                            h: mf_name(self, h),
                            g: mf_name(self, f),
                            f: mf_name(self, g),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// A set of non-identity morphisms generating every morphism under
    /// composition, chosen greedily in id order. For a poset these are the
    /// covering relations.
    pub fn generating_morphisms(&self) -> &[MorId] {
        self.generators.get_or_init(|| {
            let m = self.morphism_count();
            let mut closed = vec![false; m];
            let mut members: Vec<MorId> = (0..self.object_count()).collect();
            for x in 0..self.object_count() {
                closed[x] = true;
            }
            let mut gens = Vec::new();
            // a morphism that is a composite of two non-identities is left for later
            let mut order: Vec<MorId> = (self.object_count()..m).collect();
            let mut decomposable = vec![false; m];
            for (a, b, h) in self.composable_pairs() {
                if !self.is_identity(a) && !self.is_identity(b) && a != h && b != h {
                    decomposable[h] = true;
                }
            }
            order.sort_by_key(|&f| decomposable[f]);
            for f in order {
                if closed[f] {
                    continue;
                }
                gens.push(f);
                let mut stack = vec![f];
                closed[f] = true;
                members.push(f);
                while let Some(a) = stack.pop() {
                    let snapshot = members.clone();
                    for &b in &snapshot {
                        for h in [self.compose(a, b), self.compose(b, a)].into_iter().flatten() {
                            if !closed[h] {
                                closed[h] = true;
                                members.push(h);
                                stack.push(h);
                            }
                        }
                    }
                }
            }
            gens.sort_unstable();
            gens
        })
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let m = &self.morphisms[f];
        self.hom[m.tgt][m.src].iter().copied().find(|&g| {
            self.compose(f, g) == Some(m.tgt) && self.compose(g, f) == Some(m.src)
        })
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Every endomorphism is an isomorphism.
    pub fn is_ei(&self) -> bool {
        (0..self.object_count()).all(|x| self.hom[x][x].iter().all(|&f| self.is_iso(f)))
    }

    /// At most one morphism between any two objects and none both ways
    /// between distinct objects.
    pub fn is_poset(&self) -> bool {
        let n = self.object_count();
        (0..n).all(|x| {
            (0..n).all(|y| {
                self.hom[x][y].len() <= 1
                    && (x == y || self.hom[x][y].is_empty() || self.hom[y][x].is_empty())
            })
        })
    }

    /// `Hom(x, y)` is non-empty.
    pub fn reaches(&self, x: ObjId, y: ObjId) -> bool {
        !self.hom[x][y].is_empty()
    }

    pub fn opposite(&self) -> FiniteCategory {
        let morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .map(|m| Morphism { name: m.name.clone(), src: m.tgt, tgt: m.src })
            .collect();
        let mut b = CategoryBuilder {
            objects: self.objects.clone(),
            morphisms,
            composites: HashMap::new(),
        };
        for (f, g, h) in self.composable_pairs() {
            // f ∘ g in C is g^op ∘ f^op in C^op
            b.set_composite(g, f, h);
        }
        b.build().expect("opposite of a valid category is valid")
    }

    /// Iso-classes, their order and automorphism groups.
    pub fn classify(&self) -> Result<IsoClassification> {
        if !self.is_ei() {
            let x = (0..self.object_count())
                .find(|&x| self.hom[x][x].iter().any(|&f| !self.is_iso(f)))
                .unwrap_or(0);
            return Err(Error::NotEI(format!(
                "object `{}` has a non-invertible endomorphism",
                self.objects[x]
            )));
        }
        let n = self.object_count();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<ObjId>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<ObjId> = (x..n)
                .filter(|&y| y == x || self.hom[x][y].iter().any(|&f| self.is_iso(f)))
                .collect();
            for &y in &members {
                class_of[y] = id;
            }
            classes.push(members);
        }
        let k = classes.len();
        let mut leq = vec![vec![false; k]; k];
        for a in 0..k {
            for b in 0..k {
                leq[a][b] = self.reaches(classes[a][0], classes[b][0]);
            }
        }
        for a in 0..k {
            for b in 0..k {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::NotEI(format!(
                        "classes of `{}` and `{}` are comparable both ways",
                        self.objects[classes[a][0]], self.objects[classes[b][0]]
                    )));
                }
            }
        }
        let aut = classes.iter().map(|c| self.hom[c[0]][c[0]].clone()).collect();
        Ok(IsoClassification {
            representatives: classes.iter().map(|c| c[0]).collect(),
            classes,
            class_of,
            leq,
            aut,
        })
    }

    /// A full subcategory on `objs`, which are sorted and deduplicated.
    pub fn full_subcategory(&self, objs: &[ObjId]) -> Subcategory {
        let objs: Vec<ObjId> = objs.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let index: HashMap<ObjId, ObjId> = objs.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut b = CategoryBuilder::new(objs.iter().map(|&o| self.objects[o].clone()));
        let mut morphisms: Vec<MorId> = objs.clone();
        let mut new_id: HashMap<MorId, MorId> = objs.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.is_identity(f) {
                continue;
            }
            if let (Some(&s), Some(&t)) = (index.get(&m.src), index.get(&m.tgt)) {
                let id = b.add_morphism(m.name.clone(), s, t);
                morphisms.push(f);
                new_id.insert(f, id);
            }
        }
        for (f, g, h) in self.composable_pairs() {
            if let (Some(&nf), Some(&ng)) = (new_id.get(&f), new_id.get(&g)) {
                b.set_composite(nf, ng, new_id[&h]);
            }
        }
        let cat = b.build().expect("full subcategory of a valid category is valid");
        Subcategory { cat: Arc::new(cat), objects: objs, morphisms }
    }

    /// Every object on a two-step path between members is a member.
    pub fn is_convex(&self, objs: &[ObjId]) -> bool {
        self.convexity_witness(objs).is_none()
    }

    /// An object outside `objs` lying on a path between two members.
    pub fn convexity_witness(&self, objs: &[ObjId]) -> Option<ObjId> {
        let member: BTreeSet<ObjId> = objs.iter().copied().collect();
        (0..self.object_count()).filter(|y| !member.contains(y)).find(|&y| {
            member.iter().any(|&x| self.reaches(x, y)) && member.iter().any(|&z| self.reaches(y, z))
        })
    }
}

fn mf_name(c: &FiniteCategory, f: MorId) -> String {
    c.morphisms[f].name.clone()
}

/// Partition of objects into iso-classes with the induced order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoClassification {
    /// Classes in order of their smallest member.
    pub classes: Vec<Vec<ObjId>>,
    pub class_of: Vec<usize>,
    /// `leq[a][b]` iff `[a] ≤ [b]`, i.e. some morphism goes from `a` to `b`.
    pub leq: Vec<Vec<bool>>,
    /// Smallest member of each class.
    pub representatives: Vec<ObjId>,
    /// Automorphism group of each representative, as morphism ids.
    pub aut: Vec<Vec<MorId>>,
}

impl IsoClassification {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Classes ordered so that every class precedes the classes above it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let k = self.classes.len();
        let mut below: Vec<usize> =
            (0..k).map(|b| (0..k).filter(|&a| a != b && self.leq[a][b]).count()).collect();
        let mut order = Vec::with_capacity(k);
        let mut done = vec![false; k];
        while order.len() < k {
            let next = (0..k).find(|&c| !done[c] && below[c] == 0).expect("order is acyclic");
            done[next] = true;
            order.push(next);
            for b in 0..k {
                if b != next && self.leq[next][b] {
                    below[b] -= 1;
                }
            }
        }
        order
    }

    /// Maximal classes among `among`.
    pub fn maximal_among(&self, among: &[usize]) -> Vec<usize> {
        among
            .iter()
            .copied()
            .filter(|&a| !among.iter().any(|&b| b != a && self.leq[a][b]))
            .collect()
    }
}

/// A full subcategory together with its embedding.
#[derive(Clone, Debug)]
pub struct Subcategory {
    pub cat: Arc<FiniteCategory>,
    /// Ambient object id of each object of `cat`.
    pub objects: Vec<ObjId>,
    /// Ambient morphism id of each morphism of `cat`.
    pub morphisms: Vec<MorId>,
}

impl Subcategory {
    pub fn local_object(&self, ambient: ObjId) -> Option<ObjId> {
        self.objects.iter().position(|&o| o == ambient)
    }
}

/// A functor between finite categories given on objects and morphisms.
#[derive(Clone, Debug)]
pub struct Functor {
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

impl Functor {
    /// Checks identities and composites are preserved.
    pub fn check(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> Result<()> {
        if self.obj_map.len() != src.object_count() || self.mor_map.len() != src.morphism_count() {
            return Err(Error::InvalidParams("functor tables have wrong size".into()));
        }
        for x in 0..src.object_count() {
            if self.mor_map[src.identity(x)] != tgt.identity(self.obj_map[x]) {
                return Err(Error::Internal(format!(
                    "functor does not preserve the identity of `{}`",
                    src.object_name(x)
                )));
            }
        }
        for (f, m) in src.morphisms().iter().enumerate() {
            let fm = self.mor_map[f];
            if tgt.src(fm) != self.obj_map[m.src] || tgt.tgt(fm) != self.obj_map[m.tgt] {
                return Err(Error::Internal(format!("functor mistypes `{}`", m.name)));
            }
        }
        for (f, g, h) in src.composable_pairs() {
            if tgt.compose(self.mor_map[f], self.mor_map[g]) != Some(self.mor_map[h]) {
                return Err(Error::Internal(format!(
                    "functor does not preserve `{} . {}`",
                    src.morphism(f).name,
                    src.morphism(g).name
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chain3() -> FiniteCategory {
        FiniteCategory::poset(["x", "y", "z"], &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn monoid_idempotent() -> Result<FiniteCategory> {
        let mut b = CategoryBuilder::new(["*"]);
        let e = b.add_morphism("e", 0, 0);
        b.set_composite(e, e, e);
        b.build()
    }

    fn z2() -> FiniteCategory {
        FiniteCategory::from_group_table(vec!["e".into(), "s".into()], &[vec![0, 1], vec![1, 0]])
            .unwrap()
    }

    #[test]
    fn chain_has_six_morphisms() {
        let c = chain3();
        assert_eq!(c.morphism_count(), 6);
        assert!(c.is_poset());
        assert!(c.is_ei());
        let xy = c.morphism_id("x<y").unwrap();
        let yz = c.morphism_id("y<z").unwrap();
        assert_eq!(c.compose(yz, xy), c.morphism_id("x<z"));
        assert_eq!(c.compose(xy, yz), None);
        assert_eq!(c.generating_morphisms(), &[xy, yz]);
    }

    #[test]
    fn group_category() {
        let c = z2();
        assert_eq!(c.morphism_count(), 2);
        assert!(c.is_ei());
        assert!(!c.is_poset());
    }

    #[test]
    fn idempotent_monoid_is_not_ei() {
        let c = monoid_idempotent().unwrap();
        assert!(!c.is_ei());
        assert!(matches!(c.classify(), Err(Error::NotEI(_))));
    }

    #[test]
    fn missing_composite_is_dangling() {
        let mut b = CategoryBuilder::new(["*"]);
        b.add_morphism("s", 0, 0);
        assert!(matches!(b.build(), Err(Error::DanglingMorphism { .. })));
    }

    #[test]
    fn non_associative_table_rejected() {
        // {1, a, b} with a.a = b, a.b = a, b.a = b, b.b = b: (a.a).a = b.a = b
        // but a.(a.a) = a.b = a
        let mut b = CategoryBuilder::new(["*"]);
        let a = b.add_morphism("a", 0, 0);
        let bb = b.add_morphism("b", 0, 0);
        b.set_composite(a, a, bb);
        b.set_composite(a, bb, a);
        b.set_composite(bb, a, bb);
        b.set_composite(bb, bb, bb);
        assert!(matches!(b.build(), Err(Error::NonAssociative { .. })));
    }

    #[test]
    fn bad_identity_declaration_rejected() {
        let mut b = CategoryBuilder::new(["*"]);
        let s = b.add_morphism("s", 0, 0);
        b.set_composite(s, s, 0);
        b.set_composite(0, s, 0);
        assert!(matches!(b.build(), Err(Error::MissingIdentity { .. })));
    }

    #[test]
    fn chain_classification() {
        let c = chain3();
        let cls = c.classify().unwrap();
        assert_eq!(cls.class_count(), 3);
        assert!(cls.leq[0][2] && !cls.leq[2][0]);
        assert_eq!(cls.linear_extension(), vec![0, 1, 2]);
        assert_eq!(cls.maximal_among(&[0, 1]), vec![1]);
    }

    #[test]
    fn convexity() {
        let c = chain3();
        assert!(!c.is_convex(&[0, 2]));
        assert_eq!(c.convexity_witness(&[0, 2]), Some(1));
        assert!(c.is_convex(&[1, 2]));
        for class in c.classify().unwrap().classes {
            assert!(c.is_convex(&class));
        }
    }

    #[test]
    fn full_subcategory_is_induced() {
        let c = chain3();
        let sub = c.full_subcategory(&[0, 2]);
        assert_eq!(sub.cat.morphism_count(), 3);
        assert_eq!(sub.objects, vec![0, 2]);
        let whole = c.full_subcategory(&[0, 1, 2]);
        assert_eq!(*whole.cat, c);
        let again = whole.cat.full_subcategory(&[0, 1, 2]);
        assert_eq!(*again.cat, *whole.cat);
    }

    #[test]
    fn opposite_reverses() {
        let c = chain3();
        let op = c.opposite();
        let xy = op.morphism_id("x<y").unwrap();
        assert_eq!((op.src(xy), op.tgt(xy)), (1, 0));
        assert_eq!(op.opposite(), c);
    }
}
