//! Finite categories with explicit composition tables, functors, natural
//! transformations, and the constructions on them: products, coproducts,
//! functor categories, homotopy-finiteness, and equivalence detection.
//!
//! Objects and morphisms are interned integer ids. Every enumeration is
//! lexicographic on id sequences, so all operations are deterministic.

use crate::budget::Limits;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Shared handle to an immutable finite category.
pub type Cat = Arc<FinCat>;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Mor {
    src: usize,
    tgt: usize,
}

/// Composition table, dense when |Mor|^2 is small and sparse above a
/// threshold (functor categories grow fast).
#[derive(Debug, Clone, PartialEq, Eq)]
enum ComposeTable {
    Dense(Vec<u32>), // index g * n_mor + f; u32::MAX means undefined
    Sparse(BTreeMap<(u32, u32), u32>),
}

const DENSE_LIMIT: usize = 1_000_000;
const UNDEF: u32 = u32::MAX;

/// A finite category: object and morphism ids, identities, and a composition
/// table defined exactly on composable pairs.
#[derive(Debug, Clone)]
pub struct FinCat {
    pub name: String,
    n_objects: usize,
    morphisms: Vec<Mor>,
    identity: Vec<usize>,
    table: ComposeTable,
    obj_labels: Vec<String>,
    mor_labels: Vec<String>,
    key: Vec<u64>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for FinCat {}

impl FinCat {
    pub fn n_objects(&self) -> usize {
        self.n_objects
    }
    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }
    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }
    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }
    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }
    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src(f)] == f
    }
    pub fn obj_label(&self, x: usize) -> &str {
        &self.obj_labels[x]
    }
    pub fn mor_label(&self, f: usize) -> &str {
        &self.mor_labels[f]
    }

    /// Canonical structural encoding; equal categories have equal keys.
    pub fn key(&self) -> &[u64] {
        &self.key
    }

    /// `g ∘ f`, defined exactly when `tgt(f) = src(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        match &self.table {
            ComposeTable::Dense(t) => {
                let v = t[g * self.morphisms.len() + f];
                if v == UNDEF {
                    None
                } else {
                    Some(v as usize)
                }
            }
            ComposeTable::Sparse(m) => m.get(&(g as u32, f as u32)).map(|&v| v as usize),
        }
    }

    /// Morphism ids from `x` to `y` in id order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.src(f) == x && self.tgt(f) == y)
            .collect()
    }

    /// Two-sided inverse of `f`, when one exists.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (x, y) = (self.src(f), self.tgt(f));
        self.hom(y, x).into_iter().find(|&g| {
            self.compose(g, f) == Some(self.identity(x))
                && self.compose(f, g) == Some(self.identity(y))
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    /// Checks every category law, reporting the first violation with its
    /// witnessing morphisms. Structural problems were already rejected at
    /// construction time, so everything here is a law check.
    pub fn validate(&self) -> Result<()> {
        for x in 0..self.n_objects {
            let i = self.identity[x];
            if self.src(i) != x || self.tgt(i) != x {
                return Err(Error::LawViolation(format!(
                    "identity of object {} has src/tgt {}->{}",
                    self.obj_label(x),
                    self.obj_label(self.src(i)),
                    self.obj_label(self.tgt(i))
                )));
            }
        }
        let n = self.morphisms.len();
        for g in 0..n {
            for f in 0..n {
                let composable = self.tgt(f) == self.src(g);
                match self.compose(g, f) {
                    Some(gf) => {
                        if !composable {
                            return Err(Error::LawViolation(format!(
                                "compose({},{}) defined on a non-composable pair",
                                self.mor_label(g),
                                self.mor_label(f)
                            )));
                        }
                        if self.src(gf) != self.src(f) || self.tgt(gf) != self.tgt(g) {
                            return Err(Error::LawViolation(format!(
                                "src/tgt mismatch: {}∘{} = {} has wrong endpoints",
                                self.mor_label(g),
                                self.mor_label(f),
                                self.mor_label(gf)
                            )));
                        }
                    }
                    None => {
                        if composable {
                            return Err(Error::LawViolation(format!(
                                "compose({},{}) undefined on a composable pair",
                                self.mor_label(g),
                                self.mor_label(f)
                            )));
                        }
                    }
                }
            }
        }
        for f in 0..n {
            let il = self.identity[self.tgt(f)];
            let ir = self.identity[self.src(f)];
            if self.compose(il, f) != Some(f) || self.compose(f, ir) != Some(f) {
                return Err(Error::LawViolation(format!(
                    "identity law fails at {}",
                    self.mor_label(f)
                )));
            }
        }
        // Associativity on every composable triple.
        for f in 0..n {
            for g in self.hom_from(self.tgt(f)) {
                let gf = self.compose(g, f).unwrap();
                for h in self.hom_from(self.tgt(g)) {
                    let hg = self.compose(h, g).unwrap();
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(Error::LawViolation(format!(
                            "associativity fails on triple ({},{},{})",
                            self.mor_label(h),
                            self.mor_label(g),
                            self.mor_label(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn hom_from(&self, x: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.src(f) == x)
            .collect()
    }

    /// True iff the category is finite, skeletal, and admits no nontrivial
    /// endomorphisms. Skeletality is decided by searching inverse pairs in
    /// the composition table.
    pub fn is_homotopy_finite(&self) -> bool {
        for f in 0..self.morphisms.len() {
            if self.src(f) == self.tgt(f) && !self.is_identity(f) {
                return false;
            }
        }
        for x in 0..self.n_objects {
            for y in (x + 1)..self.n_objects {
                for f in self.hom(x, y) {
                    if self.is_iso(f) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Incremental constructor; `finish` runs structural checks (dangling
/// references are input-format errors, not law violations).
#[derive(Debug, Default)]
pub struct FinCatBuilder {
    name: String,
    obj_labels: Vec<String>,
    morphisms: Vec<Mor>,
    mor_labels: Vec<String>,
    identity: BTreeMap<usize, usize>,
    compose: Vec<(usize, usize, usize)>,
}

impl FinCatBuilder {
    pub fn new(name: &str) -> Self {
        FinCatBuilder {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn add_object(&mut self, label: &str) -> usize {
        self.obj_labels.push(label.to_string());
        self.obj_labels.len() - 1
    }

    pub fn add_morphism(&mut self, label: &str, src: usize, tgt: usize) -> usize {
        self.morphisms.push(Mor { src, tgt });
        self.mor_labels.push(label.to_string());
        self.morphisms.len() - 1
    }

    pub fn set_identity(&mut self, obj: usize, mor: usize) {
        self.identity.insert(obj, mor);
    }

    pub fn set_compose(&mut self, g: usize, f: usize, gf: usize) {
        self.compose.push((g, f, gf));
    }

    /// Builds the category. Identity composites may be omitted from the
    /// table; they are inferred from the identity assignment.
    pub fn finish(self) -> Result<FinCat> {
        let n_obj = self.obj_labels.len();
        let n_mor = self.morphisms.len();
        for (i, m) in self.morphisms.iter().enumerate() {
            if m.src >= n_obj || m.tgt >= n_obj {
                return Err(Error::InputFormat(format!(
                    "morphism {} references missing object",
                    self.mor_labels[i]
                )));
            }
        }
        let mut identity = Vec::with_capacity(n_obj);
        for x in 0..n_obj {
            match self.identity.get(&x) {
                Some(&m) if m < n_mor => identity.push(m),
                Some(_) => {
                    return Err(Error::InputFormat(format!(
                        "identity of object {} references missing morphism",
                        self.obj_labels[x]
                    )))
                }
                None => {
                    return Err(Error::InputFormat(format!(
                        "object {} has no identity",
                        self.obj_labels[x]
                    )))
                }
            }
        }
        let mut entries: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (g, f, gf) in &self.compose {
            if *g >= n_mor || *f >= n_mor || *gf >= n_mor {
                return Err(Error::InputFormat(format!(
                    "compose entry ({g},{f},{gf}) references missing morphism"
                )));
            }
            if let Some(prev) = entries.insert((*g, *f), *gf) {
                if prev != *gf {
                    return Err(Error::InputFormat(format!(
                        "conflicting compose entries for ({g},{f})"
                    )));
                }
            }
        }
        // Infer identity composites that were omitted.
        for f in 0..n_mor {
            let il = identity[self.morphisms[f].tgt];
            let ir = identity[self.morphisms[f].src];
            entries.entry((il, f)).or_insert(f);
            entries.entry((f, ir)).or_insert(f);
        }
        let table = if n_mor * n_mor <= DENSE_LIMIT {
            let mut t = vec![UNDEF; n_mor * n_mor];
            for (&(g, f), &gf) in &entries {
                t[g * n_mor + f] = gf as u32;
            }
            ComposeTable::Dense(t)
        } else {
            ComposeTable::Sparse(
                entries
                    .iter()
                    .map(|(&(g, f), &gf)| ((g as u32, f as u32), gf as u32))
                    .collect(),
            )
        };
        let mut key = vec![n_obj as u64, n_mor as u64];
        for m in &self.morphisms {
            key.push(m.src as u64);
            key.push(m.tgt as u64);
        }
        key.extend(identity.iter().map(|&i| i as u64));
        for (&(g, f), &gf) in &entries {
            key.push(g as u64);
            key.push(f as u64);
            key.push(gf as u64);
        }
        Ok(FinCat {
            name: self.name,
            n_objects: n_obj,
            morphisms: self.morphisms,
            identity,
            table,
            obj_labels: self.obj_labels,
            mor_labels: self.mor_labels,
            key,
        })
    }
}

/// The linear poset `[n]` with `n+1` objects.
pub fn ordinal(n: usize) -> Cat {
    let mut b = FinCatBuilder::new(&format!("[{n}]"));
    for i in 0..=n {
        b.add_object(&i.to_string());
    }
    let mut ids = BTreeMap::new();
    for i in 0..=n {
        for j in i..=n {
            let m = b.add_morphism(&format!("{i}<={j}"), i, j);
            ids.insert((i, j), m);
            if i == j {
                b.set_identity(i, m);
            }
        }
    }
    for i in 0..=n {
        for j in i..=n {
            for k in j..=n {
                b.set_compose(ids[&(j, k)], ids[&(i, j)], ids[&(i, k)]);
            }
        }
    }
    Arc::new(b.finish().expect("ordinal is well formed"))
}

/// The span shape `• ← • → •`: objects L, C, R with C → L and C → R.
pub fn span() -> Cat {
    let objects = 3;
    let mut leq = vec![(0usize, 0usize), (1, 1), (2, 2), (1, 0), (1, 2)];
    leq.sort();
    Arc::new(poset("span", objects, &leq).expect("span is a poset"))
}

/// The free-living isomorphism: two objects with two mutually inverse
/// non-identity morphisms.
pub fn iso_interval() -> Cat {
    let mut b = FinCatBuilder::new("I");
    let a = b.add_object("a");
    let z = b.add_object("b");
    let ia = b.add_morphism("id_a", a, a);
    let iz = b.add_morphism("id_b", z, z);
    let u = b.add_morphism("u", a, z);
    let v = b.add_morphism("v", z, a);
    b.set_identity(a, ia);
    b.set_identity(z, iz);
    b.set_compose(v, u, ia);
    b.set_compose(u, v, iz);
    Arc::new(b.finish().expect("iso interval is well formed"))
}

/// Codiscrete category on two objects; in this finite setting it coincides
/// with [`iso_interval`].
pub fn codiscrete_pair() -> Cat {
    iso_interval()
}

/// Thin category of a partial order given as `(a, b)` pairs meaning `a ≤ b`.
/// Reflexive pairs may be omitted. Fails on non-antisymmetric or
/// non-transitive input.
pub fn poset(name: &str, objects: usize, leq: &[(usize, usize)]) -> Result<FinCat> {
    let mut rel = vec![vec![false; objects]; objects];
    for &(a, b) in leq {
        if a >= objects || b >= objects {
            return Err(Error::InputFormat(format!(
                "relation pair ({a},{b}) references missing element"
            )));
        }
        rel[a][b] = true;
    }
    for (x, row) in rel.iter_mut().enumerate() {
        row[x] = true;
    }
    for a in 0..objects {
        for b in 0..objects {
            if rel[a][b] && rel[b][a] && a != b {
                return Err(Error::InputFormat(format!(
                    "relation is not antisymmetric at ({a},{b})"
                )));
            }
            if rel[a][b] {
                for c in 0..objects {
                    if rel[b][c] && !rel[a][c] {
                        return Err(Error::InputFormat(format!(
                            "relation is not transitive at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
    }
    let mut b = FinCatBuilder::new(name);
    for i in 0..objects {
        b.add_object(&i.to_string());
    }
    let mut ids = BTreeMap::new();
    for x in 0..objects {
        for y in 0..objects {
            if rel[x][y] {
                let m = b.add_morphism(&format!("{x}<={y}"), x, y);
                ids.insert((x, y), m);
                if x == y {
                    b.set_identity(x, m);
                }
            }
        }
    }
    for (&(x, y), &f) in &ids {
        for (&(y2, z), &g) in &ids {
            if y2 == y {
                b.set_compose(g, f, ids[&(x, z)]);
            }
        }
    }
    b.finish()
}

/// Categorical product with its two projections.
pub fn product(a: &Cat, b: &Cat) -> (Cat, CatFunctor, CatFunctor) {
    let mut bld = FinCatBuilder::new(&format!("{}x{}", a.name, b.name));
    for ia in 0..a.n_objects() {
        for ib in 0..b.n_objects() {
            bld.add_object(&format!("({},{})", a.obj_label(ia), b.obj_label(ib)));
        }
    }
    let nbm = b.n_morphisms();
    for fa in 0..a.n_morphisms() {
        for fb in 0..nbm {
            bld.add_morphism(
                &format!("({},{})", a.mor_label(fa), b.mor_label(fb)),
                a.src(fa) * b.n_objects() + b.src(fb),
                a.tgt(fa) * b.n_objects() + b.tgt(fb),
            );
        }
    }
    for ia in 0..a.n_objects() {
        for ib in 0..b.n_objects() {
            bld.set_identity(
                ia * b.n_objects() + ib,
                a.identity(ia) * nbm + b.identity(ib),
            );
        }
    }
    for ga in 0..a.n_morphisms() {
        for fa in 0..a.n_morphisms() {
            if let Some(ha) = a.compose(ga, fa) {
                for gb in 0..nbm {
                    for fb in 0..nbm {
                        if let Some(hb) = b.compose(gb, fb) {
                            bld.set_compose(ga * nbm + gb, fa * nbm + fb, ha * nbm + hb);
                        }
                    }
                }
            }
        }
    }
    let p = Arc::new(bld.finish().expect("product is well formed"));
    let pr1 = CatFunctor {
        dom: p.clone(),
        cod: a.clone(),
        obj_map: (0..p.n_objects()).map(|o| o / b.n_objects()).collect(),
        mor_map: (0..p.n_morphisms()).map(|m| m / nbm).collect(),
    };
    let pr2 = CatFunctor {
        dom: p.clone(),
        cod: b.clone(),
        obj_map: (0..p.n_objects()).map(|o| o % b.n_objects()).collect(),
        mor_map: (0..p.n_morphisms()).map(|m| m % nbm).collect(),
    };
    (p, pr1, pr2)
}

/// Disjoint union with its two injections.
pub fn coproduct(a: &Cat, b: &Cat) -> (Cat, CatFunctor, CatFunctor) {
    let mut bld = FinCatBuilder::new(&format!("{}+{}", a.name, b.name));
    for ia in 0..a.n_objects() {
        bld.add_object(&format!("l.{}", a.obj_label(ia)));
    }
    for ib in 0..b.n_objects() {
        bld.add_object(&format!("r.{}", b.obj_label(ib)));
    }
    let oo = a.n_objects();
    let mo = a.n_morphisms();
    for fa in 0..a.n_morphisms() {
        bld.add_morphism(&format!("l.{}", a.mor_label(fa)), a.src(fa), a.tgt(fa));
    }
    for fb in 0..b.n_morphisms() {
        bld.add_morphism(
            &format!("r.{}", b.mor_label(fb)),
            b.src(fb) + oo,
            b.tgt(fb) + oo,
        );
    }
    for ia in 0..a.n_objects() {
        bld.set_identity(ia, a.identity(ia));
    }
    for ib in 0..b.n_objects() {
        bld.set_identity(ib + oo, b.identity(ib) + mo);
    }
    for g in 0..a.n_morphisms() {
        for f in 0..a.n_morphisms() {
            if let Some(gf) = a.compose(g, f) {
                bld.set_compose(g, f, gf);
            }
        }
    }
    for g in 0..b.n_morphisms() {
        for f in 0..b.n_morphisms() {
            if let Some(gf) = b.compose(g, f) {
                bld.set_compose(g + mo, f + mo, gf + mo);
            }
        }
    }
    let c = Arc::new(bld.finish().expect("coproduct is well formed"));
    let inj1 = CatFunctor {
        dom: a.clone(),
        cod: c.clone(),
        obj_map: (0..a.n_objects()).collect(),
        mor_map: (0..a.n_morphisms()).collect(),
    };
    let inj2 = CatFunctor {
        dom: b.clone(),
        cod: c.clone(),
        obj_map: (0..b.n_objects()).map(|o| o + oo).collect(),
        mor_map: (0..b.n_morphisms()).map(|m| m + mo).collect(),
    };
    (c, inj1, inj2)
}

/// A functor between finite categories, stored as total maps on ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatFunctor {
    pub dom: Cat,
    pub cod: Cat,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl CatFunctor {
    pub fn identity(c: &Cat) -> CatFunctor {
        CatFunctor {
            dom: c.clone(),
            cod: c.clone(),
            obj_map: (0..c.n_objects()).collect(),
            mor_map: (0..c.n_morphisms()).collect(),
        }
    }

    pub fn ob(&self, x: usize) -> usize {
        self.obj_map[x]
    }
    pub fn mor(&self, f: usize) -> usize {
        self.mor_map[f]
    }

    /// Exhaustive functor-law check: src/tgt, identities, composition.
    pub fn validate(&self) -> Result<()> {
        if self.obj_map.len() != self.dom.n_objects() || self.mor_map.len() != self.dom.n_morphisms()
        {
            return Err(Error::InputFormat("functor maps have wrong length".into()));
        }
        for f in 0..self.dom.n_morphisms() {
            let m = self.mor_map[f];
            if m >= self.cod.n_morphisms() {
                return Err(Error::InputFormat(format!(
                    "functor sends {} outside the codomain",
                    self.dom.mor_label(f)
                )));
            }
            if self.cod.src(m) != self.obj_map[self.dom.src(f)]
                || self.cod.tgt(m) != self.obj_map[self.dom.tgt(f)]
            {
                return Err(Error::LawViolation(format!(
                    "functor breaks src/tgt at {}",
                    self.dom.mor_label(f)
                )));
            }
        }
        for x in 0..self.dom.n_objects() {
            if self.mor_map[self.dom.identity(x)] != self.cod.identity(self.obj_map[x]) {
                return Err(Error::LawViolation(format!(
                    "functor breaks identity at object {}",
                    self.dom.obj_label(x)
                )));
            }
        }
        for g in 0..self.dom.n_morphisms() {
            for f in 0..self.dom.n_morphisms() {
                if let Some(gf) = self.dom.compose(g, f) {
                    if self.cod.compose(self.mor_map[g], self.mor_map[f]) != Some(self.mor_map[gf])
                    {
                        return Err(Error::LawViolation(format!(
                            "functor breaks composition at ({},{})",
                            self.dom.mor_label(g),
                            self.dom.mor_label(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &CatFunctor) -> CatFunctor {
        assert_eq!(
            other.cod.key(),
            self.dom.key(),
            "functor composition endpoint mismatch"
        );
        CatFunctor {
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            obj_map: other.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            mor_map: other.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        }
    }

    /// Fully faithful and essentially surjective, both decided exhaustively.
    pub fn is_equivalence(&self) -> bool {
        for x in 0..self.dom.n_objects() {
            for y in 0..self.dom.n_objects() {
                let dom_hom = self.dom.hom(x, y);
                let cod_hom = self.cod.hom(self.obj_map[x], self.obj_map[y]);
                let mut images: Vec<usize> = dom_hom.iter().map(|&f| self.mor_map[f]).collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != dom_hom.len() || images.len() != cod_hom.len() {
                    return false;
                }
            }
        }
        'outer: for z in 0..self.cod.n_objects() {
            for x in 0..self.dom.n_objects() {
                let fx = self.obj_map[x];
                if fx == z || self.cod.hom(fx, z).iter().any(|&f| self.cod.is_iso(f)) {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }
}

/// Functoriality of the product: `f × g` between already-built products.
pub fn product_functor(
    f: &CatFunctor,
    g: &CatFunctor,
    dom_prod: &Cat,
    cod_prod: &Cat,
) -> CatFunctor {
    let (dbo, dbm) = (g.dom.n_objects(), g.dom.n_morphisms());
    let (cbo, cbm) = (g.cod.n_objects(), g.cod.n_morphisms());
    let out = CatFunctor {
        dom: dom_prod.clone(),
        cod: cod_prod.clone(),
        obj_map: (0..dom_prod.n_objects())
            .map(|o| f.obj_map[o / dbo] * cbo + g.obj_map[o % dbo])
            .collect(),
        mor_map: (0..dom_prod.n_morphisms())
            .map(|m| f.mor_map[m / dbm] * cbm + g.mor_map[m % dbm])
            .collect(),
    };
    debug_assert!(out.validate().is_ok());
    out
}

/// A natural transformation between parallel functors, stored by components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatNatTransf {
    pub source: CatFunctor,
    pub target: CatFunctor,
    pub components: Vec<usize>,
}

impl CatNatTransf {
    pub fn identity(f: &CatFunctor) -> CatNatTransf {
        CatNatTransf {
            source: f.clone(),
            target: f.clone(),
            components: (0..f.dom.n_objects())
                .map(|x| f.cod.identity(f.obj_map[x]))
                .collect(),
        }
    }

    /// Checks well-typed components and every naturality square.
    pub fn validate(&self) -> Result<()> {
        let dom = &self.source.dom;
        let cod = &self.source.cod;
        if self.source.dom.key() != self.target.dom.key()
            || self.source.cod.key() != self.target.cod.key()
        {
            return Err(Error::InputFormat(
                "natural transformation between non-parallel functors".into(),
            ));
        }
        for x in 0..dom.n_objects() {
            let c = self.components[x];
            if cod.src(c) != self.source.obj_map[x] || cod.tgt(c) != self.target.obj_map[x] {
                return Err(Error::LawViolation(format!(
                    "component at {} has wrong endpoints",
                    dom.obj_label(x)
                )));
            }
        }
        for f in 0..dom.n_morphisms() {
            let (x, y) = (dom.src(f), dom.tgt(f));
            let left = cod.compose(self.components[y], self.source.mor_map[f]);
            let right = cod.compose(self.target.mor_map[f], self.components[x]);
            if left != right || left.is_none() {
                return Err(Error::LawViolation(format!(
                    "naturality square fails at {}",
                    dom.mor_label(f)
                )));
            }
        }
        Ok(())
    }

    /// Vertical composition `other ∘ self` (self first).
    pub fn vcompose(&self, other: &CatNatTransf) -> CatNatTransf {
        assert_eq!(self.target, other.source, "vertical composition mismatch");
        let cod = &self.source.cod;
        CatNatTransf {
            source: self.source.clone(),
            target: other.target.clone(),
            components: (0..self.components.len())
                .map(|x| {
                    cod.compose(other.components[x], self.components[x])
                        .expect("components compose")
                })
                .collect(),
        }
    }
}

/// All functors `j → k` in lexicographic order on `(obj_map, mor_map)`.
pub fn enumerate_functors(j: &Cat, k: &Cat, limits: &Limits) -> Result<Vec<CatFunctor>> {
    let counter = limits.counter(&format!("functor enumeration {} -> {}", j.name, k.name));
    // Composition triples of j, checked as soon as all three images exist.
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for g in 0..j.n_morphisms() {
        for f in 0..j.n_morphisms() {
            if let Some(gf) = j.compose(g, f) {
                triples.push((g, f, gf));
            }
        }
    }
    let mut by_last: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); j.n_morphisms().max(1)];
    for &(g, f, gf) in &triples {
        let last = g.max(f).max(gf);
        if j.n_morphisms() > 0 {
            by_last[last].push((g, f, gf));
        }
    }

    let mut out = Vec::new();
    let mut obj_map = vec![0usize; j.n_objects()];
    let mut mor_map = vec![usize::MAX; j.n_morphisms()];

    fn assign_mors(
        j: &Cat,
        k: &Cat,
        obj_map: &[usize],
        mor_map: &mut Vec<usize>,
        by_last: &[Vec<(usize, usize, usize)>],
        next: usize,
        counter: &crate::budget::Counter,
        out: &mut Vec<CatFunctor>,
    ) -> Result<()> {
        if next == j.n_morphisms() {
            out.push(CatFunctor {
                dom: j.clone(),
                cod: k.clone(),
                obj_map: obj_map.to_vec(),
                mor_map: mor_map.clone(),
            });
            return Ok(());
        }
        let (s, t) = (j.src(next), j.tgt(next));
        let candidates: Vec<usize> = if j.is_identity(next) && j.identity(s) == next {
            vec![k.identity(obj_map[s])]
        } else {
            k.hom(obj_map[s], obj_map[t])
        };
        'cand: for c in candidates {
            counter.step()?;
            mor_map[next] = c;
            for &(g, f, gf) in &by_last[next] {
                if k.compose(mor_map[g], mor_map[f]) != Some(mor_map[gf]) {
                    continue 'cand;
                }
            }
            assign_mors(j, k, obj_map, mor_map, by_last, next + 1, counter, out)?;
        }
        mor_map[next] = usize::MAX;
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_objs(
        j: &Cat,
        k: &Cat,
        obj_map: &mut Vec<usize>,
        mor_map: &mut Vec<usize>,
        by_last: &[Vec<(usize, usize, usize)>],
        hom_nonempty: &[Vec<bool>],
        next: usize,
        counter: &crate::budget::Counter,
        out: &mut Vec<CatFunctor>,
    ) -> Result<()> {
        if next == j.n_objects() {
            return assign_mors(j, k, obj_map, mor_map, by_last, 0, counter, out);
        }
        'cand: for c in 0..k.n_objects() {
            counter.step()?;
            // A candidate image is viable only if every hom-set into or out
            // of already-placed objects stays inhabited.
            for f in 0..j.n_morphisms() {
                let (s, t) = (j.src(f), j.tgt(f));
                if s.max(t) > next || (s != next && t != next) {
                    continue;
                }
                let (is_, it) = (
                    if s == next { c } else { obj_map[s] },
                    if t == next { c } else { obj_map[t] },
                );
                if !hom_nonempty[is_][it] {
                    continue 'cand;
                }
            }
            obj_map[next] = c;
            assign_objs(
                j, k, obj_map, mor_map, by_last, hom_nonempty, next + 1, counter, out,
            )?;
        }
        Ok(())
    }

    if j.n_objects() == 0 {
        out.push(CatFunctor {
            dom: j.clone(),
            cod: k.clone(),
            obj_map: vec![],
            mor_map: vec![],
        });
        return Ok(out);
    }
    if k.n_objects() == 0 {
        return Ok(out);
    }
    let mut hom_nonempty = vec![vec![false; k.n_objects()]; k.n_objects()];
    for f in 0..k.n_morphisms() {
        hom_nonempty[k.src(f)][k.tgt(f)] = true;
    }
    assign_objs(
        j,
        k,
        &mut obj_map,
        &mut mor_map,
        &by_last,
        &hom_nonempty,
        0,
        &counter,
        &mut out,
    )?;
    Ok(out)
}

/// All natural transformations `source ⇒ target` in lexicographic component
/// order.
pub fn enumerate_nat_transfs(
    source: &CatFunctor,
    target: &CatFunctor,
    limits: &Limits,
) -> Result<Vec<CatNatTransf>> {
    let dom = &source.dom;
    let counter = limits.counter("natural transformation enumeration");
    let mut out = Vec::new();
    let mut components = vec![usize::MAX; dom.n_objects()];

    fn rec(
        source: &CatFunctor,
        target: &CatFunctor,
        components: &mut Vec<usize>,
        next: usize,
        counter: &crate::budget::Counter,
        out: &mut Vec<CatNatTransf>,
    ) -> Result<()> {
        let dom = &source.dom;
        let cod = &source.cod;
        if next == dom.n_objects() {
            out.push(CatNatTransf {
                source: source.clone(),
                target: target.clone(),
                components: components.clone(),
            });
            return Ok(());
        }
        'cand: for c in cod.hom(source.obj_map[next], target.obj_map[next]) {
            counter.step()?;
            components[next] = c;
            // Naturality against every morphism with both endpoints assigned.
            for f in 0..dom.n_morphisms() {
                let (x, y) = (dom.src(f), dom.tgt(f));
                if x.max(y) > next {
                    continue;
                }
                let left = cod.compose(components[y], source.mor_map[f]);
                let right = cod.compose(target.mor_map[f], components[x]);
                if left != right {
                    continue 'cand;
                }
            }
            rec(source, target, components, next + 1, counter, out)?;
        }
        components[next] = usize::MAX;
        Ok(())
    }

    rec(source, target, &mut components, 0, &counter, &mut out)?;
    Ok(out)
}

/// The functor category `k^j` together with its object and morphism data.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub cat: Cat,
    /// Objects of `cat` in id order.
    pub functors: Vec<CatFunctor>,
    /// Morphisms of `cat` in id order: `(source object, target object,
    /// components)`.
    pub transfs: Vec<(usize, usize, Vec<usize>)>,
    obj_index: BTreeMap<(Vec<usize>, Vec<usize>), usize>,
    mor_index: BTreeMap<(usize, usize, Vec<usize>), usize>,
}

impl FunctorCategory {
    /// Id of a functor given by its maps.
    pub fn object_of(&self, f: &CatFunctor) -> Option<usize> {
        self.obj_index
            .get(&(f.obj_map.clone(), f.mor_map.clone()))
            .copied()
    }

    /// Id of the transformation with the given endpoints and components.
    pub fn morphism_of(&self, src: usize, tgt: usize, components: &[usize]) -> Option<usize> {
        self.mor_index
            .get(&(src, tgt, components.to_vec()))
            .copied()
    }
}

/// Objects are the functors `j → k`; morphisms are natural transformations
/// under vertical composition.
pub fn functor_category(j: &Cat, k: &Cat, limits: &Limits) -> Result<FunctorCategory> {
    let functors = enumerate_functors(j, k, limits)?;
    let mut transfs: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (fi, f) in functors.iter().enumerate() {
        for (gi, g) in functors.iter().enumerate() {
            for t in enumerate_nat_transfs(f, g, limits)? {
                transfs.push((fi, gi, t.components));
            }
        }
    }
    let mut b = FinCatBuilder::new(&format!("{}^{}", k.name, j.name));
    for (fi, _) in functors.iter().enumerate() {
        b.add_object(&format!("F{fi}"));
    }
    let mut mor_index = BTreeMap::new();
    for (mi, (s, t, comps)) in transfs.iter().enumerate() {
        let m = b.add_morphism(&format!("t{mi}"), *s, *t);
        mor_index.insert((*s, *t, comps.clone()), m);
    }
    for (fi, f) in functors.iter().enumerate() {
        let idc: Vec<usize> = (0..j.n_objects())
            .map(|x| k.identity(f.obj_map[x]))
            .collect();
        b.set_identity(fi, mor_index[&(fi, fi, idc)]);
    }
    for (mi, (s1, t1, c1)) in transfs.iter().enumerate() {
        for (ni, (s2, t2, c2)) in transfs.iter().enumerate() {
            if t1 == s2 {
                let comps: Vec<usize> = (0..j.n_objects())
                    .map(|x| k.compose(c2[x], c1[x]).expect("components compose"))
                    .collect();
                let composite = mor_index[&(*s1, *t2, comps)];
                b.set_compose(ni, mi, composite);
            }
        }
    }
    let cat = Arc::new(b.finish()?);
    let mut obj_index = BTreeMap::new();
    for (fi, f) in functors.iter().enumerate() {
        obj_index.insert((f.obj_map.clone(), f.mor_map.clone()), fi);
    }
    Ok(FunctorCategory {
        cat,
        functors,
        transfs,
        obj_index,
        mor_index,
    })
}

/// Searches for an isomorphism of categories `a → b`. Intended for small
/// fixtures; the search is exhaustive over functor enumerations.
pub fn find_cat_iso(a: &Cat, b: &Cat, limits: &Limits) -> Result<Option<CatFunctor>> {
    if a.n_objects() != b.n_objects() || a.n_morphisms() != b.n_morphisms() {
        return Ok(None);
    }
    for f in enumerate_functors(a, b, limits)? {
        let mut objs: Vec<usize> = f.obj_map.clone();
        objs.sort_unstable();
        objs.dedup();
        let mut mors: Vec<usize> = f.mor_map.clone();
        mors.sort_unstable();
        mors.dedup();
        if objs.len() == a.n_objects() && mors.len() == a.n_morphisms() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    // Test-side oracle: monotone maps between posets by brute force over all
    // assignments, independent of the functor enumeration path.
    fn count_monotone(p: &[(usize, usize)], np: usize, q: &[(usize, usize)], nq: usize) -> usize {
        let in_q: Vec<Vec<bool>> = {
            let mut r = vec![vec![false; nq]; nq];
            for &(a, b) in q {
                r[a][b] = true;
            }
            for (x, row) in r.iter_mut().enumerate() {
                row[x] = true;
            }
            r
        };
        let mut count = 0;
        let total = (nq as u64).pow(np as u32);
        for code in 0..total {
            let mut assign = Vec::with_capacity(np);
            let mut c = code;
            for _ in 0..np {
                assign.push((c % nq as u64) as usize);
                c /= nq as u64;
            }
            let ok = p
                .iter()
                .all(|&(a, b)| in_q[assign[a]][assign[b]])
                && (0..np).all(|x| in_q[assign[x]][assign[x]]);
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn ordinal_counts_and_laws() {
        let c = ordinal(1);
        assert_eq!(c.n_objects(), 2);
        assert_eq!(c.n_morphisms(), 3);
        c.validate().unwrap();
        let c2 = ordinal(2);
        assert_eq!(c2.n_objects(), 3);
        assert_eq!(c2.n_morphisms(), 6);
        c2.validate().unwrap();
    }

    #[test]
    fn span_and_iso_interval_counts() {
        let s = span();
        assert_eq!(s.n_objects(), 3);
        assert_eq!(s.n_morphisms(), 5);
        s.validate().unwrap();
        let i = iso_interval();
        assert_eq!(i.n_objects(), 2);
        assert_eq!(i.n_morphisms(), 4);
        i.validate().unwrap();
    }

    #[test]
    fn validate_rejects_broken_tables() {
        // compose(g, f) with wrong src: force 1<=1 ∘ 0<=1 = 0<=0.
        let mut b = FinCatBuilder::new("bad");
        b.add_object("0");
        b.add_object("1");
        let i0 = b.add_morphism("id0", 0, 0);
        let i1 = b.add_morphism("id1", 1, 1);
        let f = b.add_morphism("f", 0, 1);
        b.set_identity(0, i0);
        b.set_identity(1, i1);
        b.set_compose(i1, f, i0);
        let c = b.finish().unwrap();
        match c.validate() {
            Err(Error::LawViolation(m)) => assert!(m.contains("identity law") || m.contains("mismatch")),
            other => panic!("expected law violation, got {other:?}"),
        }

        // Dangling reference is an input-format error, not a law violation.
        let mut b2 = FinCatBuilder::new("dangling");
        b2.add_object("0");
        let i = b2.add_morphism("id0", 0, 0);
        b2.set_identity(0, i);
        b2.set_compose(i, i, 7);
        assert!(matches!(b2.finish(), Err(Error::InputFormat(_))));
    }

    #[test]
    fn validate_rejects_broken_associativity() {
        // Monoid-like table on one object with a non-associative entry.
        let mut b = FinCatBuilder::new("nonassoc");
        b.add_object("*");
        let e = b.add_morphism("e", 0, 0);
        let x = b.add_morphism("x", 0, 0);
        let y = b.add_morphism("y", 0, 0);
        b.set_identity(0, e);
        // x∘x = y, everything else collapses to x; then (x∘x)∘x = y∘x = x
        // but x∘(x∘x) = x∘y = y.
        b.set_compose(x, x, y);
        b.set_compose(y, x, x);
        b.set_compose(x, y, y);
        b.set_compose(y, y, x);
        let c = b.finish().unwrap();
        match c.validate() {
            Err(Error::LawViolation(m)) => assert!(m.contains("associativity")),
            other => panic!("expected associativity violation, got {other:?}"),
        }
    }

    #[test]
    fn homotopy_finiteness() {
        assert!(ordinal(0).is_homotopy_finite());
        assert!(ordinal(3).is_homotopy_finite());
        assert!(span().is_homotopy_finite());
        assert!(!iso_interval().is_homotopy_finite());
        // One object with a non-identity idempotent endomorphism.
        let mut b = FinCatBuilder::new("idem");
        b.add_object("*");
        let e = b.add_morphism("id", 0, 0);
        let p = b.add_morphism("p", 0, 0);
        b.set_identity(0, e);
        b.set_compose(p, p, p);
        let c = Arc::new(b.finish().unwrap());
        c.validate().unwrap();
        assert!(!c.is_homotopy_finite());
    }

    #[test]
    fn product_and_coproduct_counts() {
        let (p, pr1, pr2) = product(&ordinal(1), &ordinal(1));
        assert_eq!(p.n_objects(), 4);
        assert_eq!(p.n_morphisms(), 9);
        p.validate().unwrap();
        pr1.validate().unwrap();
        pr2.validate().unwrap();
        let (c, i1, i2) = coproduct(&ordinal(0), &ordinal(0));
        assert_eq!(c.n_objects(), 2);
        assert_eq!(c.n_morphisms(), 2);
        c.validate().unwrap();
        i1.validate().unwrap();
        i2.validate().unwrap();
        // product with the terminal category is isomorphic to the input
        let (q, _, _) = product(&span(), &ordinal(0));
        let iso = find_cat_iso(&q, &span(), &limits()).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn functor_enumeration_counts_match_oracle() {
        let l = limits();
        assert_eq!(enumerate_functors(&ordinal(1), &ordinal(2), &l).unwrap().len(), 6);
        assert_eq!(enumerate_functors(&span(), &ordinal(1), &l).unwrap().len(), 5);
        assert_eq!(enumerate_functors(&span(), &ordinal(0), &l).unwrap().len(), 1);
        // Oracle agreement on a few poset pairs.
        let chain = |n: usize| -> (Vec<(usize, usize)>, usize) {
            let mut r = vec![];
            for a in 0..=n {
                for b in a..=n {
                    r.push((a, b));
                }
            }
            (r, n + 1)
        };
        let (p1, n1) = chain(1);
        let (p2, n2) = chain(2);
        assert_eq!(count_monotone(&p1, n1, &p2, n2), 6);
        let sp = vec![(1, 0), (1, 2)];
        assert_eq!(count_monotone(&sp, 3, &p1, n1), 5);
        let fs = enumerate_functors(&span(), &ordinal(2), &l).unwrap();
        assert_eq!(fs.len(), 14);
        for f in &fs {
            f.validate().unwrap();
        }
        // No duplicates.
        let mut seen: Vec<(Vec<usize>, Vec<usize>)> =
            fs.iter().map(|f| (f.obj_map.clone(), f.mor_map.clone())).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), fs.len());
    }

    #[test]
    fn functor_enumeration_on_non_posets() {
        let l = limits();
        // Functors I -> I: 4 (two constants, identity, swap).
        let fs = enumerate_functors(&iso_interval(), &iso_interval(), &l).unwrap();
        assert_eq!(fs.len(), 4);
        // Functors I -> [1]: only the constants (a free iso cannot map to 0<=1).
        let fs = enumerate_functors(&iso_interval(), &ordinal(1), &l).unwrap();
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn functor_category_counts() {
        let l = limits();
        let fc = functor_category(&span(), &ordinal(2), &l).unwrap();
        assert_eq!(fc.cat.n_objects(), 14);
        fc.cat.validate().unwrap();
        let (sq, _, _) = product(&ordinal(1), &ordinal(1));
        let fc2 = functor_category(&span(), &sq, &l).unwrap();
        assert_eq!(fc2.cat.n_objects(), 25);
        let fc3 = functor_category(&ordinal(1), &ordinal(1), &l).unwrap();
        assert_eq!(fc3.cat.n_objects(), 3);
        assert_eq!(fc3.cat.n_morphisms(), 6);
        fc3.cat.validate().unwrap();
        // k^[0] is isomorphic to k at the level of counts.
        let fc4 = functor_category(&ordinal(0), &ordinal(2), &l).unwrap();
        assert_eq!(fc4.cat.n_objects(), 3);
        assert_eq!(fc4.cat.n_morphisms(), 6);
        // j^[0]-direction: functor_category(j, [0]) has one object, one morphism.
        let fc5 = functor_category(&span(), &ordinal(0), &l).unwrap();
        assert_eq!(fc5.cat.n_objects(), 1);
        assert_eq!(fc5.cat.n_morphisms(), 1);
    }

    #[test]
    fn equivalence_detection() {
        let l = limits();
        let id = CatFunctor::identity(&ordinal(2));
        assert!(id.is_equivalence());
        // The unique functor I -> [0] is an equivalence.
        let fs = enumerate_functors(&iso_interval(), &ordinal(0), &l).unwrap();
        assert_eq!(fs.len(), 1);
        assert!(fs[0].is_equivalence());
        // The inclusion [0] -> [1] is not essentially surjective.
        let inc = &enumerate_functors(&ordinal(0), &ordinal(1), &l).unwrap()[0];
        assert_eq!(inc.obj_map, vec![0]);
        assert!(!inc.is_equivalence());
    }

    #[test]
    fn product_universal_property_on_probes() {
        let l = limits();
        let (p, pr1, pr2) = product(&ordinal(1), &ordinal(1));
        for probe in [ordinal(0), ordinal(1), span()] {
            for f in enumerate_functors(&probe, &ordinal(1), &l).unwrap() {
                for g in enumerate_functors(&probe, &ordinal(1), &l).unwrap() {
                    let mediating: Vec<CatFunctor> = enumerate_functors(&probe, &p, &l)
                        .unwrap()
                        .into_iter()
                        .filter(|m| pr1.compose(m) == f && pr2.compose(m) == g)
                        .collect();
                    assert_eq!(mediating.len(), 1, "mediating functor must be unique");
                }
            }
        }
    }

    #[test]
    fn coproduct_universal_property_on_probes() {
        let l = limits();
        let (c, i1, i2) = coproduct(&ordinal(1), &ordinal(0));
        for probe in [ordinal(1), ordinal(2)] {
            for f in enumerate_functors(&ordinal(1), &probe, &l).unwrap() {
                for g in enumerate_functors(&ordinal(0), &probe, &l).unwrap() {
                    let mediating: Vec<CatFunctor> = enumerate_functors(&c, &probe, &l)
                        .unwrap()
                        .into_iter()
                        .filter(|m| m.compose(&i1) == f && m.compose(&i2) == g)
                        .collect();
                    assert_eq!(mediating.len(), 1);
                }
            }
        }
    }

    #[test]
    fn homotopy_finite_multiplicative_on_poset_probes() {
        for a in [ordinal(1), span()] {
            for b in [ordinal(0), ordinal(2)] {
                let (p, _, _) = product(&a, &b);
                assert_eq!(
                    p.is_homotopy_finite(),
                    a.is_homotopy_finite() && b.is_homotopy_finite()
                );
            }
        }
        let (p, _, _) = product(&ordinal(1), &iso_interval());
        assert!(!p.is_homotopy_finite());
    }

    #[test]
    fn large_chains_use_the_sparse_table() {
        // A chain long enough that |Mor|^2 crosses the dense limit.
        let c = ordinal(45);
        assert!(c.n_morphisms() * c.n_morphisms() > 1_000_000);
        c.validate().unwrap();
        assert!(c.is_homotopy_finite());
        let f = c.hom(0, 1)[0];
        let g = c.hom(1, 2)[0];
        assert_eq!(c.compose(g, f), Some(c.hom(0, 2)[0]));
    }

    #[test]
    fn poset_rejects_bad_relations() {
        assert!(matches!(
            poset("bad", 2, &[(0, 1), (1, 0)]),
            Err(Error::InputFormat(_))
        ));
        assert!(matches!(
            poset("bad", 3, &[(0, 1), (1, 2)]),
            Err(Error::InputFormat(_))
        ));
    }
}
