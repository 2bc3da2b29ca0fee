//! Free categories on finite graphs modulo finitely many relations, computed
//! by bounded congruence closure over composable words.
//!
//! The closure is exact when it stabilizes: every class must contain a word
//! of length at most `word_bound / 3`, which guarantees that compositions of
//! canonical representatives (and their reassociations) stay inside the
//! enumerated word set. Otherwise the computation reports `BoundExceeded`
//! with the number of unstabilized classes; that is a legitimate outcome
//! outside the fixture set.

use crate::budget::Limits;
use crate::error::{Error, Result};
use crate::fincat::{Cat, FinCatBuilder};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A word is a composable arrow sequence in diagrammatic order (first arrow
/// applied first). The source vertex disambiguates empty words.
pub type Word = (usize, Vec<usize>);

/// A presentation of a category: a generating graph and relations between
/// parallel words.
#[derive(Debug, Clone)]
pub struct CatPresentation {
    pub name: String,
    pub n_vertices: usize,
    pub vertex_labels: Vec<String>,
    /// `(src, tgt)` per arrow.
    pub arrows: Vec<(usize, usize)>,
    pub arrow_labels: Vec<String>,
    pub relations: Vec<(Word, Word)>,
}

impl CatPresentation {
    fn word_tgt(&self, w: &Word) -> usize {
        w.1.last().map(|&a| self.arrows[a].1).unwrap_or(w.0)
    }

    fn word_is_composable(&self, w: &Word) -> bool {
        let mut at = w.0;
        for &a in &w.1 {
            if self.arrows[a].0 != at {
                return false;
            }
            at = self.arrows[a].1;
        }
        true
    }
}

/// The quotient category together with the class map on words.
#[derive(Debug, Clone)]
pub struct QuotientCat {
    pub cat: Cat,
    classes: BTreeMap<Word, usize>,
    /// Canonical representative of each morphism id.
    pub reps: Vec<Word>,
}

impl QuotientCat {
    /// Morphism id of a word, when the word was inside the enumerated set.
    pub fn class_of(&self, w: &Word) -> Option<usize> {
        self.classes.get(w).copied()
    }
}

struct Uf {
    parent: Vec<usize>,
}
impl Uf {
    fn new(n: usize) -> Self {
        Uf {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}

/// Quotients the free category on the presentation's graph by the congruence
/// its relations generate, over words of length at most `word_bound`.
pub fn quotient_category(
    pres: &CatPresentation,
    word_bound: usize,
    limits: &Limits,
) -> Result<QuotientCat> {
    for (w1, w2) in &pres.relations {
        if !pres.word_is_composable(w1) || !pres.word_is_composable(w2) {
            return Err(Error::InputFormat(format!(
                "{}: relation words are not composable paths",
                pres.name
            )));
        }
        if w1.0 != w2.0 || pres.word_tgt(w1) != pres.word_tgt(w2) {
            return Err(Error::InputFormat(format!(
                "{}: relation endpoints do not match",
                pres.name
            )));
        }
        if w1.1.len() > word_bound || w2.1.len() > word_bound {
            return Err(Error::BoundExceeded(format!(
                "{}: relation longer than the word bound",
                pres.name
            )));
        }
    }

    // Enumerate composable words up to the bound, grouped by length.
    let counter = limits.counter(&format!("word enumeration for {}", pres.name));
    let mut words: Vec<Word> = (0..pres.n_vertices).map(|v| (v, vec![])).collect();
    let mut index: BTreeMap<Word, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let mut arrows_from: Vec<Vec<usize>> = vec![Vec::new(); pres.n_vertices];
    for (a, &(s, _)) in pres.arrows.iter().enumerate() {
        arrows_from[s].push(a);
    }
    let mut frontier: Vec<usize> = (0..words.len()).collect();
    for _len in 1..=word_bound {
        let mut next = Vec::new();
        for &wi in &frontier {
            let tgt = pres.word_tgt(&words[wi]);
            for &a in &arrows_from[tgt] {
                counter.step()?;
                let mut arr = words[wi].1.clone();
                arr.push(a);
                let w = (words[wi].0, arr);
                if !index.contains_key(&w) {
                    index.insert(w.clone(), words.len());
                    next.push(words.len());
                    words.push(w);
                }
            }
        }
        frontier = next;
    }

    // Congruence closure: seed the relations, then sweep extension tables
    // until no class merges remain.
    let mut uf = Uf::new(words.len());
    for (w1, w2) in &pres.relations {
        uf.union(index[w1], index[w2]);
    }
    loop {
        let mut changed = false;
        // Right and left extension tables per (class, arrow).
        let mut right: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut left: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for wi in 0..words.len() {
            let c = uf.find(wi);
            let (src, arr) = (&words[wi].0, &words[wi].1);
            if arr.len() < word_bound {
                let tgt = pres.word_tgt(&words[wi]);
                for &a in &arrows_from[tgt] {
                    let mut ext = arr.clone();
                    ext.push(a);
                    let t = uf.find(index[&(*src, ext)]);
                    match right.get(&(c, a)) {
                        None => {
                            right.insert((c, a), t);
                        }
                        Some(&prev) => {
                            if uf.union(prev, t) {
                                changed = true;
                            }
                        }
                    }
                }
                for (a, &(s, t_v)) in pres.arrows.iter().enumerate() {
                    if t_v == *src {
                        let mut ext = vec![a];
                        ext.extend(arr.iter().copied());
                        let t = uf.find(index[&(s, ext)]);
                        match left.get(&(c, a)) {
                            None => {
                                left.insert((c, a), t);
                            }
                            Some(&prev) => {
                                if uf.union(prev, t) {
                                    changed = true;
                                }
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    // Stabilization: every class needs a representative short enough that
    // representative compositions and their reassociations stay in bounds.
    let short = (word_bound / 3).max(1);
    let mut rep_of: BTreeMap<usize, Word> = BTreeMap::new();
    for (wi, w) in words.iter().enumerate() {
        let c = uf.find(wi);
        match rep_of.get(&c) {
            None => {
                rep_of.insert(c, w.clone());
            }
            Some(prev) => {
                if (w.1.len(), w) < (prev.1.len(), prev) {
                    rep_of.insert(c, w.clone());
                }
            }
        }
    }
    let unstable = rep_of.values().filter(|w| w.1.len() > short).count();
    if unstable > 0 {
        return Err(Error::BoundExceeded(format!(
            "{}: {} classes have no representative of length <= {} (word bound {})",
            pres.name, unstable, short, word_bound
        )));
    }

    // Assemble the category, ordering classes by canonical representative.
    let mut class_list: Vec<(Word, usize)> = rep_of
        .iter()
        .map(|(&root, rep)| (rep.clone(), root))
        .collect();
    class_list.sort_by(|a, b| {
        (a.0 .1.len(), &a.0)
            .cmp(&(b.0 .1.len(), &b.0))
    });
    let class_id: BTreeMap<usize, usize> = class_list
        .iter()
        .enumerate()
        .map(|(i, (_, root))| (*root, i))
        .collect();
    let mut b = FinCatBuilder::new(&pres.name);
    for v in 0..pres.n_vertices {
        b.add_object(&pres.vertex_labels[v]);
    }
    for (rep, _) in &class_list {
        let label = if rep.1.is_empty() {
            format!("1_{}", pres.vertex_labels[rep.0])
        } else {
            rep.1
                .iter()
                .map(|&a| pres.arrow_labels[a].clone())
                .collect::<Vec<_>>()
                .join(".")
        };
        let m = b.add_morphism(&label, rep.0, pres.word_tgt(rep));
        let _ = m;
    }
    for v in 0..pres.n_vertices {
        let root = uf.find(index[&(v, vec![])]);
        b.set_identity(v, class_id[&root]);
    }
    for (fi, (frep, _)) in class_list.iter().enumerate() {
        for (gi, (grep, _)) in class_list.iter().enumerate() {
            if pres.word_tgt(frep) == grep.0 {
                let mut concat = frep.1.clone();
                concat.extend(grep.1.iter().copied());
                let w = (frep.0, concat);
                let root = uf.find(index[&w]);
                b.set_compose(gi, fi, class_id[&root]);
            }
        }
    }
    let cat = Arc::new(b.finish()?);
    cat.validate().map_err(|e| {
        Error::BoundExceeded(format!(
            "{}: quotient is inconsistent at the word bound ({e})",
            pres.name
        ))
    })?;
    let classes: BTreeMap<Word, usize> = words
        .iter()
        .enumerate()
        .map(|(wi, w)| (w.clone(), class_id[&uf.find(wi)]))
        .collect();
    let reps = class_list.into_iter().map(|(rep, _)| rep).collect();
    Ok(QuotientCat { cat, classes, reps })
}
