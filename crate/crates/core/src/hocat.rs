//! The homotopy-category functor `ho`: an exact coequalizer construction for
//! quasicategories, and a best-effort presentation-based construction in
//! general.
//!
//! For a quasicategory the morphisms are homotopy classes of 1-cells: `f ~ g`
//! iff some 2-cell has faces `d0 = f`, `d1 = g`, `d2` degenerate at the
//! source. The relation is closed and compared against the raw one instead of
//! trusting the quasicategory property, and every composite is re-verified
//! over all representative pairs and fillers.

use crate::budget::Limits;
use crate::error::{Error, Result};
use crate::fincat::{Cat, CatFunctor, FinCatBuilder};
use crate::present::{quotient_category, CatPresentation, Word};
use crate::sset::{is_quasicategory_up_to, SSet, SimplicialMap};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoMode {
    ExactQuasicategory,
    PresentedBounded,
}

/// The homotopy category of a simplicial set, with the class map on 1-cells.
#[derive(Debug, Clone)]
pub struct HoResult {
    pub category: Cat,
    /// Morphism id of each 1-cell of the input.
    pub class_of: Vec<usize>,
    pub mode: HoMode,
}

/// Exact homotopy category of a quasicategory: objects are the 0-cells,
/// morphisms the coequalizer of the homotopy relation on 1-cells, and
/// composition is found by inner-horn filling.
pub fn ho_quasicategory(x: &SSet, limits: &Limits) -> Result<HoResult> {
    if x.bound() < 3 {
        return Err(Error::BoundExceeded(format!(
            "ho needs bound >= 3, {} has {}",
            x.name,
            x.bound()
        )));
    }
    let qc = is_quasicategory_up_to(x, 3, limits)?;
    if let Some((n, k, _)) = qc.witness {
        return Err(Error::NotQuasicategory {
            horn: format!("horn[{n},{k}] in {}", x.name),
        });
    }
    ho_quasicategory_from_cells(x)
}

/// The coequalizer construction without the upfront horn search. Every fact
/// the construction depends on is still asserted: the relation is an
/// equivalence relation, every composable class pair has a filler, all
/// fillers agree, and the result satisfies the category laws.
pub fn ho_quasicategory_from_cells(x: &SSet) -> Result<HoResult> {
    // Raw homotopy relation from 2-cells with degenerate d2 face.
    let mut raw: BTreeSet<(usize, usize)> = BTreeSet::new();
    for sigma in 0..x.count(2) {
        let e2 = x.face(2, 2, sigma);
        let src = x.face(1, 1, e2);
        if x.degen(0, 0, src) == e2 {
            raw.insert((x.face(2, 0, sigma), x.face(2, 1, sigma)));
        }
    }
    // For a quasicategory this relation is an equivalence relation on each
    // hom-set; assert it rather than assume it.
    for f in 0..x.count(1) {
        if !raw.contains(&(f, f)) {
            return Err(Error::Internal(format!(
                "homotopy relation not reflexive at 1-cell {}",
                x.label(1, f)
            )));
        }
    }
    for &(f, g) in &raw {
        if !raw.contains(&(g, f)) {
            return Err(Error::Internal(format!(
                "homotopy relation not symmetric at ({}, {})",
                x.label(1, f),
                x.label(1, g)
            )));
        }
    }
    let related_from: BTreeMap<usize, Vec<usize>> = {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(f, g) in &raw {
            m.entry(f).or_default().push(g);
        }
        m
    };
    for &(f, g) in &raw {
        for &h in related_from.get(&g).into_iter().flatten() {
            if !raw.contains(&(f, h)) {
                return Err(Error::Internal(format!(
                    "homotopy relation not transitive at ({}, {}, {})",
                    x.label(1, f),
                    x.label(1, g),
                    x.label(1, h)
                )));
            }
        }
    }

    // Classes, smallest representative id first.
    let mut class_of = vec![usize::MAX; x.count(1)];
    let mut reps: Vec<usize> = Vec::new();
    for f in 0..x.count(1) {
        if class_of[f] == usize::MAX {
            let id = reps.len();
            reps.push(f);
            class_of[f] = id;
            for &g in related_from.get(&f).into_iter().flatten() {
                class_of[g] = id;
            }
        }
    }
    // Parallelism of classes.
    for f in 0..x.count(1) {
        let r = reps[class_of[f]];
        if x.face(1, 1, f) != x.face(1, 1, r) || x.face(1, 0, f) != x.face(1, 0, r) {
            return Err(Error::Internal(
                "homotopic 1-cells with different endpoints".into(),
            ));
        }
    }

    // Composites via Λ¹[2]-fillers, re-verified over every representative
    // pair and every filler.
    let mut composites: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
    for sigma in 0..x.count(2) {
        let f = x.face(2, 2, sigma);
        let g = x.face(2, 0, sigma);
        let h = x.face(2, 1, sigma);
        composites
            .entry((class_of[f], class_of[g]))
            .or_default()
            .insert(class_of[h]);
    }
    let mut b = FinCatBuilder::new(&format!("ho({})", x.name));
    for v in 0..x.count(0) {
        b.add_object(x.label(0, v));
    }
    for &r in &reps {
        b.add_morphism(
            &format!("[{}]", x.label(1, r)),
            x.face(1, 1, r),
            x.face(1, 0, r),
        );
    }
    for v in 0..x.count(0) {
        b.set_identity(v, class_of[x.degen(0, 0, v)]);
    }
    for (fc, &fr) in reps.iter().enumerate() {
        for (gc, &gr) in reps.iter().enumerate() {
            if x.face(1, 0, fr) != x.face(1, 1, gr) {
                continue;
            }
            match composites.get(&(fc, gc)) {
                Some(set) if set.len() == 1 => {
                    b.set_compose(gc, fc, *set.iter().next().unwrap());
                }
                Some(_) => {
                    return Err(Error::Internal(format!(
                        "composite of [{}] and [{}] depends on the chosen filler",
                        x.label(1, fr),
                        x.label(1, gr)
                    )))
                }
                None => {
                    return Err(Error::Internal(format!(
                        "no filler found for composable pair ([{}], [{}])",
                        x.label(1, fr),
                        x.label(1, gr)
                    )))
                }
            }
        }
    }
    let category = Arc::new(b.finish()?);
    category
        .validate()
        .map_err(|e| Error::Internal(format!("ho({}) is not a category: {e}", x.name)))?;
    Ok(HoResult {
        category,
        class_of,
        mode: HoMode::ExactQuasicategory,
    })
}

/// Best-effort homotopy category for arbitrary truncated simplicial sets:
/// the free category on the 1-skeleton modulo `d1σ ≈ d0σ ∘ d2σ`, with
/// degenerate 1-cells as identities, closed over words of bounded length.
pub fn ho_presented(x: &SSet, word_bound: usize, limits: &Limits) -> Result<HoResult> {
    if x.bound() < 2 {
        return Err(Error::BoundExceeded(format!(
            "ho needs bound >= 2, {} has {}",
            x.name,
            x.bound()
        )));
    }
    let nondeg1 = x.nondeg_cells(1);
    let arrow_of: BTreeMap<usize, usize> = nondeg1
        .iter()
        .enumerate()
        .map(|(a, &c)| (c, a))
        .collect();
    let word_of = |cell: usize| -> Word {
        match arrow_of.get(&cell) {
            Some(&a) => (x.face(1, 1, cell), vec![a]),
            None => {
                // Degenerate 1-cell: identity word at its vertex.
                (x.face(1, 1, cell), vec![])
            }
        }
    };
    let mut relations: Vec<(Word, Word)> = Vec::new();
    for sigma in x.nondeg_cells(2) {
        let f = x.face(2, 2, sigma);
        let g = x.face(2, 0, sigma);
        let h = x.face(2, 1, sigma);
        let (sf, mut wf) = word_of(f);
        let (_, wg) = word_of(g);
        wf.extend(wg);
        relations.push((word_of(h), (sf, wf)));
    }
    let pres = CatPresentation {
        name: format!("ho({})", x.name),
        n_vertices: x.count(0),
        vertex_labels: (0..x.count(0)).map(|v| x.label(0, v).to_string()).collect(),
        arrows: nondeg1
            .iter()
            .map(|&c| (x.face(1, 1, c), x.face(1, 0, c)))
            .collect(),
        arrow_labels: nondeg1.iter().map(|&c| x.label(1, c).to_string()).collect(),
        relations,
    };
    let q = quotient_category(&pres, word_bound, limits)?;
    let class_of = (0..x.count(1))
        .map(|c| q.class_of(&word_of(c)).expect("short words are enumerated"))
        .collect();
    Ok(HoResult {
        category: q.cat,
        class_of,
        mode: HoMode::PresentedBounded,
    })
}

/// Do the exact and presented constructions agree on a quasicategory?
/// Checked through an explicit functor matching the class maps.
pub fn ho_agrees(x: &SSet, limits: &Limits) -> Result<bool> {
    let q = ho_quasicategory(x, limits)?;
    let p = ho_presented(x, limits.word_bound, limits)?;
    Ok(class_respecting_iso(x, &q, &p)?.is_some())
}

/// Builds the functor `a.category -> b.category` that is the identity on
/// objects and matches the two class maps; returns it when it is a validated
/// isomorphism of categories.
pub fn class_respecting_iso(
    x: &SSet,
    a: &HoResult,
    b: &HoResult,
) -> Result<Option<CatFunctor>> {
    if a.category.n_objects() != b.category.n_objects()
        || a.category.n_morphisms() != b.category.n_morphisms()
    {
        return Ok(None);
    }
    let mut mor_map = vec![usize::MAX; a.category.n_morphisms()];
    for c in 0..x.count(1) {
        let (am, bm) = (a.class_of[c], b.class_of[c]);
        if mor_map[am] == usize::MAX {
            mor_map[am] = bm;
        } else if mor_map[am] != bm {
            return Ok(None);
        }
    }
    // Morphisms not represented by a 1-cell (composites in presented mode)
    // have no direct comparison; derive them through composition.
    loop {
        let mut progressed = false;
        for g in 0..a.category.n_morphisms() {
            for f in 0..a.category.n_morphisms() {
                if let Some(gf) = a.category.compose(g, f) {
                    if mor_map[gf] == usize::MAX
                        && mor_map[g] != usize::MAX
                        && mor_map[f] != usize::MAX
                    {
                        match b.category.compose(mor_map[g], mor_map[f]) {
                            Some(c) => {
                                mor_map[gf] = c;
                                progressed = true;
                            }
                            None => return Ok(None),
                        }
                    }
                }
            }
        }
        if !progressed {
            break;
        }
    }
    if mor_map.iter().any(|&m| m == usize::MAX) {
        return Ok(None);
    }
    let functor = CatFunctor {
        dom: a.category.clone(),
        cod: b.category.clone(),
        obj_map: (0..a.category.n_objects()).collect(),
        mor_map,
    };
    if functor.validate().is_err() {
        return Ok(None);
    }
    let mut image: Vec<usize> = functor.mor_map.clone();
    image.sort_unstable();
    image.dedup();
    if image.len() != b.category.n_morphisms() {
        return Ok(None);
    }
    Ok(Some(functor))
}

/// The functor `ho(f)` induced by a simplicial map. The morphism map is
/// seeded on classes of 1-cells (asserting it respects the class maps) and
/// completed multiplicatively, so it also covers presented-mode categories
/// whose composite morphisms have no single-cell representative.
pub fn ho_functor(f: &SimplicialMap, ho_dom: &HoResult, ho_cod: &HoResult) -> Result<CatFunctor> {
    let mut mor_map = vec![usize::MAX; ho_dom.category.n_morphisms()];
    for c in 0..f.dom.count(1) {
        let a = ho_dom.class_of[c];
        let b = ho_cod.class_of[f.levels[1][c]];
        if mor_map[a] == usize::MAX {
            mor_map[a] = b;
        } else if mor_map[a] != b {
            return Err(Error::Internal(format!(
                "map {} -> {} does not respect homotopy classes",
                f.dom.name, f.cod.name
            )));
        }
    }
    complete_mor_map(&ho_dom.category, &ho_cod.category, &mut mor_map)?;
    let functor = CatFunctor {
        dom: ho_dom.category.clone(),
        cod: ho_cod.category.clone(),
        obj_map: f.levels[0].clone(),
        mor_map,
    };
    functor.validate()?;
    Ok(functor)
}

/// Fills missing morphism images through composition with already-known ones.
pub fn complete_mor_map(dom: &Cat, cod: &Cat, mor_map: &mut [usize]) -> Result<()> {
    loop {
        let mut progressed = false;
        for g in 0..dom.n_morphisms() {
            for f in 0..dom.n_morphisms() {
                if let Some(gf) = dom.compose(g, f) {
                    if mor_map[gf] == usize::MAX
                        && mor_map[g] != usize::MAX
                        && mor_map[f] != usize::MAX
                    {
                        match cod.compose(mor_map[g], mor_map[f]) {
                            Some(c) => {
                                mor_map[gf] = c;
                                progressed = true;
                            }
                            None => {
                                return Err(Error::Internal(
                                    "induced morphism images fail to compose".into(),
                                ))
                            }
                        }
                    }
                }
            }
        }
        if !progressed {
            break;
        }
    }
    if mor_map.iter().any(|&m| m == usize::MAX) {
        return Err(Error::Internal(
            "morphism not generated by classes of 1-cells".into(),
        ));
    }
    Ok(())
}

/// Canonical comparison `j -> ho(N j)`: the identity on objects, each
/// morphism to the class of its 1-chain. In the nerve the dimension-1 cells
/// are indexed by morphism id, so the comparison needs no search.
pub fn nerve_ho_comparison(j: &Cat, ho: &HoResult) -> Result<CatFunctor> {
    let functor = CatFunctor {
        dom: j.clone(),
        cod: ho.category.clone(),
        obj_map: (0..j.n_objects()).collect(),
        mor_map: (0..j.n_morphisms()).map(|f| ho.class_of[f]).collect(),
    };
    functor.validate()?;
    Ok(functor)
}

/// Is the canonical comparison an isomorphism of categories?
pub fn ho_nerve_is_identity(j: &Cat, ho: &HoResult) -> Result<bool> {
    if ho.category.n_objects() != j.n_objects()
        || ho.category.n_morphisms() != j.n_morphisms()
    {
        return Ok(false);
    }
    let cmp = nerve_ho_comparison(j, ho)?;
    let mut image: Vec<usize> = cmp.mor_map.clone();
    image.sort_unstable();
    image.dedup();
    Ok(image.len() == j.n_morphisms())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{iso_interval, ordinal, product, span};
    use crate::sset::{horn, nerve, nerve_map_between, sset_coproduct, standard_simplex};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn ho_of_nerves_recovers_the_category() {
        let l = limits();
        for j in [ordinal(0), ordinal(1), ordinal(2), span()] {
            let nj = nerve(&j, 3);
            let ho = ho_quasicategory(&nj, &l).unwrap();
            assert_eq!(ho.category.n_objects(), j.n_objects());
            assert_eq!(ho.category.n_morphisms(), j.n_morphisms());
            assert!(ho_nerve_is_identity(&j, &ho).unwrap());
        }
        let n2 = nerve(&ordinal(2), 3);
        let ho2 = ho_quasicategory(&n2, &l).unwrap();
        assert_eq!(ho2.category.n_objects(), 3);
        assert_eq!(ho2.category.n_morphisms(), 6);
    }

    #[test]
    fn ho_of_point_and_coproduct() {
        let l = limits();
        let pt = standard_simplex(0, 3);
        let ho = ho_quasicategory(&pt, &l).unwrap();
        assert_eq!(ho.category.n_objects(), 1);
        assert_eq!(ho.category.n_morphisms(), 1);
        let n1 = nerve(&ordinal(1), 3);
        let (c, _, _) = sset_coproduct(&n1, &n1);
        let ho = ho_quasicategory(&c, &l).unwrap();
        assert_eq!(ho.category.n_objects(), 4);
        assert_eq!(ho.category.n_morphisms(), 6);
    }

    #[test]
    fn ho_rejects_non_quasicategories() {
        let (h, _) = horn(2, 1, 3);
        match ho_quasicategory(&h, &limits()) {
            Err(Error::NotQuasicategory { horn }) => assert!(horn.contains("horn[2,1]")),
            other => panic!("expected not-a-quasicategory, got {other:?}"),
        }
    }

    #[test]
    fn ho_presented_on_nerves_and_free_complexes() {
        let l = limits();
        for j in [ordinal(1), ordinal(2), span()] {
            let nj = nerve(&j, 3);
            let ho = ho_presented(&nj, 8, &l).unwrap();
            assert_eq!(ho.category.n_objects(), j.n_objects());
            assert_eq!(ho.category.n_morphisms(), j.n_morphisms());
            assert!(ho_nerve_is_identity(&j, &ho).unwrap());
        }
        // Boundary of the triangle: free category, one nontrivial composite.
        let (b2, _) = crate::sset::boundary(2, 3);
        let ho = ho_presented(&b2, 8, &l).unwrap();
        assert_eq!(ho.category.n_objects(), 3);
        assert_eq!(ho.category.n_morphisms(), 7);
        // Point.
        let pt = standard_simplex(0, 3);
        let ho = ho_presented(&pt, 8, &l).unwrap();
        assert_eq!(ho.category.n_morphisms(), 1);
    }

    #[test]
    fn ho_constructions_agree_on_quasicategories() {
        let l = limits();
        for j in [ordinal(2), span()] {
            let nj = nerve(&j, 3);
            assert!(ho_agrees(&nj, &l).unwrap());
        }
        let pt = standard_simplex(0, 3);
        assert!(ho_agrees(&pt, &l).unwrap());
    }

    #[test]
    fn ho_is_functorial_on_simplicial_maps() {
        let l = limits();
        let (sq, pr1, _) = product(&ordinal(1), &ordinal(1));
        let nsq = nerve(&sq, 3);
        let n1 = nerve(&ordinal(1), 3);
        let f = nerve_map_between(&pr1, &nsq, &n1);
        let ho_dom = ho_quasicategory(&nsq, &l).unwrap();
        let ho_cod = ho_quasicategory(&n1, &l).unwrap();
        let functor = ho_functor(&f, &ho_dom, &ho_cod).unwrap();
        functor.validate().unwrap();
        // ho of the identity is the identity functor.
        let idm = SimplicialMap::identity(&nsq);
        let idf = ho_functor(&idm, &ho_dom, &ho_dom).unwrap();
        assert_eq!(idf.obj_map, (0..sq.n_objects()).collect::<Vec<_>>());
        assert_eq!(
            idf.mor_map,
            (0..ho_dom.category.n_morphisms()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn ho_of_iso_interval_nerve() {
        // N(I) truncated at 3 is a quasicategory and ho recovers I.
        let l = limits();
        let i = iso_interval();
        let ni = nerve(&i, 3);
        let ho = ho_quasicategory(&ni, &l).unwrap();
        assert_eq!(ho.category.n_objects(), 2);
        assert_eq!(ho.category.n_morphisms(), 4);
        assert!(ho_nerve_is_identity(&i, &ho).unwrap());
    }
}
