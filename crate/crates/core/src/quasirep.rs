//! The quasi-representability checker and the reconstruction theorem.
//!
//! A prederivator is quasi-representable when (1) evaluation at objects
//! matches maps out of nerves into the underlying simplicial set, (2) its
//! morphisms are the coequalizer of the underlying-diagram data, and (3) the
//! underlying simplicial set is a quasicategory (checked up to a bound).
//! Quasi-representable prederivators are reconstructed, probe by probe, from
//! their underlying simplicial set; non-quasi-representable inputs are
//! refused with the failing condition. All verdicts are relative to the
//! declared probe family; no claim is made beyond it.

use crate::budget::Limits;
use crate::error::{Error, Result};
use crate::fincat::{ordinal, product, product_functor, Cat, CatFunctor};
use crate::pdv::{
    canonical_cond1_map, chain_functor, dia1_objects, ordinal_monotone, underlying_sset, ObValue,
    Pd, ProbeFamily,
};
use crate::report::{CheckReport, Verdict};
use crate::sset::{
    delta_nerve_pairing, hom_set, is_quasicategory_up_to, nerve, sset_colimit, sset_iso,
    standard_simplex, delta_operator_map, SSet, SSetDiagram, SimplicialMap,
};
use std::collections::BTreeMap;

/// Condition (1): at each probe `j` the canonical map from objects of `d(j)`
/// to simplicial maps `N(j) -> R(d)` is a bijection.
pub fn check_condition1(d: &Pd, family: &ProbeFamily, bound: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("condition-1", &d.describe());
    for j in &family.categories {
        match condition1_at(d, j, bound, &family.limits) {
            Ok((verdict, witness)) => report.push(&j.name, verdict, witness),
            Err(Error::ResourceExhausted(m)) => {
                report.push(&j.name, Verdict::Inconclusive, Some(m.clone()));
                report.note(&format!("resource bound hit at probe {}: {m}", j.name));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

fn condition1_at(
    d: &Pd,
    j: &Cat,
    bound: usize,
    limits: &Limits,
) -> Result<(Verdict, Option<String>)> {
    let (maps, rd) = canonical_cond1_map(d, j, bound)?;
    let all = hom_set(&nerve(j, bound), &rd, limits)?;
    let mut index: BTreeMap<&Vec<Vec<usize>>, usize> = BTreeMap::new();
    for (i, m) in all.iter().enumerate() {
        index.insert(&m.levels, i);
    }
    // Injectivity: two objects with equal image.
    let mut seen: BTreeMap<&Vec<Vec<usize>>, usize> = BTreeMap::new();
    for (x, m) in maps.iter().enumerate() {
        if let Some(&y) = seen.get(&m.levels) {
            return Ok((
                Verdict::Fail,
                Some(format!("objects {y} and {x} induce the same map N({}) -> R", j.name)),
            ));
        }
        seen.insert(&m.levels, x);
    }
    // Surjectivity: a simplicial map with no preimage, smallest first.
    for (i, m) in all.iter().enumerate() {
        if !seen.contains_key(&m.levels) {
            return Ok((
                Verdict::Fail,
                Some(format!(
                    "map #{i} of hom(N({}), R) has no preimage among {} objects",
                    j.name,
                    maps.len()
                )),
            ));
        }
    }
    if maps.len() != all.len() {
        return Ok((
            Verdict::Fail,
            Some(format!("{} objects vs {} maps", maps.len(), all.len())),
        ));
    }
    Ok((Verdict::Pass, None))
}

/// A finite diagram of ordinals: nodes carry dimensions, edges monotone maps.
#[derive(Debug, Clone)]
pub struct OrdinalDiagram {
    pub nodes: Vec<usize>,
    /// `(from, to, monotone values [n_from] -> [n_to])`.
    pub edges: Vec<(usize, usize, Vec<usize>)>,
}

impl OrdinalDiagram {
    /// The pushout shape `[2] <- [1] -> [2]` glued along the long edges.
    pub fn triangle_pushout() -> OrdinalDiagram {
        OrdinalDiagram {
            nodes: vec![1, 2, 2],
            edges: vec![(0, 1, vec![0, 2]), (0, 2, vec![0, 2])],
        }
    }

    pub fn single(n: usize) -> OrdinalDiagram {
        OrdinalDiagram {
            nodes: vec![n],
            edges: vec![],
        }
    }
}

/// Condition (1'): for a diagram of ordinals whose simplicial colimit is the
/// nerve of `target`, objects of `d(target)` biject with the limit of the
/// objects of `d([n_i])`. The colimit hypothesis is verified first.
pub fn check_condition1_prime(
    d: &Pd,
    diagram: &OrdinalDiagram,
    target: &Cat,
    bound: usize,
    limits: &Limits,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("condition-1-prime", &d.describe());
    // Verify the colimit is created in simplicial sets.
    let objects: Vec<SSet> = diagram
        .nodes
        .iter()
        .map(|&n| standard_simplex(n, bound))
        .collect();
    let maps = diagram
        .edges
        .iter()
        .map(|(a, b, op)| (*a, *b, delta_operator_map(op, diagram.nodes[*b], bound)))
        .collect();
    let (colim, cocone) = sset_colimit(
        &SSetDiagram {
            objects,
            maps,
        },
        "ordinal-colimit",
    )?;
    let nt = nerve(target, bound);
    let iso = sset_iso(&colim, &nt, limits)?.ok_or_else(|| {
        Error::Precondition(format!(
            "colimit of the ordinal diagram is not created in simplicial sets: it is not the nerve of {}",
            target.name
        ))
    })?;
    // Cocone functors [n_i] -> target through the identification.
    let chains = crate::sset::nerve_chains(target, bound);
    let cocone_functors: Vec<CatFunctor> = diagram
        .nodes
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let top = top_cell_of_delta(n);
            let cell = iso.levels[n][cocone[i].levels[n][top]];
            chain_functor(target, &chains[n][cell], n)
        })
        .collect();

    let lhs = d.eval_objects(target)?.len();
    // The limit set: compatible families over the nodes.
    let node_sizes: Vec<usize> = diagram
        .nodes
        .iter()
        .map(|&n| d.eval_objects(&ordinal(n)).map(|o| o.len()))
        .collect::<Result<Vec<_>>>()?;
    let edge_maps: Vec<(usize, usize, std::sync::Arc<Vec<usize>>)> = diagram
        .edges
        .iter()
        .map(|(a, b, op)| {
            let f = ordinal_monotone(op, diagram.nodes[*b]);
            Ok((*a, *b, d.restrict_ob(&f)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for (i, &size) in node_sizes.iter().enumerate() {
        let mut next = Vec::new();
        for t in &tuples {
            'cand: for v in 0..size {
                // Check every edge whose endpoints are both assigned.
                for (a, b, m) in &edge_maps {
                    let (ai, bi) = (*a, *b);
                    if ai.max(bi) > i {
                        continue;
                    }
                    let xa = if ai == i { v } else { t[ai] };
                    let xb = if bi == i { v } else { t[bi] };
                    if m[xb] != xa {
                        continue 'cand;
                    }
                }
                let mut nt2 = t.clone();
                nt2.push(v);
                next.push(nt2);
            }
        }
        tuples = next;
    }
    let rhs = tuples.len();
    // The canonical map, and its bijectivity.
    let restr: Vec<std::sync::Arc<Vec<usize>>> = cocone_functors
        .iter()
        .map(|f| d.restrict_ob(f))
        .collect::<Result<Vec<_>>>()?;
    let mut images: Vec<Vec<usize>> = Vec::with_capacity(lhs);
    for x in 0..lhs {
        images.push(restr.iter().map(|m| m[x]).collect());
    }
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == lhs;
    let tuple_set: std::collections::BTreeSet<&Vec<usize>> = tuples.iter().collect();
    let into_limit = images.iter().all(|t| tuple_set.contains(t));
    let surjective = injective && into_limit && lhs == rhs;
    let verdict = if injective && surjective {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    report.push(
        &target.name,
        verdict,
        if verdict == Verdict::Fail {
            Some(format!("objects {lhs} vs limit {rhs}"))
        } else {
            None
        },
    );
    report.note(&format!("sides: {lhs} = {rhs}"));
    Ok(report)
}

fn top_cell_of_delta(n: usize) -> usize {
    crate::sset::monotone_tuples(n + 1, n)
        .iter()
        .position(|t| t.iter().enumerate().all(|(i, &v)| v == i))
        .expect("identity tuple exists")
}

/// Condition (2): at each probe `j`, the object part of `dia¹` exhibits the
/// coequalizer of the two structure maps out of the compatible pairs in
/// `d([0]×j) ×_{d([1]×j)} d([2]×j)`.
pub fn check_condition2(d: &Pd, family: &ProbeFamily) -> Result<CheckReport> {
    let mut report = CheckReport::new("condition-2", &d.describe());
    for j in &family.categories {
        match condition2_at(d, j) {
            Ok((verdict, witness)) => report.push(&j.name, verdict, witness),
            Err(Error::ResourceExhausted(m)) => {
                report.push(&j.name, Verdict::Inconclusive, Some(m.clone()));
                report.note(&format!("resource bound hit at probe {}: {m}", j.name));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

fn condition2_at(d: &Pd, j: &Cat) -> Result<(Verdict, Option<String>)> {
    let one = ordinal(1);
    let (p0, _, _) = product(&ordinal(0), j);
    let (p1, _, _) = product(&one, j);
    let (p2, _, _) = product(&ordinal(2), j);
    // Structure functors crossed with j.
    let s0xj = product_functor(&crate::pdv::ordinal_codegen(0, 0), &CatFunctor::identity(j), &p1, &p0);
    let d0xj = product_functor(&crate::pdv::ordinal_coface(2, 0), &CatFunctor::identity(j), &p1, &p2);
    let d1xj = product_functor(&crate::pdv::ordinal_coface(2, 1), &CatFunctor::identity(j), &p1, &p2);
    let d2xj = product_functor(&crate::pdv::ordinal_coface(2, 2), &CatFunctor::identity(j), &p1, &p2);

    let o0 = d.eval_objects(&p0)?.len();
    let o1 = d.eval_objects(&p1)?.len();
    let o2 = d.eval_objects(&p2)?.len();
    let r_s0 = d.restrict_ob(&s0xj)?; // O([0]×j) -> O([1]×j)
    let r_d0 = d.restrict_ob(&d0xj)?; // O([2]×j) -> O([1]×j)
    let r_d1 = d.restrict_ob(&d1xj)?;
    let r_d2 = d.restrict_ob(&d2xj)?;
    let dia = dia1_objects(d, j)?; // O([1]×j) -> Mor(d(j))
    let n_mor = d.eval(j)?.cat.n_morphisms();

    // The pullback P and the equivalence its two maps generate on O([1]×j).
    let mut uf: Vec<usize> = (0..o1).collect();
    fn find(uf: &mut Vec<usize>, x: usize) -> usize {
        if uf[x] != x {
            let r = find(uf, uf[x]);
            uf[x] = r;
        }
        uf[x]
    }
    for a in 0..o0 {
        for s in 0..o2 {
            if r_s0[a] == r_d2[s] {
                let (x, y) = (find(&mut uf, r_d0[s]), find(&mut uf, r_d1[s]));
                if x < y {
                    uf[y] = x;
                } else if y < x {
                    uf[x] = y;
                }
            }
        }
    }
    // Coequalizer class count.
    let roots: Vec<usize> = (0..o1).map(|x| find(&mut uf, x)).collect();
    let mut classes = roots.clone();
    classes.sort_unstable();
    classes.dedup();
    // Surjectivity of dia¹ onto the morphisms.
    let mut hit = vec![false; n_mor];
    for &m in dia.iter() {
        hit[m] = true;
    }
    if let Some(missing) = hit.iter().position(|&b| !b) {
        return Ok((
            Verdict::Fail,
            Some(format!(
                "dia1 is not surjective at probe {}: morphism #{missing} not hit; coequalizer has {} classes but Mor has {}",
                j.name,
                classes.len(),
                n_mor
            )),
        ));
    }
    // Kernel pair of dia¹ equals the generated equivalence.
    for x in 0..o1 {
        for y in (x + 1)..o1 {
            let same_class = roots[x] == roots[y];
            let same_image = dia[x] == dia[y];
            if same_class != same_image {
                return Ok((
                    Verdict::Fail,
                    Some(format!(
                        "kernel pair mismatch at probe {}: elements {x},{y} {} by the relation but dia1 {}",
                        j.name,
                        if same_class { "identified" } else { "separated" },
                        if same_image { "identifies them" } else { "separates them" },
                    )),
                ));
            }
        }
    }
    Ok((Verdict::Pass, None))
}

/// Condition (3): the underlying simplicial set is a quasicategory, as a
/// bounded approximation up to `n_max`.
pub fn check_condition3(d: &Pd, n_max: usize, bound: usize, limits: &Limits) -> Result<CheckReport> {
    let mut report = CheckReport::new("condition-3", &d.describe());
    let rd = underlying_sset(d, bound)?;
    let qc = is_quasicategory_up_to(&rd, n_max, limits)?;
    if qc.ok {
        report.push("R", Verdict::PassApproximate, None);
        report.note(&format!(
            "inner horn filling checked up to dimension {n_max}; bounded approximation"
        ));
    } else {
        let (n, k, top) = qc.witness.unwrap();
        report.push(
            "R",
            Verdict::Fail,
            Some(format!(
                "unfillable horn[{n},{k}] with vertices [{}]",
                top.levels[0]
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )),
        );
    }
    Ok(report)
}

/// The conjunction of the three conditions, as one combined report list.
pub fn check_quasi_representable(
    d: &Pd,
    family: &ProbeFamily,
    bound: usize,
    n_max: usize,
) -> Result<Vec<CheckReport>> {
    let r1 = check_condition1(d, family, bound)?;
    let r2 = check_condition2(d, family)?;
    let r3 = check_condition3(d, n_max, bound, &family.limits)?;
    Ok(vec![r1, r2, r3])
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed())
}

/// Conjunction of the report verdicts.
pub fn overall(reports: &[CheckReport]) -> Verdict {
    reports
        .iter()
        .fold(Verdict::Pass, |acc, r| acc.and(r.verdict))
}

/// Names every failing condition of a combined report with its first
/// witness probe.
pub fn failing_summary(reports: &[CheckReport]) -> Option<String> {
    let parts: Vec<String> = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .map(|r| {
            let at = r
                .first_failure()
                .map(|p| format!(" at {}", p.probe))
                .unwrap_or_default();
            format!("{}{}", r.check, at)
        })
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("; "))
    }
}

/// Reconstruction: a quasi-representable prederivator is isomorphic to the
/// homotopy prederivator of its underlying simplicial set. The isomorphism
/// is built on objects from the condition-(1) bijection and on morphisms
/// from the condition-(2) coequalizer comparison, probe by probe; every
/// representative is checked, and the assembled functors are validated.
pub fn reconstruct(
    d: &Pd,
    family: &ProbeFamily,
    bound: usize,
    n_max: usize,
) -> Result<(Pd, Vec<CatFunctor>)> {
    let reports = check_quasi_representable(d, family, bound, n_max)?;
    match overall(&reports) {
        Verdict::Fail => {
            return Err(Error::Precondition(format!(
                "not quasi-representable: {} fail",
                failing_summary(&reports).unwrap()
            )))
        }
        Verdict::Inconclusive => {
            return Err(Error::ResourceExhausted(
                "quasi-representability undecided under the current budget".into(),
            ))
        }
        _ => {}
    }
    let rd = underlying_sset(d, bound)?;
    let e = Pd::homotopy(&rd, &family.limits)?;
    if e.is_best_effort() {
        return Err(Error::Internal(
            "underlying simplicial set passed condition (3) but ho fell back".into(),
        ));
    }
    let mut isos = Vec::with_capacity(family.categories.len());
    for j in &family.categories {
        isos.push(reconstruction_iso_at(d, &e, j, bound, &family.limits)?);
    }
    Ok((e, isos))
}

fn reconstruction_iso_at(
    d: &Pd,
    e: &Pd,
    j: &Cat,
    bound: usize,
    limits: &Limits,
) -> Result<CatFunctor> {
    let de = d.eval(j)?;
    let ee = e.eval(j)?;
    // Objects through condition (1).
    let (maps_j, _) = canonical_cond1_map(d, j, bound)?;
    let e_obs = e.eval_objects(j)?;
    let e_index: BTreeMap<Vec<Vec<usize>>, usize> = match e_obs.as_ref() {
        ObValue::Homotopy(ms, _) => ms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.levels.clone(), i))
            .collect(),
        _ => unreachable!("reconstruction target is a homotopy prederivator"),
    };
    let obj_map: Vec<usize> = maps_j
        .iter()
        .map(|m| {
            e_index.get(&m.levels).copied().ok_or_else(|| {
                Error::Internal("condition-(1) image missing from hom-set".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;

    // Morphisms through condition (2): transport the 1-cell data.
    let (p1, _, _) = product(&ordinal(1), j);
    let (maps_p1, _) = canonical_cond1_map(d, &p1, bound)?;
    let dia_d = dia1_objects(d, j)?;
    let exp = ee.exponential().unwrap();
    let ho = ee.ho().unwrap();
    let n_prod = nerve(&p1, bound);
    let pairing = delta_nerve_pairing(1, j, &p1, &exp.domains[1], &n_prod);
    let mut mor_map = vec![usize::MAX; de.cat.n_morphisms()];
    for (a, m) in maps_p1.iter().enumerate() {
        // The 1-cell of R(d)^{N j} named by the object `a` of d([1]×j).
        let cell = m.compose(&pairing);
        let idx = exp
            .index_of(1, &cell)
            .ok_or_else(|| Error::Internal("transported 1-cell missing".into()))?;
        let target_class = ho.class_of[idx];
        let source_mor = dia_d[a];
        if mor_map[source_mor] == usize::MAX {
            mor_map[source_mor] = target_class;
        } else if mor_map[source_mor] != target_class {
            return Err(Error::Internal(
                "reconstruction morphism depends on the representative".into(),
            ));
        }
    }
    crate::hocat::complete_mor_map(&de.cat, &ee.cat, &mut mor_map)?;
    let f = CatFunctor {
        dom: de.cat.clone(),
        cod: ee.cat.clone(),
        obj_map,
        mor_map,
    };
    f.validate()?;
    let bij = |v: &[usize], n: usize| {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() == n && v.len() == n
    };
    if !bij(&f.obj_map, ee.cat.n_objects()) || !bij(&f.mor_map, ee.cat.n_morphisms()) {
        return Err(Error::Internal(format!(
            "reconstruction comparison is not an isomorphism at probe {}",
            j.name
        )));
    }
    let _ = limits;
    Ok(f)
}

/// `R` reflects isomorphisms between quasi-representable prederivators: a
/// levelwise bijection of underlying simplicial sets lifts to a probe-wise
/// isomorphism, built along the proof of the reflection lemma.
pub fn r_reflects_iso(
    d: &Pd,
    e: &Pd,
    iso: &SimplicialMap,
    family: &ProbeFamily,
    bound: usize,
    n_max: usize,
) -> Result<Vec<CatFunctor>> {
    for (name, pd) in [("left", d), ("right", e)] {
        let reports = check_quasi_representable(pd, family, bound, n_max)?;
        match overall(&reports) {
            Verdict::Fail => {
                return Err(Error::Precondition(format!(
                    "{name} prederivator is not quasi-representable: {} fail",
                    failing_summary(&reports).unwrap()
                )))
            }
            Verdict::Inconclusive => {
                return Err(Error::ResourceExhausted(
                    "quasi-representability undecided under the current budget".into(),
                ))
            }
            _ => {}
        }
    }
    let rd = underlying_sset(d, bound)?;
    let re = underlying_sset(e, bound)?;
    if iso.dom.key() != rd.key() || iso.cod.key() != re.key() || !iso.is_iso_levelwise() {
        return Err(Error::Precondition(
            "the comparison must be a levelwise bijection R(d) -> R(e)".into(),
        ));
    }
    let mut out = Vec::with_capacity(family.categories.len());
    for j in &family.categories {
        // Object correspondence at j and at [1]×j, through condition (1).
        let (dj, _) = canonical_cond1_map(d, j, bound)?;
        let (ej, _) = canonical_cond1_map(e, j, bound)?;
        let e_index: BTreeMap<Vec<Vec<usize>>, usize> = ej
            .iter()
            .enumerate()
            .map(|(i, m)| (m.levels.clone(), i))
            .collect();
        let obj_map: Vec<usize> = dj
            .iter()
            .map(|m| {
                let transported = iso.compose(m);
                e_index.get(&transported.levels).copied().ok_or_else(|| {
                    Error::Internal("transported object missing from the right-hand side".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let (p1, _, _) = product(&ordinal(1), j);
        let (dp1, _) = canonical_cond1_map(d, &p1, bound)?;
        let (ep1, _) = canonical_cond1_map(e, &p1, bound)?;
        let ep1_index: BTreeMap<Vec<Vec<usize>>, usize> = ep1
            .iter()
            .enumerate()
            .map(|(i, m)| (m.levels.clone(), i))
            .collect();
        let dia_d = dia1_objects(d, j)?;
        let dia_e = dia1_objects(e, j)?;
        let de = d.eval(j)?;
        let ee = e.eval(j)?;
        let mut mor_map = vec![usize::MAX; de.cat.n_morphisms()];
        for (a, m) in dp1.iter().enumerate() {
            let transported = iso.compose(m);
            let a_e = *ep1_index.get(&transported.levels).ok_or_else(|| {
                Error::Internal("transported 1-object missing from the right-hand side".into())
            })?;
            let src_mor = dia_d[a];
            let dst_mor = dia_e[a_e];
            if mor_map[src_mor] == usize::MAX {
                mor_map[src_mor] = dst_mor;
            } else if mor_map[src_mor] != dst_mor {
                return Err(Error::Internal(
                    "reflected morphism depends on the representative".into(),
                ));
            }
        }
        crate::hocat::complete_mor_map(&de.cat, &ee.cat, &mut mor_map)?;
        let f = CatFunctor {
            dom: de.cat.clone(),
            cod: ee.cat.clone(),
            obj_map,
            mor_map,
        };
        f.validate()?;
        let bij = |v: &[usize], n: usize| {
            let mut s = v.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len() == n && v.len() == n
        };
        if !bij(&f.obj_map, ee.cat.n_objects()) || !bij(&f.mor_map, ee.cat.n_morphisms()) {
            return Err(Error::Internal(format!(
                "reflected comparison is not invertible at probe {}",
                j.name
            )));
        }
        out.push(f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::span;
    use crate::sset::horn;

    fn limits() -> Limits {
        Limits::default()
    }

    fn family() -> ProbeFamily {
        ProbeFamily::default_family(&limits())
    }

    #[test]
    fn representable_satisfies_all_conditions() {
        let l = limits();
        let fam = family();
        let d = Pd::representable(&ordinal(2), &l);
        let reports = check_quasi_representable(&d, &fam, l.bound, l.n_max).unwrap();
        assert!(all_passed(&reports), "{reports:?}");
    }

    #[test]
    fn homotopy_of_nerve_satisfies_all_conditions() {
        let l = limits();
        let fam = family();
        let d = Pd::homotopy(&nerve(&span(), l.bound), &l).unwrap();
        let reports = check_quasi_representable(&d, &fam, l.bound, l.n_max).unwrap();
        assert!(all_passed(&reports), "{reports:?}");
    }

    #[test]
    fn coproduct_fixture_fails_exactly_condition_one() {
        let l = limits();
        let fam = family();
        let x = nerve(&ordinal(1), l.bound);
        let d = Pd::coproduct(
            vec![Pd::homotopy(&x, &l).unwrap(), Pd::representable(&ordinal(0), &l)],
            &l,
        );
        let reports = check_quasi_representable(&d, &fam, l.bound, l.n_max).unwrap();
        assert!(!reports[0].passed(), "condition (1) must fail");
        let fail = reports[0].first_failure().unwrap();
        assert_eq!(fail.probe, "[0]+[0]", "first failure at the two-point probe");
        assert!(reports[1].passed(), "condition (2) must pass: {:?}", reports[1]);
        assert!(reports[2].passed(), "condition (3) must pass: {:?}", reports[2]);
    }

    #[test]
    fn constant_fixture_fails_condition_two_at_the_point() {
        let l = limits();
        let fam = family();
        let d = Pd::constant(&ordinal(1), &l);
        let reports = check_quasi_representable(&d, &fam, l.bound, l.n_max).unwrap();
        let r2 = &reports[1];
        assert!(!r2.passed());
        let at_point = r2.probes.iter().find(|p| p.probe == "[0]").unwrap();
        assert_eq!(at_point.verdict, Verdict::Fail);
        let w = at_point.witness.as_ref().unwrap();
        assert!(
            w.contains("coequalizer has 2 classes but Mor has 3"),
            "witness must carry the sizes: {w}"
        );
        // At the connected point probe, condition (1) passes.
        let r1 = &reports[0];
        let c1_at_point = r1.probes.iter().find(|p| p.probe == "[0]").unwrap();
        assert_eq!(c1_at_point.verdict, Verdict::Pass);
        // Condition (3) passes: the underlying set is discrete.
        assert!(reports[2].passed());
    }

    #[test]
    fn horn_fixture_fails_condition_three_at_the_inner_horn() {
        let l = limits();
        let fam = family();
        let (h, _) = horn(2, 1, l.bound);
        let d = Pd::homotopy(&h, &l).unwrap();
        assert!(d.is_best_effort());
        let reports = check_quasi_representable(&d, &fam, l.bound, l.n_max).unwrap();
        // Condition (1) holds at every probe for any homotopy prederivator.
        assert!(reports[0].passed(), "{:?}", reports[0]);
        // Condition (3) fails exactly at the Λ¹[2] horn.
        assert!(!reports[2].passed());
        let w = reports[2].first_failure().unwrap().witness.as_ref().unwrap();
        assert!(w.contains("horn[2,1]"), "witness names the horn: {w}");
        // Condition (2) honestly fails at the point probe: the homotopy
        // category of the horn has a composite not represented by any
        // 1-cell.
        let at_point = reports[1].probes.iter().find(|p| p.probe == "[0]").unwrap();
        assert_eq!(at_point.verdict, Verdict::Fail);
    }

    #[test]
    fn condition_one_prime_on_the_triangle_pushout() {
        let l = limits();
        let (sq, _, _) = product(&ordinal(1), &ordinal(1));
        let d = Pd::representable(&ordinal(2), &l);
        let report =
            check_condition1_prime(&d, &OrdinalDiagram::triangle_pushout(), &sq, l.bound, &l)
                .unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.notes.iter().any(|n| n.contains("20 = 20")));
        // Single-ordinal diagrams pass trivially.
        for n in 0..=2 {
            let r = check_condition1_prime(
                &d,
                &OrdinalDiagram::single(n),
                &ordinal(n),
                l.bound,
                &l,
            )
            .unwrap();
            assert!(r.passed());
        }
        // Constant prederivator on the pushout diagram: (1') can hold where
        // (2) fails.
        let c = Pd::constant(&ordinal(1), &l);
        let rc =
            check_condition1_prime(&c, &OrdinalDiagram::triangle_pushout(), &sq, l.bound, &l)
                .unwrap();
        assert!(rc.passed(), "{rc:?}");
        assert!(rc.notes.iter().any(|n| n.contains("2 = 2")));
    }

    #[test]
    fn condition_one_prime_rejects_non_created_colimits() {
        let l = limits();
        let d = Pd::representable(&ordinal(1), &l);
        // [0] <- [1]? An edge [1] -> [0] collapses; the colimit of a single
        // [1] with a self-gluing is not the nerve of [2].
        let bad = OrdinalDiagram {
            nodes: vec![1],
            edges: vec![],
        };
        match check_condition1_prime(&d, &bad, &ordinal(2), l.bound, &l) {
            Err(Error::Precondition(m)) => assert!(m.contains("not created")),
            other => panic!("expected a colimit-not-created error, got {other:?}"),
        }
    }

    #[test]
    fn reconstruction_round_trip() {
        let l = limits();
        let fam = family();
        for d in [
            Pd::representable(&ordinal(2), &l),
            Pd::homotopy(&nerve(&span(), l.bound), &l).unwrap(),
        ] {
            let (_, isos) = reconstruct(&d, &fam, l.bound, l.n_max).unwrap();
            assert_eq!(isos.len(), fam.categories.len());
        }
        // Refusal names the failing condition.
        let c = Pd::constant(&ordinal(1), &l);
        match reconstruct(&c, &fam, l.bound, l.n_max) {
            Err(Error::Precondition(m)) => {
                assert!(m.contains("condition-2"), "refusal names condition (2): {m}")
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn r_reflects_isomorphisms_between_quasi_representables() {
        let l = limits();
        let fam = family();
        let g = span();
        let d = Pd::homotopy(&nerve(&g, l.bound), &l).unwrap();
        let e = Pd::representable(&g, &l);
        // R(Ho_{NΓ}) -> NΓ -> R(D_Γ).
        let to_source = crate::pdv::ho_underlying_vs_source(&d, l.bound).unwrap();
        let to_rd = crate::pdv::rep_underlying_vs_nerve(&e, &g, l.bound).unwrap();
        let iso = to_rd.compose(&to_source);
        let isos = r_reflects_iso(&d, &e, &iso, &fam, l.bound, l.n_max).unwrap();
        assert_eq!(isos.len(), fam.categories.len());
        // Identity on the same prederivator.
        let rd = underlying_sset(&e, l.bound).unwrap();
        let idm = SimplicialMap::identity(&rd);
        let isos = r_reflects_iso(&e, &e, &idm, &fam, l.bound, l.n_max).unwrap();
        for f in &isos {
            assert_eq!(f.obj_map, (0..f.dom.n_objects()).collect::<Vec<_>>());
        }
        // Non-quasi-representable inputs are refused: the colimit side of
        // the product-comparison defect fails condition (1).
        let d1 = standard_simplex(1, l.bound);
        let (sqc, _, _) = crate::sset::sset_product(&d1, &d1);
        let lp = Pd::colim(&sqc, &l);
        let rlp = underlying_sset(&lp, l.bound).unwrap();
        let idm = SimplicialMap::identity(&rlp);
        match r_reflects_iso(&lp, &lp, &idm, &fam, l.bound, l.n_max) {
            Err(Error::Precondition(m)) => assert!(m.contains("condition-1")),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn conditions_one_and_one_prime_agree_on_fixtures() {
        let l = limits();
        let fam = family();
        let (sq, _, _) = product(&ordinal(1), &ordinal(1));
        for d in [
            Pd::representable(&ordinal(2), &l),
            Pd::homotopy(&nerve(&span(), l.bound), &l).unwrap(),
        ] {
            let r1 = check_condition1(&d, &fam, l.bound).unwrap();
            let r1p =
                check_condition1_prime(&d, &OrdinalDiagram::triangle_pushout(), &sq, l.bound, &l)
                    .unwrap();
            assert_eq!(r1.passed(), r1p.passed());
        }
    }
}
