//! The left adjoint `L` evaluated pointwise at probe categories.
//!
//! `L(x)` at a probe `j` is the colimit over the simplex diagram of `x` of
//! the object sets (exact, since taking objects preserves colimits) or of the
//! functor categories (by bounded congruence closure). The colimit runs over
//! the nondegenerate-simplex diagram; degenerate simplices contribute
//! identified copies, which a meta-test verifies against the full diagram on
//! small fixtures.

use crate::budget::Limits;
use crate::error::{Error, Result};
use crate::fincat::{
    enumerate_functors, functor_category, ordinal, product, span, Cat, CatFunctor, CatNatTransf,
    FunctorCategory,
};
use crate::pdv::{ordinal_monotone, Pd};
use crate::present::{quotient_category, CatPresentation, Word};
use crate::sset::{
    horn, monotone_tuples, sset_product, standard_simplex, SSet, SimplicialMap,
};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The category of simplices of a truncated simplicial set, restricted to
/// nondegenerate cells: nodes with their dimensions, and an edge for every
/// monotone operator carrying one nondegenerate cell to a face of another.
#[derive(Debug, Clone)]
pub struct SimplexDiagram {
    /// `(dimension, cell id)` per node.
    pub nodes: Vec<(usize, usize)>,
    /// `(from node, to node, monotone op)`: `op* (to) = from`.
    pub edges: Vec<(usize, usize, Vec<usize>)>,
}

/// Builds the nondegenerate simplex diagram.
pub fn simplex_diagram(x: &SSet) -> SimplexDiagram {
    let mut nodes = Vec::new();
    let mut node_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for n in 0..=x.bound() {
        for c in x.nondeg_cells(n) {
            node_of.insert((n, c), nodes.len());
            nodes.push((n, c));
        }
    }
    let mut edges = Vec::new();
    for (&(n, c), &to) in &node_of {
        for m in 0..n {
            for op in monotone_tuples(m + 1, n) {
                let img = x.act(n, c, &op);
                if x.is_nondeg(m, img) {
                    edges.push((node_of[&(m, img)], to, op));
                }
            }
        }
    }
    SimplexDiagram { nodes, edges }
}

/// The exact object-level colimit `Ob(L(x)(j))`, with its cocone data.
#[derive(Debug)]
pub struct LColimSet {
    pub j: Cat,
    pub diagram: SimplexDiagram,
    /// `functors[d]` = all functors `j -> [d]`, for every dimension in use.
    pub functors: Vec<Vec<CatFunctor>>,
    functor_index: Vec<BTreeMap<(Vec<usize>, Vec<usize>), usize>>,
    /// Representative `(node, functor id)` per class, in canonical order.
    pub classes: Vec<(usize, usize)>,
    /// `lookup[node][functor id]` = class.
    lookup: Vec<Vec<usize>>,
}

impl LColimSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
    /// Cocone component: the class of an element of a node's carrier.
    pub fn class(&self, node: usize, fidx: usize) -> usize {
        self.lookup[node][fidx]
    }
    pub fn functor_id(&self, d: usize, f: &CatFunctor) -> Option<usize> {
        self.functor_index[d]
            .get(&(f.obj_map.clone(), f.mor_map.clone()))
            .copied()
    }
}

struct Uf(Vec<usize>);
impl Uf {
    fn new(n: usize) -> Self {
        Uf((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

/// Colimit in sets of `Ob([n_σ]^j)` over the simplex diagram. Exact: the
/// object functor preserves colimits.
pub fn l_eval_objects(x: &SSet, j: &Cat, limits: &Limits) -> Result<LColimSet> {
    let diagram = simplex_diagram(x);
    l_eval_objects_over(&diagram, x, j, limits)
}

fn l_eval_objects_over(
    diagram: &SimplexDiagram,
    x: &SSet,
    j: &Cat,
    limits: &Limits,
) -> Result<LColimSet> {
    let max_dim = diagram.nodes.iter().map(|&(n, _)| n).max().unwrap_or(0);
    let mut functors: Vec<Vec<CatFunctor>> = Vec::with_capacity(max_dim + 1);
    let mut functor_index = Vec::with_capacity(max_dim + 1);
    for d in 0..=max_dim.min(x.bound()) {
        let fs = enumerate_functors(j, &ordinal(d), limits)?;
        functor_index.push(
            fs.iter()
                .enumerate()
                .map(|(i, f)| ((f.obj_map.clone(), f.mor_map.clone()), i))
                .collect::<BTreeMap<_, _>>(),
        );
        functors.push(fs);
    }
    let mut offsets = Vec::with_capacity(diagram.nodes.len());
    let mut total = 0;
    for &(n, _) in &diagram.nodes {
        offsets.push(total);
        total += functors[n].len();
    }
    let mut uf = Uf::new(total);
    for (from, to, op) in &diagram.edges {
        let (m, _) = diagram.nodes[*from];
        let (n, _) = diagram.nodes[*to];
        let opf = ordinal_monotone(op, n);
        for (fi, f) in functors[m].iter().enumerate() {
            let comp = opf.compose(f);
            let ci = functor_index[n][&(comp.obj_map, comp.mor_map)];
            uf.union(offsets[*from] + fi, offsets[*to] + ci);
        }
    }
    let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut classes = Vec::new();
    let mut lookup: Vec<Vec<usize>> = Vec::with_capacity(diagram.nodes.len());
    for (ni, &(n, _)) in diagram.nodes.iter().enumerate() {
        let mut row = Vec::with_capacity(functors[n].len());
        for fi in 0..functors[n].len() {
            let r = uf.find(offsets[ni] + fi);
            let id = *class_of_root.entry(r).or_insert_with(|| {
                classes.push((ni, fi));
                classes.len() - 1
            });
            row.push(id);
        }
        lookup.push(row);
    }
    Ok(LColimSet {
        j: j.clone(),
        diagram: diagram.clone(),
        functors,
        functor_index,
        classes,
        lookup,
    })
}

/// Object-level colimit over the full simplex diagram (every cell, including
/// degenerate ones). A meta-test oracle for the nondegenerate-diagram
/// optimization.
pub fn l_eval_objects_full(x: &SSet, j: &Cat, limits: &Limits) -> Result<usize> {
    let mut nodes = Vec::new();
    let mut node_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for n in 0..=x.bound() {
        for c in 0..x.count(n) {
            node_of.insert((n, c), nodes.len());
            nodes.push((n, c));
        }
    }
    let mut edges: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    // Generating operators: single cofaces and codegeneracies.
    for n in 0..=x.bound() {
        for c in 0..x.count(n) {
            if n >= 1 {
                for i in 0..=n {
                    let mut op: Vec<usize> = (0..n).collect();
                    for v in op.iter_mut() {
                        if *v >= i {
                            *v += 1;
                        }
                    }
                    edges.push((node_of[&(n - 1, x.face(n, i, c))], node_of[&(n, c)], op));
                }
            }
            if n < x.bound() {
                for i in 0..=n {
                    // σ^i: [n+1] -> [n] carries c to its degeneracy.
                    let op: Vec<usize> = (0..=(n + 1))
                        .map(|v| if v > i { v - 1 } else { v })
                        .collect();
                    edges.push((node_of[&(n + 1, x.degen(n, i, c))], node_of[&(n, c)], op));
                }
            }
        }
    }
    let diagram = SimplexDiagram { nodes, edges };
    Ok(l_eval_objects_over(&diagram, x, j, limits)?.len())
}

/// Category-level colimit data: the quotient category plus arrow metadata.
#[derive(Debug)]
pub struct LCatData {
    pub quotient: crate::present::QuotientCat,
    pub obset: Arc<LColimSet>,
    /// Functor categories `[d]^j` per dimension in use.
    pub fcs: Vec<FunctorCategory>,
    /// `(node, transformation id)` per presentation arrow.
    pub arrows: Vec<(usize, usize)>,
    arrow_index: BTreeMap<(usize, usize), usize>,
}

impl LCatData {
    /// The word of a (possibly identity) transformation at a node.
    fn transf_word(&self, node: usize, tid: usize, dim: usize) -> Word {
        let fc = &self.fcs[dim];
        let (s, _, _) = fc.transfs[tid];
        let src_class = self.obset.class(node, s);
        if fc.cat.is_identity(tid) {
            (src_class, vec![])
        } else {
            (src_class, vec![self.arrow_index[&(node, tid)]])
        }
    }
}

/// Free category on the colimit graph of `J -> [n_σ]^j` modulo the
/// congruence generated by functoriality of the cocone; bounded closure.
/// Objects always agree with the exact [`l_eval_objects`].
pub fn l_eval_category(
    x: &SSet,
    j: &Cat,
    obset: &Arc<LColimSet>,
    limits: &Limits,
) -> Result<LCatData> {
    let diagram = &obset.diagram;
    let max_dim = diagram.nodes.iter().map(|&(n, _)| n).max().unwrap_or(0);
    let mut fcs = Vec::with_capacity(max_dim + 1);
    for d in 0..=max_dim {
        fcs.push(functor_category(j, &ordinal(d), limits)?);
    }
    // Arrows: non-identity transformations at each node.
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let mut arrow_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut arrow_specs: Vec<(usize, usize)> = Vec::new();
    let mut arrow_labels = Vec::new();
    for (ni, &(n, _)) in diagram.nodes.iter().enumerate() {
        let fc = &fcs[n];
        for tid in 0..fc.transfs.len() {
            if fc.cat.is_identity(tid) {
                continue;
            }
            let (s, t, _) = fc.transfs[tid];
            arrow_index.insert((ni, tid), arrows.len());
            arrow_labels.push(format!("n{ni}t{tid}"));
            arrow_specs.push((obset.class(ni, s), obset.class(ni, t)));
            arrows.push((ni, tid));
        }
    }
    let word_of = |ni: usize, tid: usize, dim: usize| -> Word {
        let fc = &fcs[dim];
        let (s, _, _) = fc.transfs[tid];
        let src_class = obset.class(ni, s);
        if fc.cat.is_identity(tid) {
            (src_class, vec![])
        } else {
            (src_class, vec![arrow_index[&(ni, tid)]])
        }
    };
    let mut relations: Vec<(Word, Word)> = Vec::new();
    // (i) Composition inside each node's functor category.
    for (ni, &(n, _)) in diagram.nodes.iter().enumerate() {
        let fc = &fcs[n];
        for t1 in 0..fc.transfs.len() {
            for t2 in 0..fc.transfs.len() {
                if let Some(t12) = fc.cat.compose(t2, t1) {
                    let (w1, w2, w12) =
                        (word_of(ni, t1, n), word_of(ni, t2, n), word_of(ni, t12, n));
                    let mut concat = w1.1.clone();
                    concat.extend(w2.1.iter().copied());
                    relations.push((w12, (w1.0, concat)));
                }
            }
        }
    }
    // (ii) Cocone functoriality along diagram edges.
    for (from, to, op) in &diagram.edges {
        let (m, _) = diagram.nodes[*from];
        let (n, _) = diagram.nodes[*to];
        let opf = ordinal_monotone(op, n);
        let fc_m = &fcs[m];
        let fc_n = &fcs[n];
        for tid in 0..fc_m.transfs.len() {
            let (s, t, comps) = &fc_m.transfs[tid];
            let fs = opf.compose(&fc_m.functors[*s]);
            let ft = opf.compose(&fc_m.functors[*t]);
            let si = fc_n.object_of(&fs).expect("composite functor exists");
            let ti = fc_n.object_of(&ft).expect("composite functor exists");
            let pushed: Vec<usize> = comps.iter().map(|&c| opf.mor_map[c]).collect();
            let ptid = fc_n
                .morphism_of(si, ti, &pushed)
                .expect("pushed transformation exists");
            relations.push((word_of(*from, tid, m), word_of(*to, ptid, n)));
        }
    }
    let pres = CatPresentation {
        name: format!("L({})({})", x.name, j.name),
        n_vertices: obset.len(),
        vertex_labels: (0..obset.len()).map(|c| format!("c{c}")).collect(),
        arrows: arrow_specs,
        arrow_labels,
        relations,
    };
    let quotient = quotient_category(&pres, limits.word_bound, limits)?;
    Ok(LCatData {
        quotient,
        obset: obset.clone(),
        fcs,
        arrows,
        arrow_index,
    })
}

/// Object part of restriction along `u: J' -> J`, with a full
/// representative-independence check.
pub fn l_restrict_ob(sj: &LColimSet, sjp: &LColimSet, u: &CatFunctor) -> Result<Vec<usize>> {
    let mut out = vec![usize::MAX; sj.len()];
    for (ni, &(n, _)) in sj.diagram.nodes.iter().enumerate() {
        for (fi, f) in sj.functors[n].iter().enumerate() {
            let comp = f.compose(u);
            let ci = sjp
                .functor_id(n, &comp)
                .ok_or_else(|| Error::Internal("restricted functor missing".into()))?;
            let target = sjp.class(ni, ci);
            let cls = sj.class(ni, fi);
            if out[cls] == usize::MAX {
                out[cls] = target;
            } else if out[cls] != target {
                return Err(Error::Internal(
                    "colimit restriction depends on the representative".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// Full restriction functor between category-level colimits.
pub fn l_restrict(
    dj: &LCatData,
    djp: &LCatData,
    u: &CatFunctor,
    src_cat: &Cat,
    dst_cat: &Cat,
) -> Result<CatFunctor> {
    let obj_map = l_restrict_ob(&dj.obset, &djp.obset, u)?;
    let mut mor_map = Vec::with_capacity(src_cat.n_morphisms());
    for m in 0..src_cat.n_morphisms() {
        let (src_class, word) = &dj.quotient.reps[m];
        let mut out_word: Vec<usize> = Vec::new();
        for &a in word {
            let (ni, tid) = dj.arrows[a];
            let (n, _) = dj.obset.diagram.nodes[ni];
            let fc = &dj.fcs[n];
            let fcp = &djp.fcs[n];
            let (s, t, comps) = &fc.transfs[tid];
            let fs = fc.functors[*s].compose(u);
            let ft = fc.functors[*t].compose(u);
            let si = fcp.object_of(&fs).expect("whiskered functor exists");
            let ti = fcp.object_of(&ft).expect("whiskered functor exists");
            let wcomps: Vec<usize> = u.obj_map.iter().map(|&x| comps[x]).collect();
            let wtid = fcp
                .morphism_of(si, ti, &wcomps)
                .ok_or_else(|| Error::Internal("whiskered transformation missing".into()))?;
            let w = djp.transf_word(ni, wtid, n);
            out_word.extend(w.1);
        }
        let cls = djp
            .quotient
            .class_of(&(obj_map[*src_class], out_word))
            .ok_or_else(|| Error::BoundExceeded("restricted word beyond the bound".into()))?;
        mor_map.push(cls);
    }
    let f = CatFunctor {
        dom: src_cat.clone(),
        cod: dst_cat.clone(),
        obj_map,
        mor_map,
    };
    f.validate()?;
    Ok(f)
}

/// Object-indexed 2-cell components for a colimit-presented prederivator.
pub fn l_twocell_components(
    sj: &LColimSet,
    djp: &LCatData,
    alpha: &CatNatTransf,
) -> Result<Vec<usize>> {
    let u = &alpha.source;
    let v = &alpha.target;
    let mut out = vec![usize::MAX; sj.len()];
    for (ni, &(n, _)) in sj.diagram.nodes.iter().enumerate() {
        let fcp = &djp.fcs[n];
        for (fi, f) in sj.functors[n].iter().enumerate() {
            let fu = f.compose(u);
            let fv = f.compose(v);
            let si = fcp.object_of(&fu).expect("whiskered functor exists");
            let ti = fcp.object_of(&fv).expect("whiskered functor exists");
            let comps: Vec<usize> = alpha
                .components
                .iter()
                .map(|&c| f.mor_map[c])
                .collect();
            let tid = fcp
                .morphism_of(si, ti, &comps)
                .ok_or_else(|| Error::Internal("whiskered 2-cell missing".into()))?;
            let w = djp.transf_word(ni, tid, n);
            let cls = djp
                .quotient
                .class_of(&w)
                .ok_or_else(|| Error::BoundExceeded("2-cell word beyond the bound".into()))?;
            let at = sj.class(ni, fi);
            if out[at] == usize::MAX {
                out[at] = cls;
            } else if out[at] != cls {
                return Err(Error::Internal(
                    "2-cell component depends on the representative".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// The map `Ob(L(x)(j)) -> Ob(L(y)(j))` induced by a simplicial map, with a
/// representative-independence check.
pub fn l_induced_map(
    f: &SimplicialMap,
    sx: &LColimSet,
    sy: &LColimSet,
) -> Result<Vec<usize>> {
    let y = &f.cod;
    let y_node: BTreeMap<(usize, usize), usize> = sy
        .diagram
        .nodes
        .iter()
        .enumerate()
        .map(|(i, &nc)| (nc, i))
        .collect();
    let mut out = vec![usize::MAX; sx.len()];
    for (ni, &(n, c)) in sx.diagram.nodes.iter().enumerate() {
        let img = f.levels[n][c];
        let (k, core, word) = y.ez_decomposition(n, img);
        // The epi `[n] -> [k]` named by the degeneracy word.
        let mut values: Vec<usize> = (0..=k).collect();
        for &i in word {
            let len = values.len();
            let mut next = Vec::with_capacity(len + 1);
            for t in 0..=len {
                let s = if t > i { t - 1 } else { t };
                next.push(values[s.min(len - 1)]);
            }
            values = next;
        }
        let epi = ordinal_monotone(&values, k);
        let yn = y_node[&(k, core)];
        for (fi, fun) in sx.functors[n].iter().enumerate() {
            let comp = epi.compose(fun);
            let ci = sy
                .functor_id(k, &comp)
                .ok_or_else(|| Error::Internal("pushed functor missing".into()))?;
            let target = sy.class(yn, ci);
            let cls = sx.class(ni, fi);
            if out[cls] == usize::MAX {
                out[cls] = target;
            } else if out[cls] != target {
                return Err(Error::Internal(
                    "induced colimit map depends on the representative".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// Levelwise unit comparison `x ≅ R(L(x))`: dimension `n` of `R(L(x))` is
/// the exact object colimit at `[n]`, and the unit sends a cell to the class
/// of its nondegenerate core placed along its degeneracy epi.
#[derive(Debug, Clone)]
pub struct UnitReport {
    pub name: String,
    /// `(cells of x, cells of R L x)` per dimension.
    pub levels: Vec<(usize, usize)>,
    pub pass: bool,
}

pub fn unit_check(x: &SSet, limits: &Limits) -> Result<UnitReport> {
    let diagram = simplex_diagram(x);
    let node_of: BTreeMap<(usize, usize), usize> = diagram
        .nodes
        .iter()
        .enumerate()
        .map(|(i, &nc)| (nc, i))
        .collect();
    let mut levels = Vec::with_capacity(x.bound() + 1);
    let mut pass = true;
    for n in 0..=x.bound() {
        let set = l_eval_objects(x, &ordinal(n), limits)?;
        let mut seen = vec![false; set.len()];
        let mut injective = true;
        for c in 0..x.count(n) {
            let (k, core, word) = x.ez_decomposition(n, c);
            let mut values: Vec<usize> = (0..=k).collect();
            for &i in word {
                let len = values.len();
                let mut next = Vec::with_capacity(len + 1);
                for t in 0..=len {
                    let s = if t > i { t - 1 } else { t };
                    next.push(values[s.min(len - 1)]);
                }
                values = next;
            }
            let epi = ordinal_monotone(&values, k);
            let fid = set
                .functor_id(k, &epi)
                .ok_or_else(|| Error::Internal("unit functor missing".into()))?;
            let cls = set.class(node_of[&(k, core)], fid);
            if seen[cls] {
                injective = false;
            }
            seen[cls] = true;
        }
        let surjective = seen.iter().all(|&b| b);
        pass &= injective && surjective && x.count(n) == set.len();
        levels.push((x.count(n), set.len()));
    }
    Ok(UnitReport {
        name: x.name.clone(),
        levels,
        pass,
    })
}

/// Reproduction of the product-comparison defect of `L`: the canonical map
/// `L(Δ[1]×Δ[1]) -> L(Δ[1]) × L(Δ[1]) = D_{[1]×[1]}` evaluated at the span
/// is injective but not surjective, and the span through three corners of
/// the square is missing from the image.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ProductComparisonReport {
    pub dom_size: usize,
    pub cod_size: usize,
    pub injective: bool,
    pub surjective: bool,
    pub witness_missing: bool,
}

pub fn l_product_comparison(limits: &Limits) -> Result<ProductComparisonReport> {
    let bound = limits.bound;
    let d1 = standard_simplex(1, bound);
    let (sq_complex, _, _) = sset_product(&d1, &d1);
    let gamma = span();
    let set = l_eval_objects(&sq_complex, &gamma, limits)?;

    let (sq_cat, _, _) = product(&ordinal(1), &ordinal(1));
    let target = enumerate_functors(&gamma, &sq_cat, limits)?;
    let target_index: BTreeMap<(Vec<usize>, Vec<usize>), usize> = target
        .iter()
        .enumerate()
        .map(|(i, f)| ((f.obj_map.clone(), f.mor_map.clone()), i))
        .collect();

    // Tuples of Δ[1] cells per dimension, matching cell ids.
    let tuples: Vec<Vec<Vec<usize>>> = (0..=bound).map(|m| monotone_tuples(m + 1, 1)).collect();
    let pair_functor = |n: usize, cell: usize, f: &CatFunctor| -> CatFunctor {
        let ny = d1.count(n);
        let (cx, cy) = (cell / ny, cell % ny);
        let g1 = ordinal_monotone(&tuples[n][cx], 1);
        let g2 = ordinal_monotone(&tuples[n][cy], 1);
        let a1 = g1.compose(f);
        let a2 = g2.compose(f);
        // Mediating functor into [1]×[1] by the product id formulas.
        let obj_map: Vec<usize> = (0..gamma.n_objects())
            .map(|x| a1.obj_map[x] * 2 + a2.obj_map[x])
            .collect();
        let mor_map: Vec<usize> = (0..gamma.n_morphisms())
            .map(|m| a1.mor_map[m] * ordinal(1).n_morphisms() + a2.mor_map[m])
            .collect();
        CatFunctor {
            dom: gamma.clone(),
            cod: sq_cat.clone(),
            obj_map,
            mor_map,
        }
    };

    let mut image = vec![usize::MAX; set.len()];
    for (ni, &(n, c)) in set.diagram.nodes.iter().enumerate() {
        for (fi, f) in set.functors[n].iter().enumerate() {
            let med = pair_functor(n, c, f);
            let idx = target_index[&(med.obj_map.clone(), med.mor_map.clone())];
            let cls = set.class(ni, fi);
            if image[cls] == usize::MAX {
                image[cls] = idx;
            } else if image[cls] != idx {
                return Err(Error::Internal(
                    "product comparison depends on the representative".into(),
                ));
            }
        }
    }
    let mut seen: Vec<usize> = image.clone();
    seen.sort_unstable();
    seen.dedup();
    let injective = seen.len() == set.len();
    let surjective = seen.len() == target.len();
    // The span landing on three distinct corners: center to (0,1) and (1,0).
    let witness = CatFunctor {
        dom: gamma.clone(),
        cod: sq_cat.clone(),
        obj_map: vec![1, 0, 2],
        mor_map: {
            let m_c_l = sq_cat.hom(0, 1)[0];
            let m_c_r = sq_cat.hom(0, 2)[0];
            // span morphisms: identities then center->L, center->R in id order
            (0..gamma.n_morphisms())
                .map(|m| {
                    let (s, t) = (gamma.src(m), gamma.tgt(m));
                    if s == t {
                        sq_cat.identity([1, 0, 2][s])
                    } else if t == 0 {
                        m_c_l
                    } else {
                        m_c_r
                    }
                })
                .collect()
        },
    };
    witness.validate()?;
    let widx = target_index[&(witness.obj_map.clone(), witness.mor_map.clone())];
    let witness_missing = !image.contains(&widx);
    Ok(ProductComparisonReport {
        dom_size: set.len(),
        cod_size: target.len(),
        injective,
        surjective,
        witness_missing,
    })
}

/// The horn prederivator `L(Λ^k[n])`.
pub fn horn_pd(n: usize, k: usize, limits: &Limits) -> Pd {
    let (h, _) = horn(n, k, limits.bound);
    Pd::colim(&h, limits)
}

/// The boundary prederivator `L(∂Δ[n])`.
pub fn boundary_pd(n: usize, limits: &Limits) -> Pd {
    let (b, _) = crate::sset::boundary(n, limits.bound);
    Pd::colim(&b, limits)
}

/// Object part of the canonical map `L(S)(j) -> Ob([n]^j)` for a subcomplex
/// `S` of `Δ[n]` whose cells are monotone tuples.
pub fn l_comparison_ob(
    sub: &SSet,
    set: &LColimSet,
    n: usize,
    limits: &Limits,
) -> Result<Vec<usize>> {
    let j = &set.j;
    let target = enumerate_functors(j, &ordinal(n), limits)?;
    let target_index: BTreeMap<(Vec<usize>, Vec<usize>), usize> = target
        .iter()
        .enumerate()
        .map(|(i, f)| ((f.obj_map.clone(), f.mor_map.clone()), i))
        .collect();
    let mut out = vec![usize::MAX; set.len()];
    for (ni, &(m, cell)) in set.diagram.nodes.iter().enumerate() {
        let tuple: Vec<usize> = sub
            .label(m, cell)
            .chars()
            .map(|ch| ch.to_digit(10).unwrap() as usize)
            .collect();
        let incl = ordinal_monotone(&tuple, n);
        for (fi, f) in set.functors[m].iter().enumerate() {
            let comp = incl.compose(f);
            let idx = target_index[&(comp.obj_map.clone(), comp.mor_map.clone())];
            let cls = set.class(ni, fi);
            if out[cls] == usize::MAX {
                out[cls] = idx;
            } else if out[cls] != idx {
                return Err(Error::Internal(
                    "comparison map depends on the representative".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// Full canonical comparison `L(S)(j) -> [n]^j` for a subcomplex `S` of
/// `Δ[n]`: objects by [`l_comparison_ob`], morphisms by whiskering each
/// presentation arrow with its cell's inclusion and composing along
/// representative words.
pub fn l_comparison(
    sub: &SSet,
    data: &LCatData,
    n: usize,
    target: &FunctorCategory,
    limits: &Limits,
) -> Result<CatFunctor> {
    let set = &data.obset;
    let obj_map = l_comparison_ob(sub, set, n, limits)?;
    let target_obj_index: BTreeMap<(Vec<usize>, Vec<usize>), usize> = target
        .functors
        .iter()
        .enumerate()
        .map(|(i, f)| ((f.obj_map.clone(), f.mor_map.clone()), i))
        .collect();
    let arrow_image = |a: usize| -> Result<usize> {
        let (ni, tid) = data.arrows[a];
        let (m, cell) = set.diagram.nodes[ni];
        let tuple: Vec<usize> = sub
            .label(m, cell)
            .chars()
            .map(|ch| ch.to_digit(10).unwrap() as usize)
            .collect();
        let incl = ordinal_monotone(&tuple, n);
        let fc = &data.fcs[m];
        let (s, t, comps) = &fc.transfs[tid];
        let fs = incl.compose(&fc.functors[*s]);
        let ft = incl.compose(&fc.functors[*t]);
        let si = target_obj_index[&(fs.obj_map, fs.mor_map)];
        let ti = target_obj_index[&(ft.obj_map, ft.mor_map)];
        let pushed: Vec<usize> = comps.iter().map(|&c| incl.mor_map[c]).collect();
        target
            .morphism_of(si, ti, &pushed)
            .ok_or_else(|| Error::Internal("whiskered arrow missing from target".into()))
    };
    let mut mor_map = Vec::with_capacity(data.quotient.cat.n_morphisms());
    for m in 0..data.quotient.cat.n_morphisms() {
        let (src_class, word) = &data.quotient.reps[m];
        let mut acc = target.cat.identity(obj_map[*src_class]);
        for &a in word {
            let img = arrow_image(a)?;
            acc = target
                .cat
                .compose(img, acc)
                .ok_or_else(|| Error::Internal("comparison word fails to compose".into()))?;
        }
        mor_map.push(acc);
    }
    let f = CatFunctor {
        dom: data.quotient.cat.clone(),
        cod: target.cat.clone(),
        obj_map,
        mor_map,
    };
    f.validate()?;
    Ok(f)
}
