//! Truncated simplicial sets: standard objects, nerves, products, pushouts,
//! exponentials, simplicial-map enumeration, and the lifting-property engine.
//!
//! A [`TruncSSet`] stores cells up to a dimension bound together with full
//! face and degeneracy tables. Every constructed complex passes the
//! simplicial-identity validator. Cells carry an Eilenberg–Zilber
//! decomposition (nondegenerate core plus degeneracy word), which lets maps
//! be enumerated on nondegenerate cells only and propagated to the rest.

use crate::budget::Limits;
use crate::error::{Error, Result};
use crate::fincat::{Cat, CatFunctor};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Shared handle to an immutable truncated simplicial set.
pub type SSet = Arc<TruncSSet>;

#[derive(Debug, Clone, PartialEq, Eq)]
struct EzData {
    core_dim: usize,
    core_id: usize,
    /// Degeneracy word applied to the core, in application order.
    word: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct TruncSSet {
    pub name: String,
    bound: usize,
    counts: Vec<usize>,
    /// `faces[n][i][c]` = `d_i c` for `1 <= n <= bound`, `0 <= i <= n`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][i][c]` = `s_i c` for `0 <= n < bound`, `0 <= i <= n`.
    degens: Vec<Vec<Vec<usize>>>,
    nondeg: Vec<Vec<bool>>,
    ez: Vec<Vec<EzData>>,
    labels: Vec<Vec<String>>,
    key: Vec<u64>,
}

impl PartialEq for TruncSSet {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for TruncSSet {}

impl TruncSSet {
    pub fn bound(&self) -> usize {
        self.bound
    }
    pub fn count(&self, n: usize) -> usize {
        if n <= self.bound {
            self.counts[n]
        } else {
            0
        }
    }
    pub fn face(&self, n: usize, i: usize, c: usize) -> usize {
        self.faces[n][i][c]
    }
    pub fn degen(&self, n: usize, i: usize, c: usize) -> usize {
        self.degens[n][i][c]
    }
    pub fn is_nondeg(&self, n: usize, c: usize) -> bool {
        self.nondeg[n][c]
    }
    pub fn label(&self, n: usize, c: usize) -> &str {
        &self.labels[n][c]
    }
    pub fn key(&self) -> &[u64] {
        &self.key
    }

    /// Ids of nondegenerate cells in dimension `n`.
    pub fn nondeg_cells(&self, n: usize) -> Vec<usize> {
        (0..self.count(n)).filter(|&c| self.nondeg[n][c]).collect()
    }

    /// Eilenberg–Zilber decomposition of a cell: `(core dimension, core id,
    /// degeneracy word in application order)`.
    pub fn ez_decomposition(&self, n: usize, c: usize) -> (usize, usize, &[usize]) {
        let ez = &self.ez[n][c];
        (ez.core_dim, ez.core_id, &ez.word)
    }

    /// Largest dimension carrying a nondegenerate cell, if any cell exists.
    pub fn nondeg_dimension(&self) -> Option<usize> {
        (0..=self.bound)
            .rev()
            .find(|&n| self.nondeg[n].iter().any(|&b| b))
    }

    pub fn total_cells(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Action of a monotone operator `op: [m] -> [n]` on an `n`-cell,
    /// factored into faces and degeneracies.
    pub fn act(&self, n: usize, c: usize, op: &[usize]) -> usize {
        let m = op.len() - 1;
        if m == n && op.iter().enumerate().all(|(i, &v)| v == i) {
            return c;
        }
        // Non-surjective: strip the smallest missing value with a face.
        let mut present = vec![false; n + 1];
        for &v in op {
            present[v] = true;
        }
        if let Some(i) = (0..=n).find(|&i| !present[i]) {
            let reduced: Vec<usize> = op.iter().map(|&v| if v > i { v - 1 } else { v }).collect();
            return self.act(n - 1, self.faces[n][i][c], &reduced);
        }
        // Surjective, non-injective: peel one codegeneracy.
        let j = (0..m).find(|&j| op[j] == op[j + 1]).expect("non-identity epi");
        let mut shorter = op.to_vec();
        shorter.remove(j);
        let inner = self.act(n, c, &shorter);
        self.degens[m - 1][j][inner]
    }

    /// Checks every simplicial identity on every stored cell, and that the
    /// nondegeneracy flags match the degeneracy images.
    pub fn validate(&self) -> Result<()> {
        for n in 1..=self.bound {
            if n >= 2 {
                for c in 0..self.counts[n] {
                    for j in 1..=n {
                        for i in 0..j {
                            let a = self.faces[n - 1][j - 1][self.faces[n][i][c]];
                            let b = self.faces[n - 1][i][self.faces[n][j][c]];
                            if a != b {
                                return Err(Error::LawViolation(format!(
                                    "{}: d{i} d{j} != d{} d{i} at {}-cell {}",
                                    self.name,
                                    j - 1,
                                    n,
                                    self.labels[n][c]
                                )));
                            }
                        }
                    }
                }
            }
        }
        for n in 0..self.bound {
            for c in 0..self.counts[n] {
                for j in 0..=n {
                    let sj = self.degens[n][j][c];
                    // d_j s_j = id = d_{j+1} s_j
                    if self.faces[n + 1][j][sj] != c || self.faces[n + 1][j + 1][sj] != c {
                        return Err(Error::LawViolation(format!(
                            "{}: face of degeneracy s{j} fails at {}-cell {}",
                            self.name, n, self.labels[n][c]
                        )));
                    }
                    for i in 0..=(n + 1) {
                        if i == j || i == j + 1 {
                            continue;
                        }
                        let lhs = self.faces[n + 1][i][sj];
                        let rhs = if i < j {
                            self.degens[n - 1][j - 1][self.faces[n][i][c]]
                        } else {
                            self.degens[n - 1][j][self.faces[n][i - 1][c]]
                        };
                        if lhs != rhs {
                            return Err(Error::LawViolation(format!(
                                "{}: d{i} s{j} identity fails at {}-cell {}",
                                self.name, n, self.labels[n][c]
                            )));
                        }
                    }
                }
                if n + 2 <= self.bound {
                    for j in 0..=n {
                        for i in 0..=j {
                            let a = self.degens[n + 1][i][self.degens[n][j][c]];
                            let b = self.degens[n + 1][j + 1][self.degens[n][i][c]];
                            if a != b {
                                return Err(Error::LawViolation(format!(
                                    "{}: s{i} s{j} != s{} s{i} at {}-cell {}",
                                    self.name,
                                    j + 1,
                                    n,
                                    self.labels[n][c]
                                )));
                            }
                        }
                    }
                }
            }
        }
        // Flag consistency.
        for n in 1..=self.bound {
            for c in 0..self.counts[n] {
                let degenerate = (0..n).any(|i| {
                    let b = self.faces[n][i][c];
                    self.degens[n - 1][i][b] == c
                });
                if degenerate == self.nondeg[n][c] {
                    return Err(Error::LawViolation(format!(
                        "{}: nondegeneracy flag inconsistent at {}-cell {}",
                        self.name, n, self.labels[n][c]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Incremental constructor. `finish` computes nondegeneracy flags and
/// Eilenberg–Zilber decompositions and validates every simplicial identity.
#[derive(Debug)]
pub struct SSetBuilder {
    name: String,
    bound: usize,
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Option<usize>>>>,
    degens: Vec<Vec<Vec<Option<usize>>>>,
}

impl SSetBuilder {
    pub fn new(name: &str, bound: usize) -> Self {
        SSetBuilder {
            name: name.to_string(),
            bound,
            labels: vec![Vec::new(); bound + 1],
            faces: (0..=bound).map(|n| vec![Vec::new(); n + 1]).collect(),
            degens: (0..=bound).map(|n| vec![Vec::new(); n + 2]).collect(),
        }
    }

    pub fn add_cell(&mut self, n: usize, label: &str) -> usize {
        self.labels[n].push(label.to_string());
        for i in 0..=n {
            self.faces[n][i].push(None);
        }
        for i in 0..=n {
            self.degens[n][i].push(None);
        }
        self.labels[n].len() - 1
    }

    pub fn set_face(&mut self, n: usize, i: usize, cell: usize, value: usize) {
        self.faces[n][i][cell] = Some(value);
    }

    pub fn set_degen(&mut self, n: usize, i: usize, cell: usize, value: usize) {
        self.degens[n][i][cell] = Some(value);
    }

    pub fn finish(self) -> Result<TruncSSet> {
        let bound = self.bound;
        let counts: Vec<usize> = self.labels.iter().map(|l| l.len()).collect();
        let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); bound + 1];
        let mut degens: Vec<Vec<Vec<usize>>> = vec![Vec::new(); bound + 1];
        for n in 1..=bound {
            for i in 0..=n {
                let mut col = Vec::with_capacity(counts[n]);
                for c in 0..counts[n] {
                    let v = self.faces[n][i][c].ok_or_else(|| {
                        Error::InputFormat(format!(
                            "{}: missing face d{i} of {n}-cell {}",
                            self.name, self.labels[n][c]
                        ))
                    })?;
                    if v >= counts[n - 1] {
                        return Err(Error::InputFormat(format!(
                            "{}: face d{i} of {n}-cell {} references missing cell",
                            self.name, self.labels[n][c]
                        )));
                    }
                    col.push(v);
                }
                faces[n].push(col);
            }
        }
        for n in 0..bound {
            for i in 0..=n {
                let mut col = Vec::with_capacity(counts[n]);
                for c in 0..counts[n] {
                    let v = self.degens[n][i][c].ok_or_else(|| {
                        Error::InputFormat(format!(
                            "{}: missing degeneracy s{i} of {n}-cell {}",
                            self.name, self.labels[n][c]
                        ))
                    })?;
                    if v >= counts[n + 1] {
                        return Err(Error::InputFormat(format!(
                            "{}: degeneracy s{i} of {n}-cell {} references missing cell",
                            self.name, self.labels[n][c]
                        )));
                    }
                    col.push(v);
                }
                degens[n].push(col);
            }
        }
        // Nondegeneracy flags via the standard test c = s_i(d_i c).
        let mut nondeg: Vec<Vec<bool>> = Vec::with_capacity(bound + 1);
        nondeg.push(vec![true; counts[0]]);
        for n in 1..=bound {
            let mut flags = Vec::with_capacity(counts[n]);
            for c in 0..counts[n] {
                let degenerate = (0..n).any(|i| degens[n - 1][i][faces[n][i][c]] == c);
                flags.push(!degenerate);
            }
            nondeg.push(flags);
        }
        // EZ decompositions, peeling minimal degeneracy indices.
        let mut ez: Vec<Vec<EzData>> = Vec::with_capacity(bound + 1);
        for n in 0..=bound {
            let mut row = Vec::with_capacity(counts[n]);
            for c in 0..counts[n] {
                if nondeg[n][c] {
                    row.push(EzData {
                        core_dim: n,
                        core_id: c,
                        word: vec![],
                    });
                } else {
                    let i = (0..n)
                        .find(|&i| degens[n - 1][i][faces[n][i][c]] == c)
                        .expect("degenerate cell has a witness");
                    let b = faces[n][i][c];
                    let inner: &EzData = &ez[n - 1][b];
                    let mut word = inner.word.clone();
                    word.push(i);
                    row.push(EzData {
                        core_dim: inner.core_dim,
                        core_id: inner.core_id,
                        word,
                    });
                }
            }
            ez.push(row);
        }
        let mut key = vec![bound as u64];
        key.extend(counts.iter().map(|&c| c as u64));
        for n in 1..=bound {
            for i in 0..=n {
                key.extend(faces[n][i].iter().map(|&v| v as u64));
            }
        }
        for n in 0..bound {
            for i in 0..=n {
                key.extend(degens[n][i].iter().map(|&v| v as u64));
            }
        }
        let out = TruncSSet {
            name: self.name,
            bound,
            counts,
            faces,
            degens,
            nondeg,
            ez,
            labels: self.labels,
            key,
        };
        out.validate()?;
        Ok(out)
    }
}

/// A map of truncated simplicial sets, stored levelwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    pub dom: SSet,
    pub cod: SSet,
    pub levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn identity(x: &SSet) -> SimplicialMap {
        SimplicialMap {
            dom: x.clone(),
            cod: x.clone(),
            levels: (0..=x.bound()).map(|n| (0..x.count(n)).collect()).collect(),
        }
    }

    pub fn apply(&self, n: usize, c: usize) -> usize {
        self.levels[n][c]
    }

    /// Exhaustive check that the map commutes with all faces and degeneracies.
    pub fn validate(&self) -> Result<()> {
        if self.dom.bound() != self.cod.bound() {
            return Err(Error::BoundExceeded(format!(
                "map {} -> {} between different bounds",
                self.dom.name, self.cod.name
            )));
        }
        for n in 0..=self.dom.bound() {
            if self.levels[n].len() != self.dom.count(n) {
                return Err(Error::InputFormat(format!(
                    "map {} -> {}: level {n} has wrong length",
                    self.dom.name, self.cod.name
                )));
            }
            for &v in &self.levels[n] {
                if v >= self.cod.count(n) {
                    return Err(Error::InputFormat(format!(
                        "map {} -> {}: level {n} references missing cell",
                        self.dom.name, self.cod.name
                    )));
                }
            }
        }
        for n in 1..=self.dom.bound() {
            for c in 0..self.dom.count(n) {
                for i in 0..=n {
                    if self.levels[n - 1][self.dom.face(n, i, c)]
                        != self.cod.face(n, i, self.levels[n][c])
                    {
                        return Err(Error::LawViolation(format!(
                            "map {} -> {} breaks d{i} at {}-cell {}",
                            self.dom.name,
                            self.cod.name,
                            n,
                            self.dom.label(n, c)
                        )));
                    }
                }
            }
        }
        for n in 0..self.dom.bound() {
            for c in 0..self.dom.count(n) {
                for i in 0..=n {
                    if self.levels[n + 1][self.dom.degen(n, i, c)]
                        != self.cod.degen(n, i, self.levels[n][c])
                    {
                        return Err(Error::LawViolation(format!(
                            "map {} -> {} breaks s{i} at {}-cell {}",
                            self.dom.name,
                            self.cod.name,
                            n,
                            self.dom.label(n, c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SimplicialMap) -> SimplicialMap {
        assert_eq!(
            other.cod.key(),
            self.dom.key(),
            "simplicial map composition endpoint mismatch"
        );
        SimplicialMap {
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            levels: other
                .levels
                .iter()
                .enumerate()
                .map(|(n, lv)| lv.iter().map(|&c| self.levels[n][c]).collect())
                .collect(),
        }
    }

    pub fn is_mono_levelwise(&self) -> bool {
        self.levels.iter().enumerate().all(|(n, lv)| {
            let mut seen = vec![false; self.cod.count(n)];
            lv.iter().all(|&c| {
                if seen[c] {
                    false
                } else {
                    seen[c] = true;
                    true
                }
            })
        })
    }

    pub fn is_iso_levelwise(&self) -> bool {
        self.is_mono_levelwise()
            && self
                .levels
                .iter()
                .enumerate()
                .all(|(n, lv)| lv.len() == self.cod.count(n))
    }
}

/// All monotone tuples of the given length with values in `0..=max`,
/// in lexicographic order.
pub fn monotone_tuples(len: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let lo = prefix.last().copied().unwrap_or(0);
        for v in lo..=max {
            prefix.push(v);
            rec(len, max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max, &mut Vec::new(), &mut out);
    out
}

fn tuple_label(t: &[usize]) -> String {
    t.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("")
}

/// Builds a complex whose `m`-cells are a downward-closed family of monotone
/// tuples `[m] -> [n]`.
fn tuple_complex(name: &str, n: usize, bound: usize, keep: impl Fn(&[usize]) -> bool) -> SSet {
    let mut cells: Vec<Vec<Vec<usize>>> = Vec::with_capacity(bound + 1);
    let mut index: Vec<BTreeMap<Vec<usize>, usize>> = Vec::with_capacity(bound + 1);
    for m in 0..=bound {
        let tuples: Vec<Vec<usize>> = monotone_tuples(m + 1, n)
            .into_iter()
            .filter(|t| keep(t))
            .collect();
        let mut idx = BTreeMap::new();
        for (i, t) in tuples.iter().enumerate() {
            idx.insert(t.clone(), i);
        }
        cells.push(tuples);
        index.push(idx);
    }
    let mut b = SSetBuilder::new(name, bound);
    for m in 0..=bound {
        for t in &cells[m] {
            b.add_cell(m, &tuple_label(t));
        }
    }
    for m in 1..=bound {
        for (c, t) in cells[m].iter().enumerate() {
            for i in 0..=m {
                let mut ft = t.clone();
                ft.remove(i);
                b.set_face(m, i, c, index[m - 1][&ft]);
            }
        }
    }
    for m in 0..bound {
        for (c, t) in cells[m].iter().enumerate() {
            for i in 0..=m {
                let mut st = t.clone();
                st.insert(i, t[i]);
                b.set_degen(m, i, c, index[m + 1][&st]);
            }
        }
    }
    Arc::new(b.finish().expect("tuple complex is simplicial"))
}

/// The standard simplex `Δ[n]`: `m`-cells are the monotone maps `[m] -> [n]`.
pub fn standard_simplex(n: usize, bound: usize) -> SSet {
    assert!(bound >= n, "standard simplex needs bound >= n");
    tuple_complex(&format!("delta[{n}]"), n, bound, |_| true)
}

/// The empty simplicial set.
pub fn empty_sset(bound: usize) -> SSet {
    let b = SSetBuilder::new("empty", bound);
    Arc::new(b.finish().expect("empty complex is simplicial"))
}

/// The boundary `∂Δ[n]` with its inclusion into `Δ[n]`.
pub fn boundary(n: usize, bound: usize) -> (SSet, SimplicialMap) {
    assert!(n >= 1, "boundary needs n >= 1");
    let sub = tuple_complex(&format!("boundary[{n}]"), n, bound, |t| {
        (0..=n).any(|v| !t.contains(&v))
    });
    let total = standard_simplex(n, bound);
    let incl = tuple_inclusion(&sub, &total, n);
    (sub, incl)
}

/// The horn `Λ^k[n]` with its inclusion into `Δ[n]`.
pub fn horn(n: usize, k: usize, bound: usize) -> (SSet, SimplicialMap) {
    assert!(n >= 1 && k <= n, "horn index out of range");
    let sub = tuple_complex(&format!("horn[{n},{k}]"), n, bound, |t| {
        (0..=n).any(|v| v != k && !t.contains(&v))
    });
    let total = standard_simplex(n, bound);
    let incl = tuple_inclusion(&sub, &total, n);
    (sub, incl)
}

fn tuple_inclusion(sub: &SSet, total: &SSet, _n: usize) -> SimplicialMap {
    // Both complexes label cells by the canonical tuple string.
    let mut levels = Vec::with_capacity(sub.bound() + 1);
    for m in 0..=sub.bound() {
        let index: BTreeMap<&str, usize> = (0..total.count(m))
            .map(|c| (total.label(m, c), c))
            .collect();
        levels.push(
            (0..sub.count(m))
                .map(|c| index[sub.label(m, c)])
                .collect(),
        );
    }
    let map = SimplicialMap {
        dom: sub.clone(),
        cod: total.clone(),
        levels,
    };
    debug_assert!(map.validate().is_ok());
    map
}

/// The nerve: `m`-cells are composable `m`-chains of morphisms.
pub fn nerve(j: &Cat, bound: usize) -> SSet {
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::with_capacity(bound + 1);
    let mut index: Vec<BTreeMap<Vec<usize>, usize>> = Vec::with_capacity(bound + 1);
    // Dimension 0: chains are single objects.
    let dim0: Vec<Vec<usize>> = (0..j.n_objects()).map(|x| vec![x]).collect();
    index.push(dim0.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect());
    chains.push(dim0);
    for m in 1..=bound {
        let mut cur: Vec<Vec<usize>> = Vec::new();
        if m == 1 {
            for f in 0..j.n_morphisms() {
                cur.push(vec![f]);
            }
        } else {
            for prev in &chains[m - 1] {
                let last_tgt = j.tgt(*prev.last().unwrap());
                for f in 0..j.n_morphisms() {
                    if j.src(f) == last_tgt {
                        let mut c = prev.clone();
                        c.push(f);
                        cur.push(c);
                    }
                }
            }
            cur.sort();
        }
        index.push(cur.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect());
        chains.push(cur);
    }
    let mut b = SSetBuilder::new(&format!("N({})", j.name), bound);
    for x in 0..j.n_objects() {
        b.add_cell(0, j.obj_label(x));
    }
    for m in 1..=bound {
        for chain in &chains[m] {
            let label = chain
                .iter()
                .map(|&f| j.mor_label(f).to_string())
                .collect::<Vec<_>>()
                .join("*");
            b.add_cell(m, &label);
        }
    }
    for m in 1..=bound {
        for (c, chain) in chains[m].iter().enumerate() {
            for i in 0..=m {
                let fc: Vec<usize> = if m == 1 {
                    // d_0 = target, d_1 = source.
                    if i == 0 {
                        vec![j.tgt(chain[0])]
                    } else {
                        vec![j.src(chain[0])]
                    }
                } else if i == 0 {
                    chain[1..].to_vec()
                } else if i == m {
                    chain[..m - 1].to_vec()
                } else {
                    let mut r = chain.clone();
                    let gf = j
                        .compose(chain[i], chain[i - 1])
                        .expect("chain is composable");
                    r[i - 1] = gf;
                    r.remove(i);
                    r
                };
                b.set_face(m, i, c, index[m - 1][&fc]);
            }
        }
    }
    for m in 0..bound {
        for (c, chain) in chains[m].iter().enumerate() {
            // Vertex sequence of the chain.
            let vertices: Vec<usize> = if m == 0 {
                vec![chain[0]]
            } else {
                let mut v = vec![j.src(chain[0])];
                v.extend(chain.iter().map(|&f| j.tgt(f)));
                v
            };
            for i in 0..=m {
                let sc: Vec<usize> = if m == 0 {
                    vec![j.identity(chain[0])]
                } else {
                    let mut r = chain.clone();
                    r.insert(i, j.identity(vertices[i]));
                    r
                };
                b.set_degen(m, i, c, index[m + 1][&sc]);
            }
        }
    }
    Arc::new(b.finish().expect("nerve is simplicial"))
}

/// The simplicial map `N(u): N(dom u) -> N(cod u)`.
pub fn nerve_map(u: &CatFunctor, bound: usize) -> SimplicialMap {
    let dom = nerve(&u.dom, bound);
    let cod = nerve(&u.cod, bound);
    nerve_map_between(u, &dom, &cod)
}

/// Same as [`nerve_map`] but reusing already-built nerves.
pub fn nerve_map_between(u: &CatFunctor, dom: &SSet, cod: &SSet) -> SimplicialMap {
    let mut index: Vec<BTreeMap<&str, usize>> = Vec::new();
    for m in 0..=cod.bound() {
        index.push((0..cod.count(m)).map(|c| (cod.label(m, c), c)).collect());
    }
    // Rebuild chains from labels is fragile; recompute by structure instead:
    // dimension 0 maps by object id, higher cells by tracing faces.
    // Chains in a nerve are reconstructible from iterated "last face" data,
    // but the cheapest robust route is to rebuild the chain lists.
    let j = &u.dom;
    let k = &u.cod;
    let dom_chains = nerve_chains(j, dom.bound());
    let cod_chains = nerve_chains(k, cod.bound());
    let cod_index: Vec<BTreeMap<Vec<usize>, usize>> = cod_chains
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
        .collect();
    let levels: Vec<Vec<usize>> = (0..=dom.bound())
        .map(|m| {
            dom_chains[m]
                .iter()
                .map(|chain| {
                    let image: Vec<usize> = if m == 0 {
                        vec![u.ob(chain[0])]
                    } else {
                        chain.iter().map(|&f| u.mor(f)).collect()
                    };
                    cod_index[m][&image]
                })
                .collect()
        })
        .collect();
    let map = SimplicialMap {
        dom: dom.clone(),
        cod: cod.clone(),
        levels,
    };
    debug_assert!(map.validate().is_ok());
    map
}

/// Chain lists of the nerve in the same order [`nerve`] assigns cell ids.
pub fn nerve_chains(j: &Cat, bound: usize) -> Vec<Vec<Vec<usize>>> {
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::with_capacity(bound + 1);
    chains.push((0..j.n_objects()).map(|x| vec![x]).collect());
    for m in 1..=bound {
        let mut cur: Vec<Vec<usize>> = Vec::new();
        if m == 1 {
            for f in 0..j.n_morphisms() {
                cur.push(vec![f]);
            }
        } else {
            for prev in &chains[m - 1] {
                let last_tgt = j.tgt(*prev.last().unwrap());
                for f in 0..j.n_morphisms() {
                    if j.src(f) == last_tgt {
                        let mut c = prev.clone();
                        c.push(f);
                        cur.push(c);
                    }
                }
            }
            cur.sort();
        }
        chains.push(cur);
    }
    chains
}

/// Levelwise product with componentwise structure maps and projections.
pub fn sset_product(x: &SSet, y: &SSet) -> (SSet, SimplicialMap, SimplicialMap) {
    assert_eq!(x.bound(), y.bound(), "product needs equal bounds");
    let bound = x.bound();
    let mut b = SSetBuilder::new(&format!("({}x{})", x.name, y.name), bound);
    for n in 0..=bound {
        for cx in 0..x.count(n) {
            for cy in 0..y.count(n) {
                b.add_cell(n, &format!("({};{})", x.label(n, cx), y.label(n, cy)));
            }
        }
    }
    let id = |n: usize, cx: usize, cy: usize| cx * y.count(n) + cy;
    for n in 1..=bound {
        for cx in 0..x.count(n) {
            for cy in 0..y.count(n) {
                for i in 0..=n {
                    b.set_face(
                        n,
                        i,
                        id(n, cx, cy),
                        id(n - 1, x.face(n, i, cx), y.face(n, i, cy)),
                    );
                }
            }
        }
    }
    for n in 0..bound {
        for cx in 0..x.count(n) {
            for cy in 0..y.count(n) {
                for i in 0..=n {
                    b.set_degen(
                        n,
                        i,
                        id(n, cx, cy),
                        id(n + 1, x.degen(n, i, cx), y.degen(n, i, cy)),
                    );
                }
            }
        }
    }
    let p = Arc::new(b.finish().expect("product is simplicial"));
    let pr1 = SimplicialMap {
        dom: p.clone(),
        cod: x.clone(),
        levels: (0..=bound)
            .map(|n| (0..p.count(n)).map(|c| c / y.count(n).max(1)).collect())
            .collect(),
    };
    let pr2 = SimplicialMap {
        dom: p.clone(),
        cod: y.clone(),
        levels: (0..=bound)
            .map(|n| (0..p.count(n)).map(|c| c % y.count(n).max(1)).collect())
            .collect(),
    };
    (p, pr1, pr2)
}

/// Functoriality of the product on maps.
pub fn product_map(
    f: &SimplicialMap,
    g: &SimplicialMap,
    dom_prod: &SSet,
    cod_prod: &SSet,
) -> SimplicialMap {
    let bound = f.dom.bound();
    let levels = (0..=bound)
        .map(|n| {
            let dy = g.dom.count(n).max(1);
            let cy = g.cod.count(n);
            (0..dom_prod.count(n))
                .map(|c| {
                    let (cx, cyy) = (c / dy, c % dy);
                    f.levels[n][cx] * cy + g.levels[n][cyy]
                })
                .collect()
        })
        .collect();
    let map = SimplicialMap {
        dom: dom_prod.clone(),
        cod: cod_prod.clone(),
        levels,
    };
    debug_assert!(map.validate().is_ok());
    map
}

/// Canonical isomorphism `a ≅ Δ[0] × a`.
pub fn unitor(a: &SSet) -> SimplicialMap {
    let pt = standard_simplex(0, a.bound());
    let (prod, _, _) = sset_product(&pt, a);
    // Point component has exactly one cell per dimension, so ids agree.
    let map = SimplicialMap {
        dom: a.clone(),
        cod: prod,
        levels: (0..=a.bound())
            .map(|n| (0..a.count(n)).collect())
            .collect(),
    };
    debug_assert!(map.validate().is_ok());
    map
}

/// Disjoint union with injections.
pub fn sset_coproduct(x: &SSet, y: &SSet) -> (SSet, SimplicialMap, SimplicialMap) {
    assert_eq!(x.bound(), y.bound(), "coproduct needs equal bounds");
    let bound = x.bound();
    let mut b = SSetBuilder::new(&format!("({}+{})", x.name, y.name), bound);
    for n in 0..=bound {
        for c in 0..x.count(n) {
            b.add_cell(n, &format!("l.{}", x.label(n, c)));
        }
        for c in 0..y.count(n) {
            b.add_cell(n, &format!("r.{}", y.label(n, c)));
        }
    }
    for n in 1..=bound {
        for c in 0..x.count(n) {
            for i in 0..=n {
                b.set_face(n, i, c, x.face(n, i, c));
            }
        }
        for c in 0..y.count(n) {
            for i in 0..=n {
                b.set_face(n, i, c + x.count(n), y.face(n, i, c) + x.count(n - 1));
            }
        }
    }
    for n in 0..bound {
        for c in 0..x.count(n) {
            for i in 0..=n {
                b.set_degen(n, i, c, x.degen(n, i, c));
            }
        }
        for c in 0..y.count(n) {
            for i in 0..=n {
                b.set_degen(n, i, c + x.count(n), y.degen(n, i, c) + x.count(n + 1));
            }
        }
    }
    let s = Arc::new(b.finish().expect("coproduct is simplicial"));
    let i1 = SimplicialMap {
        dom: x.clone(),
        cod: s.clone(),
        levels: (0..=bound).map(|n| (0..x.count(n)).collect()).collect(),
    };
    let i2 = SimplicialMap {
        dom: y.clone(),
        cod: s.clone(),
        levels: (0..=bound)
            .map(|n| (0..y.count(n)).map(|c| c + x.count(n)).collect())
            .collect(),
    };
    (s, i1, i2)
}

/// A finite diagram of simplicial sets: `maps[k] = (from, to, map)` with
/// node indices into `objects`.
pub struct SSetDiagram {
    pub objects: Vec<SSet>,
    pub maps: Vec<(usize, usize, SimplicialMap)>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
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
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Smaller root wins, keeping class representatives canonical.
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

/// Colimit of a finite diagram: levelwise set colimit with induced structure
/// maps. Returns the complex and one cocone map per diagram node.
pub fn sset_colimit(diagram: &SSetDiagram, name: &str) -> Result<(SSet, Vec<SimplicialMap>)> {
    let bound = diagram.objects[0].bound();
    for o in &diagram.objects {
        if o.bound() != bound {
            return Err(Error::BoundExceeded("colimit needs equal bounds".into()));
        }
    }
    // Offsets into the disjoint union, per level.
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(bound + 1);
    let mut totals: Vec<usize> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut offs = Vec::with_capacity(diagram.objects.len());
        let mut acc = 0;
        for o in &diagram.objects {
            offs.push(acc);
            acc += o.count(n);
        }
        offsets.push(offs);
        totals.push(acc);
    }
    let mut uf: Vec<UnionFind> = totals.iter().map(|&t| UnionFind::new(t)).collect();
    for (from, to, map) in &diagram.maps {
        if map.dom.key() != diagram.objects[*from].key() || map.cod.key() != diagram.objects[*to].key()
        {
            return Err(Error::InputFormat(
                "diagram map endpoints do not match nodes".into(),
            ));
        }
        for n in 0..=bound {
            for c in 0..map.dom.count(n) {
                uf[n].union(offsets[n][*from] + c, offsets[n][*to] + map.levels[n][c]);
            }
        }
    }
    // Classes in order of smallest member.
    let mut class_id: Vec<BTreeMap<usize, usize>> = Vec::with_capacity(bound + 1);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut ids = BTreeMap::new();
        let mut rep_list = Vec::new();
        for x in 0..totals[n] {
            let r = uf[n].find(x);
            if !ids.contains_key(&r) {
                let id = rep_list.len();
                ids.insert(r, id);
                rep_list.push(r);
            }
        }
        class_id.push(ids);
        reps.push(rep_list);
    }
    let locate = |n: usize, global: usize| -> (usize, usize) {
        // (node, local cell) of a disjoint-union index.
        let mut node = diagram.objects.len() - 1;
        for (k, &off) in offsets[n].iter().enumerate() {
            if global < off {
                node = k - 1;
                break;
            }
        }
        (node, global - offsets[n][node])
    };
    let mut b = SSetBuilder::new(name, bound);
    for n in 0..=bound {
        for &r in &reps[n] {
            let (node, local) = locate(n, r);
            b.add_cell(n, &format!("q{node}.{}", diagram.objects[node].label(n, local)));
        }
    }
    for n in 1..=bound {
        for (c, &r) in reps[n].iter().enumerate() {
            let (node, local) = locate(n, r);
            let o = &diagram.objects[node];
            for i in 0..=n {
                let img = offsets[n - 1][node] + o.face(n, i, local);
                let rr = uf[n - 1].find(img);
                b.set_face(n, i, c, class_id[n - 1][&rr]);
            }
        }
    }
    for n in 0..bound {
        for (c, &r) in reps[n].iter().enumerate() {
            let (node, local) = locate(n, r);
            let o = &diagram.objects[node];
            for i in 0..=n {
                let img = offsets[n + 1][node] + o.degen(n, i, local);
                let rr = uf[n + 1].find(img);
                b.set_degen(n, i, c, class_id[n + 1][&rr]);
            }
        }
    }
    let colim = Arc::new(b.finish()?);
    let mut cocone = Vec::with_capacity(diagram.objects.len());
    for (k, o) in diagram.objects.iter().enumerate() {
        let levels = (0..=bound)
            .map(|n| {
                (0..o.count(n))
                    .map(|c| {
                        let r = uf[n].find(offsets[n][k] + c);
                        class_id[n][&r]
                    })
                    .collect()
            })
            .collect();
        let m = SimplicialMap {
            dom: o.clone(),
            cod: colim.clone(),
            levels,
        };
        debug_assert!(m.validate().is_ok());
        cocone.push(m);
    }
    Ok((colim, cocone))
}

/// Pushout of `x <-f- a -g-> y` with its two cocone legs.
pub fn sset_pushout(
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<(SSet, SimplicialMap, SimplicialMap)> {
    if f.dom.key() != g.dom.key() {
        return Err(Error::InputFormat("pushout legs must share a domain".into()));
    }
    let diagram = SSetDiagram {
        objects: vec![f.dom.clone(), f.cod.clone(), g.cod.clone()],
        maps: vec![(0, 1, f.clone()), (0, 2, g.clone())],
    };
    let (p, cocone) = sset_colimit(
        &diagram,
        &format!("({}+_{}{})", f.cod.name, f.dom.name, g.cod.name),
    )?;
    Ok((p, cocone[1].clone(), cocone[2].clone()))
}

/// All simplicial maps `a -> x`, enumerated by assigning images to the
/// nondegenerate cells of `a` in increasing dimension and checking face
/// compatibility. The order is deterministic (lexicographic in image ids).
pub fn hom_set(a: &SSet, x: &SSet, limits: &Limits) -> Result<Vec<SimplicialMap>> {
    extensions_impl(a, x, &[], limits)
}

/// Maps `b -> x` extending `top: a -> x` along a levelwise-injective
/// inclusion `i: a -> b`.
pub fn extensions(
    i: &SimplicialMap,
    top: &SimplicialMap,
    limits: &Limits,
) -> Result<Vec<SimplicialMap>> {
    if i.dom.key() != top.dom.key() {
        return Err(Error::InputFormat(
            "lifting problem: inclusion and top map domains differ".into(),
        ));
    }
    let mut pins: Vec<(usize, usize, usize)> = Vec::new();
    for n in 0..=i.dom.bound() {
        for c in 0..i.dom.count(n) {
            pins.push((n, i.levels[n][c], top.levels[n][c]));
        }
    }
    extensions_impl(&i.cod, &top.cod, &pins, limits)
}

fn extensions_impl(
    a: &SSet,
    x: &SSet,
    pins: &[(usize, usize, usize)],
    limits: &Limits,
) -> Result<Vec<SimplicialMap>> {
    if a.bound() != x.bound() {
        return Err(Error::BoundExceeded(format!(
            "hom-set needs equal bounds; domain {} has bound {}, codomain {} has bound {}",
            a.name,
            a.bound(),
            x.name,
            x.bound()
        )));
    }
    let bound = a.bound();
    let counter = limits.counter(&format!("map enumeration {} -> {}", a.name, x.name));
    let mut pinned: Vec<Vec<Option<usize>>> = (0..=bound)
        .map(|n| vec![None; a.count(n)])
        .collect();
    for &(n, c, v) in pins {
        if let Some(prev) = pinned[n][c] {
            if prev != v {
                return Ok(vec![]);
            }
        }
        pinned[n][c] = Some(v);
    }
    // Face-vector index of x cells, built lazily per dimension.
    let mut face_index: Vec<Option<BTreeMap<Vec<usize>, Vec<usize>>>> = vec![None; bound + 1];
    let build_index = |n: usize| -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut m: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for c in 0..x.count(n) {
            let fv: Vec<usize> = (0..=n).map(|i| x.face(n, i, c)).collect();
            m.entry(fv).or_default().push(c);
        }
        m
    };
    // Assignment order: a cell becomes ready once the cores of all its faces
    // are assigned; among ready cells the highest dimension goes first. This
    // lets edges prune vertex choices as early as possible. The output is
    // sorted into canonical lexicographic order afterwards, so the internal
    // order never shows.
    let slots: Vec<(usize, usize)> = {
        let mut assigned: Vec<Vec<bool>> = (0..=bound).map(|n| vec![false; a.count(n)]).collect();
        let all: Vec<(usize, usize)> = (0..=bound)
            .flat_map(|n| a.nondeg_cells(n).into_iter().map(move |c| (n, c)))
            .collect();
        let mut order = Vec::with_capacity(all.len());
        let mut remaining: Vec<(usize, usize)> = all;
        while !remaining.is_empty() {
            let mut pick: Option<usize> = None;
            for (idx, &(n, c)) in remaining.iter().enumerate() {
                let ready = (0..=n).take(if n == 0 { 0 } else { n + 1 }).all(|i| {
                    let f = a.face(n, i, c);
                    let ez = &a.ez[n - 1][f];
                    assigned[ez.core_dim][ez.core_id]
                });
                if ready {
                    match pick {
                        Some(p) => {
                            if remaining[p].0 < n {
                                pick = Some(idx);
                            }
                        }
                        None => pick = Some(idx),
                    }
                }
            }
            let idx = pick.expect("dimension-0 cells are always ready");
            let (n, c) = remaining.remove(idx);
            assigned[n][c] = true;
            order.push((n, c));
        }
        order
    };

    struct Ctx<'a> {
        a: &'a SSet,
        x: &'a SSet,
        slots: &'a [(usize, usize)],
        pinned: &'a [Vec<Option<usize>>],
        counter: &'a crate::budget::Counter,
    }

    fn image_of(
        ctx: &Ctx,
        full: &[Vec<Option<usize>>],
        n: usize,
        c: usize,
    ) -> Option<usize> {
        let ez = &ctx.a.ez[n][c];
        let mut img = full[ez.core_dim][ez.core_id]?;
        let mut dim = ez.core_dim;
        for &i in &ez.word {
            img = ctx.x.degen(dim, i, img);
            dim += 1;
        }
        Some(img)
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        ctx: &Ctx,
        full: &mut Vec<Vec<Option<usize>>>,
        face_index: &mut Vec<Option<BTreeMap<Vec<usize>, Vec<usize>>>>,
        build_index: &dyn Fn(usize) -> BTreeMap<Vec<usize>, Vec<usize>>,
        k: usize,
        out: &mut Vec<SimplicialMap>,
    ) -> Result<()> {
        if k == ctx.slots.len() {
            let bound = ctx.a.bound();
            let mut levels: Vec<Vec<usize>> = Vec::with_capacity(bound + 1);
            for n in 0..=bound {
                let mut lv = Vec::with_capacity(ctx.a.count(n));
                for c in 0..ctx.a.count(n) {
                    lv.push(image_of(ctx, full, n, c).expect("all cores assigned"));
                }
                levels.push(lv);
            }
            out.push(SimplicialMap {
                dom: ctx.a.clone(),
                cod: ctx.x.clone(),
                levels,
            });
            return Ok(());
        }
        let (n, c) = ctx.slots[k];
        let candidates: Vec<usize> = if n == 0 {
            match ctx.pinned[0][c] {
                Some(v) => vec![v],
                None => (0..ctx.x.count(0)).collect(),
            }
        } else {
            let fv: Vec<usize> = (0..=n)
                .map(|i| {
                    image_of(ctx, full, n - 1, ctx.a.face(n, i, c))
                        .expect("faces have lower-dimensional cores")
                })
                .collect();
            if face_index[n].is_none() {
                face_index[n] = Some(build_index(n));
            }
            let all = face_index[n]
                .as_ref()
                .unwrap()
                .get(&fv)
                .cloned()
                .unwrap_or_default();
            match ctx.pinned[n][c] {
                Some(v) => {
                    if all.contains(&v) {
                        vec![v]
                    } else {
                        vec![]
                    }
                }
                None => all,
            }
        };
        for v in candidates {
            ctx.counter.step()?;
            full[n][c] = Some(v);
            rec(ctx, full, face_index, build_index, k + 1, out)?;
        }
        full[n][c] = None;
        Ok(())
    }

    // Degenerate pinned cells must agree with their core's pin.
    // (Subcomplex inclusions pin cores before their degeneracies, so a
    // conflict can only arise from inconsistent input.)
    let mut full: Vec<Vec<Option<usize>>> = (0..=bound)
        .map(|n| vec![None; a.count(n)])
        .collect();
    let ctx = Ctx {
        a,
        x,
        slots: &slots,
        pinned: &pinned,
        counter: &counter,
    };
    let mut out = Vec::new();
    rec(
        &ctx,
        &mut full,
        &mut face_index,
        &build_index,
        0,
        &mut out,
    )?;
    // Check pinned degenerate cells on each produced map, then sort into
    // canonical lexicographic order on the full level maps.
    let mut out: Vec<SimplicialMap> = out
        .into_iter()
        .filter(|m| pins.iter().all(|&(n, c, v)| m.levels[n][c] == v))
        .collect();
    out.sort_by(|m1, m2| m1.levels.cmp(&m2.levels));
    Ok(out)
}

/// Result of a right-lifting-property search.
#[derive(Debug, Clone)]
pub struct RlpResult {
    pub holds: bool,
    /// A commuting square with no lift, when the property fails.
    pub witness: Option<(SimplicialMap, SimplicialMap)>,
}

/// Does `p` have the right lifting property against `i`? The search is
/// exhaustive: every commuting square is enumerated and a diagonal lift is
/// sought; when found it is verified on both triangles.
pub fn has_rlp(p: &SimplicialMap, i: &SimplicialMap, limits: &Limits) -> Result<RlpResult> {
    let tops = hom_set(&i.dom, &p.dom, limits)?;
    for top in &tops {
        let pushed = p.compose(top);
        let bottoms = extensions(i, &pushed, limits)?;
        if bottoms.is_empty() {
            continue;
        }
        let lifts = extensions(i, top, limits)?;
        let covered: std::collections::BTreeSet<Vec<Vec<usize>>> =
            lifts.iter().map(|h| p.compose(h).levels).collect();
        for bottom in bottoms {
            if !covered.contains(&bottom.levels) {
                return Ok(RlpResult {
                    holds: false,
                    witness: Some((top.clone(), bottom)),
                });
            }
        }
        // A found lift must close both triangles.
        for h in lifts.iter().take(1) {
            if h.compose(i).levels != top.levels {
                return Err(Error::Internal("lift does not restrict to the top map".into()));
            }
            if !covered.contains(&p.compose(h).levels) {
                return Err(Error::Internal("lift does not cover its own bottom".into()));
            }
        }
    }
    Ok(RlpResult {
        holds: true,
        witness: None,
    })
}

/// Result of a bounded quasicategory check.
#[derive(Debug, Clone)]
pub struct QcResult {
    pub ok: bool,
    /// `(n, k, unfillable horn map)` for the first failure in canonical order.
    pub witness: Option<(usize, usize, SimplicialMap)>,
}

/// Every inner horn `Λ^k[n] -> x` with `2 <= n <= n_max` admits a filler.
/// This is a bounded approximation of the unbounded property; for nerves and
/// 2-coskeletal fixtures it is exact.
pub fn is_quasicategory_up_to(x: &SSet, n_max: usize, limits: &Limits) -> Result<QcResult> {
    assert!(x.bound() >= n_max, "quasicategory check needs bound >= n_max");
    for n in 2..=n_max {
        for k in 1..n {
            let (h, incl) = horn(n, k, x.bound());
            for top in hom_set(&h, x, limits)? {
                if extensions(&incl, &top, limits)?.is_empty() {
                    return Ok(QcResult {
                        ok: false,
                        witness: Some((n, k, top)),
                    });
                }
            }
        }
    }
    Ok(QcResult { ok: true, witness: None })
}

/// RLP against all inner horn inclusions up to `n_max`.
pub fn is_inner_fibration_up_to(
    p: &SimplicialMap,
    n_max: usize,
    limits: &Limits,
) -> Result<RlpResult> {
    for n in 2..=n_max {
        for k in 1..n {
            let (_, incl) = horn(n, k, p.dom.bound());
            let r = has_rlp(p, &incl, limits)?;
            if !r.holds {
                return Ok(r);
            }
        }
    }
    Ok(RlpResult { holds: true, witness: None })
}

/// RLP against all boundary inclusions `∂Δ[n] -> Δ[n]` for `n <= n_max`;
/// the case `n = 0` uses `∅ -> Δ[0]`.
pub fn is_acyclic_fibration_up_to(
    p: &SimplicialMap,
    n_max: usize,
    limits: &Limits,
) -> Result<RlpResult> {
    let bound = p.dom.bound();
    {
        let e = empty_sset(bound);
        let pt = standard_simplex(0, bound);
        let incl = SimplicialMap {
            dom: e,
            cod: pt,
            levels: vec![vec![]; bound + 1],
        };
        let r = has_rlp(p, &incl, limits)?;
        if !r.holds {
            return Ok(r);
        }
    }
    for n in 1..=n_max {
        let (_, incl) = boundary(n, bound);
        let r = has_rlp(p, &incl, limits)?;
        if !r.holds {
            return Ok(r);
        }
    }
    Ok(RlpResult { holds: true, witness: None })
}

/// Searches for a levelwise bijection `x -> y`; intended for small fixtures.
pub fn sset_iso(x: &SSet, y: &SSet, limits: &Limits) -> Result<Option<SimplicialMap>> {
    for n in 0..=x.bound().min(y.bound()) {
        if x.count(n) != y.count(n) {
            return Ok(None);
        }
    }
    for m in hom_set(x, y, limits)? {
        if m.is_iso_levelwise() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// The coface map `Δ[n-1] -> Δ[n]` induced by `δ^i`.
pub fn coface_map(n: usize, i: usize, bound: usize) -> SimplicialMap {
    let dom = standard_simplex(n - 1, bound);
    let cod = standard_simplex(n, bound);
    tuple_operator_map(&dom, &cod, |t| {
        t.iter().map(|&v| if v >= i { v + 1 } else { v }).collect()
    })
}

/// The codegeneracy map `Δ[n+1] -> Δ[n]` induced by `σ^j`.
pub fn codegen_map(n: usize, j: usize, bound: usize) -> SimplicialMap {
    let dom = standard_simplex(n + 1, bound);
    let cod = standard_simplex(n, bound);
    tuple_operator_map(&dom, &cod, |t| {
        t.iter().map(|&v| if v > j { v - 1 } else { v }).collect()
    })
}

/// The map `Δ[m] -> Δ[n]` induced by an arbitrary monotone `op: [m] -> [n]`.
pub fn delta_operator_map(op: &[usize], n: usize, bound: usize) -> SimplicialMap {
    let dom = standard_simplex(op.len() - 1, bound);
    let cod = standard_simplex(n, bound);
    tuple_operator_map(&dom, &cod, |t| t.iter().map(|&v| op[v]).collect())
}

fn tuple_operator_map(
    dom: &SSet,
    cod: &SSet,
    f: impl Fn(&[usize]) -> Vec<usize>,
) -> SimplicialMap {
    let mut levels = Vec::with_capacity(dom.bound() + 1);
    for m in 0..=dom.bound() {
        let cod_index: BTreeMap<&str, usize> =
            (0..cod.count(m)).map(|c| (cod.label(m, c), c)).collect();
        levels.push(
            (0..dom.count(m))
                .map(|c| {
                    let t: Vec<usize> = dom
                        .label(m, c)
                        .chars()
                        .map(|ch| ch.to_digit(10).unwrap() as usize)
                        .collect();
                    cod_index[tuple_label(&f(&t)).as_str()]
                })
                .collect(),
        );
    }
    let map = SimplicialMap {
        dom: dom.clone(),
        cod: cod.clone(),
        levels,
    };
    debug_assert!(map.validate().is_ok());
    map
}

/// Canonical isomorphism `Δ[n] × N(j) -> N([n] × j)`: a cell pairs a
/// monotone tuple with a chain, and the image is the chain of morphism
/// pairs. The codomain must be the nerve of `fincat::product(ordinal(n), j)`.
pub fn delta_nerve_pairing(
    n: usize,
    j: &Cat,
    prod_cat: &Cat,
    dom: &SSet,
    cod: &SSet,
) -> SimplicialMap {
    let bound = dom.bound();
    let ord = crate::fincat::ordinal(n);
    let jm = j.n_morphisms();
    let chains = nerve_chains(j, bound);
    let cod_chains = nerve_chains(prod_cat, bound);
    let cod_index: Vec<BTreeMap<Vec<usize>, usize>> = cod_chains
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
        .collect();
    let delta = standard_simplex(n, bound);
    let tuples: Vec<Vec<Vec<usize>>> = (0..=bound)
        .map(|m| monotone_tuples(m + 1, n))
        .collect();
    let ord_mor = |a: usize, b: usize| -> usize { ord.hom(a, b)[0] };
    let mut levels = Vec::with_capacity(bound + 1);
    for m in 0..=bound {
        let ny = chains[m].len();
        let mut lv = Vec::with_capacity(dom.count(m));
        for c in 0..dom.count(m) {
            let (ct, cc) = (c / ny.max(1), c % ny.max(1));
            let t = &tuples[m][ct];
            let chain = &chains[m][cc];
            let image: Vec<usize> = if m == 0 {
                vec![t[0] * j.n_objects() + chain[0]]
            } else {
                (0..m)
                    .map(|i| ord_mor(t[i], t[i + 1]) * jm + chain[i])
                    .collect()
            };
            lv.push(cod_index[m][&image]);
        }
        levels.push(lv);
    }
    let _ = delta;
    let map = SimplicialMap {
        dom: dom.clone(),
        cod: cod.clone(),
        levels,
    };
    debug_assert!(map.validate().is_ok());
    map
}

/// Canonical isomorphism `N(j × k) -> N(j) × N(k)`: a chain of morphism
/// pairs splits into the pair of component chains. `prod_cat` must be the
/// categorical product of `j` and `k`, `nerve_prod` its nerve, and
/// `prod_nerves` the simplicial product of the two nerves.
pub fn nerve_product_iso(
    j: &Cat,
    k: &Cat,
    prod_cat: &Cat,
    nerve_prod: &SSet,
    prod_nerves: &SSet,
) -> SimplicialMap {
    let bound = nerve_prod.bound();
    let chains_j = nerve_chains(j, bound);
    let chains_k = nerve_chains(k, bound);
    let index_j: Vec<BTreeMap<&Vec<usize>, usize>> = chains_j
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let index_k: Vec<BTreeMap<&Vec<usize>, usize>> = chains_k
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let chains_jk = nerve_chains(prod_cat, bound);
    let km = k.n_morphisms();
    let levels: Vec<Vec<usize>> = (0..=bound)
        .map(|m| {
            chains_jk[m]
                .iter()
                .map(|chain| {
                    let (cj, ck) = if m == 0 {
                        (
                            index_j[0][&vec![chain[0] / k.n_objects()]],
                            index_k[0][&vec![chain[0] % k.n_objects()]],
                        )
                    } else {
                        let jc: Vec<usize> = chain.iter().map(|&p| p / km).collect();
                        let kc: Vec<usize> = chain.iter().map(|&p| p % km).collect();
                        (index_j[m][&jc], index_k[m][&kc])
                    };
                    cj * chains_k[m].len() + ck
                })
                .collect()
        })
        .collect();
    let map = SimplicialMap {
        dom: nerve_prod.clone(),
        cod: prod_nerves.clone(),
        levels,
    };
    debug_assert!(map.validate().is_ok());
    map
}

/// A truncated exponential `x^a`: cells in dimension `n` are the maps
/// `Δ[n] × a -> x` (with `Δ[0] × a` identified with `a`), structure maps by
/// precomposition with cofaces and codegeneracies.
#[derive(Debug, Clone)]
pub struct Exponential {
    pub complex: SSet,
    /// `domains[n]`: `a` itself for `n = 0`, else `Δ[n] × a`.
    pub domains: Vec<SSet>,
    /// `maps[n][c]`: the map underlying cell `c` in dimension `n`.
    pub maps: Vec<Vec<SimplicialMap>>,
    index: Vec<BTreeMap<Vec<Vec<usize>>, usize>>,
}

impl Exponential {
    /// Cell id of a map `domains[n] -> x`.
    pub fn index_of(&self, n: usize, m: &SimplicialMap) -> Option<usize> {
        self.index[n].get(&m.levels).copied()
    }
}

/// Builds the exponential up to dimension `levels`. The base `a` must have
/// finitely many nondegenerate cells (always true for truncated data);
/// exceeding the candidate budget reports the offending level.
pub fn exponential(x: &SSet, a: &SSet, levels: usize, limits: &Limits) -> Result<Exponential> {
    assert!(levels <= x.bound(), "exponential levels exceed bound");
    let bound = x.bound();
    let mut domains: Vec<SSet> = Vec::with_capacity(levels + 1);
    let mut cell_maps: Vec<Vec<SimplicialMap>> = Vec::with_capacity(levels + 1);
    let mut prods: Vec<Option<(SSet, SimplicialMap, SimplicialMap)>> = Vec::new();
    for n in 0..=levels {
        if n == 0 {
            domains.push(a.clone());
            prods.push(None);
        } else {
            let d = standard_simplex(n, bound);
            let (p, pr1, pr2) = sset_product(&d, a);
            domains.push(p.clone());
            prods.push(Some((p, pr1, pr2)));
        }
        let maps = hom_set(&domains[n], x, limits).map_err(|e| match e {
            Error::ResourceExhausted(m) => {
                Error::ResourceExhausted(format!("exponential level {n}: {m}"))
            }
            other => other,
        })?;
        cell_maps.push(maps);
    }
    let index: Vec<BTreeMap<Vec<Vec<usize>>, usize>> = cell_maps
        .iter()
        .map(|ms| {
            ms.iter()
                .enumerate()
                .map(|(i, m)| (m.levels.clone(), i))
                .collect()
        })
        .collect();
    let mut b = SSetBuilder::new(&format!("({}^{})", x.name, a.name), levels);
    for (n, ms) in cell_maps.iter().enumerate() {
        for c in 0..ms.len() {
            b.add_cell(n, &format!("h{n}.{c}"));
        }
    }
    // Precomposition helpers between the product domains.
    let unit = unitor(a);
    for n in 1..=levels {
        let (pn, _, _) = prods[n].as_ref().unwrap();
        for i in 0..=n {
            // The map domains[n-1] -> domains[n].
            let precomp: SimplicialMap = if n == 1 {
                // a -> Δ[0] x a -> Δ[1] x a
                let vmap = coface_map(1, i, bound); // Δ[0] -> Δ[1]
                let pt = standard_simplex(0, bound);
                let (p0, _, _) = sset_product(&pt, a);
                let step = product_map(&vmap, &SimplicialMap::identity(a), &p0, pn);
                step.compose(&unit)
            } else {
                let vmap = coface_map(n, i, bound);
                let (pm, _, _) = prods[n - 1].as_ref().map(|(p, a1, a2)| (p.clone(), a1, a2)).unwrap();
                product_map(&vmap, &SimplicialMap::identity(a), &pm, pn)
            };
            for (c, m) in cell_maps[n].iter().enumerate() {
                let fm = m.compose(&precomp);
                let id = index[n - 1][&fm.levels];
                b.set_face(n, i, c, id);
            }
        }
    }
    for n in 0..levels {
        for i in 0..=n {
            let precomp: SimplicialMap = if n == 0 {
                // Δ[1] x a -> a by the projection.
                let (_, _, pr2) = prods[1].as_ref().unwrap();
                pr2.clone()
            } else {
                let vmap = codegen_map(n, i, bound); // Δ[n+1] -> Δ[n]
                let (pn1, _, _) = prods[n + 1].as_ref().unwrap();
                let (pn, _, _) = prods[n].as_ref().unwrap();
                let _ = pn1;
                product_map(
                    &vmap,
                    &SimplicialMap::identity(a),
                    prods[n + 1].as_ref().map(|(p, _, _)| p).unwrap(),
                    pn,
                )
            };
            for (c, m) in cell_maps[n].iter().enumerate() {
                let sm = m.compose(&precomp);
                let id = index[n + 1][&sm.levels];
                b.set_degen(n, i, c, id);
            }
        }
    }
    let complex = Arc::new(b.finish()?);
    Ok(Exponential {
        complex,
        domains,
        maps: cell_maps,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{enumerate_functors, iso_interval, ordinal, product, span};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn standard_simplex_counts() {
        let d1 = standard_simplex(1, 2);
        assert_eq!(d1.count(0), 2);
        assert_eq!(d1.count(1), 3);
        assert_eq!(d1.count(2), 4);
        d1.validate().unwrap();
        let d3 = standard_simplex(3, 3);
        assert_eq!(d3.count(3), 35);
    }

    #[test]
    fn action_matches_tuple_composition() {
        // Ground truth: cells of Δ[3] are monotone tuples, and the operator
        // action is literal composition of monotone maps.
        let d = standard_simplex(3, 3);
        let ops: Vec<Vec<usize>> = (0..=3)
            .flat_map(|m| monotone_tuples(m + 1, 3))
            .collect();
        for n in 0..=3usize {
            for c in 0..d.count(n) {
                let t: Vec<usize> = d
                    .label(n, c)
                    .chars()
                    .map(|ch| ch.to_digit(10).unwrap() as usize)
                    .collect();
                for op in ops.iter().filter(|o| o.iter().all(|&v| v <= n)) {
                    let expected: Vec<usize> = op.iter().map(|&v| t[v]).collect();
                    let got = d.act(n, c, op);
                    assert_eq!(d.label(op.len() - 1, got), tuple_label(&expected));
                }
            }
        }
    }

    #[test]
    fn horn_and_boundary_counts() {
        let (h, incl) = horn(2, 1, 2);
        // Nondegenerate edges 01 and 12 plus the degenerate edges of the
        // three vertices present in the horn.
        assert_eq!(h.count(1), 5);
        assert_eq!(h.nondeg_cells(1).len(), 2);
        assert_eq!(h.count(0), 3);
        assert_eq!(h.nondeg_cells(2).len(), 0);
        incl.validate().unwrap();
        let (b1, binc) = boundary(1, 3);
        assert_eq!(b1.count(0), 2);
        assert_eq!(b1.nondeg_cells(1).len(), 0);
        binc.validate().unwrap();
        let (b2, _) = boundary(2, 3);
        assert_eq!(b2.nondeg_cells(1).len(), 3);
        assert_eq!(b2.nondeg_cells(2).len(), 0);
    }

    #[test]
    fn nerve_counts_and_dimension() {
        let n1 = nerve(&ordinal(1), 2);
        assert_eq!(n1.count(2), 4);
        n1.validate().unwrap();
        assert_eq!(n1.nondeg_dimension(), Some(1));
        assert_eq!(n1.nondeg_cells(0).len(), 2);
        assert_eq!(n1.nondeg_cells(1).len(), 1);
        let n0 = nerve(&ordinal(0), 3);
        for n in 0..=3 {
            assert_eq!(n0.count(n), 1);
        }
        // Nerve of [n] matches the standard simplex levelwise.
        let n2 = nerve(&ordinal(2), 3);
        let d2 = standard_simplex(2, 3);
        for n in 0..=3 {
            assert_eq!(n2.count(n), d2.count(n));
        }
    }

    #[test]
    fn product_counts_and_nondegenerates() {
        let d1 = standard_simplex(1, 3);
        let (p, pr1, pr2) = sset_product(&d1, &d1);
        assert_eq!(p.count(1), 9);
        assert_eq!(p.nondeg_cells(2).len(), 2);
        p.validate().unwrap();
        pr1.validate().unwrap();
        pr2.validate().unwrap();
        // Product with a point is isomorphic to the input.
        let pt = standard_simplex(0, 3);
        let (q, _, _) = sset_product(&d1, &pt);
        assert!(sset_iso(&q, &d1, &limits()).unwrap().is_some());
    }

    #[test]
    fn pushout_of_triangles_is_square() {
        let bound = 3;
        let incl = coface_map(2, 1, bound); // Δ[1] -> Δ[2] hitting the 02 edge
        let d2 = incl.cod.clone();
        let (p, leg1, leg2) = sset_pushout(&incl, &incl).unwrap();
        leg1.validate().unwrap();
        leg2.validate().unwrap();
        let d1 = standard_simplex(1, bound);
        let (sq, _, _) = sset_product(&d1, &d1);
        assert!(sset_iso(&p, &sq, &limits()).unwrap().is_some());
        assert_eq!(p.count(0), 4);
        assert_eq!(p.nondeg_cells(2).len(), 2);
        // Pushout along identities is the common codomain.
        let idm = SimplicialMap::identity(&d2);
        let (q, _, _) = sset_pushout(&idm, &idm).unwrap();
        assert!(sset_iso(&q, &d2, &limits()).unwrap().is_some());
        // Coproduct of two points has two vertices.
        let e = empty_sset(bound);
        let pt = standard_simplex(0, bound);
        let to_pt = SimplicialMap {
            dom: e,
            cod: pt,
            levels: vec![vec![]; bound + 1],
        };
        let (c, _, _) = sset_pushout(&to_pt, &to_pt).unwrap();
        assert_eq!(c.count(0), 2);
    }

    #[test]
    fn hom_set_counts_match_functor_oracle() {
        let l = limits();
        let d1 = standard_simplex(1, 3);
        let n2 = nerve(&ordinal(2), 3);
        assert_eq!(hom_set(&d1, &n2, &l).unwrap().len(), 6);
        let ng = nerve(&span(), 3);
        let n1 = nerve(&ordinal(1), 3);
        assert_eq!(hom_set(&ng, &n1, &l).unwrap().len(), 5);
        // |hom(Δ[0], x)| = |x_0|.
        let pt = standard_simplex(0, 3);
        assert_eq!(hom_set(&pt, &ng, &l).unwrap().len(), ng.count(0));
        // Nerve is fully faithful on hom-sets for probe pairs.
        for (j, k) in [
            (ordinal(1), ordinal(2)),
            (span(), ordinal(1)),
            (ordinal(2), ordinal(1)),
        ] {
            let nj = nerve(&j, 3);
            let nk = nerve(&k, 3);
            assert_eq!(
                hom_set(&nj, &nk, &l).unwrap().len(),
                enumerate_functors(&j, &k, &l).unwrap().len(),
                "hom sets of nerves must match functor counts"
            );
        }
    }

    #[test]
    fn enumerated_maps_are_simplicial() {
        let l = limits();
        let (sq, _, _) = product(&ordinal(1), &ordinal(1));
        let nsq = nerve(&sq, 3);
        let n2 = nerve(&ordinal(2), 3);
        for m in hom_set(&nsq, &n2, &l).unwrap() {
            m.validate().unwrap();
        }
        let (h, incl) = horn(2, 1, 3);
        for top in hom_set(&h, &n2, &l).unwrap() {
            for ext in extensions(&incl, &top, &l).unwrap() {
                ext.validate().unwrap();
                assert_eq!(ext.compose(&incl).levels, top.levels);
            }
        }
    }

    #[test]
    fn hom_set_order_is_canonical() {
        let l = limits();
        let n2 = nerve(&ordinal(2), 3);
        let d1 = standard_simplex(1, 3);
        let maps = hom_set(&d1, &n2, &l).unwrap();
        let mut sorted = maps.clone();
        sorted.sort_by(|a, b| a.levels.cmp(&b.levels));
        assert_eq!(
            maps.iter().map(|m| &m.levels).collect::<Vec<_>>(),
            sorted.iter().map(|m| &m.levels).collect::<Vec<_>>()
        );
    }

    #[test]
    fn hom_set_bound_mismatch_is_an_error() {
        let d1 = standard_simplex(1, 3);
        let d1b = standard_simplex(1, 2);
        assert!(matches!(
            hom_set(&d1, &d1b, &limits()),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn nerve_of_product_is_product_of_nerves() {
        // The canonical chain-splitting map is a levelwise bijection on
        // every probe pair.
        for (a, b) in [
            (ordinal(1), ordinal(1)),
            (ordinal(2), ordinal(1)),
            (ordinal(2), ordinal(3)),
            (span(), ordinal(1)),
            (span(), span()),
            (iso_interval(), ordinal(1)),
        ] {
            let (p, _, _) = product(&a, &b);
            let np = nerve(&p, 3);
            let (pn, _, _) = sset_product(&nerve(&a, 3), &nerve(&b, 3));
            let iso = nerve_product_iso(&a, &b, &p, &np, &pn);
            iso.validate().unwrap();
            assert!(iso.is_iso_levelwise(), "N({} x {})", a.name, b.name);
        }
    }

    #[test]
    fn rlp_and_quasicategory_checks() {
        let l = limits();
        let bound = 3;
        // Nerves are quasicategories.
        for j in [ordinal(2), span(), iso_interval()] {
            let nj = nerve(&j, bound);
            assert!(is_quasicategory_up_to(&nj, 3, &l).unwrap().ok);
        }
        // Standard simplices are quasicategories.
        assert!(is_quasicategory_up_to(&standard_simplex(3, bound), 3, &l).unwrap().ok);
        // A horn is not.
        let (h, _) = horn(2, 1, bound);
        let qc = is_quasicategory_up_to(&h, 2, &l).unwrap();
        assert!(!qc.ok);
        let (n, k, _) = qc.witness.unwrap();
        assert_eq!((n, k), (2, 1));
        // Identity has RLP against anything.
        let nj = nerve(&ordinal(2), bound);
        let idm = SimplicialMap::identity(&nj);
        let (_, incl) = horn(2, 1, bound);
        assert!(has_rlp(&idm, &incl, &l).unwrap().holds);
        // Λ¹[2] -> Δ[0] fails RLP against its own horn inclusion.
        let pt = standard_simplex(0, bound);
        let to_pt = SimplicialMap {
            dom: h.clone(),
            cod: pt,
            levels: (0..=bound).map(|n| vec![0; h.count(n)]).collect(),
        };
        to_pt.validate().unwrap();
        let r = has_rlp(&to_pt, &incl, &l).unwrap();
        assert!(!r.holds);
        assert!(r.witness.is_some());
    }

    #[test]
    fn acyclic_fibration_verdicts() {
        let l = limits();
        let bound = 3;
        let n1 = nerve(&ordinal(1), bound);
        let n0 = nerve(&ordinal(0), bound);
        // Nerve of [1] -> [0]: RLP fails at ∂Δ[1] (reversed endpoints square).
        let p = SimplicialMap {
            dom: n1.clone(),
            cod: n0.clone(),
            levels: (0..=bound).map(|n| vec![0; n1.count(n)]).collect(),
        };
        p.validate().unwrap();
        assert!(!is_acyclic_fibration_up_to(&p, 3, &l).unwrap().holds);
        // Identity is an acyclic fibration.
        let idm = SimplicialMap::identity(&n1);
        assert!(is_acyclic_fibration_up_to(&idm, 3, &l).unwrap().holds);
        assert!(is_inner_fibration_up_to(&idm, 3, &l).unwrap().holds);
        // Vertex inclusion Δ[0] -> Δ[1] fails already at ∅ -> Δ[0].
        let d1 = standard_simplex(1, bound);
        let vertex = coface_map(1, 1, bound); // sends 0 to 0
        assert_eq!(vertex.dom.count(0), 1);
        let r = is_acyclic_fibration_up_to(&vertex, 3, &l).unwrap();
        assert!(!r.holds);
        let _ = d1;
        // N(I) -> Δ[0] is an acyclic fibration up to 3.
        let ni = nerve(&iso_interval(), bound);
        let pt = standard_simplex(0, bound);
        let q = SimplicialMap {
            dom: ni.clone(),
            cod: pt,
            levels: (0..=bound).map(|n| vec![0; ni.count(n)]).collect(),
        };
        q.validate().unwrap();
        assert!(is_acyclic_fibration_up_to(&q, 3, &l).unwrap().holds);
    }

    #[test]
    fn exponential_counts() {
        let l = limits();
        let bound = 3;
        // cells[0] of x^point = cells[0] of x.
        let pt = standard_simplex(0, bound);
        let n2 = nerve(&ordinal(2), bound);
        let e = exponential(&n2, &pt, 3, &l).unwrap();
        assert_eq!(e.complex.count(0), n2.count(0));
        e.complex.validate().unwrap();
        // cells[0] of nerve([2])^(nerve([1]x[1])) = 20.
        let (sq, _, _) = product(&ordinal(1), &ordinal(1));
        let nsq = nerve(&sq, bound);
        let e2 = exponential(&n2, &nsq, 3, &l).unwrap();
        assert_eq!(e2.complex.count(0), 20);
        // cells[0] of nerve([1])^(nerve(span)) = 5.
        let n1 = nerve(&ordinal(1), bound);
        let ng = nerve(&span(), bound);
        let e3 = exponential(&n1, &ng, 3, &l).unwrap();
        assert_eq!(e3.complex.count(0), 5);
        // The exponential of nerves is a quasicategory (it is a nerve).
        assert!(is_quasicategory_up_to(&e2.complex, 3, &l).unwrap().ok);
    }

    #[test]
    fn exponential_respects_coproducts_at_level_zero() {
        let l = limits();
        let n2 = nerve(&ordinal(2), 3);
        let a = nerve(&ordinal(1), 3);
        let b = nerve(&ordinal(0), 3);
        let (ab, _, _) = sset_coproduct(&a, &b);
        let lhs = exponential(&n2, &ab, 3, &l).unwrap().complex.count(0);
        let ra = exponential(&n2, &a, 3, &l).unwrap().complex.count(0);
        let rb = exponential(&n2, &b, 3, &l).unwrap().complex.count(0);
        assert_eq!(lhs, ra * rb);
    }

    #[test]
    fn budget_is_enforced() {
        let mut l = limits();
        l.budget = 1000;
        let n3 = nerve(&ordinal(3), 3);
        let (sq, _, _) = product(&ordinal(1), &ordinal(1));
        let nsq = nerve(&sq, 3);
        let r = hom_set(&nsq, &n3, &l);
        match r {
            Err(Error::ResourceExhausted(_)) => {}
            Ok(maps) => {
                // If it fits the budget, the count must match the functor oracle.
                assert_eq!(
                    maps.len(),
                    enumerate_functors(&sq, &ordinal(3), &Limits::default())
                        .unwrap()
                        .len()
                );
            }
            other => panic!("unexpected: {other:?}"),
        }
    }
}
