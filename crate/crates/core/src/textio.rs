//! Text formats: categories, simplicial sets, simplicial maps, equivalence
//! certificates, and probe families, all as JSON documents, plus the spec
//! strings that name standard objects (`delta:2`, `horn:2:1`, `boundary:3`,
//! `nerve:<catfile>`) and prederivators (`rep:`, `ho:`, `const:`, `coprod:`,
//! `L:`).

use crate::budget::Limits;
use crate::error::{Error, Result};
use crate::fincat::{
    coproduct, iso_interval, ordinal, product, span, Cat, FinCat, FinCatBuilder,
};
use crate::modelcheck::EquivCertificate;
use crate::pdv::{Pd, ProbeFamily};
use crate::sset::{
    boundary, horn, nerve, sset_product, standard_simplex, SSet, SSetBuilder, SimplicialMap,
};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

fn obj(v: &Value, what: &str) -> Result<Map<String, Value>> {
    v.as_object()
        .cloned()
        .ok_or_else(|| Error::InputFormat(format!("{what} must be an object")))
}

fn str_of(v: &Value, what: &str) -> Result<String> {
    v.as_str()
        .map(|s| s.to_string())
        .ok_or_else(|| Error::InputFormat(format!("{what} must be a string")))
}

/// Parses the category document: `objects`, `morphisms` with `id`/`src`/`tgt`,
/// `identities`, and a `compose` table; identity composites may be omitted.
pub fn parse_category(text: &str) -> Result<FinCat> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::InputFormat(format!("category document: {e}")))?;
    let doc = obj(&v, "category document")?;
    let mut b = FinCatBuilder::new(
        doc.get("name")
            .and_then(|n| n.as_str())
            .unwrap_or("category"),
    );
    let mut obj_ids: BTreeMap<String, usize> = BTreeMap::new();
    for o in doc
        .get("objects")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::InputFormat("missing objects list".into()))?
    {
        let name = str_of(o, "object id")?;
        if obj_ids.contains_key(&name) {
            return Err(Error::InputFormat(format!("duplicate object id {name}")));
        }
        obj_ids.insert(name.clone(), b.add_object(&name));
    }
    let mut mor_ids: BTreeMap<String, usize> = BTreeMap::new();
    for m in doc
        .get("morphisms")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::InputFormat("missing morphisms list".into()))?
    {
        let m = obj(m, "morphism")?;
        let id = str_of(
            m.get("id")
                .ok_or_else(|| Error::InputFormat("morphism without id".into()))?,
            "morphism id",
        )?;
        let src = str_of(
            m.get("src")
                .ok_or_else(|| Error::InputFormat("morphism without src".into()))?,
            "src",
        )?;
        let tgt = str_of(
            m.get("tgt")
                .ok_or_else(|| Error::InputFormat("morphism without tgt".into()))?,
            "tgt",
        )?;
        let s = *obj_ids
            .get(&src)
            .ok_or_else(|| Error::InputFormat(format!("morphism {id} references missing object {src}")))?;
        let t = *obj_ids
            .get(&tgt)
            .ok_or_else(|| Error::InputFormat(format!("morphism {id} references missing object {tgt}")))?;
        if mor_ids.contains_key(&id) {
            return Err(Error::InputFormat(format!("duplicate morphism id {id}")));
        }
        mor_ids.insert(id.clone(), b.add_morphism(&id, s, t));
    }
    let idents = doc
        .get("identities")
        .and_then(|v| v.as_object())
        .ok_or_else(|| Error::InputFormat("missing identities".into()))?;
    for (o, m) in idents {
        let oi = *obj_ids
            .get(o)
            .ok_or_else(|| Error::InputFormat(format!("identity of missing object {o}")))?;
        let mi = *mor_ids
            .get(&str_of(m, "identity morphism")?)
            .ok_or_else(|| Error::InputFormat(format!("identity of {o} references a missing morphism")))?;
        b.set_identity(oi, mi);
    }
    if let Some(entries) = doc.get("compose") {
        for e in entries
            .as_array()
            .ok_or_else(|| Error::InputFormat("compose must be a list".into()))?
        {
            let e = e
                .as_array()
                .ok_or_else(|| Error::InputFormat("compose entry must be [g, f, gf]".into()))?;
            if e.len() != 3 {
                return Err(Error::InputFormat("compose entry must be [g, f, gf]".into()));
            }
            let lookup = |v: &Value| -> Result<usize> {
                let name = str_of(v, "compose entry")?;
                mor_ids
                    .get(&name)
                    .copied()
                    .ok_or_else(|| Error::InputFormat(format!("compose references missing morphism {name}")))
            };
            b.set_compose(lookup(&e[0])?, lookup(&e[1])?, lookup(&e[2])?);
        }
    }
    b.finish()
}

pub fn write_category(c: &Cat) -> String {
    let objects: Vec<Value> = (0..c.n_objects()).map(|x| json!(c.obj_label(x))).collect();
    let morphisms: Vec<Value> = (0..c.n_morphisms())
        .map(|f| {
            json!({
                "id": c.mor_label(f),
                "src": c.obj_label(c.src(f)),
                "tgt": c.obj_label(c.tgt(f)),
            })
        })
        .collect();
    let identities: BTreeMap<String, String> = (0..c.n_objects())
        .map(|x| (c.obj_label(x).to_string(), c.mor_label(c.identity(x)).to_string()))
        .collect();
    let mut compose = Vec::new();
    for g in 0..c.n_morphisms() {
        for f in 0..c.n_morphisms() {
            if let Some(gf) = c.compose(g, f) {
                compose.push(json!([c.mor_label(g), c.mor_label(f), c.mor_label(gf)]));
            }
        }
    }
    serde_json::to_string_pretty(&json!({
        "name": c.name,
        "objects": objects,
        "morphisms": morphisms,
        "identities": identities,
        "compose": compose,
    }))
    .expect("serializable")
}

/// Parses the simplicial-set document: `bound`, per-dimension `cells`,
/// `faces: {n: {i: {cell: image}}}` and `degens` analogously.
pub fn parse_sset(text: &str) -> Result<SSet> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::InputFormat(format!("simplicial set document: {e}")))?;
    let doc = obj(&v, "simplicial set document")?;
    let bound = doc
        .get("bound")
        .and_then(|b| b.as_u64())
        .ok_or_else(|| Error::InputFormat("missing bound".into()))? as usize;
    let mut b = SSetBuilder::new(
        doc.get("name").and_then(|n| n.as_str()).unwrap_or("sset"),
        bound,
    );
    let cells = doc
        .get("cells")
        .and_then(|c| c.as_object())
        .ok_or_else(|| Error::InputFormat("missing cells".into()))?;
    let mut ids: Vec<BTreeMap<String, usize>> = vec![BTreeMap::new(); bound + 1];
    for n in 0..=bound {
        if let Some(list) = cells.get(&n.to_string()) {
            for cell in list
                .as_array()
                .ok_or_else(|| Error::InputFormat(format!("cells[{n}] must be a list")))?
            {
                let name = str_of(cell, "cell id")?;
                if ids[n].contains_key(&name) {
                    return Err(Error::InputFormat(format!("duplicate cell id {name}")));
                }
                ids[n].insert(name.clone(), b.add_cell(n, &name));
            }
        }
    }
    let read_tables = |key: &str, is_face: bool, b: &mut SSetBuilder| -> Result<()> {
        if let Some(tables) = doc.get(key) {
            let tables = tables
                .as_object()
                .ok_or_else(|| Error::InputFormat(format!("{key} must be an object")))?;
            for (n_str, per_i) in tables {
                let n: usize = n_str
                    .parse()
                    .map_err(|_| Error::InputFormat(format!("{key} dimension {n_str}")))?;
                let per_i = per_i
                    .as_object()
                    .ok_or_else(|| Error::InputFormat(format!("{key}[{n}] must be an object")))?;
                for (i_str, entries) in per_i {
                    let i: usize = i_str
                        .parse()
                        .map_err(|_| Error::InputFormat(format!("{key} index {i_str}")))?;
                    let entries = entries
                        .as_object()
                        .ok_or_else(|| Error::InputFormat(format!("{key}[{n}][{i}] must be an object")))?;
                    for (cell, image) in entries {
                        let ci = *ids[n]
                            .get(cell)
                            .ok_or_else(|| Error::InputFormat(format!("{key} of missing cell {cell}")))?;
                        let target_dim = if is_face { n - 1 } else { n + 1 };
                        let img = str_of(image, "image cell")?;
                        let vi = *ids
                            .get(target_dim)
                            .and_then(|m| m.get(&img))
                            .ok_or_else(|| Error::InputFormat(format!("{key} references missing cell {img}")))?;
                        if is_face {
                            b.set_face(n, i, ci, vi);
                        } else {
                            b.set_degen(n, i, ci, vi);
                        }
                    }
                }
            }
        }
        Ok(())
    };
    read_tables("faces", true, &mut b)?;
    read_tables("degens", false, &mut b)?;
    Ok(Arc::new(b.finish()?))
}

pub fn write_sset(x: &SSet) -> String {
    let mut cells = Map::new();
    for n in 0..=x.bound() {
        cells.insert(
            n.to_string(),
            json!((0..x.count(n)).map(|c| x.label(n, c)).collect::<Vec<_>>()),
        );
    }
    let mut faces = Map::new();
    for n in 1..=x.bound() {
        let mut per_i = Map::new();
        for i in 0..=n {
            let entries: BTreeMap<String, String> = (0..x.count(n))
                .map(|c| {
                    (
                        x.label(n, c).to_string(),
                        x.label(n - 1, x.face(n, i, c)).to_string(),
                    )
                })
                .collect();
            per_i.insert(i.to_string(), json!(entries));
        }
        faces.insert(n.to_string(), Value::Object(per_i));
    }
    let mut degens = Map::new();
    for n in 0..x.bound() {
        let mut per_i = Map::new();
        for i in 0..=n {
            let entries: BTreeMap<String, String> = (0..x.count(n))
                .map(|c| {
                    (
                        x.label(n, c).to_string(),
                        x.label(n + 1, x.degen(n, i, c)).to_string(),
                    )
                })
                .collect();
            per_i.insert(i.to_string(), json!(entries));
        }
        degens.insert(n.to_string(), Value::Object(per_i));
    }
    serde_json::to_string_pretty(&json!({
        "name": x.name,
        "bound": x.bound(),
        "cells": cells,
        "faces": faces,
        "degens": degens,
    }))
    .expect("serializable")
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InputFormat(format!("cannot read {path}: {e}")))
}

/// Resolves a category spec: a builtin name (`ordinal:2`, `span`, `iso`,
/// `square`, `two-points`, `two-arrows`) or a path to a category document.
pub fn resolve_category(spec: &str) -> Result<Cat> {
    match spec {
        "span" => return Ok(span()),
        "iso" => return Ok(iso_interval()),
        "square" => return Ok(product(&ordinal(1), &ordinal(1)).0),
        "two-points" => return Ok(coproduct(&ordinal(0), &ordinal(0)).0),
        "two-arrows" => return Ok(coproduct(&ordinal(1), &ordinal(1)).0),
        _ => {}
    }
    if let Some(n) = spec.strip_prefix("ordinal:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::InputFormat(format!("bad ordinal spec {spec}")))?;
        return Ok(ordinal(n));
    }
    let cat = parse_category(&read_file(spec)?)?;
    cat.validate()?;
    Ok(Arc::new(cat))
}

/// Resolves a simplicial-set spec: `delta:N`, `horn:N:K`, `boundary:N`,
/// `nerve:<catspec>`, or a path to a simplicial-set document.
pub fn resolve_sset(spec: &str, bound: usize) -> Result<SSet> {
    if let Some(rest) = spec.strip_prefix("delta:") {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::InputFormat(format!("bad delta spec {spec}")))?;
        if n > bound {
            return Err(Error::InputFormat(format!(
                "delta:{n} needs bound >= {n}, have {bound}"
            )));
        }
        return Ok(standard_simplex(n, bound));
    }
    if let Some(rest) = spec.strip_prefix("horn:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 2 {
            return Err(Error::InputFormat(format!("bad horn spec {spec}")));
        }
        let n: usize = parts[0]
            .parse()
            .map_err(|_| Error::InputFormat(format!("bad horn spec {spec}")))?;
        let k: usize = parts[1]
            .parse()
            .map_err(|_| Error::InputFormat(format!("bad horn spec {spec}")))?;
        if n == 0 || k > n || n > bound {
            return Err(Error::InputFormat(format!("horn index out of range in {spec}")));
        }
        return Ok(horn(n, k, bound).0);
    }
    if let Some(rest) = spec.strip_prefix("boundary:") {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::InputFormat(format!("bad boundary spec {spec}")))?;
        if n == 0 || n > bound {
            return Err(Error::InputFormat(format!("boundary index out of range in {spec}")));
        }
        return Ok(boundary(n, bound).0);
    }
    if let Some(rest) = spec.strip_prefix("nerve:") {
        return Ok(nerve(&resolve_category(rest)?, bound));
    }
    if let Some(rest) = spec.strip_prefix("cyl:") {
        let base = resolve_sset(rest, bound)?;
        let d1 = standard_simplex(1, bound);
        return Ok(sset_product(&d1, &base).0);
    }
    parse_sset(&read_file(spec)?)
}

/// Resolves a prederivator spec: `rep:<cat>`, `ho:<sset>`, `const:<cat>`,
/// `coprod:<spec>,<spec>`, or `L:<sset>`.
pub fn resolve_pd(spec: &str, limits: &Limits) -> Result<Pd> {
    if let Some(rest) = spec.strip_prefix("rep:") {
        return Ok(Pd::representable(&resolve_category(rest)?, limits));
    }
    if let Some(rest) = spec.strip_prefix("ho:") {
        return Pd::homotopy(&resolve_sset(rest, limits.bound)?, limits);
    }
    if let Some(rest) = spec.strip_prefix("const:") {
        return Ok(Pd::constant(&resolve_category(rest)?, limits));
    }
    if let Some(rest) = spec.strip_prefix("coprod:") {
        let parts = split_top_level(rest);
        if parts.len() < 2 {
            return Err(Error::InputFormat(
                "coprod needs at least two components".into(),
            ));
        }
        let pds = parts
            .iter()
            .map(|p| resolve_pd(p, limits))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Pd::coproduct(pds, limits));
    }
    if let Some(rest) = spec.strip_prefix("L:") {
        return Ok(Pd::colim(&resolve_sset(rest, limits.bound)?, limits));
    }
    Err(Error::InputFormat(format!(
        "unknown prederivator spec {spec}; expected rep:, ho:, const:, coprod:, or L:"
    )))
}

/// Splits on commas that are not inside a nested `coprod:` component.
fn split_top_level(s: &str) -> Vec<String> {
    // The grammar has no brackets, so nesting is resolved greedily: a
    // component starting with `coprod:` swallows the rest.
    if let Some(idx) = s.find("coprod:") {
        if idx == 0 {
            return vec![s.to_string()];
        }
    }
    match s.split_once(',') {
        None => vec![s.to_string()],
        Some((head, tail)) => {
            let mut out = vec![head.to_string()];
            out.extend(split_top_level(tail));
            out
        }
    }
}

/// Parses a simplicial-map document: `dom` and `cod` specs plus levelwise
/// cell assignments keyed by the canonical cell labels.
pub fn parse_map(text: &str, bound: usize) -> Result<SimplicialMap> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::InputFormat(format!("map document: {e}")))?;
    parse_map_value(&v, bound)
}

pub fn parse_map_value(v: &Value, bound: usize) -> Result<SimplicialMap> {
    let doc = obj(v, "map document")?;
    let dom = resolve_sset(
        &str_of(
            doc.get("dom")
                .ok_or_else(|| Error::InputFormat("map without dom".into()))?,
            "dom",
        )?,
        bound,
    )?;
    let cod = resolve_sset(
        &str_of(
            doc.get("cod")
                .ok_or_else(|| Error::InputFormat("map without cod".into()))?,
            "cod",
        )?,
        bound,
    )?;
    let assignments = doc
        .get("levels")
        .and_then(|l| l.as_object())
        .ok_or_else(|| Error::InputFormat("map without levels".into()))?;
    let mut levels: Vec<Vec<usize>> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let dom_index: BTreeMap<&str, usize> =
            (0..dom.count(n)).map(|c| (dom.label(n, c), c)).collect();
        let cod_index: BTreeMap<&str, usize> =
            (0..cod.count(n)).map(|c| (cod.label(n, c), c)).collect();
        let mut lv = vec![usize::MAX; dom.count(n)];
        if let Some(entries) = assignments.get(&n.to_string()) {
            let entries = entries
                .as_object()
                .ok_or_else(|| Error::InputFormat(format!("levels[{n}] must be an object")))?;
            for (cell, image) in entries {
                let ci = *dom_index.get(cell.as_str()).ok_or_else(|| {
                    Error::InputFormat(format!("map assigns missing cell {cell}"))
                })?;
                let img = str_of(image, "image cell")?;
                let vi = *cod_index.get(img.as_str()).ok_or_else(|| {
                    Error::InputFormat(format!("map references missing image cell {img}"))
                })?;
                lv[ci] = vi;
            }
        }
        if let Some(missing) = lv.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InputFormat(format!(
                "map leaves {n}-cell {} unassigned",
                dom.label(n, missing)
            )));
        }
        levels.push(lv);
    }
    let map = SimplicialMap { dom, cod, levels };
    map.validate()?;
    Ok(map)
}

/// Writes a map with named dom/cod specs (the caller supplies the spec
/// strings that regenerate the complexes).
pub fn write_map(m: &SimplicialMap, dom_spec: &str, cod_spec: &str) -> String {
    let mut levels = Map::new();
    for n in 0..=m.dom.bound() {
        let entries: BTreeMap<String, String> = (0..m.dom.count(n))
            .map(|c| {
                (
                    m.dom.label(n, c).to_string(),
                    m.cod.label(n, m.levels[n][c]).to_string(),
                )
            })
            .collect();
        levels.insert(n.to_string(), json!(entries));
    }
    serde_json::to_string_pretty(&json!({
        "dom": dom_spec,
        "cod": cod_spec,
        "levels": levels,
    }))
    .expect("serializable")
}

/// Parses a certificate document with `inverse`, `homotopy_dom`,
/// `homotopy_cod` map documents.
pub fn parse_certificate(text: &str, bound: usize) -> Result<EquivCertificate> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::InputFormat(format!("certificate document: {e}")))?;
    let doc = obj(&v, "certificate document")?;
    let field = |name: &str| -> Result<SimplicialMap> {
        parse_map_value(
            doc.get(name)
                .ok_or_else(|| Error::InputFormat(format!("certificate without {name}")))?,
            bound,
        )
    };
    Ok(EquivCertificate {
        inverse: field("inverse")?,
        homotopy_dom: field("homotopy_dom")?,
        homotopy_cod: field("homotopy_cod")?,
    })
}

/// Parses a probe-family document: `{"extend": bool, "categories": [spec..]}`.
pub fn parse_probe_family(text: &str, limits: &Limits) -> Result<ProbeFamily> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::InputFormat(format!("probe family document: {e}")))?;
    let doc = obj(&v, "probe family document")?;
    let extend = doc.get("extend").and_then(|e| e.as_bool()).unwrap_or(true);
    let cats = doc
        .get("categories")
        .and_then(|c| c.as_array())
        .ok_or_else(|| Error::InputFormat("probe family without categories".into()))?
        .iter()
        .map(|s| resolve_category(&str_of(s, "category spec")?))
        .collect::<Result<Vec<_>>>()?;
    ProbeFamily::from_categories(cats, extend, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_round_trip() {
        let c = span();
        let text = write_category(&c);
        let parsed = Arc::new(parse_category(&text).unwrap());
        parsed.validate().unwrap();
        assert_eq!(parsed.n_objects(), c.n_objects());
        assert_eq!(parsed.n_morphisms(), c.n_morphisms());
        assert_eq!(parsed.key(), c.key());
    }

    #[test]
    fn category_identity_composites_inferred() {
        let text = r#"{
            "objects": ["a", "b"],
            "morphisms": [
                {"id": "ia", "src": "a", "tgt": "a"},
                {"id": "ib", "src": "b", "tgt": "b"},
                {"id": "f", "src": "a", "tgt": "b"}
            ],
            "identities": {"a": "ia", "b": "ib"}
        }"#;
        let c = Arc::new(parse_category(text).unwrap());
        c.validate().unwrap();
        assert_eq!(c.compose(2, 0), Some(2));
    }

    #[test]
    fn malformed_category_is_an_input_error() {
        let text = r#"{
            "objects": ["a"],
            "morphisms": [{"id": "f", "src": "a", "tgt": "zzz"}],
            "identities": {"a": "f"}
        }"#;
        assert!(matches!(parse_category(text), Err(Error::InputFormat(_))));
        assert!(matches!(parse_category("not json"), Err(Error::InputFormat(_))));
    }

    #[test]
    fn sset_round_trip() {
        for x in [
            standard_simplex(2, 3),
            horn(2, 1, 3).0,
            nerve(&span(), 3),
        ] {
            let text = write_sset(&x);
            let parsed = parse_sset(&text).unwrap();
            assert_eq!(parsed.key(), x.key(), "{} round-trips", x.name);
        }
    }

    #[test]
    fn spec_strings_resolve() {
        let l = Limits::default();
        assert_eq!(resolve_sset("delta:2", 3).unwrap().count(0), 3);
        assert_eq!(resolve_sset("horn:2:1", 3).unwrap().count(1), 5);
        assert_eq!(resolve_sset("boundary:2", 3).unwrap().nondeg_cells(2).len(), 0);
        assert_eq!(resolve_category("ordinal:2").unwrap().n_objects(), 3);
        assert_eq!(resolve_category("square").unwrap().n_objects(), 4);
        let pd = resolve_pd("rep:ordinal:1", &l).unwrap();
        assert_eq!(pd.describe(), "rep([1])");
        let pd = resolve_pd("coprod:rep:ordinal:0,const:ordinal:1", &l).unwrap();
        assert!(pd.describe().starts_with("coprod"));
        assert!(matches!(
            resolve_pd("what:ever", &l),
            Err(Error::InputFormat(_))
        ));
        assert!(matches!(resolve_sset("horn:2:7", 3), Err(Error::InputFormat(_))));
    }

    #[test]
    fn map_round_trip() {
        let l = Limits::default();
        let d1 = resolve_sset("delta:1", 3).unwrap();
        let n2 = resolve_sset("nerve:ordinal:2", 3).unwrap();
        let maps = crate::sset::hom_set(&d1, &n2, &l).unwrap();
        let text = write_map(&maps[1], "delta:1", "nerve:ordinal:2");
        let parsed = parse_map(&text, 3).unwrap();
        assert_eq!(parsed.levels, maps[1].levels);
    }

    #[test]
    fn probe_family_documents() {
        let l = Limits::default();
        let ok = r#"{"extend": true, "categories": ["ordinal:0", "ordinal:1"]}"#;
        let fam = parse_probe_family(ok, &l).unwrap();
        assert_eq!(fam.categories.len(), 2);
        assert!(!fam.extensions.is_empty());
        let missing = r#"{"extend": false, "categories": ["ordinal:0", "ordinal:1"]}"#;
        assert!(matches!(
            parse_probe_family(missing, &l),
            Err(Error::InputFormat(_))
        ));
    }
}
