#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::Arc;

use tauwide::{decompose, hom_basis, parse_presentation, Algebra, Catalog, Field, Reducer, WideCategory, DEFAULT_BUDGET};

pub const CORPUS: [&str; 3] = ["lambda9.alg", "ka2.alg", "preproj_a2.alg"];

pub fn corpus_text(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    std::fs::read_to_string(path).unwrap()
}

pub fn algebra(name: &str) -> Arc<Algebra> {
    Algebra::build(parse_presentation(&corpus_text(name)).unwrap()).unwrap()
}

pub fn algebra_over(name: &str, f: Field) -> Arc<Algebra> {
    Algebra::build(parse_presentation(&corpus_text(name)).unwrap().with_field(f)).unwrap()
}

pub fn category_of(alg: &Arc<Algebra>) -> WideCategory {
    let cat = Catalog::build(alg, DEFAULT_BUDGET).unwrap();
    WideCategory::build(Arc::new(Reducer::new(Arc::new(cat)))).unwrap()
}

pub fn category(name: &str) -> WideCategory {
    category_of(&algebra(name))
}

/// Whether indecomposable `z` lies in `Filt(S)` for a semibrick `S`, by peeling simples of the
/// would-be abelian category off the bottom: inside a wide subcategory every nonzero map from one
/// of its simples is a monomorphism with cokernel again inside.
fn in_filt(cat: &Catalog, semibrick: &[usize], z: &tauwide::Module, memo: &mut BTreeMap<usize, bool>) -> bool {
    if z.is_zero() {
        return true;
    }
    let id = cat.id_of(z).unwrap();
    if let Some(i) = id {
        if let Some(&v) = memo.get(&i) {
            return v;
        }
    }
    let mut result = false;
    for &s in semibrick {
        let maps = hom_basis(cat.module(s), z).unwrap();
        let Some(f) = maps.first() else { continue };
        let (k, _) = f.kernel();
        if !k.is_zero() {
            break;
        }
        let (c, _) = f.cokernel();
        result = decompose(&c).unwrap().iter().all(|part| in_filt(cat, semibrick, part, memo));
        break;
    }
    if let Some(i) = id {
        memo.insert(i, result);
    }
    result
}

/// Wide subcategories as `Filt(S)` over all semibricks `S`, keyed by member ids, with rank `|S|`.
pub fn brute_force_wide(cat: &Catalog) -> BTreeMap<Vec<usize>, usize> {
    let n = cat.len();
    let bricks: Vec<usize> = (0..n).filter(|&i| cat.hom(i, i) == 1).collect();
    let mut out = BTreeMap::new();
    let mut stack: Vec<usize> = Vec::new();
    fn grow(
        cat: &Catalog,
        bricks: &[usize],
        start: usize,
        stack: &mut Vec<usize>,
        out: &mut BTreeMap<Vec<usize>, usize>,
    ) {
        let mut memo = BTreeMap::new();
        let members: Vec<usize> = (0..cat.len()).filter(|&z| in_filt(cat, stack, cat.module(z), &mut memo)).collect();
        let prev = out.insert(members, stack.len());
        assert!(prev.is_none() || prev == Some(stack.len()));
        for k in start..bricks.len() {
            let b = bricks[k];
            if stack.iter().all(|&s| cat.hom(s, b) == 0 && cat.hom(b, s) == 0) {
                stack.push(b);
                grow(cat, bricks, k + 1, stack, out);
                stack.pop();
            }
        }
    }
    grow(cat, &bricks, 0, &mut stack, &mut out);
    out
}

/// Corank-one inclusions between the brute-force wide subcategories.
pub fn brute_force_edges(wide: &BTreeMap<Vec<usize>, usize>) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let mut edges = BTreeSet::new();
    for (a, &ra) in wide {
        for (b, &rb) in wide {
            if ra == rb + 1 && b.iter().all(|x| a.binary_search(x).is_ok()) {
                edges.insert((a.clone(), b.clone()));
            }
        }
    }
    edges
}

/// Objects and irreducible edges of the exported category, as member-key sets.
pub fn exported_graph(c: &WideCategory, drop_zero: bool) -> (BTreeSet<Vec<usize>>, BTreeSet<(Vec<usize>, Vec<usize>)>) {
    let v = c.to_json(drop_zero);
    let mut index = BTreeMap::new();
    let mut nodes = BTreeSet::new();
    for o in v["objects"].as_array().unwrap() {
        let key: Vec<usize> = o["key"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
        index.insert(o["index"].as_u64().unwrap(), key.clone());
        nodes.insert(key);
    }
    let mut edges = BTreeSet::new();
    for m in v["morphisms"].as_array().unwrap() {
        if m["irreducible"].as_bool().unwrap() {
            let s = index[&m["source"].as_u64().unwrap()].clone();
            let t = index[&m["target"].as_u64().unwrap()].clone();
            edges.insert((s, t));
        }
    }
    (nodes, edges)
}
