mod common;

use common::{algebra, brute_force_wide, category, category_of};
use tauwide::{Obj, Summand};

#[test]
fn object_counts() {
    let k = category("ka2.alg");
    assert_eq!(k.objects().len(), 5);
    assert_eq!(brute_force_wide(k.reducer().catalog()).len(), 5);
    assert_eq!(category("semisimple2.alg").objects().len(), 4);
    let l9 = category("lambda9.alg");
    let brute = brute_force_wide(l9.reducer().catalog());
    let keys: Vec<Vec<usize>> = l9.objects().iter().map(|w| w.key.clone()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(sorted, brute.keys().cloned().collect::<Vec<_>>());
    for w in l9.objects() {
        assert_eq!(brute[&w.key], w.rank);
    }
}

#[test]
fn trivial_algebra_has_a_doubled_edge() {
    let c = category_of(&algebra("trivial.alg"));
    assert_eq!(c.objects().len(), 2);
    let edges = c.irreducible_edges(false);
    assert_eq!(edges.len(), 1);
    assert!(edges[0].3);
    assert!(c.to_dot(false).contains("black:black"));
}

#[test]
fn hom_sets_and_composition() {
    let c = category("lambda9.alg");
    let r = c.reducer();
    let cat = r.catalog();
    let m = |l: &str| Summand::module(cat.id_by_label(l).unwrap());
    let whole = c.object_index(&r.whole()).unwrap();
    let g = c.morphism(whole, Obj::single(m("2"))).unwrap();
    assert_eq!(c.hom_set(whole, g.target).len(), 1);
    let p3 = Summand::shift(cat.id_by_label("3").unwrap());
    let h = c.morphism(whole, Obj::single(p3)).unwrap();
    let labels: Vec<Obj> = c.hom_set(whole, h.target).iter().map(|x| x.label.clone()).collect();
    assert_eq!(labels.len(), 2);
    assert!(labels.contains(&Obj::single(m("3"))));
    for i in 0..c.objects().len() {
        assert!(c.hom_set(i, i).iter().any(|x| x.label.is_empty()));
    }
    let b = c.morphism(g.target, Obj::single(m("1"))).unwrap();
    let ba = c.compose(&b, &g).unwrap();
    assert_eq!(ba.label, Obj::new(vec![m("2"), m("1/2")]));
    assert_eq!(c.compose(&c.identity(g.target), &g).unwrap(), g);
    assert_eq!(c.compose(&g, &c.identity(whole)).unwrap(), g);
    assert!(c.is_irreducible(&g).unwrap());
    assert!(!c.is_irreducible(&c.identity(whole)).unwrap());
    assert!(!c.is_irreducible(&ba).unwrap());
}

#[test]
fn associativity_through_every_rank() {
    let c = category("lambda9.alg");
    let whole = c.object_index(&c.reducer().whole()).unwrap();
    let step = |from: usize| c.morphisms().iter().find(|m| m.source == from && m.label.len() == 1).unwrap().clone();
    let g1 = step(whole);
    let g2 = step(g1.target);
    let g3 = step(g2.target);
    assert_eq!(c.object(g3.target).rank, 0);
    let left = c.compose(&g3, &c.compose(&g2, &g1).unwrap()).unwrap();
    let right = c.compose(&c.compose(&g3, &g2).unwrap(), &g1).unwrap();
    assert_eq!(left, right);
    assert_eq!(left.label.len(), 3);
}

#[test]
fn json_export_schema() {
    let c = category("lambda9.alg");
    let v = c.to_json(true);
    let objects = v["objects"].as_array().unwrap();
    assert_eq!(objects.len(), 17);
    assert!(objects.iter().all(|o| o["key"].is_array() && o["rank"].is_u64() && o["members"].is_array()));
    let m = &v["morphisms"].as_array().unwrap()[0];
    assert!(m["source"].is_u64() && m["target"].is_u64() && m["irreducible"].is_boolean());
    assert!(m["label"].as_array().unwrap().iter().all(|s| s["shifted"].is_boolean()));
    let dot = c.to_dot(true);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), c.irreducible_edges(true).len());
}
