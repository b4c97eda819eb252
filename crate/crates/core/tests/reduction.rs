mod common;

use common::category;
use tauwide::{Error, Obj, Summand};

#[test]
fn perpendicular_categories() {
    let c = category("lambda9.alg");
    let r = c.reducer();
    let cat = r.catalog();
    let w = r.whole();
    let labels = |key: Vec<usize>| {
        let mut v: Vec<&str> = key.iter().map(|&i| cat.label(i)).collect();
        v.sort();
        v
    };
    let id = |l: &str| cat.id_by_label(l).unwrap();
    assert_eq!(labels(r.perpendicular(&w, &Obj::single(Summand::module(id("2")))).unwrap()), vec!["1", "12/3", "2/3"]);
    assert_eq!(labels(r.perpendicular(&w, &Obj::single(Summand::shift(id("3")))).unwrap()), vec!["1", "1/2", "2"]);
    assert_eq!(r.perpendicular(&w, &Obj::zero()).unwrap(), w);
}

#[test]
fn reduction_and_inverse() {
    let c = category("lambda9.alg");
    let r = c.reducer();
    let cat = r.catalog();
    let w = r.whole();
    let m = |l: &str| Summand::module(cat.id_by_label(l).unwrap());
    let s = |l: &str| Summand::shift(cat.id_by_label(l).unwrap());
    let one = |x: Summand| Obj::single(x);
    assert_eq!(r.e_map(&w, &one(m("2")), &one(m("1/2"))).unwrap(), one(m("1")));
    assert_eq!(r.e_map(&w, &one(m("1/23")), &one(m("1/2"))).unwrap(), one(s("3")));
    assert_eq!(r.e_map(&w, &one(s("3")), &one(s("2/3"))).unwrap(), one(s("2")));
    assert_eq!(r.f_map(&w, &one(m("2")), &one(m("1"))).unwrap(), one(m("1/2")));
    assert_eq!(r.f_map(&w, &one(s("3")), &one(s("2"))).unwrap(), one(s("2/3")));
    for x in r.indecomposables(&w).unwrap().iter() {
        assert_eq!(r.e_map(&w, &Obj::zero(), &one(*x)).unwrap(), one(*x));
        assert_eq!(r.f_map(&w, &Obj::zero(), &one(*x)).unwrap(), one(*x));
    }
    assert!(matches!(r.e_map(&w, &one(m("2")), &one(m("2"))), Err(Error::NotCompatible(_))));
    assert!(matches!(r.e_map(&w, &one(m("3")), &one(s("3"))), Err(Error::NotCompatible(_))));
    assert!(r.e_map(&w, &Obj::new(vec![m("3"), s("3")]), &Obj::zero()).is_err());
}

#[test]
fn parsed_objects_round_trip() {
    let c = category("lambda9.alg");
    let cat = c.reducer().catalog();
    let o = Obj::parse("1/2 + 3[1]", cat).unwrap();
    assert_eq!(o.len(), 2);
    assert_eq!(Obj::parse(&o.display(cat), cat).unwrap(), o);
    assert_eq!(Obj::parse("0", cat).unwrap(), Obj::zero());
    assert!(matches!(Obj::parse("1/9", cat), Err(Error::Parse { .. })));
}
