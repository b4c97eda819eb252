mod common;

use common::category;
use tauwide::tau_rigid::{ext_projectives, minimal_left_approximation, minimal_right_approximation, trace_and_torsion};
use tauwide::verify::split_projective_part;
use tauwide::{is_isomorphic, CObject, Module, Obj, Summand};

#[test]
fn torsion_parts() {
    let c = category("lambda9.alg");
    let cat = c.reducer().catalog();
    let a = cat.algebra();
    let m12 = cat.module(cat.id_by_label("1/2").unwrap());
    let t = trace_and_torsion(&a.simple(1).unwrap(), m12).unwrap();
    assert!(is_isomorphic(&t.free, &a.simple(0).unwrap()).unwrap());
    assert!(is_isomorphic(&t.trace, &a.simple(1).unwrap()).unwrap());
    let t = trace_and_torsion(&a.projective(2).unwrap(), &a.projective(1).unwrap()).unwrap();
    assert!(is_isomorphic(&t.free, &a.simple(1).unwrap()).unwrap());
    let t = trace_and_torsion(&a.simple(2).unwrap(), &a.simple(0).unwrap()).unwrap();
    assert!(is_isomorphic(&t.free, &a.simple(0).unwrap()).unwrap());
}

#[test]
fn support_tau_rigid_examples() {
    let c = category("lambda9.alg");
    let cat = c.reducer().catalog();
    let a = cat.algebra();
    let z = Module::zero(a);
    let s2 = a.simple(1).unwrap();
    let p3 = a.projective(2).unwrap();
    assert!(CObject::new(s2.clone(), p3.clone()).is_support_tau_rigid().unwrap());
    assert!(!CObject::new(a.simple(2).unwrap(), p3).is_support_tau_rigid().unwrap());
    let both = Module::sum_of(a, &[s2, cat.module(cat.id_by_label("1/2").unwrap()).clone()]);
    assert!(CObject::new(both, z).is_support_tau_rigid().unwrap());
}

#[test]
fn approximations() {
    let c = category("lambda9.alg");
    let cat = c.reducer().catalog();
    let a = cat.algebra();
    let m12 = cat.module(cat.id_by_label("1/2").unwrap());
    let r = minimal_right_approximation(&[a.projective(0).unwrap()], m12).unwrap();
    assert_eq!(r.summands, vec![0]);
    assert!(r.map.cokernel().0.is_zero());
    let l = minimal_left_approximation(&a.simple(0).unwrap(), &[a.simple(1).unwrap()]).unwrap();
    assert!(l.summands.is_empty());
    let k = category("ka2.alg");
    let ka = k.reducer().catalog().algebra();
    let l = minimal_left_approximation(&ka.simple(1).unwrap(), &[ka.projective(0).unwrap()]).unwrap();
    assert_eq!(l.summands, vec![0]);
    assert!(l.map.kernel().0.is_zero());
}

#[test]
fn ext_projectives_and_bongartz() {
    let c = category("lambda9.alg");
    let r = c.reducer();
    let cat = r.catalog();
    let whole = r.whole();
    let mut projs = r.ext_projectives(&whole).unwrap();
    projs.sort();
    assert_eq!(projs, cat.projective_ids());
    let jp1 = r.perpendicular(&whole, &Obj::single(Summand::module(0))).unwrap();
    let labels: Vec<&str> = jp1.iter().map(|&i| cat.label(i)).collect();
    let mut sorted = labels.clone();
    sorted.sort();
    assert_eq!(sorted, vec!["2", "2/3", "3"]);
    let members: Vec<Module> = jp1.iter().map(|&i| cat.module(i).clone()).collect();
    let mut ep: Vec<&str> = ext_projectives(&members).unwrap().into_iter().map(|k| cat.label(jp1[k])).collect();
    ep.sort();
    assert_eq!(ep, vec!["2/3", "3"]);
    assert_eq!(r.bongartz(&whole, &[0]).unwrap(), vec![1, 2]);
    let s2 = cat.id_by_label("2").unwrap();
    assert_eq!(r.bongartz(&whole, &[s2]).unwrap().len(), 2);

    let k = category("ka2.alg");
    let kr = k.reducer();
    let kc = kr.catalog();
    let kw = kr.whole();
    let s1 = kc.id_by_label("1").unwrap();
    let p1 = kc.id_by_label("1/2").unwrap();
    assert_eq!(kr.bongartz(&kw, &[s1]).unwrap(), vec![p1]);
    let gen_p1: Vec<usize> = kw.iter().copied().filter(|&x| kc.in_gen(p1, x)).collect();
    let members: Vec<Module> = gen_p1.iter().map(|&i| kc.module(i).clone()).collect();
    assert_eq!(ext_projectives(&members).unwrap().len(), 2);
    let mut t = vec![s1, p1];
    t.sort();
    assert_eq!(split_projective_part(kr, &t).unwrap(), vec![p1]);
    let all = kc.projective_ids();
    assert_eq!(split_projective_part(kr, &all).unwrap(), all);
}
