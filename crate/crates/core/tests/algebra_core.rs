mod common;

use common::{algebra, corpus_text};
use tauwide::{parse_presentation, Algebra, Error, Field};

#[test]
fn dimensions_of_corpus_algebras() {
    let l9 = algebra("lambda9.alg");
    assert_eq!(l9.dim(), 6);
    let mut names: Vec<String> = (0..l9.dim()).map(|b| l9.path_name(b)).collect();
    names.sort();
    assert_eq!(names.len(), 6);
    assert!(!names.iter().any(|n| n == "b*a"));
    assert_eq!(algebra("ka2.alg").dim(), 3);
    assert_eq!(algebra("preproj_a2.alg").dim(), 4);
    assert_eq!(algebra("trivial.alg").dim(), 1);
}

#[test]
fn projectives_and_injectives() {
    let a = algebra("lambda9.alg");
    let p1 = a.projective(0).unwrap();
    assert_eq!(p1.dims(), &[1, 1, 1]);
    assert!(!p1.arrow(0).is_zero());
    assert!(p1.arrow(1).is_zero());
    assert_eq!(a.projective(2).unwrap().dims(), &[0, 0, 1]);
    assert_eq!(a.injective(0).unwrap().dims(), &[1, 0, 0]);
    let i3 = a.injective(2).unwrap();
    assert_eq!(i3.dims(), &[1, 1, 1]);
    assert_eq!(i3.top_dims(), vec![1, 1, 0]);
    let k = algebra("ka2.alg");
    assert_eq!(k.projective(1).unwrap().dims(), &[0, 1]);
    assert!(tauwide::is_isomorphic(&k.injective(1).unwrap(), &k.projective(0).unwrap()).unwrap());
}

#[test]
fn parsing_diagnostics() {
    let p = parse_presentation(&corpus_text("lambda9.alg")).unwrap();
    assert_eq!((p.vertices.len(), p.arrows.len(), p.relations.len()), (3, 3, 1));
    assert!(matches!(parse_presentation(""), Err(Error::Parse { .. })));
    assert!(matches!(parse_presentation("vertex 1\nvertex 2\narrow a : 1 -> 2\nrelation a\n").and_then(Algebra::build), Err(Error::NonAdmissible(_))));
    match parse_presentation("vertex 1\narrow a : 1 -> 9\n") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(parse_presentation("vertex 1\narrow x : 1 -> 1\n").and_then(Algebra::build), Err(Error::NotFiniteDimensional(_))));
}

#[test]
fn canonical_text_round_trips() {
    let p = parse_presentation(&corpus_text("preproj_a2.alg")).unwrap();
    let again = parse_presentation(&p.to_text()).unwrap();
    assert_eq!(p, again);
    let fp = p.with_field(Field::prime(101).unwrap());
    assert!(fp.to_text().contains("Fp 101"));
    assert_eq!(parse_presentation(&fp.to_text()).unwrap(), fp);
}
