mod common;

use common::{algebra, category, CORPUS};
use tauwide::{almost_split_sequence, ar_quiver, enumerate_indecomposables, is_isomorphic, Error, DEFAULT_BUDGET};

#[test]
fn almost_split_examples() {
    let c = category("lambda9.alg");
    let cat = c.reducer().catalog();
    let a = cat.algebra();
    let seq = almost_split_sequence(&a.simple(2).unwrap()).unwrap();
    assert_eq!(seq.right.dims(), &[1, 2, 1]);
    assert_eq!(seq.middle_summands.len(), 2);
    assert!(seq.middle_summands.iter().any(|m| is_isomorphic(m, cat.module(cat.id_by_label("2/3").unwrap())).unwrap()));
    assert!(seq.middle_summands.iter().any(|m| is_isomorphic(m, &a.projective(0).unwrap()).unwrap()));
    let m13 = cat.module(cat.id_by_label("1/3").unwrap());
    let seq = almost_split_sequence(m13).unwrap();
    assert!(is_isomorphic(&seq.right, &a.simple(1).unwrap()).unwrap());
    assert_eq!(seq.middle.dims(), &[1, 1, 1]);
    let k = algebra("ka2.alg");
    let seq = almost_split_sequence(&k.simple(1).unwrap()).unwrap();
    assert!(is_isomorphic(&seq.middle, &k.projective(0).unwrap()).unwrap());
    assert!(is_isomorphic(&seq.right, &k.simple(0).unwrap()).unwrap());
}

#[test]
fn every_sequence_is_short_exact() {
    for name in CORPUS {
        let c = category(name);
        let cat = c.reducer().catalog();
        for i in 0..cat.len() {
            let m = cat.module(i);
            match almost_split_sequence(m) {
                Err(Error::InjectiveInput) => assert!(cat.is_injective(i)),
                Ok(seq) => {
                    assert!(seq.inclusion.kernel().0.is_zero());
                    assert!(seq.projection.cokernel().0.is_zero());
                    assert!(seq.projection.compose(&seq.inclusion).is_zero());
                    let dims: Vec<usize> = (0..m.dims().len()).map(|v| m.dim_at(v) + seq.right.dim_at(v)).collect();
                    assert_eq!(seq.middle.dims(), dims.as_slice());
                }
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn enumeration_and_shape() {
    assert_eq!(enumerate_indecomposables(&algebra("lambda9.alg"), DEFAULT_BUDGET).unwrap().len(), 9);
    assert_eq!(enumerate_indecomposables(&algebra("ka2.alg"), DEFAULT_BUDGET).unwrap().len(), 3);
    assert_eq!(enumerate_indecomposables(&algebra("preproj_a2.alg"), DEFAULT_BUDGET).unwrap().len(), 4);
    assert!(matches!(enumerate_indecomposables(&algebra("lambda9.alg"), 5), Err(Error::BudgetExceeded(5))));

    let k = ar_quiver(&algebra("ka2.alg"), DEFAULT_BUDGET).unwrap();
    let dv = |i: usize| k.nodes[i].dimension_vector.clone();
    let mut arrows: Vec<(Vec<usize>, Vec<usize>)> = k.arrows.iter().map(|a| (dv(a.source), dv(a.target))).collect();
    arrows.sort();
    assert_eq!(arrows, vec![(vec![0, 1], vec![1, 1]), (vec![1, 1], vec![1, 0])]);

    let s = ar_quiver(&algebra("semisimple2.alg"), DEFAULT_BUDGET).unwrap();
    assert_eq!(s.nodes.len(), 2);
    assert!(s.arrows.is_empty());

    let c = category("lambda9.alg");
    let cat = c.reducer().catalog();
    let s2 = cat.id_by_label("2").unwrap();
    let m13 = cat.id_by_label("1/3").unwrap();
    assert_eq!(cat.tau(s2), Some(m13));
    assert_eq!(cat.tau(m13), Some(s2));
}
