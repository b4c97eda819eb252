mod common;

use common::{category, CORPUS};
use tauwide::module::hom_dim;
use tauwide::{decompose, is_isomorphic, Module};

fn by_label(c: &tauwide::WideCategory, l: &str) -> Module {
    let cat = c.reducer().catalog();
    cat.module(cat.id_by_label(l).unwrap()).clone()
}

#[test]
fn hom_examples() {
    let c = category("lambda9.alg");
    let a = c.reducer().catalog().algebra().clone();
    let s = |v| a.simple(v).unwrap();
    assert_eq!(hom_dim(&s(1), &by_label(&c, "1/2")).unwrap(), 1);
    assert_eq!(hom_dim(&a.projective(0).unwrap(), &s(2)).unwrap(), 0);
    assert_eq!(hom_dim(&s(0), &s(1)).unwrap(), 0);
}

#[test]
fn hom_from_projective_is_the_vertex_space() {
    for name in CORPUS {
        let c = category(name);
        let cat = c.reducer().catalog();
        let a = cat.algebra();
        for v in 0..a.num_vertices() {
            let p = a.projective(v).unwrap();
            for m in cat.modules() {
                assert_eq!(hom_dim(&p, m).unwrap(), m.dim_at(v), "{name}");
            }
        }
    }
}

#[test]
fn kernels_cokernels_images() {
    let k = category("ka2.alg");
    let a = k.reducer().catalog().algebra().clone();
    let p1 = a.projective(0).unwrap();
    let s1 = a.simple(0).unwrap();
    let f = tauwide::hom_basis(&p1, &s1).unwrap().remove(0);
    let (ker, _) = f.kernel();
    assert!(is_isomorphic(&ker, &a.simple(1).unwrap()).unwrap());
    let z = Module::zero(&a);
    let (cok, _) = z.zero_map(&p1).cokernel();
    assert!(is_isomorphic(&cok, &p1).unwrap());

    let c = category("lambda9.alg");
    let s2 = c.reducer().catalog().algebra().simple(1).unwrap();
    let g = tauwide::hom_basis(&s2, &by_label(&c, "1/2")).unwrap().remove(0);
    assert!(is_isomorphic(&g.image().0, &s2).unwrap());
}

#[test]
fn decomposition_examples() {
    let c = category("lambda9.alg");
    let a = c.reducer().catalog().algebra().clone();
    let p1 = a.projective(0).unwrap();
    let other = by_label(&c, "12/3");
    assert_eq!(decompose(&p1).unwrap().len(), 1);
    let sum = Module::sum_of(&a, &[p1.clone(), other.clone()]);
    assert_eq!(sum.dims(), &[2, 2, 2]);
    let parts = decompose(&sum).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(!is_isomorphic(&parts[0], &parts[1]).unwrap());
    assert!(!is_isomorphic(&p1, &other).unwrap());
    assert!(is_isomorphic(&p1, &p1).unwrap());
    assert!(!is_isomorphic(&a.simple(1).unwrap(), &a.simple(2).unwrap()).unwrap());
    let split = Module::sum_of(&a, &[other.clone(), a.simple(0).unwrap()]);
    let mut dims: Vec<Vec<usize>> = decompose(&split).unwrap().iter().map(|m| m.dims().to_vec()).collect();
    dims.sort();
    assert_eq!(dims, vec![vec![1, 0, 0], vec![1, 1, 1]]);
}

#[test]
fn isomorphism_agrees_with_summand_matching() {
    let c = category("lambda9.alg");
    let cat = c.reducer().catalog();
    let a = cat.algebra();
    let n = cat.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let sums: Vec<Module> = pairs.iter().map(|&(i, j)| Module::sum_of(a, &[cat.module(i).clone(), cat.module(j).clone()])).collect();
    for (x, &(i, j)) in pairs.iter().enumerate().step_by(3) {
        for (y, &(k, l)) in pairs.iter().enumerate().step_by(5) {
            let same = (i, j) == (k, l);
            assert_eq!(is_isomorphic(&sums[x], &sums[y]).unwrap(), same);
        }
    }
}
