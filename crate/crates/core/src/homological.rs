//! Projective presentations, the Auslander-Reiten translate, `Ext^1` and two-term complexes.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{add_into, Algebra, Elem};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{span_dim, Matrix};
use crate::module::{hom_dim, Module, Morphism};

/// Direct sum of indecomposable projectives `⊕ P_{v_i}`.
pub fn projective_sum(alg: &Arc<Algebra>, vertices: &[usize]) -> Result<Module> {
    let parts = vertices.iter().map(|&v| alg.projective(v)).collect::<Result<Vec<_>>>()?;
    Ok(Module::sum_of(alg, &parts))
}

/// Direct sum of indecomposable injectives `⊕ I_{v_i}`.
pub fn injective_sum(alg: &Arc<Algebra>, vertices: &[usize]) -> Result<Module> {
    let parts = vertices.iter().map(|&v| alg.injective(v)).collect::<Result<Vec<_>>>()?;
    Ok(Module::sum_of(alg, &parts))
}

/// Morphism `⊕_j P_{src_j} → ⊕_i P_{tgt_i}` given by right multiplication with `q[i][j] ∈ e_{src_j} Λ e_{tgt_i}`.
pub fn projective_map(alg: &Arc<Algebra>, src: &[usize], tgt: &[usize], q: &[Vec<Elem>]) -> Result<Morphism> {
    let source = projective_sum(alg, src)?;
    let target = projective_sum(alg, tgt)?;
    let n = alg.num_vertices();
    let mut maps = Vec::with_capacity(n);
    for w in 0..n {
        let mut m = Matrix::zeros(target.dim_at(w), source.dim_at(w));
        let mut col0 = 0;
        for (j, &u) in src.iter().enumerate() {
            let cols = alg.paths_between(u, w);
            let mut row0 = 0;
            for (i, &v) in tgt.iter().enumerate() {
                let rows = alg.paths_between(v, w);
                if !q[i][j].is_empty() {
                    for (c, &p) in cols.iter().enumerate() {
                        let prod = alg.mul(&alg.basis_elem(p), &q[i][j]);
                        for (k, x) in prod {
                            let r = rows.iter().position(|&y| y == k).expect("product lies in the target projective");
                            m.set(row0 + r, col0 + c, x);
                        }
                    }
                }
                row0 += rows.len();
            }
            col0 += cols.len();
        }
        maps.push(m);
    }
    Ok(Morphism { source, target, maps })
}

/// The Nakayama image `⊕_j I_{src_j} → ⊕_i I_{tgt_i}` of [`projective_map`].
pub fn nakayama_map(alg: &Arc<Algebra>, src: &[usize], tgt: &[usize], q: &[Vec<Elem>]) -> Result<Morphism> {
    let source = injective_sum(alg, src)?;
    let target = injective_sum(alg, tgt)?;
    let n = alg.num_vertices();
    let mut maps = Vec::with_capacity(n);
    for w in 0..n {
        let mut m = Matrix::zeros(target.dim_at(w), source.dim_at(w));
        let mut col0 = 0;
        for (j, &u) in src.iter().enumerate() {
            let cols = alg.paths_between(w, u);
            let mut row0 = 0;
            for (i, &v) in tgt.iter().enumerate() {
                let rows = alg.paths_between(w, v);
                if !q[i][j].is_empty() {
                    for (r, &y) in rows.iter().enumerate() {
                        let prod = alg.mul(&q[i][j], &alg.basis_elem(y));
                        for (c, &p) in cols.iter().enumerate() {
                            if let Some(x) = prod.get(&p) {
                                m.set(row0 + r, col0 + c, x.clone());
                            }
                        }
                    }
                }
                row0 += rows.len();
            }
            col0 += cols.len();
        }
        maps.push(m);
    }
    Ok(Morphism { source, target, maps })
}

/// Reads off the algebra elements `q[i][j]` of a morphism between sums of injectives,
/// so that the morphism equals `nakayama_map(src, tgt, q)`.
fn injective_map_elements(alg: &Arc<Algebra>, src: &[usize], tgt: &[usize], g: &Morphism) -> Vec<Vec<Elem>> {
    let mut q = vec![vec![Elem::new(); src.len()]; tgt.len()];
    for (i, &v) in tgt.iter().enumerate() {
        let rows_v = alg.paths_between(v, v);
        let e_row = rows_v.iter().position(|&y| alg.basis()[y].is_trivial()).expect("trivial path");
        let row0: usize = tgt[..i].iter().map(|&t| alg.paths_between(v, t).len()).sum();
        let mut col0 = 0;
        for (j, &u) in src.iter().enumerate() {
            let cols = alg.paths_between(v, u);
            for (c, &p) in cols.iter().enumerate() {
                let x = g.maps[v].get(row0 + e_row, col0 + c);
                if !x.is_zero() {
                    q[i][j].insert(p, x.clone());
                }
            }
            col0 += cols.len();
        }
    }
    q
}

/// Generators of `M` modulo its radical: `(vertex, vector)` pairs.
pub fn top_generators(m: &Module) -> Vec<(usize, Vec<Scalar>)> {
    let f = m.field();
    let rad = m.radical_subspaces();
    let mut out = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        for u in r.complement_units(f) {
            let mut vec = vec![Scalar::zero(); m.dim_at(v)];
            vec[u] = f.one();
            out.push((v, vec));
        }
    }
    out
}

/// Projective cover `P → M` built from the top generators.
pub fn projective_cover(m: &Module) -> Result<(Vec<usize>, Morphism)> {
    let alg = m.algebra().clone();
    let f = m.field();
    let gens = top_generators(m);
    let vertices: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let p0 = projective_sum(&alg, &vertices)?;
    let n = alg.num_vertices();
    let mut maps = Vec::with_capacity(n);
    for w in 0..n {
        let mut cols = Vec::new();
        for (v, g) in &gens {
            for p in alg.paths_between(*v, w) {
                cols.push(m.basis_action(p).mul_vec(f, g));
            }
        }
        maps.push(Matrix::from_columns(m.dim_at(w), &cols));
    }
    Ok((vertices, Morphism { source: p0, target: m.clone(), maps }))
}

/// A complex `P1 → P0` of projectives, stored through the vertices of the summands and
/// the algebra elements describing the differential.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    /// `d[i][j] ∈ e_{p1_j} Λ e_{p0_i}`.
    pub d: Vec<Vec<Elem>>,
}

impl TwoTermComplex {
    pub fn differential(&self, alg: &Arc<Algebra>) -> Result<Morphism> {
        projective_map(alg, &self.p1, &self.p0, &self.d)
    }
}

/// Minimal projective presentation together with the cover and syzygy data.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    pub complex: TwoTermComplex,
    pub cover: Morphism,
    pub syzygy: Module,
    pub syzygy_inclusion: Morphism,
}

pub fn minimal_projective_presentation(m: &Module) -> Result<ProjectivePresentation> {
    let alg = m.algebra().clone();
    let f = m.field();
    let (p0, cover) = projective_cover(m)?;
    let (omega, incl) = cover.kernel();
    let gens = top_generators(&omega);
    let mut d = vec![vec![Elem::new(); gens.len()]; p0.len()];
    let mut p1 = Vec::with_capacity(gens.len());
    for (j, (w, g)) in gens.iter().enumerate() {
        p1.push(*w);
        let image = incl.maps[*w].mul_vec(f, g);
        let mut off = 0;
        for (i, &v) in p0.iter().enumerate() {
            let paths = alg.paths_between(v, *w);
            for (k, &p) in paths.iter().enumerate() {
                add_into(f, &mut d[i][j], p, &image[off + k]);
            }
            off += paths.len();
        }
    }
    Ok(ProjectivePresentation { complex: TwoTermComplex { p1, p0, d }, cover, syzygy: omega, syzygy_inclusion: incl })
}

/// Injective envelope `M → ⊕ I_{v_i}` built from a basis of the dual of the socle.
pub fn injective_envelope(m: &Module) -> Result<(Vec<usize>, Morphism)> {
    let alg = m.algebra().clone();
    let f = m.field();
    let soc = m.socle_subspaces();
    let mut functionals: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for (v, s) in soc.iter().enumerate() {
        if s.cols() == 0 {
            continue;
        }
        let units = s.complement_units(f);
        let mut lift = Matrix::zeros(m.dim_at(v), units.len());
        for (j, &u) in units.iter().enumerate() {
            lift.set(u, j, f.one());
        }
        let inv = s.hstack(&lift).inverse(f).expect("basis extension");
        for r in 0..s.cols() {
            functionals.push((v, inv.row(r).to_vec()));
        }
    }
    let vertices: Vec<usize> = functionals.iter().map(|(v, _)| *v).collect();
    let i0 = injective_sum(&alg, &vertices)?;
    let n = alg.num_vertices();
    let mut maps = Vec::with_capacity(n);
    for w in 0..n {
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (v, psi) in &functionals {
            for p in alg.paths_between(w, *v) {
                let act = m.basis_action(p);
                let row: Vec<Scalar> = (0..m.dim_at(w))
                    .map(|c| {
                        (0..m.dim_at(*v)).fold(Scalar::zero(), |acc, k| f.add(&acc, &f.mul(&psi[k], act.get(k, c))))
                    })
                    .collect();
                rows.push(row);
            }
        }
        let mat = if rows.is_empty() {
            Matrix::zeros(0, m.dim_at(w))
        } else {
            Matrix::from_rows(rows.len(), m.dim_at(w), rows.into_iter().flatten().collect())
        };
        maps.push(mat);
    }
    Ok((vertices, Morphism { source: m.clone(), target: i0, maps }))
}

/// `τM`, the kernel of the Nakayama image of the minimal projective presentation.
pub fn ar_translate(m: &Module) -> Result<Module> {
    let alg = m.algebra().clone();
    if m.is_zero() {
        return Ok(Module::zero(&alg));
    }
    let pres = minimal_projective_presentation(m)?;
    let c = &pres.complex;
    let nu = nakayama_map(&alg, &c.p1, &c.p0, &c.d)?;
    Ok(nu.kernel().0)
}

/// `τ^{-1}M`, the cokernel of the inverse Nakayama image of the minimal injective copresentation.
pub fn ar_translate_inverse(m: &Module) -> Result<Module> {
    let alg = m.algebra().clone();
    if m.is_zero() {
        return Ok(Module::zero(&alg));
    }
    let (i0, env) = injective_envelope(m)?;
    let (c, proj) = env.cokernel();
    let (i1, env1) = injective_envelope(&c)?;
    let d = env1.compose(&proj);
    let q = injective_map_elements(&alg, &i0, &i1, &d);
    debug_assert_eq!(nakayama_map(&alg, &i0, &i1, &q)?.maps, d.maps);
    let pm = projective_map(&alg, &i0, &i1, &q)?;
    Ok(pm.cokernel().0)
}

/// `dim Ext^1(X, Y)` from the exact sequence `0 → Hom(X,Y) → Hom(P0,Y) → Hom(ΩX,Y) → Ext^1(X,Y) → 0`.
pub fn ext1_dim(x: &Module, y: &Module) -> Result<usize> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    if x.is_zero() || y.is_zero() {
        return Ok(0);
    }
    let pres = minimal_projective_presentation(x)?;
    ext1_dim_with(&pres, x, y)
}

pub(crate) fn ext1_dim_with(pres: &ProjectivePresentation, x: &Module, y: &Module) -> Result<usize> {
    let hom_p0: usize = pres.complex.p0.iter().map(|&v| y.dim_at(v)).sum();
    let h_omega = hom_dim(&pres.syzygy, y)?;
    let h_x = hom_dim(x, y)?;
    Ok(h_omega + h_x - hom_p0)
}

/// `Ext^1(X, Y)` computed directly as `Hom(ΩX, Y)` modulo maps extending to `P0`.
pub fn ext1_dim_direct(x: &Module, y: &Module) -> Result<usize> {
    let pres = minimal_projective_presentation(x)?;
    let h_omega = crate::module::hom_basis(&pres.syzygy, y)?;
    let restricted: Vec<Vec<Scalar>> = crate::module::hom_basis(&pres.cover.source, y)?
        .iter()
        .map(|h| h.compose(&pres.syzygy_inclusion).flatten())
        .collect();
    let len = pres.syzygy_inclusion.source.dims().iter().zip(y.dims()).map(|(a, b)| a * b).sum();
    Ok(h_omega.len() - span_dim(x.field(), len, &restricted))
}

/// Coordinates of `Hom(⊕P_{a_j}, ⊕P_{b_i})`: one entry per `(i, j, basis path from b_i to a_j)`.
fn hom_proj_index(alg: &Algebra, src: &[usize], tgt: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut idx = Vec::new();
    for (i, &b) in tgt.iter().enumerate() {
        for (j, &a) in src.iter().enumerate() {
            for p in alg.paths_between(b, a) {
                idx.push((i, j, p));
            }
        }
    }
    idx
}

/// Composition `outer ∘ inner` of maps given by element matrices (inner: A→B, outer: B→C).
fn compose_elems(alg: &Algebra, outer: &[Vec<Elem>], inner: &[Vec<Elem>], n_a: usize, n_c: usize) -> Vec<Vec<Elem>> {
    let f = alg.field();
    let mut out = vec![vec![Elem::new(); n_a]; n_c];
    for (k, row) in outer.iter().enumerate() {
        for (i, o) in row.iter().enumerate() {
            if o.is_empty() {
                continue;
            }
            for j in 0..n_a {
                let c = &inner[i][j];
                if c.is_empty() {
                    continue;
                }
                for (b, x) in alg.mul(c, o) {
                    add_into(f, &mut out[k][j], b, &x);
                }
            }
        }
    }
    out
}

/// `dim Hom_{K}(P_X, P_U[1])`: maps `X1 → U0` modulo homotopies.
pub fn two_term_hom_dim(alg: &Arc<Algebra>, x: &TwoTermComplex, u: &TwoTermComplex) -> usize {
    let f = alg.field();
    let target_idx = hom_proj_index(alg, &x.p1, &u.p0);
    if target_idx.is_empty() {
        return 0;
    }
    let pos = |i: usize, j: usize, p: usize| target_idx.iter().position(|&t| t == (i, j, p)).expect("index present");
    let to_vec = |m: &[Vec<Elem>]| {
        let mut v = vec![Scalar::zero(); target_idx.len()];
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for (p, c) in e {
                    v[pos(i, j, *p)] = c.clone();
                }
            }
        }
        v
    };
    let unit = |rows: usize, cols: usize, i: usize, j: usize, p: usize| {
        let mut m = vec![vec![Elem::new(); cols]; rows];
        m[i][j].insert(p, f.one());
        m
    };
    let mut spans = Vec::new();
    for (i, j, p) in hom_proj_index(alg, &x.p0, &u.p0) {
        let s = unit(u.p0.len(), x.p0.len(), i, j, p);
        spans.push(to_vec(&compose_elems(alg, &s, &x.d, x.p1.len(), u.p0.len())));
    }
    for (i, j, p) in hom_proj_index(alg, &x.p1, &u.p1) {
        let t = unit(u.p1.len(), x.p1.len(), i, j, p);
        spans.push(to_vec(&compose_elems(alg, &u.d, &t, x.p1.len(), u.p0.len())));
    }
    target_idx.len() - span_dim(f, target_idx.len(), &spans)
}

/// Whether every chain map `P_X → P_U[1]` is null-homotopic.
pub fn two_term_hom_vanishes(alg: &Arc<Algebra>, x: &TwoTermComplex, u: &TwoTermComplex) -> bool {
    two_term_hom_dim(alg, x, u) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::tests::{alg, thin, KA2, LAMBDA9};
    use crate::module::{hom_dim, is_isomorphic};

    #[test]
    fn presentations() {
        let a = alg(LAMBDA9);
        let s2 = a.simple(1).unwrap();
        let pres = minimal_projective_presentation(&s2).unwrap();
        assert_eq!(pres.complex.p0, vec![1]);
        assert_eq!(pres.complex.p1, vec![2]);
        let p1 = a.projective(0).unwrap();
        let pres = minimal_projective_presentation(&p1).unwrap();
        assert!(pres.complex.p1.is_empty());
        let k = alg(KA2);
        let pres = minimal_projective_presentation(&k.simple(0).unwrap()).unwrap();
        assert_eq!((pres.complex.p1.clone(), pres.complex.p0.clone()), (vec![1], vec![0]));
        let d = pres.complex.differential(&k).unwrap();
        assert!(d.is_valid());
        assert_eq!(d.cokernel().0.dims(), &[1, 0]);
    }

    #[test]
    fn tau_on_lambda9() {
        let a = alg(LAMBDA9);
        let s2 = a.simple(1).unwrap();
        let m13 = thin(&a, [1, 0, 1], [0, 0, 1]);
        let t = ar_translate(&s2).unwrap();
        assert!(is_isomorphic(&t, &m13).unwrap());
        assert!(is_isomorphic(&ar_translate(&m13).unwrap(), &s2).unwrap());
        assert!(ar_translate(&a.projective(0).unwrap()).unwrap().is_zero());
        assert!(is_isomorphic(&ar_translate_inverse(&m13).unwrap(), &s2).unwrap());
        assert!(ar_translate_inverse(&a.injective(2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn ext_dimensions() {
        let a = alg(LAMBDA9);
        let (s2, s3) = (a.simple(1).unwrap(), a.simple(2).unwrap());
        assert_eq!(ext1_dim(&s2, &s3).unwrap(), 1);
        assert_eq!(ext1_dim_direct(&s2, &s3).unwrap(), 1);
        assert_eq!(ext1_dim(&a.projective(0).unwrap(), &s3).unwrap(), 0);
        let k = alg(KA2);
        assert_eq!(ext1_dim(&k.simple(0).unwrap(), &k.simple(1).unwrap()).unwrap(), 1);
    }

    #[test]
    fn two_term_vanishing_matches_module_test() {
        let a = alg(LAMBDA9);
        let mods: Vec<Module> = (0..3).flat_map(|v| [a.simple(v).unwrap(), a.projective(v).unwrap()]).collect();
        for x in &mods {
            for u in &mods {
                let px = minimal_projective_presentation(x).unwrap().complex;
                let pu = minimal_projective_presentation(u).unwrap().complex;
                let module_level = hom_dim(u, &ar_translate(x).unwrap()).unwrap() == 0;
                assert_eq!(two_term_hom_vanishes(&a, &px, &pu), module_level);
            }
        }
    }
}
