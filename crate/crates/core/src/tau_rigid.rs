//! Torsion pairs `(Gen U, U^⊥)`, τ-rigidity and minimal approximations at module level.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::homological::{ar_translate, ext1_dim, projective_cover};
use crate::linalg::{span_basis, Matrix};
use crate::module::{decompose, hom_basis, hom_dim, is_isomorphic_indecomposable, radical_basis, Module, Morphism};

/// `t_U(X) ↪ X ↠ f_U(X)`.
#[derive(Clone, Debug)]
pub struct TorsionParts {
    pub trace: Module,
    pub inclusion: Morphism,
    pub free: Module,
    pub projection: Morphism,
}

/// Sum of the images of all maps `U → X`, as subspaces of `X`.
pub fn trace_subspaces(u: &Module, x: &Module) -> Result<Vec<Matrix>> {
    if !u.same_algebra(x) {
        return Err(Error::AlgebraMismatch);
    }
    let f = x.field();
    let basis = hom_basis(u, x)?;
    let n = x.dims().len();
    Ok((0..n)
        .map(|v| {
            let parts: Vec<Matrix> = basis.iter().map(|h| h.maps[v].clone()).collect();
            if parts.is_empty() {
                Matrix::zeros(x.dim_at(v), 0)
            } else {
                Matrix::hstack_all(x.dim_at(v), &parts).column_basis(f)
            }
        })
        .collect())
}

pub fn trace_and_torsion(u: &Module, x: &Module) -> Result<TorsionParts> {
    let spaces = trace_subspaces(u, x)?;
    let (trace, inclusion) = x.submodule(&spaces);
    let (free, projection) = x.quotient(&spaces);
    Ok(TorsionParts { trace, inclusion, free, projection })
}

/// `X ∈ Gen U`.
pub fn in_gen(u: &Module, x: &Module) -> Result<bool> {
    let spaces = trace_subspaces(u, x)?;
    Ok(spaces.iter().zip(x.dims()).all(|(s, &d)| s.cols() == d))
}

pub fn is_tau_rigid(m: &Module) -> Result<bool> {
    Ok(hom_dim(m, &ar_translate(m)?)? == 0)
}

pub fn is_projective(m: &Module) -> Result<bool> {
    let (_, cover) = projective_cover(m)?;
    Ok(cover.source.total_dim() == m.total_dim())
}

/// A module together with a shifted projective, `M ⊕ P[1]`.
#[derive(Clone, Debug)]
pub struct CObject {
    pub module_part: Module,
    pub shifted_part: Module,
}

impl CObject {
    pub fn new(module_part: Module, shifted_part: Module) -> Self {
        CObject { module_part, shifted_part }
    }

    /// `Hom(U, τU) = 0`, `P` projective and `Hom(P, U) = 0`.
    pub fn is_support_tau_rigid(&self) -> Result<bool> {
        let (u, p) = (&self.module_part, &self.shifted_part);
        if !u.same_algebra(p) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(is_tau_rigid(u)? && is_projective(p)? && hom_dim(p, u)? == 0)
    }
}

/// Indecomposable summands up to isomorphism, in first-seen order.
pub fn basic_summands(m: &Module) -> Result<Vec<Module>> {
    let mut out: Vec<Module> = Vec::new();
    for s in decompose(m)? {
        let mut seen = false;
        for t in &out {
            if is_isomorphic_indecomposable(t, &s)? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(s);
        }
    }
    Ok(out)
}

/// Radical maps `a → b` between two members of a basic list (`same` when `a = b`).
fn radical_maps(a: &Module, b: &Module, same: bool) -> Result<Vec<Morphism>> {
    let h = hom_basis(a, b)?;
    if !same {
        return Ok(h);
    }
    radical_basis(a, &h).ok_or_else(|| Error::DecompositionFailure("endomorphism ring is not split local".into()))
}

/// Picks elements of `cands` extending a basis of `span`, returning their indices.
fn extend_basis(f: crate::field::Field, len: usize, span: &[Vec<Scalar>], cands: &[Vec<Scalar>]) -> Vec<usize> {
    let mut acc = span_basis(f, len, span);
    let mut out = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        let mut t = acc.clone();
        t.push(c.clone());
        let b = span_basis(f, len, &t);
        if b.len() > acc.len() {
            acc = b;
            out.push(i);
        }
    }
    out
}

/// Minimal approximation: the map and the indices (into the basic list) of the summands
/// of its non-`X` end, with repetition.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub map: Morphism,
    pub summands: Vec<usize>,
}

/// Minimal left `add(targets)`-approximation `X → T_X`; `targets` must be basic indecomposables.
pub fn minimal_left_approximation(x: &Module, targets: &[Module]) -> Result<Approximation> {
    let f = x.field();
    let alg = x.algebra().clone();
    let homs: Vec<Vec<Morphism>> = targets.iter().map(|t| hom_basis(x, t)).collect::<Result<_>>()?;
    let mut chosen: Vec<(usize, Morphism)> = Vec::new();
    for (j, tj) in targets.iter().enumerate() {
        if homs[j].is_empty() {
            continue;
        }
        let len = homs[j][0].flatten().len();
        let mut span = Vec::new();
        for (i, ti) in targets.iter().enumerate() {
            for r in radical_maps(ti, tj, i == j)? {
                for h in &homs[i] {
                    span.push(r.compose(h).flatten());
                }
            }
        }
        let cands: Vec<Vec<Scalar>> = homs[j].iter().map(Morphism::flatten).collect();
        for k in extend_basis(f, len, &span, &cands) {
            chosen.push((j, homs[j][k].clone()));
        }
    }
    let parts: Vec<Module> = chosen.iter().map(|(j, _)| targets[*j].clone()).collect();
    let target = Module::sum_of(&alg, &parts);
    let n = alg.num_vertices();
    let maps = (0..n)
        .map(|v| {
            let blocks: Vec<Matrix> = chosen.iter().map(|(_, h)| h.maps[v].clone()).collect();
            Matrix::vstack_all(x.dim_at(v), &blocks)
        })
        .collect();
    Ok(Approximation { map: Morphism { source: x.clone(), target, maps }, summands: chosen.iter().map(|c| c.0).collect() })
}

/// Minimal right `add(sources)`-approximation `U_X → X`; `sources` must be basic indecomposables.
pub fn minimal_right_approximation(sources: &[Module], x: &Module) -> Result<Approximation> {
    let f = x.field();
    let alg = x.algebra().clone();
    let homs: Vec<Vec<Morphism>> = sources.iter().map(|s| hom_basis(s, x)).collect::<Result<_>>()?;
    let mut chosen: Vec<(usize, Morphism)> = Vec::new();
    for (j, sj) in sources.iter().enumerate() {
        if homs[j].is_empty() {
            continue;
        }
        let len = homs[j][0].flatten().len();
        let mut span = Vec::new();
        for (i, si) in sources.iter().enumerate() {
            for r in radical_maps(sj, si, i == j)? {
                for h in &homs[i] {
                    span.push(h.compose(&r).flatten());
                }
            }
        }
        let cands: Vec<Vec<Scalar>> = homs[j].iter().map(Morphism::flatten).collect();
        for k in extend_basis(f, len, &span, &cands) {
            chosen.push((j, homs[j][k].clone()));
        }
    }
    let parts: Vec<Module> = chosen.iter().map(|(j, _)| sources[*j].clone()).collect();
    let source = Module::sum_of(&alg, &parts);
    let n = alg.num_vertices();
    let maps = (0..n)
        .map(|v| {
            let blocks: Vec<Matrix> = chosen.iter().map(|(_, h)| h.maps[v].clone()).collect();
            Matrix::hstack_all(x.dim_at(v), &blocks)
        })
        .collect();
    Ok(Approximation { map: Morphism { source, target: x.clone(), maps }, summands: chosen.iter().map(|c| c.0).collect() })
}

/// Indices of the members that are Ext-projective within `members`.
pub fn ext_projectives(members: &[Module]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    'outer: for (i, p) in members.iter().enumerate() {
        for y in members {
            if ext1_dim(p, y)? != 0 {
                continue 'outer;
            }
        }
        out.push(i);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::is_isomorphic;
    use crate::module::tests::{alg, thin, KA2, LAMBDA9};

    #[test]
    fn torsion_functors() {
        let a = alg(LAMBDA9);
        let (s1, s2, s3) = (a.simple(0).unwrap(), a.simple(1).unwrap(), a.simple(2).unwrap());
        let m12 = thin(&a, [1, 1, 0], [1, 0, 0]);
        let t = trace_and_torsion(&s2, &m12).unwrap();
        assert!(is_isomorphic(&t.free, &s1).unwrap());
        assert!(is_isomorphic(&t.trace, &s2).unwrap());
        let p2 = a.projective(1).unwrap();
        let t = trace_and_torsion(&s3, &p2).unwrap();
        assert!(is_isomorphic(&t.free, &s2).unwrap());
        assert!(in_gen(&a.projective(0).unwrap(), &m12).unwrap());
        assert!(!in_gen(&s2, &m12).unwrap());
    }

    #[test]
    fn support_tau_rigid_examples() {
        let a = alg(LAMBDA9);
        let (s2, s3, p3) = (a.simple(1).unwrap(), a.simple(2).unwrap(), a.projective(2).unwrap());
        assert!(CObject::new(s2.clone(), p3.clone()).is_support_tau_rigid().unwrap());
        assert!(!CObject::new(s3, p3).is_support_tau_rigid().unwrap());
        let m12 = thin(&a, [1, 1, 0], [1, 0, 0]);
        let sum = Module::direct_sum(&[s2, m12]).unwrap().0;
        assert!(CObject::new(sum, Module::zero(&a)).is_support_tau_rigid().unwrap());
    }

    #[test]
    fn approximations() {
        let a = alg(LAMBDA9);
        let p1 = a.projective(0).unwrap();
        let m12 = thin(&a, [1, 1, 0], [1, 0, 0]);
        let r = minimal_right_approximation(&[p1.clone()], &m12).unwrap();
        assert_eq!(r.summands, vec![0]);
        assert!(r.map.cokernel().0.is_zero());
        let l = minimal_left_approximation(&a.simple(2).unwrap(), &[p1]).unwrap();
        assert_eq!(l.summands, vec![0]);
        let k = alg(KA2);
        let kp1 = k.projective(0).unwrap();
        let l = minimal_left_approximation(&k.simple(1).unwrap(), &[kp1.clone()]).unwrap();
        assert_eq!(l.summands, vec![0]);
        assert!(l.map.kernel().0.is_zero());
        let l = minimal_left_approximation(&k.simple(0).unwrap(), &[k.simple(1).unwrap()]).unwrap();
        assert!(l.summands.is_empty());
        let p = minimal_right_approximation(&[kp1.clone(), k.simple(1).unwrap()], &kp1).unwrap();
        assert_eq!(p.summands, vec![0]);
    }

    #[test]
    fn ext_projective_filter() {
        let k = alg(KA2);
        let gen_p1 = vec![k.projective(0).unwrap(), k.simple(0).unwrap()];
        assert_eq!(ext_projectives(&gen_p1).unwrap(), vec![0, 1]);
    }
}
