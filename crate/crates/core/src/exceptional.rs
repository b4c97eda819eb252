//! Signed τ-exceptional sequences, the bijection `φ` with ordered support τ-rigid objects,
//! and factorizations of morphisms of the wide category into irreducibles.

use crate::error::{Error, Result};
use crate::reduction::{Obj, Reducer, Summand};
use crate::wide_category::{WideCategory, WideMorphism};

/// `(𝒰_1, …, 𝒰_t)` with `𝒰_t` support τ-rigid in `𝒞(W)` and the prefix signed τ-exceptional in `J_W(𝒰_t)`.
pub fn is_signed_tau_exceptional(r: &Reducer, w: &[usize], seq: &[Summand]) -> Result<bool> {
    let Some((&last, prefix)) = seq.split_last() else {
        return Ok(true);
    };
    if !r.summand_ok(w, last)? {
        return Ok(false);
    }
    let w2 = r.perpendicular(w, &Obj::single(last))?;
    is_signed_tau_exceptional(r, &w2, prefix)
}

/// `φ(𝒰_1, …, 𝒰_t) = (F_{𝒰_t}⋯F_{𝒰_2}(𝒰_1), …, F_{𝒰_t}(𝒰_{t−1}), 𝒰_t)`.
pub fn phi(r: &Reducer, w: &[usize], seq: &[Summand]) -> Result<Vec<Summand>> {
    if !is_signed_tau_exceptional(r, w, seq)? {
        return Err(Error::NotExceptional(format!("{seq:?}")));
    }
    phi_unchecked(r, w, seq)
}

fn phi_unchecked(r: &Reducer, w: &[usize], seq: &[Summand]) -> Result<Vec<Summand>> {
    let Some((&last, prefix)) = seq.split_last() else {
        return Ok(Vec::new());
    };
    let u = Obj::single(last);
    let w2 = r.perpendicular(w, &u)?;
    let mut out = Vec::with_capacity(seq.len());
    for s in phi_unchecked(r, &w2, prefix)? {
        let lifted = r.f_map(w, &u, &Obj::single(s))?;
        out.push(lifted.summands()[0]);
    }
    out.push(last);
    Ok(out)
}

/// Inverse of [`phi`] on an ordered basic support τ-rigid object of `𝒞(W)`.
pub fn phi_inverse(r: &Reducer, w: &[usize], ordered: &[Summand]) -> Result<Vec<Summand>> {
    let obj = Obj::new(ordered.to_vec());
    if obj.len() != ordered.len() || !r.is_support_tau_rigid(w, &obj)? {
        return Err(Error::NotSupportTauRigid(obj.display(r.catalog())));
    }
    phi_inverse_unchecked(r, w, ordered)
}

fn phi_inverse_unchecked(r: &Reducer, w: &[usize], ordered: &[Summand]) -> Result<Vec<Summand>> {
    let Some((&last, prefix)) = ordered.split_last() else {
        return Ok(Vec::new());
    };
    let u = Obj::single(last);
    let w2 = r.perpendicular(w, &u)?;
    let mut reduced = Vec::with_capacity(prefix.len());
    for &s in prefix {
        reduced.push(r.e_map(w, &u, &Obj::single(s))?.summands()[0]);
    }
    let mut out = phi_inverse_unchecked(r, &w2, &reduced)?;
    out.push(last);
    Ok(out)
}

/// All signed τ-exceptional sequences of length `t` in `W`, depth-first from the last entry.
pub fn signed_sequences(r: &Reducer, w: &[usize], t: usize) -> Result<Vec<Vec<Summand>>> {
    if t == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut out = Vec::new();
    for &last in r.indecomposables(w)?.iter() {
        let w2 = r.perpendicular(w, &Obj::single(last))?;
        for mut prefix in signed_sequences(r, &w2, t - 1)? {
            prefix.push(last);
            out.push(prefix);
        }
    }
    Ok(out)
}

/// Ordered basic support τ-rigid objects of `𝒞(W)` with `t` summands.
pub fn ordered_objects(r: &Reducer, w: &[usize], t: usize) -> Result<Vec<Vec<Summand>>> {
    let mut out = Vec::new();
    for o in r.support_tau_rigid_objects(w)?.iter().filter(|o| o.len() == t) {
        for p in permutations(o.summands()) {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

/// A factorization into irreducibles, in application order, tagged with the ordering of the
/// label's summands it corresponds to under `φ`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub chain: Vec<WideMorphism>,
    pub ordering: Vec<Summand>,
}

/// All chains of irreducible morphisms composing to `m`.
pub fn factorizations(c: &WideCategory, m: &WideMorphism) -> Result<Vec<Factorization>> {
    let r = c.reducer();
    let mut chains: Vec<Vec<WideMorphism>> = Vec::new();
    let mut stack = Vec::new();
    search(c, m, m.source, &mut stack, &mut chains)?;
    let mut out = Vec::new();
    for chain in chains {
        // Labels in application order are (𝒰_t, …, 𝒰_1).
        let seq: Vec<Summand> = chain.iter().rev().map(|g| g.label.summands()[0]).collect();
        let ordering = phi(r, &c.object(m.source).key, &seq)?;
        out.push(Factorization { chain, ordering });
    }
    Ok(out)
}

fn search(
    c: &WideCategory,
    m: &WideMorphism,
    at: usize,
    stack: &mut Vec<WideMorphism>,
    out: &mut Vec<Vec<WideMorphism>>,
) -> Result<()> {
    if at == m.target {
        if compose_chain(c, m.source, stack)? == *m {
            out.push(stack.clone());
        }
        return Ok(());
    }
    if c.object(at).rank <= c.object(m.target).rank {
        return Ok(());
    }
    let target_key = &c.object(m.target).key;
    for g in c.morphisms().iter().filter(|g| g.source == at && g.label.len() == 1) {
        let key = &c.object(g.target).key;
        if !target_key.iter().all(|x| key.binary_search(x).is_ok()) {
            continue;
        }
        stack.push(g.clone());
        search(c, m, g.target, stack, out)?;
        stack.pop();
    }
    Ok(())
}

/// Composite of a chain in application order; the identity when empty.
pub fn compose_chain(c: &WideCategory, source: usize, chain: &[WideMorphism]) -> Result<WideMorphism> {
    let mut acc = c.identity(source);
    for g in chain {
        acc = c.compose(g, &acc)?;
    }
    Ok(acc)
}
