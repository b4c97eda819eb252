//! Almost split sequences and enumeration of indecomposables by closing the AR quiver.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::homological::{ar_translate, ar_translate_inverse, minimal_projective_presentation};
use crate::linalg::{span_basis, Matrix};
use crate::module::{decompose, hom_basis, radical_basis, IsoClassRegistry, Module, Morphism};

pub const DEFAULT_BUDGET: usize = 10000;

/// `0 → left → middle → right → 0`, with the middle term split into indecomposables.
#[derive(Clone, Debug)]
pub struct AlmostSplitSequence {
    pub left: Module,
    pub middle: Module,
    pub right: Module,
    pub inclusion: Morphism,
    pub projection: Morphism,
    pub middle_summands: Vec<Module>,
}

/// Almost split sequence starting at the indecomposable non-injective `m`.
pub fn almost_split_sequence(m: &Module) -> Result<AlmostSplitSequence> {
    let f = m.field();
    let n = ar_translate_inverse(m)?;
    if n.is_zero() {
        return Err(Error::InjectiveInput);
    }
    let pres = minimal_projective_presentation(&n)?;
    let omega = &pres.syzygy;
    let iota = &pres.syzygy_inclusion;
    let p0 = pres.cover.source.clone();

    // Ext^1(N, M) = Hom(ΩN, M) / restrictions of Hom(P0, M).
    let h = hom_basis(omega, m)?;
    let len = h.first().map(|x| x.flatten().len()).unwrap_or(0);
    let restricted: Vec<Vec<Scalar>> = hom_basis(&p0, m)?.iter().map(|g| g.compose(iota).flatten()).collect();
    let rbasis = span_basis(f, len, &restricted);
    let end = hom_basis(m, m)?;
    let rad = radical_basis(m, &end)
        .ok_or_else(|| Error::DecompositionFailure("endomorphism ring of the left term is not split local".into()))?;

    // Coordinates on Hom(ΩN, M): first the restricted basis, then a complement giving Ext.
    let hvecs: Vec<Vec<Scalar>> = h.iter().map(Morphism::flatten).collect();
    let mut comp = Vec::new();
    let mut acc = rbasis.clone();
    for (i, v) in hvecs.iter().enumerate() {
        let mut t = acc.clone();
        t.push(v.clone());
        if span_basis(f, len, &t).len() > acc.len() {
            acc.push(v.clone());
            comp.push(i);
        }
    }
    let r = rbasis.len();
    let e = comp.len();
    if e == 0 {
        return Err(Error::InjectiveInput);
    }
    let coords = Matrix::from_columns(len, &acc).transpose();
    let basis_t = coords.transpose();
    // For each radical endomorphism, the induced map on Ext in the complement coordinates.
    let mut stacked = Vec::new();
    for g in &rad {
        let mut block = Matrix::zeros(e, e);
        for (j, &i) in comp.iter().enumerate() {
            let img = g.compose(&h[i]).flatten();
            let c = basis_t.solve_vec(f, &img).expect("pushforward stays in Hom(ΩN, M)");
            for k in 0..e {
                block.set(k, j, c[r + k].clone());
            }
        }
        stacked.push(block);
    }
    let soc = if stacked.is_empty() { Matrix::identity(e) } else { Matrix::vstack_all(e, &stacked).kernel_matrix(f) };
    if soc.cols() == 0 {
        return Err(Error::DecompositionFailure("Ext socle is zero".into()));
    }
    let xi = soc.column(0);
    let mut phi = omega.zero_map(m);
    for (k, &i) in comp.iter().enumerate() {
        phi = phi.add(&h[i].scale(&xi[k]));
    }

    // Pushout of ΩN → P0 along φ.
    let (sum, incl, proj) = Module::direct_sum(&[m.clone(), p0.clone()])?;
    let neg = iota.scale(&f.neg(&f.one()));
    let g = incl[0].compose(&phi).add(&incl[1].compose(&neg));
    let (_, img) = g.image();
    let (middle, q, lifts) = sum.quotient_with_section(&img.maps);
    let inclusion = q.compose(&incl[0]);
    let to_n = pres.cover.compose(&proj[1]);
    let projection = Morphism {
        source: middle.clone(),
        target: n.clone(),
        maps: to_n.maps.iter().zip(&lifts).map(|(a, l)| a.mul(f, l)).collect(),
    };
    let middle_summands = decompose(&middle)?;
    Ok(AlmostSplitSequence { left: m.clone(), middle, right: n, inclusion, projection, middle_summands })
}

/// Radical of `m` as a submodule.
pub fn radical(m: &Module) -> Module {
    m.submodule(&m.radical_subspaces()).0
}

/// `m / soc m`.
pub fn socle_quotient(m: &Module) -> Module {
    m.quotient(&m.socle_subspaces()).0
}

/// Breadth-first closure of the indecomposable projectives, with ids in first-seen order.
pub fn enumerate_indecomposables(alg: &Arc<Algebra>, budget: usize) -> Result<Vec<Module>> {
    Ok(explore(alg, budget)?.registry.modules().to_vec())
}

struct Exploration {
    registry: IsoClassRegistry,
    projective: Vec<usize>,
    /// `(X, τX)` for non-projective `X`.
    tau: BTreeMap<usize, usize>,
    /// Middle-term summand ids of the mesh ending at `X`.
    meshes: BTreeMap<usize, Vec<usize>>,
}

fn explore(alg: &Arc<Algebra>, budget: usize) -> Result<Exploration> {
    let mut ex =
        Exploration { registry: IsoClassRegistry::new(), projective: Vec::new(), tau: BTreeMap::new(), meshes: BTreeMap::new() };
    let mut queue = VecDeque::new();
    let register = |ex: &mut Exploration, queue: &mut VecDeque<usize>, m: Module| -> Result<usize> {
        let (id, new) = ex.registry.insert(m)?;
        if new {
            if ex.registry.len() > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            queue.push_back(id);
        }
        Ok(id)
    };
    for v in 0..alg.num_vertices() {
        let id = register(&mut ex, &mut queue, alg.projective(v)?)?;
        ex.projective.push(id);
    }
    while let Some(id) = queue.pop_front() {
        let x = ex.registry.get(id).clone();
        if ex.projective.contains(&id) {
            for s in decompose(&radical(&x))? {
                register(&mut ex, &mut queue, s)?;
            }
        }
        let inv = ar_translate_inverse(&x)?;
        if !inv.is_zero() {
            let seq = almost_split_sequence(&x)?;
            let right = register(&mut ex, &mut queue, seq.right.clone())?;
            let mut mids = Vec::new();
            for s in seq.middle_summands {
                mids.push(register(&mut ex, &mut queue, s)?);
            }
            ex.tau.insert(right, id);
            ex.meshes.insert(right, mids);
        }
        let t = ar_translate(&x)?;
        if !t.is_zero() {
            let j = register(&mut ex, &mut queue, t)?;
            ex.tau.insert(id, j);
        }
        if inv.is_zero() {
            for s in decompose(&socle_quotient(&x))? {
                register(&mut ex, &mut queue, s)?;
            }
        }
    }
    Ok(ex)
}

fn summand_counts(reg: &IsoClassRegistry, m: &Module) -> Result<BTreeMap<usize, usize>> {
    let mut counts = BTreeMap::new();
    for s in decompose(m)? {
        let j = reg.lookup(&s)?.ok_or_else(|| Error::DecompositionFailure("summand missing from enumeration".into()))?;
        *counts.entry(j).or_default() += 1;
    }
    Ok(counts)
}

/// Irreducible maps with multiplicities, read off meshes, radicals of projectives and
/// socle quotients of injectives.
fn irreducible_arrows(ex: &Exploration) -> Result<BTreeMap<(usize, usize), usize>> {
    let reg = &ex.registry;
    let mut out: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&right, mids) in &ex.meshes {
        let left = ex.tau[&right];
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &j in mids {
            *counts.entry(j).or_default() += 1;
        }
        for (j, c) in counts {
            out.insert((j, right), c);
            out.insert((left, j), c);
        }
    }
    for &p in &ex.projective {
        for (j, c) in summand_counts(reg, &radical(reg.get(p)))? {
            out.insert((j, p), c);
        }
    }
    let lefts: Vec<usize> = ex.tau.values().copied().collect();
    for id in 0..reg.len() {
        if !lefts.contains(&id) {
            for (j, c) in summand_counts(reg, &socle_quotient(reg.get(id)))? {
                out.insert((id, j), c);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ArNode {
    pub id: usize,
    pub dimension_vector: Vec<usize>,
    pub projective: bool,
    pub injective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArArrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: usize,
}

/// The AR quiver: indecomposables, irreducible maps with multiplicities and τ-links `(X, τX)`.
#[derive(Clone, Debug)]
pub struct ArQuiver {
    pub modules: Vec<Module>,
    pub nodes: Vec<ArNode>,
    pub arrows: Vec<ArArrow>,
    pub tau: Vec<(usize, usize)>,
    /// For each non-projective `X`, the ids of the middle term of the mesh ending at `X`.
    pub meshes: BTreeMap<usize, Vec<usize>>,
}

pub fn ar_quiver(alg: &Arc<Algebra>, budget: usize) -> Result<ArQuiver> {
    let ex = explore(alg, budget)?;
    let arrow_map = irreducible_arrows(&ex)?;
    let modules = ex.registry.modules().to_vec();
    let has_tau_inverse: Vec<bool> = (0..modules.len()).map(|i| ex.tau.values().any(|&l| l == i)).collect();
    let nodes = modules
        .iter()
        .enumerate()
        .map(|(id, m)| ArNode {
            id,
            dimension_vector: m.dims().to_vec(),
            projective: !ex.tau.contains_key(&id),
            injective: !has_tau_inverse[id],
        })
        .collect();
    let arrows = arrow_map.iter().map(|(&(s, t), &c)| ArArrow { source: s, target: t, multiplicity: c }).collect();
    let tau = ex.tau.iter().map(|(&a, &b)| (a, b)).collect();
    Ok(ArQuiver { modules, nodes, arrows, tau, meshes: ex.meshes })
}
