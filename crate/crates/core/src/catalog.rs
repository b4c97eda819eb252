//! Frozen enumeration of indecomposables with Hom, Ext, Gen and τ tables.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::arquiver::{ar_quiver, ArArrow, ArNode, ArQuiver};
use crate::error::{Error, Result};
use crate::homological::{ext1_dim_with, minimal_projective_presentation};
use crate::module::{decompose, hom_dim, Module};
use crate::tau_rigid::{in_gen, trace_subspaces};

pub struct Catalog {
    alg: Arc<Algebra>,
    modules: Vec<Module>,
    labels: Vec<String>,
    nodes: Vec<ArNode>,
    arrows: Vec<ArArrow>,
    tau: Vec<Option<usize>>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    /// `gen[i][j]`: module `j` lies in `Gen` of module `i`.
    gen: Vec<Vec<bool>>,
    free_cache: Mutex<HashMap<(Vec<usize>, usize), Vec<usize>>>,
}

impl std::fmt::Debug for Catalog {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Catalog").field("labels", &self.labels).finish()
    }
}

/// Serializable form of a catalog, used by the on-disk cache.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Snapshot {
    pub presentation: String,
    pub modules: Vec<Value>,
    pub nodes: Vec<SnapshotNode>,
    pub arrows: Vec<(usize, usize, usize)>,
    pub tau: Vec<Option<usize>>,
    pub hom: Vec<Vec<usize>>,
    pub ext: Vec<Vec<usize>>,
    pub gen: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SnapshotNode {
    pub projective: bool,
    pub injective: bool,
}

/// Loewy-layer label such as `1/23`; vertex names are comma separated when any is longer than one character.
pub fn loewy_label(m: &Module) -> String {
    let alg = m.algebra();
    let long = (0..alg.num_vertices()).any(|v| alg.vertex_name(v).chars().count() > 1);
    let sep = if long { "," } else { "" };
    m.loewy_layers()
        .iter()
        .map(|layer| {
            let mut names = Vec::new();
            for (v, &d) in layer.iter().enumerate() {
                for _ in 0..d {
                    names.push(alg.vertex_name(v).to_string());
                }
            }
            names.join(sep)
        })
        .collect::<Vec<_>>()
        .join("/")
}

fn unique_labels(modules: &[Module]) -> Vec<String> {
    let raw: Vec<String> = modules.iter().map(loewy_label).collect();
    raw.iter()
        .enumerate()
        .map(|(i, l)| if raw.iter().filter(|x| *x == l).count() > 1 { format!("{l}#{i}") } else { l.clone() })
        .collect()
}

fn square<T: Clone>(flat: Vec<T>, n: usize) -> Vec<Vec<T>> {
    flat.chunks(n.max(1)).map(<[T]>::to_vec).collect()
}

impl Catalog {
    pub fn build(alg: &Arc<Algebra>, budget: usize) -> Result<Catalog> {
        let quiver = ar_quiver(alg, budget)?;
        Self::from_quiver(alg, quiver)
    }

    fn from_quiver(alg: &Arc<Algebra>, q: ArQuiver) -> Result<Catalog> {
        let modules = q.modules;
        let n = modules.len();
        let mut tau = vec![None; n];
        for (x, t) in q.tau {
            tau[x] = Some(t);
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let hom_flat: Vec<usize> =
            pairs.par_iter().map(|&(i, j)| hom_dim(&modules[i], &modules[j])).collect::<Result<_>>()?;
        let pres: Vec<_> = modules.par_iter().map(minimal_projective_presentation).collect::<Result<_>>()?;
        let ext_flat: Vec<usize> = pairs
            .par_iter()
            .map(|&(i, j)| ext1_dim_with(&pres[i], &modules[i], &modules[j]))
            .collect::<Result<_>>()?;
        let gen_flat: Vec<bool> = pairs
            .par_iter()
            .map(|&(i, j)| if hom_flat[i * n + j] == 0 { Ok(false) } else { in_gen(&modules[i], &modules[j]) })
            .collect::<Result<_>>()?;
        let labels = unique_labels(&modules);
        Ok(Catalog {
            alg: alg.clone(),
            modules,
            labels,
            nodes: q.nodes,
            arrows: q.arrows,
            tau,
            hom: square(hom_flat, n),
            ext: square(ext_flat, n),
            gen: square(gen_flat, n),
            free_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn module(&self, id: usize) -> &Module {
        &self.modules[id]
    }

    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn nodes(&self) -> &[ArNode] {
        &self.nodes
    }

    pub fn arrows(&self) -> &[ArArrow] {
        &self.arrows
    }

    pub fn tau(&self, id: usize) -> Option<usize> {
        self.tau[id]
    }

    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    pub fn ext(&self, i: usize, j: usize) -> usize {
        self.ext[i][j]
    }

    /// Module `j` lies in `Gen` of module `i`.
    pub fn in_gen(&self, i: usize, j: usize) -> bool {
        self.gen[i][j]
    }

    pub fn is_projective(&self, id: usize) -> bool {
        self.nodes[id].projective
    }

    pub fn is_injective(&self, id: usize) -> bool {
        self.nodes[id].injective
    }

    /// Ids of the indecomposable projectives, in vertex order.
    pub fn projective_ids(&self) -> Vec<usize> {
        (0..self.alg.num_vertices()).collect()
    }

    pub fn id_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Id of the class of an indecomposable module.
    pub fn id_of(&self, m: &Module) -> Result<Option<usize>> {
        for (i, x) in self.modules.iter().enumerate() {
            if x.dims() == m.dims() && crate::module::is_isomorphic_indecomposable(x, m)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Ids of the indecomposable summands of `m`, with multiplicity, sorted.
    pub fn summand_ids(&self, m: &Module) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for s in decompose(m)? {
            out.push(self.id_of(&s)?.ok_or_else(|| Error::DecompositionFailure("summand outside the enumeration".into()))?);
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn sum_module(&self, ids: &[usize]) -> Module {
        let parts: Vec<Module> = ids.iter().map(|&i| self.modules[i].clone()).collect();
        Module::sum_of(&self.alg, &parts)
    }

    /// Module `x` lies in `Gen(⊕ u)`.
    pub fn in_gen_sum(&self, u: &[usize], x: usize) -> Result<bool> {
        if u.iter().any(|&i| self.gen[i][x]) {
            return Ok(true);
        }
        if u.iter().all(|&i| self.hom[i][x] == 0) {
            return Ok(false);
        }
        in_gen(&self.sum_module(u), &self.modules[x])
    }

    /// Indecomposable summands of `f_U(X) = X / t_U(X)` for `U = ⊕ u`, sorted.
    pub fn torsion_free(&self, u: &[usize], x: usize) -> Result<Vec<usize>> {
        let mut key_u = u.to_vec();
        key_u.sort_unstable();
        key_u.dedup();
        let key = (key_u, x);
        if let Some(v) = self.free_cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let out = if key.0.iter().all(|&i| self.hom[i][x] == 0) {
            vec![x]
        } else {
            let m = &self.modules[x];
            let spaces = trace_subspaces(&self.sum_module(&key.0), m)?;
            let (q, _) = m.quotient(&spaces);
            self.summand_ids(&q)?
        };
        self.free_cache.lock().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    /// Indecomposables with labels, flags, τ and the module data.
    pub fn modules_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.len())
            .map(|i| {
                json!({
                    "id": i,
                    "label": self.labels[i],
                    "dimension_vector": self.modules[i].dims(),
                    "projective": self.nodes[i].projective,
                    "injective": self.nodes[i].injective,
                    "tau": self.tau[i],
                    "module": self.modules[i].to_json(),
                })
            })
            .collect();
        Value::Array(rows)
    }

    pub fn ar_json(&self) -> Value {
        let nodes: Vec<Value> = (0..self.len())
            .map(|i| {
                json!({
                    "id": i,
                    "label": self.labels[i],
                    "dimension_vector": self.nodes[i].dimension_vector,
                    "projective": self.nodes[i].projective,
                    "injective": self.nodes[i].injective,
                })
            })
            .collect();
        let tau: Vec<Value> =
            (0..self.len()).filter_map(|i| self.tau[i].map(|t| json!({ "module": i, "tau": t }))).collect();
        json!({ "nodes": nodes, "arrows": self.arrows, "tau": tau })
    }

    /// DOT digraph of the AR quiver, nodes labelled by dimension vectors; τ drawn dashed.
    pub fn ar_dot(&self) -> String {
        let mut out = String::from("digraph ar {\n  rankdir=LR;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let dv: Vec<String> = n.dimension_vector.iter().map(|d| d.to_string()).collect();
            let shape = if n.projective { " shape=box" } else { "" };
            let _ = writeln!(out, "  m{i} [label=\"({})\" tooltip=\"{}\"{shape}];", dv.join(","), self.labels[i]);
        }
        for a in &self.arrows {
            let mult = if a.multiplicity > 1 { format!(" label=\"{}\"", a.multiplicity) } else { String::new() };
            let _ = writeln!(out, "  m{} -> m{}{mult};", a.source, a.target);
        }
        for (i, t) in self.tau.iter().enumerate() {
            if let Some(t) = t {
                let _ = writeln!(out, "  m{i} -> m{t} [style=dashed constraint=false];");
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            presentation: self.alg.presentation().to_text(),
            modules: self.modules.iter().map(Module::to_json).collect(),
            nodes: self.nodes.iter().map(|n| SnapshotNode { projective: n.projective, injective: n.injective }).collect(),
            arrows: self.arrows.iter().map(|a| (a.source, a.target, a.multiplicity)).collect(),
            tau: self.tau.clone(),
            hom: self.hom.clone(),
            ext: self.ext.clone(),
            gen: self.gen.clone(),
        }
    }

    pub fn from_snapshot(alg: &Arc<Algebra>, s: &Snapshot) -> Result<Catalog> {
        let corrupt = |m: &str| Error::CacheCorrupt(m.to_string());
        if s.presentation != alg.presentation().to_text() {
            return Err(corrupt("presentation differs"));
        }
        let n = s.modules.len();
        let sq_ok = |t: usize, rows: usize| rows == n && t == n;
        if s.nodes.len() != n
            || s.tau.len() != n
            || !sq_ok(n, s.hom.len())
            || !sq_ok(n, s.ext.len())
            || !sq_ok(n, s.gen.len())
            || s.hom.iter().chain(&s.ext).any(|r| r.len() != n)
            || s.gen.iter().any(|r| r.len() != n)
        {
            return Err(corrupt("table shapes"));
        }
        let modules: Vec<Module> = s
            .modules
            .iter()
            .map(|v| Module::from_json(alg, v))
            .collect::<Result<_>>()
            .map_err(|e| corrupt(&e.to_string()))?;
        let nodes = modules
            .iter()
            .zip(&s.nodes)
            .enumerate()
            .map(|(id, (m, n))| ArNode {
                id,
                dimension_vector: m.dims().to_vec(),
                projective: n.projective,
                injective: n.injective,
            })
            .collect();
        let labels = unique_labels(&modules);
        Ok(Catalog {
            alg: alg.clone(),
            modules,
            labels,
            nodes,
            arrows: s.arrows.iter().map(|&(a, b, c)| ArArrow { source: a, target: b, multiplicity: c }).collect(),
            tau: s.tau.clone(),
            hom: s.hom.clone(),
            ext: s.ext.clone(),
            gen: s.gen.clone(),
            free_cache: Mutex::new(HashMap::new()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arquiver::DEFAULT_BUDGET;
    use crate::module::tests::{alg, LAMBDA9};

    #[test]
    fn lambda9_catalog() {
        let a = alg(LAMBDA9);
        let c = Catalog::build(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.len(), 9);
        let mut labels = c.labels().to_vec();
        labels.sort();
        assert_eq!(labels, vec!["1", "1/2", "1/23", "1/3", "12/23", "12/3", "2", "2/3", "3"]);
        let s2 = c.id_by_label("2").unwrap();
        let m13 = c.id_by_label("1/3").unwrap();
        assert_eq!(c.tau(s2), Some(m13));
        assert_eq!(c.tau(m13), Some(s2));
        assert_eq!(c.ext(s2, c.id_by_label("3").unwrap()), 1);
        let m12 = c.id_by_label("1/2").unwrap();
        assert_eq!(c.torsion_free(&[s2], m12).unwrap(), vec![c.id_by_label("1").unwrap()]);
        let back = Catalog::from_snapshot(&a, &c.snapshot()).unwrap();
        assert_eq!(back.labels(), c.labels());
    }
}
