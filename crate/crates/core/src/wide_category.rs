//! The category of wide subcategories: objects, Hom-sets, composition and export.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::reduction::{Obj, Reducer, Summand, WideSubcategory};

/// `g^W_T`: source and target are object indices, `label` is basic support τ-rigid in `𝒞(source)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WideMorphism {
    pub source: usize,
    pub target: usize,
    pub label: Obj,
}

pub struct WideCategory {
    reducer: Arc<Reducer>,
    objects: Vec<WideSubcategory>,
    index: HashMap<Vec<usize>, usize>,
    morphisms: Vec<WideMorphism>,
    hom: BTreeMap<(usize, usize), Vec<usize>>,
}

impl std::fmt::Debug for WideCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WideCategory").field("objects", &self.objects.len()).field("morphisms", &self.morphisms.len()).finish()
    }
}

/// All `J(𝒰)` for `𝒰` basic support τ-rigid in `𝒞(Λ)`, by decreasing rank then key.
pub fn enumerate_wide_subcategories(r: &Reducer) -> Result<Vec<WideSubcategory>> {
    let whole = r.whole();
    let mut seen: BTreeMap<Vec<usize>, Obj> = BTreeMap::new();
    for u in r.support_tau_rigid_objects(&whole)?.iter() {
        let key = r.perpendicular(&whole, u)?;
        seen.entry(key).or_insert_with(|| u.clone());
    }
    let mut out: Vec<WideSubcategory> = Vec::new();
    for (key, generator) in seen {
        let ext_projectives = r.ext_projectives(&key)?;
        out.push(WideSubcategory { rank: ext_projectives.len(), key, ext_projectives, generator });
    }
    out.sort_by(|a, b| b.rank.cmp(&a.rank).then_with(|| a.key.cmp(&b.key)));
    Ok(out)
}

impl WideCategory {
    pub fn build(reducer: Arc<Reducer>) -> Result<WideCategory> {
        let objects = enumerate_wide_subcategories(&reducer)?;
        let index: HashMap<Vec<usize>, usize> = objects.iter().enumerate().map(|(i, w)| (w.key.clone(), i)).collect();
        let mut morphisms = Vec::new();
        let mut hom: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, w) in objects.iter().enumerate() {
            for t in reducer.support_tau_rigid_objects(&w.key)?.iter() {
                let key = reducer.perpendicular(&w.key, t)?;
                let j = *index.get(&key).ok_or_else(|| {
                    Error::CaseDispatchError(format!("J_W({}) is not among the enumerated objects", t.display(reducer.catalog())))
                })?;
                hom.entry((i, j)).or_default().push(morphisms.len());
                morphisms.push(WideMorphism { source: i, target: j, label: t.clone() });
            }
        }
        Ok(WideCategory { reducer, objects, index, morphisms, hom })
    }

    pub fn reducer(&self) -> &Arc<Reducer> {
        &self.reducer
    }

    pub fn objects(&self) -> &[WideSubcategory] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &WideSubcategory {
        &self.objects[i]
    }

    pub fn object_index(&self, key: &[usize]) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn morphisms(&self) -> &[WideMorphism] {
        &self.morphisms
    }

    pub fn hom_set(&self, source: usize, target: usize) -> Vec<&WideMorphism> {
        self.hom.get(&(source, target)).map(|v| v.iter().map(|&k| &self.morphisms[k]).collect()).unwrap_or_default()
    }

    pub fn identity(&self, i: usize) -> WideMorphism {
        WideMorphism { source: i, target: i, label: Obj::zero() }
    }

    /// Builds `g^{W}_T` after checking the label, computing the target.
    pub fn morphism(&self, source: usize, label: Obj) -> Result<WideMorphism> {
        let w = &self.objects[source].key;
        if !self.reducer.is_support_tau_rigid(w, &label)? {
            return Err(Error::NotSupportTauRigid(label.display(self.reducer.catalog())));
        }
        let key = self.reducer.perpendicular(w, &label)?;
        let target = self.object_index(&key).ok_or_else(|| Error::CaseDispatchError("target is not an object".into()))?;
        Ok(WideMorphism { source, target, label })
    }

    /// `b ∘ a = g^{W1}_{𝒰 ⊕ F^{W1}_𝒰(𝒱)}` for `a = g^{W1}_𝒰` and `b = g^{W2}_𝒱`.
    pub fn compose(&self, b: &WideMorphism, a: &WideMorphism) -> Result<WideMorphism> {
        if a.target != b.source {
            return Err(Error::NotComposable(format!("target {} differs from source {}", a.target, b.source)));
        }
        let w1 = &self.objects[a.source].key;
        let lifted = self.reducer.f_map(w1, &a.label, &b.label)?;
        Ok(WideMorphism { source: a.source, target: b.target, label: a.label.union(&lifted) })
    }

    pub fn corank(&self, m: &WideMorphism) -> usize {
        self.objects[m.source].rank - self.objects[m.target].rank
    }

    /// Irreducible iff the label is indecomposable; the corank-1 criterion must agree.
    pub fn is_irreducible(&self, m: &WideMorphism) -> Result<bool> {
        let by_label = m.label.len() == 1;
        if by_label != (self.corank(m) == 1) {
            return Err(Error::CaseDispatchError("label size and corank disagree on irreducibility".into()));
        }
        Ok(by_label)
    }

    fn member_labels(&self, i: usize) -> Vec<String> {
        let cat = self.reducer.catalog();
        self.objects[i].key.iter().map(|&x| cat.label(x).to_string()).collect()
    }

    fn summand_json(&self, s: &Summand) -> Value {
        json!({ "id": s.id, "module": self.reducer.catalog().label(s.id), "shifted": s.shifted })
    }

    pub fn to_json(&self, drop_zero: bool) -> Value {
        let keep: Vec<usize> = (0..self.objects.len()).filter(|&i| !(drop_zero && self.objects[i].key.is_empty())).collect();
        let objects: Vec<Value> = keep
            .iter()
            .map(|&i| {
                json!({
                    "index": i,
                    "key": self.objects[i].key,
                    "rank": self.objects[i].rank,
                    "members": self.member_labels(i),
                })
            })
            .collect();
        let morphisms: Vec<Value> = self
            .morphisms
            .iter()
            .filter(|m| keep.contains(&m.source) && keep.contains(&m.target))
            .map(|m| {
                json!({
                    "source": m.source,
                    "target": m.target,
                    "label": m.label.summands().iter().map(|s| self.summand_json(s)).collect::<Vec<_>>(),
                    "irreducible": m.label.len() == 1,
                })
            })
            .collect();
        json!({ "objects": objects, "morphisms": morphisms })
    }

    /// Irreducible edges grouped by `(source, target)`: `(label text, doubled)`.
    pub fn irreducible_edges(&self, drop_zero: bool) -> Vec<(usize, usize, String, bool)> {
        let cat = self.reducer.catalog();
        let mut groups: BTreeMap<(usize, usize), Vec<Summand>> = BTreeMap::new();
        for m in &self.morphisms {
            if m.label.len() != 1 || (drop_zero && self.objects[m.target].key.is_empty()) {
                continue;
            }
            groups.entry((m.source, m.target)).or_default().push(m.label.summands()[0]);
        }
        groups
            .into_iter()
            .map(|((s, t), labels)| {
                let doubled = labels.len() == 2 && labels[0].id == labels[1].id && labels[0].shifted != labels[1].shifted;
                let text = if doubled {
                    cat.label(labels[0].id).to_string()
                } else {
                    labels
                        .iter()
                        .map(|l| if l.shifted { format!("{}[1]", cat.label(l.id)) } else { cat.label(l.id).to_string() })
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                (s, t, text, doubled)
            })
            .collect()
    }

    pub fn to_dot(&self, drop_zero: bool) -> String {
        let mut out = String::from("digraph wide {\n  rankdir=TB;\n  node [shape=box];\n");
        for (i, w) in self.objects.iter().enumerate() {
            if drop_zero && w.key.is_empty() {
                continue;
            }
            let members = self.member_labels(i);
            let text = if members.is_empty() { "0".to_string() } else { members.join(", ") };
            let _ = writeln!(out, "  w{i} [label=\"{text}\" rank={}];", w.rank);
        }
        for (s, t, text, doubled) in self.irreducible_edges(drop_zero) {
            let style = if doubled { " color=\"black:black\"" } else { "" };
            let _ = writeln!(out, "  w{s} -> w{t} [label=\"{text}\"{style}];");
        }
        out.push_str("}\n");
        out
    }
}
