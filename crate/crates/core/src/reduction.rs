//! τ-tilting reduction relative to a wide subcategory: `J_W`, the bijection `E^W_𝒰` and its inverse.
//!
//! Wide subcategories are sets of catalog ids. Relative τ-rigidity uses the Ext-Gen criterion:
//! `Hom_W(a, τ_W b) = 0` iff `Ext^1(b, G) = 0` for every indecomposable `G ∈ Gen a ∩ W`.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::module::Module;
use crate::tau_rigid::minimal_left_approximation;

/// One indecomposable summand of an object of `𝒞(W)`: a module or a shifted Ext-projective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Summand {
    pub shifted: bool,
    pub id: usize,
}

impl Summand {
    pub fn module(id: usize) -> Self {
        Summand { shifted: false, id }
    }

    pub fn shift(id: usize) -> Self {
        Summand { shifted: true, id }
    }
}

/// Basic object `U ⊕ P[1]` of `𝒞(W)`, summands sorted with modules first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Obj(Vec<Summand>);

impl Obj {
    pub fn new(mut summands: Vec<Summand>) -> Self {
        summands.sort_unstable();
        summands.dedup();
        Obj(summands)
    }

    pub fn zero() -> Self {
        Obj(Vec::new())
    }

    pub fn single(s: Summand) -> Self {
        Obj(vec![s])
    }

    pub fn summands(&self) -> &[Summand] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: &Summand) -> bool {
        self.0.binary_search(s).is_ok()
    }

    pub fn modules(&self) -> Vec<usize> {
        self.0.iter().filter(|s| !s.shifted).map(|s| s.id).collect()
    }

    pub fn shifts(&self) -> Vec<usize> {
        self.0.iter().filter(|s| s.shifted).map(|s| s.id).collect()
    }

    pub fn union(&self, other: &Obj) -> Obj {
        Obj::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn without(&self, s: &Summand) -> Obj {
        Obj(self.0.iter().filter(|t| *t != s).copied().collect())
    }

    /// Text form such as `2 + 1/3 + 3[1]` using catalog labels.
    pub fn display(&self, cat: &Catalog) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|s| if s.shifted { format!("{}[1]", cat.label(s.id)) } else { cat.label(s.id).to_string() })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Obj {
    /// Ordered list such as `(1, 2[1])`.
    pub fn display_sequence(seq: &[Summand], cat: &Catalog) -> String {
        let items: Vec<String> = seq.iter().map(|s| Obj::single(*s).display(cat)).collect();
        format!("({})", items.join(", "))
    }

    /// Parses the text form produced by [`Obj::display`]; `0` is the zero object.
    pub fn parse(text: &str, cat: &Catalog) -> Result<Obj> {
        let text = text.trim();
        if text == "0" {
            return Ok(Obj::zero());
        }
        let mut out = Vec::new();
        let mut col = 1;
        for part in text.split('+') {
            let raw = part.trim();
            let (name, shifted) = match raw.strip_suffix("[1]") {
                Some(n) => (n.trim(), true),
                None => (raw, false),
            };
            let id = cat.id_by_label(name).ok_or_else(|| Error::Parse {
                line: 1,
                col: col + part.len() - part.trim_start().len(),
                msg: format!("unknown module `{name}`"),
            })?;
            out.push(Summand { shifted, id });
            col += part.len() + 1;
        }
        Ok(Obj::new(out))
    }
}

impl FromIterator<Summand> for Obj {
    fn from_iter<I: IntoIterator<Item = Summand>>(iter: I) -> Self {
        Obj::new(iter.into_iter().collect())
    }
}

/// A wide subcategory: its sorted member ids, rank, Ext-projectives and an object
/// `𝒢` of `𝒞(Λ)` with `J(𝒢)` equal to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WideSubcategory {
    pub key: Vec<usize>,
    pub rank: usize,
    pub ext_projectives: Vec<usize>,
    pub generator: Obj,
}

struct Memo<K, V>(Mutex<HashMap<K, V>>);

impl<K, V> Default for Memo<K, V> {
    fn default() -> Self {
        Memo(Mutex::new(HashMap::new()))
    }
}

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    fn get_or(&self, key: K, compute: impl FnOnce() -> Result<V>) -> Result<V> {
        if let Some(v) = self.0.lock().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let v = compute()?;
        self.0.lock().expect("memo lock").insert(key, v.clone());
        Ok(v)
    }
}

type Key = Vec<usize>;

/// Reduction engine over a frozen catalog; all results are memoized and the engine is `Sync`.
pub struct Reducer {
    cat: Arc<Catalog>,
    fault: bool,
    ext_proj: Memo<Key, Vec<usize>>,
    j: Memo<(Key, Obj), Key>,
    indec: Memo<Key, Arc<Vec<Summand>>>,
    cliques: Memo<Key, Arc<Vec<Obj>>>,
    bongartz: Memo<(Key, Key), Vec<usize>>,
    cokernels: Memo<(Key, Key), Vec<(usize, Option<usize>)>>,
    e: Memo<(Key, Obj, Summand), Summand>,
    f: Memo<(Key, Obj), Arc<BTreeMap<Summand, Summand>>>,
}

impl std::fmt::Debug for Reducer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Reducer").field("catalog", &self.cat).finish()
    }
}

fn single(v: Vec<usize>, what: &str) -> Result<usize> {
    match v.as_slice() {
        [x] => Ok(*x),
        _ => Err(Error::CaseDispatchError(format!("{what} has {} summands, expected one", v.len()))),
    }
}

impl Reducer {
    pub fn new(cat: Arc<Catalog>) -> Self {
        Reducer {
            cat,
            fault: false,
            ext_proj: Memo::default(),
            j: Memo::default(),
            indec: Memo::default(),
            cliques: Memo::default(),
            bongartz: Memo::default(),
            cokernels: Memo::default(),
            e: Memo::default(),
            f: Memo::default(),
        }
    }

    /// Test fixture: a deliberately wrong `E` (case I(a) skips the torsion-free quotient).
    #[doc(hidden)]
    pub fn with_fault_injection(cat: Arc<Catalog>) -> Self {
        Reducer { fault: true, ..Reducer::new(cat) }
    }

    pub fn catalog(&self) -> &Arc<Catalog> {
        &self.cat
    }

    /// Key of `mod Λ`.
    pub fn whole(&self) -> Key {
        (0..self.cat.len()).collect()
    }

    pub fn whole_subcategory(&self) -> Result<WideSubcategory> {
        self.describe(self.whole(), Obj::zero())
    }

    fn describe(&self, key: Key, generator: Obj) -> Result<WideSubcategory> {
        let ext_projectives = self.ext_projectives(&key)?;
        Ok(WideSubcategory { rank: ext_projectives.len(), key, ext_projectives, generator })
    }

    fn member(w: &[usize], x: usize) -> bool {
        w.binary_search(&x).is_ok()
    }

    /// `Hom_W(a, τ_W b) = 0`.
    pub fn rig(&self, w: &[usize], a: usize, b: usize) -> bool {
        w.iter().all(|&g| !self.cat.in_gen(a, g) || self.cat.ext(b, g) == 0)
    }

    /// Ext-projective members of `W`.
    pub fn ext_projectives(&self, w: &[usize]) -> Result<Vec<usize>> {
        self.ext_proj.get_or(w.to_vec(), || Ok(self.ext_projectives_within(w)))
    }

    fn ext_projectives_within(&self, members: &[usize]) -> Vec<usize> {
        members.iter().copied().filter(|&x| members.iter().all(|&y| self.cat.ext(x, y) == 0)).collect()
    }

    pub fn rank(&self, w: &[usize]) -> Result<usize> {
        Ok(self.ext_projectives(w)?.len())
    }

    /// An indecomposable summand is support τ-rigid in `𝒞(W)`.
    pub fn summand_ok(&self, w: &[usize], s: Summand) -> Result<bool> {
        if !Self::member(w, s.id) {
            return Ok(false);
        }
        Ok(if s.shifted { self.ext_projectives(w)?.contains(&s.id) } else { self.rig(w, s.id, s.id) })
    }

    /// Two indecomposable summands are compatible in `𝒞(W)`.
    pub fn pair_ok(&self, w: &[usize], s: Summand, t: Summand) -> bool {
        match (s.shifted, t.shifted) {
            (false, false) => self.rig(w, s.id, t.id) && self.rig(w, t.id, s.id),
            (false, true) => self.cat.hom(t.id, s.id) == 0,
            (true, false) => self.cat.hom(s.id, t.id) == 0,
            (true, true) => true,
        }
    }

    pub fn is_support_tau_rigid(&self, w: &[usize], u: &Obj) -> Result<bool> {
        let s = u.summands();
        for (i, &a) in s.iter().enumerate() {
            if !self.summand_ok(w, a)? {
                return Ok(false);
            }
            if s[i + 1..].iter().any(|&b| !self.pair_ok(w, a, b)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x` can be added to `u` keeping it support τ-rigid in `𝒞(W)`.
    pub fn compatible_with(&self, w: &[usize], u: &Obj, x: Summand) -> Result<bool> {
        Ok(self.summand_ok(w, x)? && u.summands().iter().all(|&s| s != x && self.pair_ok(w, s, x)))
    }

    /// Indecomposable support τ-rigid objects of `𝒞(W)`: τ_W-rigid members, then shifted Ext-projectives.
    pub fn indecomposables(&self, w: &[usize]) -> Result<Arc<Vec<Summand>>> {
        self.indec.get_or(w.to_vec(), || {
            let mut out: Vec<Summand> =
                w.iter().copied().filter(|&x| self.rig(w, x, x)).map(Summand::module).collect();
            out.extend(self.ext_projectives(w)?.into_iter().map(Summand::shift));
            Ok(Arc::new(out))
        })
    }

    /// All basic support τ-rigid objects of `𝒞(W)`, including `0`, sorted.
    pub fn support_tau_rigid_objects(&self, w: &[usize]) -> Result<Arc<Vec<Obj>>> {
        self.cliques.get_or(w.to_vec(), || {
            let ind = self.indecomposables(w)?;
            let n = ind.len();
            let adj: Vec<Vec<bool>> =
                (0..n).map(|i| (0..n).map(|j| i != j && self.pair_ok(w, ind[i], ind[j])).collect()).collect();
            let mut out = Vec::new();
            let mut stack: Vec<usize> = Vec::new();
            fn go(i: usize, n: usize, adj: &[Vec<bool>], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                out.push(stack.clone());
                for j in i..n {
                    if stack.iter().all(|&k| adj[k][j]) {
                        stack.push(j);
                        go(j + 1, n, adj, stack, out);
                        stack.pop();
                    }
                }
            }
            let mut raw = Vec::new();
            go(0, n, &adj, &mut stack, &mut raw);
            for c in raw {
                out.push(Obj::new(c.into_iter().map(|i| ind[i]).collect()));
            }
            out.sort();
            Ok(Arc::new(out))
        })
    }

    /// Member set of `J_W(𝒰) = U^⊥ ∩ ^⊥(τ_W U) ∩ P^⊥ ∩ W`.
    pub fn perpendicular(&self, w: &[usize], u: &Obj) -> Result<Key> {
        self.j.get_or((w.to_vec(), u.clone()), || {
            let (mods, shifts) = (u.modules(), u.shifts());
            Ok(w.iter()
                .copied()
                .filter(|&x| {
                    shifts.iter().all(|&q| self.cat.hom(q, x) == 0)
                        && mods.iter().all(|&m| self.cat.hom(m, x) == 0 && self.rig(w, x, m))
                })
                .collect())
        })
    }

    /// `J_W(𝒰)` as a [`WideSubcategory`], after checking that `𝒰` is support τ-rigid in `𝒞(W)`.
    pub fn wide_subcategory(&self, w: &WideSubcategory, u: &Obj) -> Result<WideSubcategory> {
        if !self.is_support_tau_rigid(&w.key, u)? {
            return Err(Error::NotSupportTauRigid(u.display(&self.cat)));
        }
        let key = self.perpendicular(&w.key, u)?;
        let lifted = self.f_map(&self.whole(), &w.generator, u)?;
        let generator = w.generator.union(&lifted);
        self.describe(key, generator)
    }

    /// Bongartz complement of the τ_W-rigid `U` (ids) inside `W`.
    pub fn bongartz(&self, w: &[usize], u: &[usize]) -> Result<Vec<usize>> {
        self.bongartz.get_or((w.to_vec(), u.to_vec()), || {
            let torsion: Vec<usize> = w.iter().copied().filter(|&y| u.iter().all(|&m| self.rig(w, y, m))).collect();
            let b: Vec<usize> =
                self.ext_projectives_within(&torsion).into_iter().filter(|x| !u.contains(x)).collect();
            if b.len() + u.len() != self.rank(w)? {
                return Err(Error::CaseDispatchError("Bongartz completion has the wrong number of summands".into()));
            }
            Ok(b)
        })
    }

    fn modules_of(&self, ids: &[usize]) -> Vec<Module> {
        ids.iter().map(|&i| self.cat.module(i).clone()).collect()
    }

    /// For each Bongartz summand `b`, the cokernel of its minimal left `add U`-approximation
    /// (`None` when the approximation is onto).
    fn cokernels(&self, w: &[usize], u: &[usize]) -> Result<Vec<(usize, Option<usize>)>> {
        self.cokernels.get_or((w.to_vec(), u.to_vec()), || {
            let targets = self.modules_of(u);
            let mut out = Vec::new();
            for b in self.bongartz(w, u)? {
                let approx = minimal_left_approximation(self.cat.module(b), &targets)?;
                let (coker, _) = approx.map.cokernel();
                let id = if coker.is_zero() {
                    None
                } else {
                    Some(single(self.cat.summand_ids(&coker)?, "cokernel of a Bongartz approximation")?)
                };
                out.push((b, id));
            }
            Ok(out)
        })
    }

    /// `E^W_U` for a module `U` (sorted ids) on one summand.
    fn e_module(&self, w: &[usize], u: &[usize], x: Summand) -> Result<Summand> {
        if !x.shifted {
            if !self.cat.in_gen_sum(u, x.id)? {
                if self.fault {
                    return Ok(x);
                }
                let f = single(self.cat.torsion_free(u, x.id)?, "torsion-free part")?;
                return Ok(Summand::module(f));
            }
            let hits: Vec<usize> =
                self.cokernels(w, u)?.into_iter().filter(|(_, c)| *c == Some(x.id)).map(|(b, _)| b).collect();
            let b = single(hits, "Bongartz summands with the given cokernel")?;
            let f = single(self.cat.torsion_free(u, b)?, "torsion-free part of a Bongartz summand")?;
            return Ok(Summand::shift(f));
        }
        let b_ids = self.bongartz(w, u)?;
        let all: Vec<usize> = u.iter().chain(&b_ids).copied().collect();
        let approx = minimal_left_approximation(self.cat.module(x.id), &self.modules_of(&all))?;
        let b = single(approx.summands.iter().map(|&i| all[i]).collect(), "approximation target")?;
        if !b_ids.contains(&b) {
            return Err(Error::CaseDispatchError("approximation of a shifted projective lands in add U".into()));
        }
        let f = single(self.cat.torsion_free(u, b)?, "torsion-free part of a Bongartz summand")?;
        Ok(Summand::shift(f))
    }

    /// `E^W_{P[1]}` on one summand.
    fn e_shift(&self, p: &[usize], x: Summand) -> Result<Summand> {
        if !x.shifted {
            return Ok(x);
        }
        Ok(Summand::shift(single(self.cat.torsion_free(p, x.id)?, "torsion-free part of a shifted projective")?))
    }

    fn e_summand(&self, w: &[usize], u: &Obj, x: Summand) -> Result<Summand> {
        self.e.get_or((w.to_vec(), u.clone(), x), || {
            let (mods, shifts) = (u.modules(), u.shifts());
            if shifts.is_empty() {
                return self.e_module(w, &mods, x);
            }
            if mods.is_empty() {
                return self.e_shift(&shifts, x);
            }
            // Reduce by U first, then by the image of P[1] inside J_W(U).
            let mut p2 = Vec::new();
            for &q in &shifts {
                let s = self.e_module(w, &mods, Summand::shift(q))?;
                p2.push(s.id);
            }
            p2.sort_unstable();
            let y = self.e_module(w, &mods, x)?;
            self.e_shift(&p2, y)
        })
    }

    /// `E^W_𝒰(𝒳)` for `𝒳 ⊕ 𝒰` basic support τ-rigid in `𝒞(W)`.
    pub fn e_map(&self, w: &[usize], u: &Obj, x: &Obj) -> Result<Obj> {
        if !self.is_support_tau_rigid(w, &u.union(x))? || x.summands().iter().any(|s| u.contains(s)) {
            return Err(Error::NotCompatible(format!("{} with {}", x.display(&self.cat), u.display(&self.cat))));
        }
        let out: Obj = x.summands().iter().map(|&s| self.e_summand(w, u, s)).collect::<Result<_>>()?;
        if out.len() != x.len() {
            return Err(Error::CaseDispatchError("summands collapsed under E".into()));
        }
        Ok(out)
    }

    /// `E^W_𝒰` on a single summand, without compatibility checks; for sweeps that checked already.
    pub fn e_unchecked(&self, w: &[usize], u: &Obj, x: Summand) -> Result<Summand> {
        self.e_summand(w, u, x)
    }

    /// Summands compatible with `𝒰` in `𝒞(W)` (the domain of `E^W_𝒰`).
    pub fn domain(&self, w: &[usize], u: &Obj) -> Result<Vec<Summand>> {
        let ind = self.indecomposables(w)?;
        let mut out = Vec::new();
        for &x in ind.iter() {
            if !u.contains(&x) && self.compatible_with(w, u, x)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    fn f_table(&self, w: &[usize], u: &Obj) -> Result<Arc<BTreeMap<Summand, Summand>>> {
        self.f.get_or((w.to_vec(), u.clone()), || {
            let mut table = BTreeMap::new();
            for x in self.domain(w, u)? {
                let y = self.e_summand(w, u, x)?;
                if table.insert(y, x).is_some() {
                    return Err(Error::CaseDispatchError(format!(
                        "E is not injective: two summands map to {}",
                        Obj::single(y).display(&self.cat)
                    )));
                }
            }
            Ok(Arc::new(table))
        })
    }

    /// `F^W_𝒰(𝒴)`, the inverse of `E^W_𝒰`.
    pub fn f_map(&self, w: &[usize], u: &Obj, y: &Obj) -> Result<Obj> {
        if u.is_empty() {
            return Ok(y.clone());
        }
        let table = self.f_table(w, u)?;
        y.summands()
            .iter()
            .map(|s| table.get(s).copied().ok_or_else(|| Error::NotInImage(Obj::single(*s).display(&self.cat))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arquiver::DEFAULT_BUDGET;
    use crate::module::tests::{alg, KA2, LAMBDA9};

    fn setup(text: &str) -> Reducer {
        let a = alg(text);
        Reducer::new(Arc::new(Catalog::build(&a, DEFAULT_BUDGET).unwrap()))
    }

    fn ids(r: &Reducer, labels: &[&str]) -> Vec<usize> {
        let mut v: Vec<usize> = labels.iter().map(|l| r.catalog().id_by_label(l).unwrap()).collect();
        v.sort_unstable();
        v
    }

    fn m(r: &Reducer, l: &str) -> Summand {
        Summand::module(r.catalog().id_by_label(l).unwrap())
    }

    fn s(r: &Reducer, l: &str) -> Summand {
        Summand::shift(r.catalog().id_by_label(l).unwrap())
    }

    #[test]
    fn rig_matches_tau_in_mod() {
        let r = setup(LAMBDA9);
        let c = r.catalog().clone();
        let w = r.whole();
        for a in 0..c.len() {
            for b in 0..c.len() {
                let direct = c.tau(b).map(|t| c.hom(a, t) == 0).unwrap_or(true);
                assert_eq!(r.rig(&w, a, b), direct, "{} {}", c.label(a), c.label(b));
            }
        }
    }

    #[test]
    fn perpendicular_categories() {
        let r = setup(LAMBDA9);
        let w = r.whole();
        assert_eq!(r.perpendicular(&w, &Obj::single(m(&r, "2"))).unwrap(), ids(&r, &["1", "2/3", "12/3"]));
        assert_eq!(r.perpendicular(&w, &Obj::single(s(&r, "3"))).unwrap(), ids(&r, &["1", "2", "1/2"]));
        assert_eq!(
            r.perpendicular(&w, &Obj::single(m(&r, "1/2"))).unwrap(),
            ids(&r, &["1/23", "1/3", "12/3", "12/23", "2"])
        );
        assert_eq!(r.perpendicular(&w, &Obj::zero()).unwrap(), w);
        assert_eq!(r.rank(&w).unwrap(), 3);
        let p1 = r.perpendicular(&w, &Obj::single(m(&r, "1/23"))).unwrap();
        assert_eq!(r.ext_projectives(&p1).unwrap(), ids(&r, &["2/3", "3"]));
    }

    #[test]
    fn e_map_examples() {
        let r = setup(LAMBDA9);
        let w = r.whole();
        let e = |u: Summand, x: Summand| r.e_map(&w, &Obj::single(u), &Obj::single(x)).unwrap();
        assert_eq!(e(m(&r, "2"), m(&r, "1/2")), Obj::single(m(&r, "1")));
        assert_eq!(e(m(&r, "1/23"), m(&r, "1/2")), Obj::single(s(&r, "3")));
        assert_eq!(e(m(&r, "1/23"), m(&r, "1/3")), Obj::single(s(&r, "2/3")));
        assert_eq!(e(s(&r, "3"), s(&r, "2/3")), Obj::single(s(&r, "2")));
        assert_eq!(r.f_map(&w, &Obj::single(m(&r, "2")), &Obj::single(m(&r, "1"))).unwrap(), Obj::single(m(&r, "1/2")));
        assert_eq!(r.f_map(&w, &Obj::single(s(&r, "3")), &Obj::single(s(&r, "2"))).unwrap(), Obj::single(s(&r, "2/3")));
        assert!(matches!(
            r.e_map(&w, &Obj::single(s(&r, "3")), &Obj::single(m(&r, "3"))),
            Err(Error::NotCompatible(_))
        ));
    }

    #[test]
    fn bongartz_examples() {
        let r = setup(LAMBDA9);
        let w = r.whole();
        assert_eq!(r.bongartz(&w, &ids(&r, &["1/23"])).unwrap(), ids(&r, &["2/3", "3"]));
        let k = setup(KA2);
        let kw = k.whole();
        assert_eq!(k.bongartz(&kw, &ids(&k, &["1"])).unwrap(), ids(&k, &["1/2"]));
    }

    #[test]
    fn ka2_counts() {
        let r = setup(KA2);
        let w = r.whole();
        let objs = r.support_tau_rigid_objects(&w).unwrap();
        let mut keys: Vec<Key> = objs.iter().map(|o| r.perpendicular(&w, o).unwrap()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 5);
    }
}
