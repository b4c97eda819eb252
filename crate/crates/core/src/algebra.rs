//! Finite-dimensional quotients of path algebras.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::module::Module;
use crate::presentation::Presentation;

/// Refuse to expand path spaces beyond this many monomials.
const MONOMIAL_LIMIT: usize = 200_000;

/// A path of the quiver; `arrows` are listed in the order they are applied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Sparse linear combination of basis paths.
pub type Elem = BTreeMap<usize, Scalar>;

#[derive(Debug)]
pub struct Algebra {
    presentation: Presentation,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// Normal forms of monomials that are not basis elements (and have length below the cutoff).
    reducible: HashMap<Path, Elem>,
    /// Every path of length at least `cutoff` is zero.
    cutoff: usize,
    fingerprint: u64,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
    }
}

fn arrow_ok(p: &Presentation, path: &[usize]) -> bool {
    path.windows(2).all(|w| p.arrows[w[0]].target == p.arrows[w[1]].source)
}

fn all_paths(p: &Presentation, max_len: usize) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = (0..p.vertices.len()).map(Path::trivial).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for path in &frontier {
            for (ai, a) in p.arrows.iter().enumerate() {
                if a.source == path.target {
                    let mut arrows = path.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: path.source, target: a.target, arrows });
                }
            }
        }
        out.extend(next.iter().cloned());
        if out.len() > MONOMIAL_LIMIT {
            return Err(Error::NotFiniteDimensional(max_len));
        }
        frontier = next;
    }
    Ok(out)
}

/// Ideal generated by the relations inside the space of paths of length at most `d`,
/// kept in echelon form with the longest monomials as pivots.
struct TruncatedIdeal<'a> {
    p: &'a Presentation,
    d: usize,
    key: HashMap<Path, usize>,
    paths: Vec<Path>,
    rows: BTreeMap<usize, Elem>,
}

impl<'a> TruncatedIdeal<'a> {
    fn new(p: &'a Presentation, d: usize) -> Result<Self> {
        let mut paths = all_paths(p, d)?;
        paths.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
        let key = paths.iter().enumerate().map(|(i, q)| (q.clone(), i)).collect();
        Ok(TruncatedIdeal { p, d, key, paths, rows: BTreeMap::new() })
    }

    fn field(&self) -> Field {
        self.p.field
    }

    fn reduce(&self, mut v: Elem) -> Elem {
        let f = self.field();
        loop {
            let mut changed = false;
            let keys: Vec<usize> = v.keys().copied().collect();
            for k in keys {
                if let Some(row) = self.rows.get(&k) {
                    let c = v[&k].clone();
                    for (j, x) in row {
                        let cur = v.get(j).cloned().unwrap_or_else(Scalar::zero);
                        let nv = f.sub(&cur, &f.mul(&c, x));
                        if nv.is_zero() {
                            v.remove(j);
                        } else {
                            v.insert(*j, nv);
                        }
                    }
                    changed = true;
                    break;
                }
            }
            if !changed {
                return v;
            }
        }
    }

    fn insert(&mut self, v: Elem) -> Option<Elem> {
        let v = self.reduce(v);
        let (&lead, c) = v.iter().next()?;
        let inv = self.field().inv(c).expect("nonzero leading coefficient");
        let f = self.field();
        let v: Elem = v.iter().map(|(k, x)| (*k, f.mul(x, &inv))).collect();
        self.rows.insert(lead, v.clone());
        Some(v)
    }

    fn multiply(&self, v: &Elem, arrow: usize, left: bool) -> Elem {
        let a = &self.p.arrows[arrow];
        let mut out = Elem::new();
        for (k, c) in v {
            let path = &self.paths[*k];
            if path.len() + 1 > self.d {
                continue;
            }
            let np = if left {
                if path.target != a.source {
                    continue;
                }
                let mut arrows = path.arrows.clone();
                arrows.push(arrow);
                Path { source: path.source, target: a.target, arrows }
            } else {
                if a.target != path.source {
                    continue;
                }
                let mut arrows = vec![arrow];
                arrows.extend(path.arrows.iter().copied());
                Path { source: a.source, target: path.target, arrows }
            };
            let idx = self.key[&np];
            let cur = out.get(&idx).cloned().unwrap_or_else(Scalar::zero);
            let nv = self.field().add(&cur, c);
            if nv.is_zero() {
                out.remove(&idx);
            } else {
                out.insert(idx, nv);
            }
        }
        out
    }

    fn close(&mut self, generators: Vec<Elem>) {
        let mut queue: VecDeque<Elem> = VecDeque::new();
        for g in generators {
            if let Some(v) = self.insert(g) {
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for a in 0..self.p.arrows.len() {
                for left in [true, false] {
                    let w = self.multiply(&v, a, left);
                    if w.is_empty() {
                        continue;
                    }
                    if let Some(r) = self.insert(w) {
                        queue.push_back(r);
                    }
                }
            }
        }
    }

    /// Turns the echelon rows into fully reduced rows.
    fn fully_reduce(&mut self) {
        let keys: Vec<usize> = self.rows.keys().copied().collect();
        for k in keys.iter().rev() {
            let row = self.rows[k].clone();
            let mut tail = row.clone();
            tail.remove(k);
            let reduced_tail = self.reduce(tail);
            let mut new_row = reduced_tail;
            new_row.insert(*k, row[k].clone());
            self.rows.insert(*k, new_row);
        }
    }
}

impl Algebra {
    /// Builds the algebra, certifying finite dimension degree by degree.
    pub fn build(presentation: Presentation) -> Result<Arc<Algebra>> {
        let p = &presentation;
        let f = p.field;
        for rel in &p.relations {
            let text = p.relation_text(rel);
            for t in &rel.terms {
                if t.path.len() < 2 {
                    return Err(Error::NonAdmissible(text));
                }
                if !arrow_ok(p, &t.path) {
                    return Err(Error::InconsistentRelation(text));
                }
            }
            let first = &rel.terms[0].path;
            let (s0, t0) = (p.arrows[first[0]].source, p.arrows[*first.last().unwrap()].target);
            for t in &rel.terms {
                let (s, e) = (p.arrows[t.path[0]].source, p.arrows[*t.path.last().unwrap()].target);
                if (s, e) != (s0, t0) {
                    return Err(Error::InconsistentRelation(text));
                }
            }
        }
        let mut d = 1;
        let ideal = loop {
            d += 1;
            if d > p.bound {
                return Err(Error::NotFiniteDimensional(p.bound));
            }
            let mut ideal = TruncatedIdeal::new(p, d)?;
            let gens: Vec<Elem> = p
                .relations
                .iter()
                .map(|rel| {
                    let mut e = Elem::new();
                    for t in &rel.terms {
                        if t.path.len() > d {
                            continue;
                        }
                        let path = Path {
                            source: p.arrows[t.path[0]].source,
                            target: p.arrows[*t.path.last().unwrap()].target,
                            arrows: t.path.clone(),
                        };
                        let k = ideal.key[&path];
                        let cur = e.get(&k).cloned().unwrap_or_else(Scalar::zero);
                        let nv = f.add(&cur, &t.coeff);
                        if nv.is_zero() {
                            e.remove(&k);
                        } else {
                            e.insert(k, nv);
                        }
                    }
                    e
                })
                .filter(|e| !e.is_empty())
                .collect();
            ideal.close(gens);
            let top_dead = ideal.paths.iter().enumerate().filter(|(_, q)| q.len() == d).all(|(k, _)| {
                let mut e = Elem::new();
                e.insert(k, f.one());
                ideal.reduce(e).is_empty()
            });
            if top_dead {
                break ideal;
            }
        };
        let mut ideal = ideal;
        ideal.fully_reduce();
        let cutoff = d;
        let mut basis: Vec<Path> =
            ideal.paths.iter().enumerate().filter(|(k, _)| !ideal.rows.contains_key(k)).map(|(_, q)| q.clone()).collect();
        basis.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.arrows.cmp(&y.arrows)).then_with(|| x.source.cmp(&y.source)));
        let index: HashMap<Path, usize> = basis.iter().enumerate().map(|(i, q)| (q.clone(), i)).collect();
        let mut reducible = HashMap::new();
        for (k, row) in &ideal.rows {
            let path = ideal.paths[*k].clone();
            let mut nf = Elem::new();
            for (j, c) in row {
                if j == k {
                    continue;
                }
                let bi = index[&ideal.paths[*j]];
                nf.insert(bi, f.neg(c));
            }
            reducible.insert(path, nf);
        }
        let fingerprint = {
            use std::hash::{Hash, Hasher};
            let mut h = std::collections::hash_map::DefaultHasher::new();
            presentation.to_text().hash(&mut h);
            h.finish()
        };
        Ok(Arc::new(Algebra { presentation, basis, index, reducible, cutoff, fingerprint }))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn field(&self) -> Field {
        self.presentation.field
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn num_vertices(&self) -> usize {
        self.presentation.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.presentation.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.presentation.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.presentation.vertex_index(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_source(&self, a: usize) -> usize {
        self.presentation.arrows[a].source
    }

    pub fn arrow_target(&self, a: usize) -> usize {
        self.presentation.arrows[a].target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn path_name(&self, b: usize) -> String {
        let p = &self.basis[b];
        if p.is_trivial() {
            format!("e{}", self.vertex_name(p.source))
        } else {
            self.presentation.path_name(&p.arrows)
        }
    }

    /// Basis indices of paths from `v` to `w`.
    pub fn paths_between(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].source == v && self.basis[i].target == w).collect()
    }

    /// Normal form of an arbitrary path.
    pub fn reduce_path(&self, path: &Path) -> Elem {
        if path.len() >= self.cutoff {
            return Elem::new();
        }
        if let Some(&i) = self.index.get(path) {
            let mut e = Elem::new();
            e.insert(i, self.field().one());
            return e;
        }
        self.reducible.get(path).cloned().unwrap_or_default()
    }

    /// Product `x * y` of basis elements: `y` is applied first.
    pub fn mul_basis(&self, x: usize, y: usize) -> Elem {
        let (px, py) = (&self.basis[x], &self.basis[y]);
        if py.target != px.source {
            return Elem::new();
        }
        let mut arrows = py.arrows.clone();
        arrows.extend(px.arrows.iter().copied());
        self.reduce_path(&Path { source: py.source, target: px.target, arrows })
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let f = self.field();
        let mut out = Elem::new();
        for (i, a) in x {
            for (j, b) in y {
                let c = f.mul(a, b);
                for (k, v) in self.mul_basis(*i, *j) {
                    add_into(f, &mut out, k, &f.mul(&c, &v));
                }
            }
        }
        out
    }

    /// Arrow `a` as an element.
    pub fn arrow_elem(&self, a: usize) -> Elem {
        self.reduce_path(&Path { source: self.arrow_source(a), target: self.arrow_target(a), arrows: vec![a] })
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        let mut e = Elem::new();
        e.insert(i, self.field().one());
        e
    }

    /// The indecomposable projective `Λe_v`, with basis the paths starting at `v`.
    pub fn projective(self: &Arc<Self>, v: usize) -> Result<Module> {
        if v >= self.num_vertices() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let f = self.field();
        let n = self.num_vertices();
        let per: Vec<Vec<usize>> = (0..n).map(|w| self.paths_between(v, w)).collect();
        let dims: Vec<usize> = per.iter().map(Vec::len).collect();
        let mut arrows = Vec::new();
        for a in 0..self.num_arrows() {
            let (s, t) = (self.arrow_source(a), self.arrow_target(a));
            let ae = self.arrow_elem(a);
            let mut m = Matrix::zeros(dims[t], dims[s]);
            for (col, &p) in per[s].iter().enumerate() {
                let prod = self.mul(&ae, &self.basis_elem(p));
                for (k, c) in prod {
                    let row = per[t].iter().position(|&q| q == k).expect("product stays in the projective");
                    m.set(row, col, c);
                }
            }
            arrows.push(m);
        }
        let _ = f;
        Module::new(self.clone(), dims, arrows)
    }

    /// The indecomposable injective `D(e_v Λ)`, with basis the duals of paths ending at `v`.
    pub fn injective(self: &Arc<Self>, v: usize) -> Result<Module> {
        if v >= self.num_vertices() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let n = self.num_vertices();
        let per: Vec<Vec<usize>> = (0..n).map(|w| self.paths_between(w, v)).collect();
        let dims: Vec<usize> = per.iter().map(Vec::len).collect();
        let mut arrows = Vec::new();
        for a in 0..self.num_arrows() {
            let (s, t) = (self.arrow_source(a), self.arrow_target(a));
            let ae = self.arrow_elem(a);
            let mut m = Matrix::zeros(dims[t], dims[s]);
            for (row, &y) in per[t].iter().enumerate() {
                let prod = self.mul(&self.basis_elem(y), &ae);
                for (col, &p) in per[s].iter().enumerate() {
                    if let Some(c) = prod.get(&p) {
                        m.set(row, col, c.clone());
                    }
                }
            }
            arrows.push(m);
        }
        Module::new(self.clone(), dims, arrows)
    }

    /// Simple module at `v`.
    pub fn simple(self: &Arc<Self>, v: usize) -> Result<Module> {
        if v >= self.num_vertices() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let dims: Vec<usize> = (0..self.num_vertices()).map(|w| usize::from(w == v)).collect();
        let arrows = (0..self.num_arrows())
            .map(|a| Matrix::zeros(dims[self.arrow_target(a)], dims[self.arrow_source(a)]))
            .collect();
        Module::new(self.clone(), dims, arrows)
    }
}

pub(crate) fn add_into(f: Field, e: &mut Elem, k: usize, v: &Scalar) {
    if v.is_zero() {
        return;
    }
    let cur = e.get(&k).cloned().unwrap_or_else(Scalar::zero);
    let nv = f.add(&cur, v);
    if nv.is_zero() {
        e.remove(&k);
    } else {
        e.insert(k, nv);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    pub(crate) fn build(text: &str) -> Arc<Algebra> {
        Algebra::build(parse_presentation(text).unwrap()).unwrap()
    }

    const LAMBDA9: &str = "vertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow c : 1 -> 3\nrelation b*a\n";

    #[test]
    fn lambda9_dimension_and_basis() {
        let a = build(LAMBDA9);
        assert_eq!(a.dim(), 6);
        let names: Vec<String> = (0..a.dim()).map(|i| a.path_name(i)).collect();
        assert_eq!(names, vec!["e1", "e2", "e3", "a", "b", "c"]);
    }

    #[test]
    fn ka2_and_preprojective() {
        assert_eq!(build("vertex 1\nvertex 2\narrow a : 1 -> 2\n").dim(), 3);
        let pre = build("vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 2 -> 1\nrelation b*a\nrelation a*b\n");
        assert_eq!(pre.dim(), 4);
    }

    #[test]
    fn rejects_bad_relations() {
        let p = parse_presentation("vertex 1\nvertex 2\narrow a : 1 -> 2\nrelation a\n").unwrap();
        assert!(matches!(Algebra::build(p), Err(Error::NonAdmissible(_))));
        let p = parse_presentation(
            "vertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow c : 1 -> 2\narrow d : 2 -> 2\nrelation b*a - d*c\n",
        )
        .unwrap();
        assert!(matches!(Algebra::build(p), Err(Error::InconsistentRelation(_))));
        let p = parse_presentation("vertex 1\narrow x : 1 -> 1\n").unwrap();
        assert!(matches!(Algebra::build(p), Err(Error::NotFiniteDimensional(_))));
    }

    #[test]
    fn commutativity_relation() {
        // Commutative square: 4-dimensional paths of length 2 collapse to one.
        let a = build(
            "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a : 1 -> 2\narrow b : 2 -> 4\narrow c : 1 -> 3\narrow d : 3 -> 4\nrelation b*a - d*c\n",
        );
        assert_eq!(a.dim(), 4 + 4 + 1);
    }

    #[test]
    fn associativity_on_basis() {
        let a = build("vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 2 -> 1\nrelation a*b*a\n");
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                for z in 0..a.dim() {
                    let l = a.mul(&a.mul(&a.basis_elem(x), &a.basis_elem(y)), &a.basis_elem(z));
                    let r = a.mul(&a.basis_elem(x), &a.mul(&a.basis_elem(y), &a.basis_elem(z)));
                    assert_eq!(l, r);
                }
            }
        }
    }
}
