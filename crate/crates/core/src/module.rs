//! Quiver representations, their morphisms and the basic exact linear algebra on them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{Algebra, Path};
use crate::error::{Error, Result};
use crate::field::{scalar_to_string, small_divisors, Field, Scalar};
use crate::linalg::{span_basis, Matrix};

#[derive(Debug)]
struct Inner {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    arrows: Vec<Matrix>,
}

/// A representation of the quiver satisfying the relations. Cheap to clone.
#[derive(Clone)]
pub struct Module(Arc<Inner>);

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.0.dims)
    }
}

/// A family of vertex maps commuting with the arrows.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Module,
    pub target: Module,
    pub maps: Vec<Matrix>,
}

impl Module {
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Self> {
        if dims.len() != alg.num_vertices() || arrows.len() != alg.num_arrows() {
            return Err(Error::InvalidModule("wrong number of vertices or arrows".into()));
        }
        for (a, m) in arrows.iter().enumerate() {
            let (s, t) = (alg.arrow_source(a), alg.arrow_target(a));
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::InvalidModule(format!("arrow {a} has shape {}x{}", m.rows(), m.cols())));
            }
        }
        let module = Module(Arc::new(Inner { alg, dims, arrows }));
        module.check_relations()?;
        Ok(module)
    }

    fn new_unchecked(alg: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Matrix>) -> Self {
        Module(Arc::new(Inner { alg, dims, arrows }))
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        let dims = vec![0; alg.num_vertices()];
        let arrows = (0..alg.num_arrows()).map(|_| Matrix::zeros(0, 0)).collect();
        Module::new_unchecked(alg.clone(), dims, arrows)
    }

    fn check_relations(&self) -> Result<()> {
        let alg = self.algebra().clone();
        let f = self.field();
        for rel in &alg.presentation().relations {
            let first = &rel.terms[0].path;
            let (s, t) = (alg.arrow_source(first[0]), alg.arrow_target(*first.last().unwrap()));
            let mut acc = Matrix::zeros(self.dim_at(t), self.dim_at(s));
            for term in &rel.terms {
                acc = acc.add(f, &self.word_action(&term.path).scale(f, &term.coeff));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!(
                    "relation {} does not vanish",
                    alg.presentation().relation_text(rel)
                )));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.alg
    }

    pub fn field(&self) -> Field {
        self.0.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.0.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow(&self, a: usize) -> &Matrix {
        &self.0.arrows[a]
    }

    pub fn arrows(&self) -> &[Matrix] {
        &self.0.arrows
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(self.algebra(), other.algebra()) || self.algebra().fingerprint() == other.algebra().fingerprint()
    }

    /// Action of a word of arrows (application order) from its source vertex to its target vertex.
    pub fn word_action(&self, arrows: &[usize]) -> Matrix {
        let alg = self.algebra();
        let f = self.field();
        let Some(&first) = arrows.first() else {
            return Matrix::identity(0);
        };
        let mut m = Matrix::identity(self.dim_at(alg.arrow_source(first)));
        for &a in arrows {
            m = self.arrow(a).mul(f, &m);
        }
        m
    }

    pub fn path_action(&self, p: &Path) -> Matrix {
        if p.is_trivial() {
            Matrix::identity(self.dim_at(p.source))
        } else {
            self.word_action(&p.arrows)
        }
    }

    /// Action of the basis path with index `b`.
    pub fn basis_action(&self, b: usize) -> Matrix {
        let p = self.algebra().basis()[b].clone();
        self.path_action(&p)
    }

    /// Offsets of each vertex in the concatenated total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.0.dims.len());
        let mut acc = 0;
        for &d in &self.0.dims {
            o.push(acc);
            acc += d;
        }
        o
    }

    pub fn direct_sum(parts: &[Module]) -> Result<(Module, Vec<Morphism>, Vec<Morphism>)> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidModule("empty direct sum needs an algebra".into()));
        };
        let alg = first.algebra().clone();
        if parts.iter().any(|p| !p.same_algebra(first)) {
            return Err(Error::AlgebraMismatch);
        }
        let n = alg.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dim_at(v)).sum()).collect();
        let arrows = (0..alg.num_arrows())
            .map(|a| Matrix::block_diag(&parts.iter().map(|p| p.arrow(a).clone()).collect::<Vec<_>>()))
            .collect();
        let sum = Module::new_unchecked(alg, dims.clone(), arrows);
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut offs = vec![0usize; n];
        for p in parts {
            let mut im = Vec::new();
            let mut pm = Vec::new();
            for v in 0..n {
                let mut i = Matrix::zeros(dims[v], p.dim_at(v));
                let mut q = Matrix::zeros(p.dim_at(v), dims[v]);
                for k in 0..p.dim_at(v) {
                    i.set(offs[v] + k, k, p.field().one());
                    q.set(k, offs[v] + k, p.field().one());
                }
                im.push(i);
                pm.push(q);
                offs[v] += p.dim_at(v);
            }
            incl.push(Morphism { source: p.clone(), target: sum.clone(), maps: im });
            proj.push(Morphism { source: sum.clone(), target: p.clone(), maps: pm });
        }
        Ok((sum, incl, proj))
    }

    pub fn sum_of(alg: &Arc<Algebra>, parts: &[Module]) -> Module {
        if parts.is_empty() {
            Module::zero(alg)
        } else {
            Module::direct_sum(parts).expect("parts share an algebra").0
        }
    }

    /// Submodule spanned at each vertex by the columns of `spaces[v]` (assumed independent and invariant).
    pub fn submodule(&self, spaces: &[Matrix]) -> (Module, Morphism) {
        let alg = self.algebra().clone();
        let f = self.field();
        let dims: Vec<usize> = spaces.iter().map(Matrix::cols).collect();
        let arrows = (0..alg.num_arrows())
            .map(|a| {
                let (s, t) = (alg.arrow_source(a), alg.arrow_target(a));
                let img = self.arrow(a).mul(f, &spaces[s]);
                spaces[t].solve(f, &img).expect("subspace is invariant")
            })
            .collect();
        let sub = Module::new_unchecked(alg, dims, arrows);
        let incl = Morphism { source: sub.clone(), target: self.clone(), maps: spaces.to_vec() };
        (sub, incl)
    }

    /// Quotient by the invariant subspaces `spaces[v]`, with the projection.
    pub fn quotient(&self, spaces: &[Matrix]) -> (Module, Morphism) {
        let (q, proj, _) = self.quotient_with_section(spaces);
        (q, proj)
    }

    /// Like [`Module::quotient`], also returning a linear (not module) section at each vertex.
    pub fn quotient_with_section(&self, spaces: &[Matrix]) -> (Module, Morphism, Vec<Matrix>) {
        let alg = self.algebra().clone();
        let f = self.field();
        let n = alg.num_vertices();
        let mut projs = Vec::with_capacity(n);
        let mut lifts = Vec::with_capacity(n);
        for v in 0..n {
            let d = self.dim_at(v);
            let s = spaces[v].column_basis(f);
            let units = s.complement_units(f);
            let mut lift = Matrix::zeros(d, units.len());
            for (j, &u) in units.iter().enumerate() {
                lift.set(u, j, f.one());
            }
            let full = s.hstack(&lift);
            let inv = full.inverse(f).expect("basis extension is invertible");
            let rows: Vec<usize> = (s.cols()..d).collect();
            projs.push(inv.select_rows(&rows));
            lifts.push(lift);
        }
        let dims: Vec<usize> = lifts.iter().map(Matrix::cols).collect();
        let arrows = (0..alg.num_arrows())
            .map(|a| {
                let (s, t) = (alg.arrow_source(a), alg.arrow_target(a));
                projs[t].mul(f, &self.arrow(a).mul(f, &lifts[s]))
            })
            .collect();
        let q = Module::new_unchecked(alg, dims, arrows);
        let proj = Morphism { source: self.clone(), target: q.clone(), maps: projs };
        (q, proj, lifts)
    }

    /// Smallest submodule containing the given vectors (`gens[v]` are columns at vertex v).
    pub fn generated_subspaces(&self, gens: &[Matrix]) -> Vec<Matrix> {
        let alg = self.algebra();
        let f = self.field();
        let n = alg.num_vertices();
        let mut spaces: Vec<Matrix> = (0..n).map(|v| gens[v].column_basis(f)).collect();
        loop {
            let mut changed = false;
            for a in 0..alg.num_arrows() {
                let (s, t) = (alg.arrow_source(a), alg.arrow_target(a));
                let img = self.arrow(a).mul(f, &spaces[s]);
                let joined = spaces[t].hstack(&img).column_basis(f);
                if joined.cols() > spaces[t].cols() {
                    spaces[t] = joined;
                    changed = true;
                }
            }
            if !changed {
                return spaces;
            }
        }
    }

    pub fn identity(&self) -> Morphism {
        Morphism {
            source: self.clone(),
            target: self.clone(),
            maps: self.dims().iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn zero_map(&self, target: &Module) -> Morphism {
        Morphism {
            source: self.clone(),
            target: target.clone(),
            maps: (0..self.dims().len()).map(|v| Matrix::zeros(target.dim_at(v), self.dim_at(v))).collect(),
        }
    }

    /// Radical `rad M = Σ_arrows im M_a`.
    pub fn radical_subspaces(&self) -> Vec<Matrix> {
        let alg = self.algebra();
        let f = self.field();
        let n = alg.num_vertices();
        (0..n)
            .map(|v| {
                let parts: Vec<Matrix> =
                    (0..alg.num_arrows()).filter(|&a| alg.arrow_target(a) == v).map(|a| self.arrow(a).clone()).collect();
                Matrix::hstack_all(self.dim_at(v), &parts).column_basis(f)
            })
            .collect()
    }

    /// Socle `soc M = ∩_arrows ker M_a` at each vertex.
    pub fn socle_subspaces(&self) -> Vec<Matrix> {
        let alg = self.algebra();
        let f = self.field();
        (0..alg.num_vertices())
            .map(|v| {
                let parts: Vec<Matrix> =
                    (0..alg.num_arrows()).filter(|&a| alg.arrow_source(a) == v).map(|a| self.arrow(a).clone()).collect();
                if parts.is_empty() {
                    return Matrix::identity(self.dim_at(v));
                }
                let stacked = Matrix::vstack_all(self.dim_at(v), &parts);
                stacked.kernel_matrix(f)
            })
            .collect()
    }

    /// Top dimension vector `dim M/rad M`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_subspaces().iter().zip(self.dims()).map(|(r, d)| d - r.cols()).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle_subspaces().iter().map(Matrix::cols).collect()
    }

    /// Dimension vectors of the radical layers `rad^i M / rad^{i+1} M`.
    pub fn loewy_layers(&self) -> Vec<Vec<usize>> {
        let mut layers = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let rad = cur.radical_subspaces();
            layers.push(rad.iter().zip(cur.dims()).map(|(r, d)| d - r.cols()).collect());
            let (sub, _) = cur.submodule(&rad);
            if sub.total_dim() == cur.total_dim() {
                break;
            }
            cur = sub;
        }
        layers
    }

    pub fn to_json(&self) -> Value {
        let alg = self.algebra();
        let mut arrows = serde_json::Map::new();
        for (a, arrow) in alg.presentation().arrows.iter().enumerate() {
            let m = self.arrow(a);
            let rows: Vec<Value> = (0..m.rows())
                .map(|i| Value::Array((0..m.cols()).map(|j| Value::String(scalar_to_string(m.get(i, j)))).collect()))
                .collect();
            arrows.insert(arrow.name.clone(), Value::Array(rows));
        }
        json!({ "dimension_vector": self.dims(), "arrows": Value::Object(arrows) })
    }

    pub fn from_json(alg: &Arc<Algebra>, v: &Value) -> Result<Module> {
        let bad = |m: &str| Error::InvalidModule(m.to_string());
        let dims: Vec<usize> = v
            .get("dimension_vector")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing dimension_vector"))?
            .iter()
            .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| bad("bad dimension")))
            .collect::<Result<_>>()?;
        if dims.len() != alg.num_vertices() {
            return Err(bad("dimension vector length"));
        }
        let arrows_v = v.get("arrows").and_then(Value::as_object).ok_or_else(|| bad("missing arrows"))?;
        let f = alg.field();
        let mut arrows = Vec::new();
        for (a, arrow) in alg.presentation().arrows.iter().enumerate() {
            let (rows, cols) = (dims[alg.arrow_target(a)], dims[alg.arrow_source(a)]);
            let mut m = Matrix::zeros(rows, cols);
            if let Some(rv) = arrows_v.get(&arrow.name) {
                let rv = rv.as_array().ok_or_else(|| bad("arrow matrix"))?;
                if rv.len() != rows {
                    return Err(bad("arrow matrix rows"));
                }
                for (i, row) in rv.iter().enumerate() {
                    let row = row.as_array().ok_or_else(|| bad("arrow matrix row"))?;
                    if row.len() != cols {
                        return Err(bad("arrow matrix columns"));
                    }
                    for (j, x) in row.iter().enumerate() {
                        let s = match x {
                            Value::String(s) => s.clone(),
                            Value::Number(n) => n.to_string(),
                            _ => return Err(bad("matrix entry")),
                        };
                        m.set(i, j, f.parse_scalar(&s).ok_or_else(|| bad("matrix entry"))?);
                    }
                }
            } else if rows * cols != 0 {
                return Err(bad(&format!("missing matrix for arrow {}", arrow.name)));
            }
            arrows.push(m);
        }
        Module::new(alg.clone(), dims, arrows)
    }
}

impl Morphism {
    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        let f = self.field();
        self.maps.iter().all(|m| m.is_invertible(f))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        let f = self.field();
        Morphism {
            source: other.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.mul(f, b)).collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let f = self.field();
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(f, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        let f = self.field();
        Morphism { source: self.source.clone(), target: self.target.clone(), maps: self.maps.iter().map(|a| a.scale(f, c)).collect() }
    }

    /// Whether every commuting square holds.
    pub fn is_valid(&self) -> bool {
        let alg = self.source.algebra();
        let f = self.field();
        (0..alg.num_arrows()).all(|a| {
            let (s, t) = (alg.arrow_source(a), alg.arrow_target(a));
            self.maps[t].mul(f, self.source.arrow(a)) == self.target.arrow(a).mul(f, &self.maps[s])
        })
    }

    /// Concatenation of all vertex matrices, row-major, in a fixed order.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.maps.iter().flat_map(|m| m.data().iter().cloned()).collect()
    }

    pub fn kernel(&self) -> (Module, Morphism) {
        let f = self.field();
        let spaces: Vec<Matrix> = self.maps.iter().map(|m| m.kernel_matrix(f)).collect();
        self.source.submodule(&spaces)
    }

    pub fn image(&self) -> (Module, Morphism) {
        let f = self.field();
        let spaces: Vec<Matrix> = self.maps.iter().map(|m| m.column_basis(f)).collect();
        self.target.submodule(&spaces)
    }

    pub fn cokernel(&self) -> (Module, Morphism) {
        let f = self.field();
        let spaces: Vec<Matrix> = self.maps.iter().map(|m| m.column_basis(f)).collect();
        self.target.quotient(&spaces)
    }

    pub fn rank_vector(&self) -> Vec<usize> {
        let f = self.field();
        self.maps.iter().map(|m| m.rank(f)).collect()
    }

    /// Block matrix on total spaces.
    pub fn total_matrix(&self) -> Matrix {
        Matrix::block_diag(&self.maps)
    }
}

/// Basis of `Hom(m, n)`, obtained as the nullspace of the commuting-square equations.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<Morphism>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = m.algebra();
    let f = m.field();
    let nv = alg.num_vertices();
    let mut offs = Vec::with_capacity(nv);
    let mut total = 0;
    for v in 0..nv {
        offs.push(total);
        total += n.dim_at(v) * m.dim_at(v);
    }
    if total == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for a in 0..alg.num_arrows() {
        let (s, t) = (alg.arrow_source(a), alg.arrow_target(a));
        let (ma, na) = (m.arrow(a), n.arrow(a));
        let (ms, mt, ns, nt) = (m.dim_at(s), m.dim_at(t), n.dim_at(s), n.dim_at(t));
        // (f_t M_a - N_a f_s)[i][j] = 0
        for i in 0..nt {
            for j in 0..ms {
                let mut row = vec![Scalar::zero(); total];
                let mut nonzero = false;
                for k in 0..mt {
                    let c = ma.get(k, j);
                    if !c.is_zero() {
                        let idx = offs[t] + i * mt + k;
                        row[idx] = f.add(&row[idx], c);
                        nonzero = true;
                    }
                }
                for k in 0..ns {
                    let c = na.get(i, k);
                    if !c.is_zero() {
                        let idx = offs[s] + k * ms + j;
                        row[idx] = f.sub(&row[idx], c);
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let eq = if rows.is_empty() {
        Matrix::zeros(0, total)
    } else {
        Matrix::from_rows(rows.len(), total, rows.into_iter().flatten().collect())
    };
    let sols = eq.nullspace(f);
    Ok(sols.into_iter().map(|v| unflatten(m, n, &offs, &v)).collect())
}

fn unflatten(m: &Module, n: &Module, offs: &[usize], v: &[Scalar]) -> Morphism {
    let maps = (0..m.dims().len())
        .map(|w| {
            let (r, c) = (n.dim_at(w), m.dim_at(w));
            Matrix::from_rows(r, c, v[offs[w]..offs[w] + r * c].to_vec())
        })
        .collect();
    Morphism { source: m.clone(), target: n.clone(), maps }
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

/// Writes `g` in terms of a basis of morphisms with the same source and target.
pub fn coordinates(basis: &[Morphism], g: &Morphism) -> Option<Vec<Scalar>> {
    let f = g.field();
    let len = g.flatten().len();
    if basis.is_empty() {
        return if g.is_zero() { Some(Vec::new()) } else { None };
    }
    let cols: Vec<Vec<Scalar>> = basis.iter().map(Morphism::flatten).collect();
    let a = Matrix::from_columns(len, &cols);
    a.solve_vec(f, &g.flatten())
}

pub fn combine(basis: &[Morphism], coeffs: &[Scalar], source: &Module, target: &Module) -> Morphism {
    let mut acc = source.zero_map(target);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Minimal polynomial of a square matrix, monic, lowest degree first.
pub(crate) fn minimal_polynomial(f: Field, m: &Matrix) -> Vec<Scalar> {
    let n = m.rows();
    let mut powers: Vec<Vec<Scalar>> = vec![Matrix::identity(n).to_vec()];
    let mut cur = Matrix::identity(n);
    loop {
        cur = cur.mul(f, m);
        let target = cur.to_vec();
        let a = Matrix::from_columns(n * n, &powers);
        if let Some(x) = a.solve_vec(f, &target) {
            let mut poly: Vec<Scalar> = x.iter().map(|c| f.neg(c)).collect();
            poly.push(f.one());
            return poly;
        }
        powers.push(target);
    }
}

fn eval_poly(f: Field, poly: &[Scalar], x: &Scalar) -> Scalar {
    poly.iter().rev().fold(Scalar::zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Roots in the ground field of a polynomial (lowest degree first), found exactly where possible.
pub(crate) fn field_roots(f: Field, poly: &[Scalar]) -> Vec<Scalar> {
    let mut roots = Vec::new();
    let mut p: Vec<Scalar> = poly.to_vec();
    while p.len() > 1 && p[0].is_zero() {
        if roots.is_empty() {
            roots.push(Scalar::zero());
        }
        p.remove(0);
    }
    if p.len() <= 1 {
        return roots;
    }
    match f {
        Field::Prime(q) => {
            if q <= 100_000 {
                for v in 1..q {
                    let x = f.from_i64(v as i64);
                    if eval_poly(f, &p, &x).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
        Field::Rationals => {
            let lcm = p.iter().fold(num_bigint::BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
            let ints: Vec<num_bigint::BigInt> = p.iter().map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer()).collect();
            let (Some(num_div), Some(den_div)) = (small_divisors(&ints[0]), small_divisors(ints.last().unwrap())) else {
                return roots;
            };
            let mut seen = Vec::new();
            for a in &num_div {
                for b in &den_div {
                    for sign in [1i64, -1] {
                        let x = Scalar::new(a * num_bigint::BigInt::from(sign), b.clone());
                        if !seen.contains(&x) && eval_poly(f, &p, &x).is_zero() {
                            seen.push(x.clone());
                            roots.push(x);
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn end_total(g: &Morphism) -> Matrix {
    g.total_matrix()
}

fn shifted(g: &Morphism, c: &Scalar) -> Morphism {
    let f = g.field();
    let id = g.source.identity();
    g.add(&id.scale(&f.neg(c)))
}

fn power(g: &Morphism, e: usize) -> Morphism {
    let f = g.field();
    Morphism { source: g.source.clone(), target: g.target.clone(), maps: g.maps.iter().map(|m| m.pow(f, e)).collect() }
}

/// Candidate endomorphisms tried when searching for a splitting.
fn split_candidates(f: Field, basis: &[Morphism]) -> Vec<Morphism> {
    let mut out: Vec<Morphism> = basis.to_vec();
    let k = basis.len();
    for i in 0..k {
        for j in (i + 1)..k {
            out.push(basis[i].add(&basis[j]));
            out.push(basis[i].add(&basis[j].scale(&f.from_i64(-1))));
            out.push(basis[i].add(&basis[j].scale(&f.from_i64(2))));
        }
    }
    if k > 2 {
        let mut acc = basis[0].clone();
        for (i, b) in basis.iter().enumerate().skip(1) {
            acc = acc.add(&b.scale(&f.from_i64(i as i64 + 1)));
        }
        out.push(acc);
    }
    out
}

/// Looks for an endomorphism that is neither nilpotent nor invertible and returns the
/// resulting Fitting splitting `(ker g^d, im g^d)` as subspaces.
fn find_splitting(m: &Module, end: &[Morphism]) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    let f = m.field();
    let d = m.total_dim();
    for cand in split_candidates(f, end) {
        let poly = minimal_polynomial(f, &end_total(&cand));
        for c in field_roots(f, &poly) {
            let g = power(&shifted(&cand, &c), d);
            if g.is_zero() || g.is_iso() {
                continue;
            }
            let ker: Vec<Matrix> = g.maps.iter().map(|x| x.kernel_matrix(f)).collect();
            let im: Vec<Matrix> = g.maps.iter().map(|x| x.column_basis(f)).collect();
            return Some((ker, im));
        }
    }
    None
}

/// Certificate that `End(M) = k·1 ⊕ J` with `J` a nilpotent ideal.
pub fn has_split_local_endomorphisms(m: &Module, end: &[Morphism]) -> bool {
    if m.is_zero() {
        return false;
    }
    let f = m.field();
    let d = m.total_dim();
    let mut radical = Vec::new();
    for e in end {
        let poly = minimal_polynomial(f, &end_total(e));
        let roots = field_roots(f, &poly);
        if roots.len() != 1 {
            return false;
        }
        let g = shifted(e, &roots[0]);
        if !power(&g, d).is_zero() {
            return false;
        }
        radical.push(g);
    }
    let len = m.identity().flatten().len();
    let vecs: Vec<Vec<Scalar>> = radical.iter().map(Morphism::flatten).collect();
    let jbasis = span_basis(f, len, &vecs);
    if jbasis.len() + 1 != end.len() {
        return false;
    }
    let mut with_id = jbasis.clone();
    with_id.push(m.identity().flatten());
    if span_basis(f, len, &with_id).len() != end.len() {
        return false;
    }
    // Nilpotency of the ideal: J^k shrinks to zero.
    let mut power_span: Vec<Morphism> = radical.clone();
    for _ in 0..=d {
        let prods: Vec<Vec<Scalar>> =
            power_span.iter().flat_map(|x| radical.iter().map(move |j| x.compose(j).flatten())).collect();
        let b = span_basis(f, len, &prods);
        if b.is_empty() {
            return true;
        }
        power_span = b.iter().map(|v| unflatten_like(m, v)).collect();
    }
    false
}

fn unflatten_like(m: &Module, v: &[Scalar]) -> Morphism {
    let mut offs = Vec::new();
    let mut acc = 0;
    for &d in m.dims() {
        offs.push(acc);
        acc += d * d;
    }
    unflatten(m, m, &offs, v)
}

/// Basis of the radical of a split local endomorphism algebra, or `None` if `End(M)` is not split local.
pub fn radical_basis(m: &Module, end: &[Morphism]) -> Option<Vec<Morphism>> {
    if !has_split_local_endomorphisms(m, end) {
        return None;
    }
    let f = m.field();
    let len = m.identity().flatten().len();
    let vecs: Vec<Vec<Scalar>> = end
        .iter()
        .map(|e| {
            let roots = field_roots(f, &minimal_polynomial(f, &end_total(e)));
            shifted(e, &roots[0]).flatten()
        })
        .collect();
    Some(span_basis(f, len, &vecs).iter().map(|v| unflatten_like(m, v)).collect())
}

pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let end = hom_basis(m, m)?;
    if find_splitting(m, &end).is_some() {
        return Ok(false);
    }
    if has_split_local_endomorphisms(m, &end) {
        Ok(true)
    } else {
        Err(Error::DecompositionFailure("no splitting found but End(M) is not split local".into()))
    }
}

/// Splits a module into indecomposable summands (order: by the recursive Fitting splitting).
pub fn decompose(m: &Module) -> Result<Vec<Module>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let end = hom_basis(m, m)?;
    if let Some((ker, im)) = find_splitting(m, &end) {
        let (a, _) = m.submodule(&ker);
        let (b, _) = m.submodule(&im);
        let mut out = decompose(&a)?;
        out.extend(decompose(&b)?);
        return Ok(out);
    }
    if has_split_local_endomorphisms(m, &end) {
        Ok(vec![m.clone()])
    } else {
        Err(Error::DecompositionFailure(format!("module with dimension vector {:?}", m.dims())))
    }
}

/// Isomorphism of two indecomposable modules.
pub fn is_isomorphic_indecomposable(a: &Module, b: &Module) -> Result<bool> {
    if a.dims() != b.dims() {
        return Ok(false);
    }
    let ab = hom_basis(a, b)?;
    if ab.is_empty() {
        return Ok(false);
    }
    let ba = hom_basis(b, a)?;
    for g in &ba {
        for h in &ab {
            if g.compose(h).is_iso() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Isomorphism test by Krull-Schmidt matching of indecomposable summands.
pub fn is_isomorphic(a: &Module, b: &Module) -> Result<bool> {
    if !a.same_algebra(b) {
        return Err(Error::AlgebraMismatch);
    }
    if a.dims() != b.dims() {
        return Ok(false);
    }
    let da = decompose(a)?;
    let db = decompose(b)?;
    if da.len() != db.len() {
        return Ok(false);
    }
    let mut used = vec![false; db.len()];
    for x in &da {
        let mut found = false;
        for (j, y) in db.iter().enumerate() {
            if !used[j] && is_isomorphic_indecomposable(x, y)? {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Iso-classes of indecomposable modules keyed by first-seen id.
#[derive(Clone, Debug, Default)]
pub struct IsoClassRegistry {
    modules: Vec<Module>,
    by_dims: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl IsoClassRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn get(&self, id: usize) -> &Module {
        &self.modules[id]
    }

    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    /// Id of the registered class isomorphic to the indecomposable `m`, if any.
    pub fn lookup(&self, m: &Module) -> Result<Option<usize>> {
        if let Some(ids) = self.by_dims.get(m.dims()) {
            for &id in ids {
                if is_isomorphic_indecomposable(&self.modules[id], m)? {
                    return Ok(Some(id));
                }
            }
        }
        Ok(None)
    }

    /// Registers an indecomposable; returns its id and whether it was new.
    pub fn insert(&mut self, m: Module) -> Result<(usize, bool)> {
        if let Some(id) = self.lookup(&m)? {
            return Ok((id, false));
        }
        let id = self.modules.len();
        self.by_dims.entry(m.dims().to_vec()).or_default().push(id);
        self.modules.push(m);
        Ok((id, true))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    pub const LAMBDA9: &str =
        "vertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow c : 1 -> 3\nrelation b*a\n";
    pub const KA2: &str = "vertex 1\nvertex 2\narrow a : 1 -> 2\n";

    pub fn alg(text: &str) -> Arc<Algebra> {
        Algebra::build(parse_presentation(text).unwrap()).unwrap()
    }

    /// Module over Λ9 with every arrow given by a scalar on one-dimensional spaces.
    pub fn thin(a: &Arc<Algebra>, dims: [usize; 3], vals: [i64; 3]) -> Module {
        let f = a.field();
        let arrows = (0..3)
            .map(|i| {
                let (s, t) = (a.arrow_source(i), a.arrow_target(i));
                let mut m = Matrix::zeros(dims[t], dims[s]);
                if dims[t] == 1 && dims[s] == 1 {
                    m.set(0, 0, f.from_i64(vals[i]));
                }
                m
            })
            .collect();
        Module::new(a.clone(), dims.to_vec(), arrows).unwrap()
    }

    #[test]
    fn projectives_and_injectives_of_lambda9() {
        let a = alg(LAMBDA9);
        let p1 = a.projective(0).unwrap();
        assert_eq!(p1.dims(), &[1, 1, 1]);
        assert!(!p1.arrow(0).is_zero());
        assert!(p1.arrow(1).is_zero());
        assert_eq!(a.projective(2).unwrap().dims(), &[0, 0, 1]);
        assert_eq!(a.injective(0).unwrap().dims(), &[1, 0, 0]);
        let i3 = a.injective(2).unwrap();
        assert_eq!(i3.dims(), &[1, 1, 1]);
        assert_eq!(i3.top_dims(), vec![1, 1, 0]);
        let total_p: usize = (0..3).map(|v| a.projective(v).unwrap().total_dim()).sum();
        let total_i: usize = (0..3).map(|v| a.injective(v).unwrap().total_dim()).sum();
        assert_eq!(total_p, a.dim());
        assert_eq!(total_i, a.dim());
    }

    #[test]
    fn hom_dimensions() {
        let a = alg(LAMBDA9);
        let s2 = a.simple(1).unwrap();
        let m12 = thin(&a, [1, 1, 0], [1, 0, 0]);
        assert_eq!(hom_dim(&s2, &m12).unwrap(), 1);
        let p1 = a.projective(0).unwrap();
        let s3 = a.simple(2).unwrap();
        assert_eq!(hom_dim(&p1, &s3).unwrap(), 0);
        assert_eq!(hom_dim(&a.simple(0).unwrap(), &s2).unwrap(), 0);
        for h in hom_basis(&p1, &p1).unwrap() {
            assert!(h.is_valid());
        }
    }

    #[test]
    fn kernel_image_cokernel() {
        let a = alg(KA2);
        let p1 = a.projective(0).unwrap();
        let s1 = a.simple(0).unwrap();
        let h = hom_basis(&p1, &s1).unwrap();
        assert_eq!(h.len(), 1);
        let (k, _) = h[0].kernel();
        assert_eq!(k.dims(), &[0, 1]);
        let (c, _) = p1.zero_map(&p1).cokernel();
        assert_eq!(c.dims(), p1.dims());
        let l = alg(LAMBDA9);
        let s2 = l.simple(1).unwrap();
        let m12 = thin(&l, [1, 1, 0], [1, 0, 0]);
        let g = &hom_basis(&s2, &m12).unwrap()[0];
        let (im, _) = g.image();
        assert_eq!(im.dims(), &[0, 1, 0]);
    }

    #[test]
    fn decomposition_and_isomorphism() {
        let a = alg(LAMBDA9);
        let p1 = a.projective(0).unwrap();
        let m = thin(&a, [1, 1, 1], [0, 1, 1]);
        assert!(is_indecomposable(&p1).unwrap());
        assert!(is_indecomposable(&m).unwrap());
        assert!(!is_isomorphic(&p1, &m).unwrap());
        let (sum, _, _) = Module::direct_sum(&[p1.clone(), m.clone()]).unwrap();
        let parts = decompose(&sum).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|x| x.dims() == [1, 1, 1]));
        assert!(!is_isomorphic(&parts[0], &parts[1]).unwrap());
        assert!(is_isomorphic(&sum, &sum).unwrap());
        assert!(!is_isomorphic(&a.simple(1).unwrap(), &a.simple(2).unwrap()).unwrap());
        // a twisted copy of P1 is still P1
        let twisted = thin(&a, [1, 1, 1], [3, 0, -2]);
        assert!(is_isomorphic(&twisted, &p1).unwrap());
    }

    #[test]
    fn registry_dedups() {
        let a = alg(LAMBDA9);
        let mut reg = IsoClassRegistry::new();
        assert_eq!(reg.insert(a.projective(0).unwrap()).unwrap(), (0, true));
        assert_eq!(reg.insert(thin(&a, [1, 1, 1], [5, 0, 7])).unwrap(), (0, false));
        assert_eq!(reg.insert(thin(&a, [1, 1, 1], [0, 1, 1])).unwrap(), (1, true));
    }

    #[test]
    fn json_round_trip() {
        let a = alg(LAMBDA9);
        let p1 = a.projective(0).unwrap();
        let v = p1.to_json();
        let back = Module::from_json(&a, &v).unwrap();
        assert_eq!(back.dims(), p1.dims());
        assert_eq!(back.arrows(), p1.arrows());
    }
}
