use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use ::tauwide::exceptional::signed_sequences;
use ::tauwide::{
    factorizations, parse_presentation, phi, run_verify, Catalog, Field, Obj, Reducer, WideCategory, DEFAULT_BUDGET,
    SUITES,
};

create_exception!(tauwide, TauWideError, PyException);

fn err(e: ::tauwide::Error) -> PyErr {
    TauWideError::new_err(e.to_string())
}

fn parse_field(s: &str) -> PyResult<Field> {
    let t = s.trim();
    if t == "Q" || t == "QQ" {
        return Ok(Field::Rationals);
    }
    let p: u64 = t
        .trim_start_matches("Fp")
        .trim_start_matches('F')
        .trim()
        .parse()
        .map_err(|_| TauWideError::new_err(format!("unknown field `{s}`")))?;
    Field::prime(p).map_err(err)
}

/// A bound quiver algebra given by its text presentation.
#[pyclass(frozen, module = "tauwide")]
struct Algebra {
    inner: Arc<::tauwide::Algebra>,
}

#[pymethods]
impl Algebra {
    #[new]
    #[pyo3(signature = (text, field = None))]
    fn new(text: &str, field: Option<&str>) -> PyResult<Self> {
        let mut p = parse_presentation(text).map_err(err)?;
        if let Some(f) = field {
            p = p.with_field(parse_field(f)?);
        }
        Ok(Algebra { inner: ::tauwide::Algebra::build(p).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.presentation().vertices.clone()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    fn to_text(&self) -> String {
        self.inner.presentation().to_text()
    }

    fn __repr__(&self) -> String {
        format!("Algebra(vertices={}, dim={}, field={})", self.inner.num_vertices(), self.inner.dim(), self.inner.field())
    }
}

/// Indecomposables, reduction maps and the category of wide subcategories of an algebra.
#[pyclass(frozen, module = "tauwide")]
struct Category {
    inner: WideCategory,
}

impl Category {
    fn reducer(&self) -> &Reducer {
        self.inner.reducer()
    }

    fn catalog(&self) -> &Catalog {
        self.reducer().catalog()
    }

    fn obj(&self, text: &str) -> PyResult<Obj> {
        Obj::parse(text, self.catalog()).map_err(err)
    }

    fn id(&self, label: &str) -> PyResult<usize> {
        self.catalog().id_by_label(label).ok_or_else(|| TauWideError::new_err(format!("unknown module `{label}`")))
    }

    fn names(&self, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&i| self.catalog().label(i).to_string()).collect()
    }
}

#[pymethods]
impl Category {
    #[new]
    #[pyo3(signature = (algebra, budget = DEFAULT_BUDGET))]
    fn new(py: Python<'_>, algebra: &Algebra, budget: usize) -> PyResult<Self> {
        let alg = algebra.inner.clone();
        let inner = py
            .detach(|| {
                let cat = Catalog::build(&alg, budget)?;
                WideCategory::build(Arc::new(Reducer::new(Arc::new(cat))))
            })
            .map_err(err)?;
        Ok(Category { inner })
    }

    /// Loewy labels of the indecomposables, indexed by catalog id.
    fn labels(&self) -> Vec<String> {
        self.catalog().labels().to_vec()
    }

    fn dimension_vector(&self, label: &str) -> PyResult<Vec<usize>> {
        Ok(self.catalog().module(self.id(label)?).dims().to_vec())
    }

    /// The AR translate, `None` for projectives.
    fn tau(&self, label: &str) -> PyResult<Option<String>> {
        let id = self.id(label)?;
        Ok(self.catalog().tau(id).map(|t| self.catalog().label(t).to_string()))
    }

    fn hom(&self, a: &str, b: &str) -> PyResult<usize> {
        Ok(self.catalog().hom(self.id(a)?, self.id(b)?))
    }

    fn ext(&self, a: &str, b: &str) -> PyResult<usize> {
        Ok(self.catalog().ext(self.id(a)?, self.id(b)?))
    }

    fn is_support_tau_rigid(&self, obj: &str) -> PyResult<bool> {
        let o = self.obj(obj)?;
        self.reducer().is_support_tau_rigid(&self.reducer().whole(), &o).map_err(err)
    }

    /// Members of `J(U)`.
    fn perpendicular(&self, u: &str) -> PyResult<Vec<String>> {
        let key = self.reducer().perpendicular(&self.reducer().whole(), &self.obj(u)?).map_err(err)?;
        Ok(self.names(&key))
    }

    /// `E_U(X)` in the whole module category.
    fn reduce(&self, u: &str, x: &str) -> PyResult<String> {
        let r = self.reducer();
        let y = r.e_map(&r.whole(), &self.obj(u)?, &self.obj(x)?).map_err(err)?;
        Ok(y.display(self.catalog()))
    }

    /// `F_U(Y)`, the inverse of [`Category::reduce`].
    fn lift(&self, u: &str, y: &str) -> PyResult<String> {
        let r = self.reducer();
        let x = r.f_map(&r.whole(), &self.obj(u)?, &self.obj(y)?).map_err(err)?;
        Ok(x.display(self.catalog()))
    }

    /// `(rank, members)` for each wide subcategory.
    fn wide_subcategories(&self) -> Vec<(usize, Vec<String>)> {
        self.inner.objects().iter().map(|w| (w.rank, self.names(&w.key))).collect()
    }

    fn hom_count(&self, source: usize, target: usize) -> usize {
        self.inner.hom_set(source, target).len()
    }

    /// Label of `b ∘ a` for `a = g^{W}_U` from object `source` and `b = g_V` out of its target.
    fn compose(&self, source: usize, u: &str, v: &str) -> PyResult<String> {
        let a = self.inner.morphism(source, self.obj(u)?).map_err(err)?;
        let b = self.inner.morphism(a.target, self.obj(v)?).map_err(err)?;
        Ok(self.inner.compose(&b, &a).map_err(err)?.label.display(self.catalog()))
    }

    /// Each factorization as its labels in application order.
    #[pyo3(signature = (label, source = None))]
    fn factorizations(&self, label: &str, source: Option<usize>) -> PyResult<Vec<Vec<String>>> {
        let source = match source {
            Some(s) => s,
            None => self.inner.object_index(&self.reducer().whole()).expect("whole category is an object"),
        };
        let m = self.inner.morphism(source, self.obj(label)?).map_err(err)?;
        let fs = factorizations(&self.inner, &m).map_err(err)?;
        Ok(fs.iter().map(|f| f.chain.iter().map(|g| g.label.display(self.catalog())).collect()).collect())
    }

    /// Signed τ-exceptional sequences of the given length with their images under `φ`.
    fn sequences(&self, length: usize) -> PyResult<Vec<(String, String)>> {
        let r = self.reducer();
        let w = r.whole();
        let cat = self.catalog();
        let mut out = Vec::new();
        for s in signed_sequences(r, &w, length).map_err(err)? {
            let p = phi(r, &w, &s).map_err(err)?;
            out.push((Obj::display_sequence(&s, cat), Obj::display_sequence(&p, cat)));
        }
        Ok(out)
    }

    #[pyo3(signature = (format = "json", drop_zero_object = false))]
    fn export(&self, format: &str, drop_zero_object: bool) -> PyResult<String> {
        match format {
            "json" => Ok(serde_json::to_string_pretty(&self.inner.to_json(drop_zero_object)).expect("json")),
            "dot" => Ok(self.inner.to_dot(drop_zero_object)),
            _ => Err(TauWideError::new_err(format!("unknown format `{format}`"))),
        }
    }

    fn ar_quiver(&self, format: &str) -> PyResult<String> {
        match format {
            "json" => Ok(serde_json::to_string_pretty(&self.catalog().ar_json()).expect("json")),
            "dot" => Ok(self.catalog().ar_dot()),
            _ => Err(TauWideError::new_err(format!("unknown format `{format}`"))),
        }
    }

    /// Runs the theorem suites; returns `(passed, report_json)`.
    #[pyo3(signature = (suites = None))]
    fn verify(&self, py: Python<'_>, suites: Option<Vec<String>>) -> PyResult<(bool, String)> {
        let names: Vec<String> = suites.unwrap_or_else(|| SUITES.iter().map(|s| s.to_string()).collect());
        if let Some(bad) = names.iter().find(|s| !SUITES.contains(&s.as_str())) {
            return Err(TauWideError::new_err(format!("unknown suite `{bad}`")));
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let report = py.detach(|| run_verify(&self.inner, &refs)).map_err(err)?;
        Ok((report.passed(), serde_json::to_string(&report).expect("json")))
    }

    fn __len__(&self) -> usize {
        self.inner.objects().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Category(indecomposables={}, objects={}, morphisms={})",
            self.catalog().len(),
            self.inner.objects().len(),
            self.inner.morphisms().len()
        )
    }
}

#[pymodule]
mod tauwide {
    #[pymodule_export]
    use super::{Algebra, Category, TauWideError};
}
