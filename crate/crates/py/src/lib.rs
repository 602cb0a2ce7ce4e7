use std::sync::Arc;

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use zdaut::aut::{self, Limits, Status};
use zdaut::decomposition::max_length_decomposition;
use zdaut::semiring::Axiom;
use zdaut::zdg::{brute_force_aut, export_dot};
use zdaut::{Builtin, Error, FiniteSemiring, MatrixSpace};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Budget(_) | Error::VertexCap { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A finite semiring given by operation tables.
#[pyclass(name = "Semiring", frozen)]
struct PySemiring {
    inner: Arc<FiniteSemiring>,
}

impl PySemiring {
    fn element(&self, name: &str) -> PyResult<usize> {
        self.inner
            .element(name)
            .ok_or_else(|| PyValueError::new_err(format!("no element named `{name}`")))
    }

    fn names(&self, set: &fixedbitset::FixedBitSet) -> Vec<String> {
        set.ones().map(|x| self.inner.name_of(x).to_string()).collect()
    }
}

#[pymethods]
impl PySemiring {
    /// Builds `bool`, `chain<k>`, or a product such as `"bool x chain3"`.
    #[staticmethod]
    fn builtin(descriptor: &str) -> PyResult<Self> {
        let b: Builtin = descriptor.parse().map_err(to_py)?;
        Ok(PySemiring {
            inner: Arc::new(b.build().map_err(to_py)?),
        })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PySemiring {
            inner: Arc::new(FiniteSemiring::parse(text).map_err(to_py)?),
        })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!("Semiring({:?}, size={})", self.inner.name(), self.inner.size())
    }

    fn add(&self, a: &str, b: &str) -> PyResult<String> {
        let x = self.inner.add(self.element(a)?, self.element(b)?);
        Ok(self.inner.name_of(x).to_string())
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        let x = self.inner.mul(self.element(a)?, self.element(b)?);
        Ok(self.inner.name_of(x).to_string())
    }

    /// Maps each axiom to `None` when it holds, else its witness.
    fn check_axioms(&self) -> Vec<(String, Option<String>)> {
        let report = self.inner.check_axioms();
        Axiom::ALL
            .iter()
            .map(|&a| (a.key().to_string(), report.witness(a).map(|w| w.display(&self.inner))))
            .collect()
    }

    fn annihilator(&self, x: &str) -> PyResult<Vec<String>> {
        Ok(self.names(&self.inner.annihilator(self.element(x)?)))
    }

    fn zero_divisors(&self) -> Vec<String> {
        self.names(&self.inner.zero_divisor_set())
    }

    /// `(alpha, parts)` of the canonical maximal-length decomposition.
    fn decompose(&self) -> PyResult<(String, Vec<String>)> {
        self.inner.require_commutative_antiring_with_identity().map_err(to_py)?;
        let d = max_length_decomposition(&self.inner).map_err(to_py)?;
        let name = |x: usize| self.inner.name_of(x).to_string();
        Ok((name(d.alpha), d.parts.iter().map(|&e| name(e)).collect()))
    }
}

fn limits(vertex_cap: Option<usize>) -> Limits {
    let mut l = Limits::default();
    if let Some(cap) = vertex_cap {
        l.vertex_cap = cap;
    }
    l
}

/// Twin-class sizes of Γ(M_n(S)), classes ordered by least member.
#[pyfunction]
#[pyo3(signature = (s, n=1, vertex_cap=None))]
fn twin_sizes(s: &PySemiring, n: usize, vertex_cap: Option<usize>) -> PyResult<Vec<usize>> {
    let space = MatrixSpace::new(s.inner.clone(), n, limits(vertex_cap).vertex_cap).map_err(to_py)?;
    Ok(space.partition_by_ann().sizes())
}

/// |Aut Γ(M_n(S))| from the structure formula.
#[pyfunction]
#[pyo3(signature = (s, n=1, vertex_cap=None))]
fn aut_order(s: &PySemiring, n: usize, vertex_cap: Option<usize>) -> PyResult<BigUint> {
    aut::aut_order(&s.inner, n, &limits(vertex_cap)).map_err(to_py)
}

/// |Aut Γ(M_n(S))| from the backtracking search.
#[pyfunction]
#[pyo3(signature = (s, n=1, vertex_cap=None))]
fn oracle_order(s: &PySemiring, n: usize, vertex_cap: Option<usize>) -> PyResult<BigUint> {
    let l = limits(vertex_cap);
    let space = MatrixSpace::new(s.inner.clone(), n, l.vertex_cap).map_err(to_py)?;
    let g = space.zero_divisor_digraph();
    Ok(brute_force_aut(&g, l.budget).map_err(to_py)?.order)
}

/// Synthesized generators as image lists over matrix indices.
#[pyfunction]
#[pyo3(signature = (s, n=1, vertex_cap=None))]
fn generators(s: &PySemiring, n: usize, vertex_cap: Option<usize>) -> PyResult<Vec<Vec<usize>>> {
    let (desc, _) = aut::describe(&s.inner, n, &limits(vertex_cap)).map_err(to_py)?;
    Ok(desc.generators.into_iter().map(|g| g.into_vec()).collect())
}

/// `(check, status, detail)` triples; status is `PASS`, `FAIL` or `SKIPPED(...)`.
#[pyfunction]
#[pyo3(signature = (s, n=1, vertex_cap=None))]
fn verify(s: &PySemiring, n: usize, vertex_cap: Option<usize>) -> PyResult<Vec<(String, String, String)>> {
    let report = aut::verify(&s.inner, n, &limits(vertex_cap)).map_err(to_py)?;
    Ok(report
        .checks
        .into_iter()
        .map(|c| {
            let (status, detail) = match c.status {
                Status::Pass(d) => ("PASS".to_string(), d),
                Status::Fail(d) => ("FAIL".to_string(), d),
                Status::Skipped(tag, d) => (format!("SKIPPED({tag})"), d),
            };
            (c.name.to_string(), status, detail)
        })
        .collect())
}

/// Γ(M_n(S)) in DOT.
#[pyfunction]
#[pyo3(signature = (s, n=1, vertex_cap=None))]
fn dot(s: &PySemiring, n: usize, vertex_cap: Option<usize>) -> PyResult<String> {
    let space = MatrixSpace::new(s.inner.clone(), n, limits(vertex_cap).vertex_cap).map_err(to_py)?;
    Ok(export_dot(&space.zero_divisor_digraph(), Some(&space.labels()), None))
}

#[pymodule]
fn zdaut_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySemiring>()?;
    m.add_function(wrap_pyfunction!(twin_sizes, m)?)?;
    m.add_function(wrap_pyfunction!(aut_order, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_order, m)?)?;
    m.add_function(wrap_pyfunction!(generators, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(dot, m)?)?;
    Ok(())
}
