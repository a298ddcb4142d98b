//! Python bindings. Rationals go in as `str`, `int` or `fractions.Fraction`
//! and come back as `fractions.Fraction`.

use diagramkit::arith::{format_rational, parse_rational, Rational};
use diagramkit::canonical::canonical_form;
use diagramkit::dcc::CoefficientSet;
use diagramkit::diagram::{self, BoundCase, EnumerationResult, SearchConfig};
use diagramkit::discrepancy::{is_log_terminal_graph, log_discrepancies, DEFAULT_SUBGRAPH_BUDGET};
use diagramkit::graph_file::{parse_graph, serialize_graph};
use diagramkit::{check_star, Error, WeightedGraph};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

create_exception!(pydiagramkit, DiagramError, PyValueError);
create_exception!(pydiagramkit, SingularError, DiagramError);
create_exception!(pydiagramkit, BudgetError, DiagramError);
create_exception!(pydiagramkit, InfiniteTailError, DiagramError);

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Singular(_) => SingularError::new_err(msg),
        Error::BudgetExceeded { .. } => BudgetError::new_err(msg),
        Error::InfiniteTail { .. } => InfiniteTailError::new_err(msg),
        _ => DiagramError::new_err(msg),
    }
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&obj.str()?.to_string()).map_err(err)
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(r),))
}

fn fractions<'py>(py: Python<'py>, rs: &[Rational]) -> PyResult<Bound<'py, PyList>> {
    let items = rs.iter().map(|r| fraction(py, r)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn config(threads: usize) -> SearchConfig {
    SearchConfig::with_threads(threads)
}

/// A weighted graph of exceptional curves.
#[pyclass(name = "Graph", eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph {
    inner: WeightedGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new() -> Self {
        PyGraph { inner: WeightedGraph::new() }
    }

    /// Parses the `v id w= g=` / `e a b m=` text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: parse_graph(text).map_err(err)? })
    }

    #[staticmethod]
    fn chain(weights: Vec<u32>) -> PyResult<Self> {
        if weights.contains(&0) {
            return Err(DiagramError::new_err("weights must be positive"));
        }
        Ok(PyGraph { inner: WeightedGraph::chain(&weights) })
    }

    fn to_text(&self) -> String {
        serialize_graph(&self.inner)
    }

    #[pyo3(signature = (id, weight, genus = 0))]
    fn add_vertex(&mut self, id: &str, weight: u32, genus: u32) -> PyResult<()> {
        self.inner.add_vertex(id, weight, genus).map(|_| ()).map_err(err)
    }

    #[pyo3(signature = (a, b, multiplicity = 1))]
    fn add_edge(&mut self, a: &str, b: &str, multiplicity: u32) -> PyResult<()> {
        self.inner.add_edge(a, b, multiplicity).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Graph({:?})", canonical_form(&self.inner).code)
    }

    /// `(id, weight, genus)` in stored order.
    fn vertices(&self) -> Vec<(String, u32, u32)> {
        self.inner.vertices().iter().map(|v| (v.id.clone(), v.weight, v.genus)).collect()
    }

    fn edges(&self) -> Vec<(String, String, u32)> {
        self.inner
            .edges()
            .map(|(i, j, m)| (self.inner.vertex(i).id.clone(), self.inner.vertex(j).id.clone(), m))
            .collect()
    }

    /// Isomorphism-invariant code.
    fn canonical_code(&self) -> String {
        canonical_form(&self.inner).code
    }

    fn blowup_vertex(&self, v: &str, new_id: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: self.inner.blowup_vertex(v, new_id).map_err(err)? })
    }

    fn blowup_edge(&self, u: &str, v: &str, new_id: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: self.inner.blowup_edge(u, v, new_id).map_err(err)? })
    }

    fn blowdown(&self, e: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: self.inner.blowdown(e).map_err(err)? })
    }

    /// `{"class", "lanner", "signature": (n_plus, n_zero, n_minus)}`.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = diagram::classify_graph(&self.inner);
        let d = PyDict::new(py);
        d.set_item("class", c.kind.name())?;
        d.set_item("lanner", c.lanner)?;
        d.set_item("signature", (c.signature.n_plus, c.signature.n_zero, c.signature.n_minus))?;
        Ok(d)
    }

    /// Log discrepancies `f_i` in stored order.
    fn log_discrepancies<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let d = log_discrepancies(&self.inner).map_err(err)?;
        fractions(py, &d.log_discrepancies)
    }

    #[pyo3(signature = (budget = DEFAULT_SUBGRAPH_BUDGET))]
    fn is_log_terminal(&self, budget: usize) -> PyResult<bool> {
        Ok(is_log_terminal_graph(&self.inner, budget).map_err(err)?.log_terminal)
    }

    /// `(feasible, witness)`; the witness is `None` when infeasible.
    fn check_star<'py>(
        &self,
        py: Python<'py>,
        eps: &Bound<'py, PyAny>,
    ) -> PyResult<(bool, Option<Bound<'py, PyList>>)> {
        let cert = check_star(&self.inner, &rational(eps)?).map_err(err)?;
        let witness = cert.witness.as_deref().map(|w| fractions(py, w)).transpose()?;
        Ok((cert.feasible, witness))
    }
}

fn enumeration<'py>(py: Python<'py>, r: EnumerationResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("count", r.stats.count)?;
    d.set_item("s1", r.stats.s1)?;
    d.set_item("exhausted", r.exhausted)?;
    d.set_item("level_sizes", r.stats.level_sizes)?;
    let graphs: Vec<PyGraph> = r.graphs.into_iter().map(|e| PyGraph { inner: e.graph }).collect();
    d.set_item("graphs", graphs)?;
    Ok(d)
}

#[pyfunction]
fn parse(text: &str) -> PyResult<PyGraph> {
    PyGraph::from_text(text)
}

#[pyfunction]
#[pyo3(signature = (eps, max_vertices, threads = 1))]
fn enumerate_minimal_elliptic<'py>(
    py: Python<'py>,
    eps: &Bound<'py, PyAny>,
    max_vertices: usize,
    threads: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let eps = rational(eps)?;
    let r = py.detach(|| diagram::enumerate_minimal_elliptic_star(&eps, max_vertices, &config(threads)));
    enumeration(py, r.map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (seed, eps, max_steps = 64, threads = 1))]
fn lanner_closure<'py>(
    py: Python<'py>,
    seed: &PyGraph,
    eps: &Bound<'py, PyAny>,
    max_steps: usize,
    threads: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let eps = rational(eps)?;
    let seed = seed.inner.clone();
    let r = py.detach(|| diagram::lanner_blowup_search(&seed, &eps, max_steps, &config(threads)));
    enumeration(py, r.map_err(err)?)
}

#[pyfunction]
fn nikulin_bound<'py>(
    py: Python<'py>,
    case: &str,
    c1: &Bound<'py, PyAny>,
    c2: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let case: BoundCase = case.parse().map_err(err)?;
    let r = diagram::nikulin_bound(case, &rational(c1)?, &rational(c2)?).map_err(err)?;
    fraction(py, &r.bound)
}

#[pyfunction]
fn pair_bound_constants<'py>(
    py: Python<'py>,
    eps: &Bound<'py, PyAny>,
    d: u32,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let (c1, c2) = diagram::pair_bound_constants(&rational(eps)?, d).map_err(err)?;
    Ok((fraction(py, &c1)?, fraction(py, &c2)?))
}

/// Log terminality of the tower over the weight-2 chain, `k = 1..7`.
#[pyfunction]
fn e9_tower(py: Python<'_>) -> Vec<bool> {
    py.detach(diagram::e9_lemma_check).steps.iter().map(|s| s.log_terminal).collect()
}

/// A coefficient set given as comma-separated `standard`, `p/q` and
/// `family:c:a:k_min` items.
#[pyclass(name = "CoefficientSet")]
struct PyCoefficientSet {
    inner: CoefficientSet,
}

#[pymethods]
impl PyCoefficientSet {
    #[new]
    #[pyo3(signature = (items = "standard"))]
    fn new(items: &str) -> PyResult<Self> {
        Ok(PyCoefficientSet { inner: items.parse().map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("CoefficientSet({:?})", self.inner.to_string())
    }

    fn __contains__(&self, x: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.contains(&rational(x)?))
    }

    fn min_positive<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.inner.min_positive().map(|r| fraction(py, &r)).transpose()
    }

    fn below<'py>(&self, py: Python<'py>, t: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyList>> {
        fractions(py, &self.inner.below_threshold(&rational(t)?).map_err(err)?)
    }
}

#[pymodule]
fn pydiagramkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyGraph>()?;
    m.add_class::<PyCoefficientSet>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_minimal_elliptic, m)?)?;
    m.add_function(wrap_pyfunction!(lanner_closure, m)?)?;
    m.add_function(wrap_pyfunction!(nikulin_bound, m)?)?;
    m.add_function(wrap_pyfunction!(pair_bound_constants, m)?)?;
    m.add_function(wrap_pyfunction!(e9_tower, m)?)?;
    m.add("DiagramError", py.get_type::<DiagramError>())?;
    m.add("SingularError", py.get_type::<SingularError>())?;
    m.add("BudgetError", py.get_type::<BudgetError>())?;
    m.add("InfiniteTailError", py.get_type::<InfiniteTailError>())?;
    Ok(())
}
