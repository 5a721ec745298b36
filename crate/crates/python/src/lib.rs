//! Python bindings: the `agg` extension module.
//!
//! Structures are wrapped in [`Structure`]; fuzzy subsets cross the boundary
//! as `(den, [num, ...])` pairs meaning `num[i] / den`; reports come back as
//! plain dicts and lists.

use agg_core::crisp::{classify_subset, enumerate_ideals, intra_regular_witness, is_intra_regular};
use agg_core::finder::{self, IsoMode, SearchSpec};
use agg_core::fuzzy::{classify_fuzzy, closure, gamma_product};
use agg_core::theorems::{self, DEFAULT_BUDGET};
use agg_core::{
    check_laws, corpus, CrispSubset, Error, FuzzyKind, FuzzySubset, GammaMagma, IdealKind, Lattice, Law, Mode,
    VerifyOptions,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

fn py_err(e: Error) -> PyErr {
    if e.is_capacity() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// Converts any serializable value into the equivalent Python object.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

type Fraction = (u64, Vec<u64>);

fn fuzzy(f: &Fraction) -> PyResult<FuzzySubset> {
    FuzzySubset::from_fractions(f.0, &f.1).map_err(py_err)
}

fn fraction(f: &FuzzySubset) -> Fraction {
    f.to_fractions()
}

/// A finite Γ-magma: one multiplication table per Γ-label.
#[pyclass(module = "agg", frozen)]
struct Structure {
    inner: GammaMagma,
}

#[pymethods]
impl Structure {
    /// Build from per-label tables; labels default to `g0, g1, ...`.
    #[new]
    #[pyo3(signature = (tables, labels=None))]
    fn new(tables: Vec<Vec<Vec<usize>>>, labels: Option<Vec<String>>) -> PyResult<Self> {
        let labels = labels.unwrap_or_else(|| (0..tables.len()).map(|i| format!("g{i}")).collect());
        let inner = GammaMagma::new(labels, tables).map_err(py_err)?;
        Ok(Structure { inner })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        GammaMagma::load(path).map(|inner| Structure { inner }).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        GammaMagma::from_json(text)
            .map(|inner| Structure { inner })
            .map_err(py_err)
    }

    /// A bundled structure: `ag9` or `ir5`.
    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        corpus::by_name(name).map(|inner| Structure { inner }).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn gamma(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    /// `x label y`.
    fn op(&self, x: usize, label: &str, y: usize) -> PyResult<usize> {
        self.inner.apply(x, label, y).map_err(py_err)
    }

    /// `{law: bool}` for every structural law.
    fn laws(&self) -> Vec<(String, bool)> {
        check_laws(&self.inner)
            .iter()
            .map(|(law, w)| (law.key().to_string(), w.is_none()))
            .collect()
    }

    /// The full law report, including witnesses, as a dict.
    fn law_report(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &check_laws(&self.inner))
    }

    fn is_intra_regular(&self) -> bool {
        is_intra_regular(&self.inner)
    }

    /// Least `(x, y, beta, xi, gamma)` with `a = (x beta (a xi a)) gamma y`, or None.
    fn intra_witness(&self, py: Python<'_>, a: usize) -> PyResult<Py<PyAny>> {
        let w = intra_regular_witness(&self.inner, a).map_err(py_err)?;
        to_py(py, &w)
    }

    /// Every non-empty crisp ideal of the given kind, as sorted element lists.
    fn ideals(&self, kind: &str) -> PyResult<Vec<Vec<usize>>> {
        let kind: IdealKind = kind.parse().map_err(py_err)?;
        let ideals = enumerate_ideals(&self.inner, kind).map_err(py_err)?;
        Ok(ideals.iter().map(CrispSubset::to_vec).collect())
    }

    /// The crisp kinds a non-empty subset belongs to.
    fn classify(&self, subset: Vec<usize>) -> PyResult<Vec<String>> {
        let a = CrispSubset::from_elements(self.inner.order(), subset).map_err(py_err)?;
        let kinds = classify_subset(&self.inner, &a).map_err(py_err)?;
        Ok(kinds.iter().map(|k| k.key().to_string()).collect())
    }

    /// The Γ-product `f ∘ g` of fuzzy subsets given as `(den, nums)`.
    fn product(&self, f: Fraction, g: Fraction) -> PyResult<Fraction> {
        let p = gamma_product(&self.inner, &fuzzy(&f)?, &fuzzy(&g)?).map_err(py_err)?;
        Ok(fraction(&p))
    }

    /// The fuzzy kinds `f` belongs to.
    fn classify_fuzzy(&self, f: Fraction) -> PyResult<Vec<String>> {
        let kinds = classify_fuzzy(&self.inner, &fuzzy(&f)?).map_err(py_err)?;
        Ok(kinds.iter().map(|k| k.key().to_string()).collect())
    }

    /// The least fuzzy subset of `kind` containing `f`.
    fn closure(&self, f: Fraction, kind: &str) -> PyResult<Option<Fraction>> {
        let kind: FuzzyKind = kind.parse().map_err(py_err)?;
        let c = closure(&self.inner, &fuzzy(&f)?, kind).map_err(py_err)?;
        Ok(c.as_ref().map(fraction))
    }

    /// Verify a registered statement; `mode` is `exhaustive` or `sampled:<seed>:<n>`.
    #[pyo3(signature = (theorem, lattice=1, mode="exhaustive", budget=None))]
    fn verify(
        &self,
        py: Python<'_>,
        theorem: &str,
        lattice: u64,
        mode: &str,
        budget: Option<u128>,
    ) -> PyResult<Py<PyAny>> {
        let lattice = Lattice::new(lattice).map_err(py_err)?;
        let mode: Mode = mode.parse().map_err(py_err)?;
        let opts = VerifyOptions {
            budget: budget.unwrap_or(DEFAULT_BUDGET),
        };
        let inner = &self.inner;
        let v = py
            .detach(|| theorems::verify(inner, theorem, lattice, mode, opts))
            .map_err(py_err)?;
        to_py(py, &v)
    }

    /// Closure, commutativity, associativity, idempotency and identity of the
    /// fuzzy two-sided ideals under the Γ-product.
    #[pyo3(signature = (lattice=1, budget=None))]
    fn semilattice(&self, py: Python<'_>, lattice: u64, budget: Option<u128>) -> PyResult<Py<PyAny>> {
        let lattice = Lattice::new(lattice).map_err(py_err)?;
        let opts = VerifyOptions {
            budget: budget.unwrap_or(DEFAULT_BUDGET),
        };
        let r = theorems::semilattice_report(&self.inner, lattice, opts).map_err(py_err)?;
        to_py(py, &r)
    }

    fn __repr__(&self) -> String {
        format!(
            "Structure(order={}, gamma={:?})",
            self.inner.order(),
            self.inner.labels()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner.flat() == other.inner.flat() && self.inner.labels() == other.inner.labels()
    }
}

/// Registered statement ids, in registry order.
#[pyfunction]
fn theorem_ids() -> Vec<&'static str> {
    theorems::ids().collect()
}

/// One representative per isomorphism class of the models of the given laws.
#[pyfunction]
#[pyo3(signature = (order, gamma=1, laws=Vec::new(), intra_regular=false, iso="elements_only", budget=None))]
fn enumerate_models(
    py: Python<'_>,
    order: usize,
    gamma: usize,
    laws: Vec<String>,
    intra_regular: bool,
    iso: &str,
    budget: Option<u64>,
) -> PyResult<Vec<Structure>> {
    let laws = laws
        .iter()
        .map(|l| l.parse::<Law>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    let spec = SearchSpec {
        order,
        gamma_count: gamma,
        laws,
        intra_regular,
        iso: iso.parse::<IsoMode>().map_err(py_err)?,
        budget: budget.unwrap_or(finder::DEFAULT_BUDGET),
    };
    let models = py.detach(|| finder::enumerate_models(&spec)).map_err(py_err)?;
    Ok(models.into_iter().map(|inner| Structure { inner }).collect())
}

#[pymodule]
fn agg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Structure>()?;
    m.add_function(wrap_pyfunction!(theorem_ids, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_models, m)?)?;
    Ok(())
}
