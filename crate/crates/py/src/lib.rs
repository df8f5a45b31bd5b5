//! Python bindings: permutation groups, the verifiers, field snapshots and
//! the analytic and counting operations on them.

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use octic_core::analytic::{self, DEFAULT_PRIME_BOUND};
use octic_core::nfdata::{self, record_to_line};
use octic_core::splitting::{self, splitting_symbol, tower_actions};
use octic_core::verify::{self, VerificationReport};
use octic_core::{catalog, counting};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn reports<'py>(py: Python<'py>, rs: &[VerificationReport]) -> PyResult<Bound<'py, PyAny>> {
    let v = Value::Array(rs.iter().map(|r| r.to_json(false)).collect());
    to_py(py, &v)
}

#[pyclass(name = "PermGroup", frozen)]
struct PyPermGroup(octic_core::PermGroup);

#[pymethods]
impl PyPermGroup {
    #[new]
    fn new(degree: usize, generators: Vec<String>) -> PyResult<Self> {
        let gens: Vec<&str> = generators.iter().map(String::as_str).collect();
        octic_core::PermGroup::from_cycle_strings(degree, &gens)
            .map(PyPermGroup)
            .map_err(err)
    }

    /// Group of a catalog label such as `"8T23"`.
    #[staticmethod]
    fn catalog(label: &str) -> PyResult<Self> {
        catalog::lookup(label).map(PyPermGroup).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        octic_core::PermGroup::parse_canonical(text)
            .map(PyPermGroup)
            .map_err(err)
    }

    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn order(&self) -> u128 {
        self.0.order()
    }

    fn is_transitive(&self) -> bool {
        self.0.is_transitive()
    }

    fn malle_alpha(&self) -> PyResult<String> {
        self.0.malle_alpha().map(|a| a.to_string()).map_err(err)
    }

    fn index_set(&self) -> Vec<usize> {
        self.0.index_set().into_iter().collect()
    }

    fn cyclic_subgroup_orders(&self) -> Vec<u64> {
        self.0.cyclic_subgroup_orders().into_iter().collect()
    }

    fn canonical_text(&self) -> String {
        self.0.canonical_text()
    }

    fn __repr__(&self) -> String {
        format!("PermGroup(degree={}, order={})", self.0.degree(), self.0.order())
    }
}

#[pyfunction]
fn catalog_labels() -> Vec<&'static str> {
    catalog::labels().collect()
}

#[pyfunction]
fn verify_groups(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    reports(py, &verify::verify_all())
}

#[pyfunction]
#[pyo3(signature = (include_nontame = false))]
fn verify_splitting(py: Python<'_>, include_nontame: bool) -> PyResult<Bound<'_, PyAny>> {
    let rs = [
        splitting::verify_gl23_splitting(include_nontame),
        splitting::verify_gl23_norm_valuations(include_nontame),
        splitting::verify_8t40_quartic_valuations(include_nontame),
    ];
    reports(py, &rs)
}

/// Splitting symbols in the octic action for every tame configuration of a
/// catalog group, as `(config key, symbol)` pairs.
#[pyfunction]
fn splitting_symbols(label: &str) -> PyResult<Vec<(String, String)>> {
    let g = catalog::lookup(label).map_err(err)?;
    let actions = tower_actions(&g).map_err(err)?;
    splitting::enumerate_tame_configs(&g)
        .iter()
        .map(|c| {
            let s = splitting_symbol(c, &actions.octic).map_err(err)?;
            Ok((c.key(), s.to_string()))
        })
        .collect()
}

/// Degrees and multiplicities of the irreducible factors modulo `p` of a
/// monic polynomial given constant term first.
#[pyfunction]
fn factor_mod_p(coeffs: Vec<BigInt>, p: u64) -> PyResult<Vec<(usize, u32)>> {
    analytic::factor_mod_p(&coeffs, p).map_err(err)
}

#[pyclass(name = "Snapshot", frozen)]
struct PySnapshot(nfdata::Snapshot);

#[pymethods]
impl PySnapshot {
    #[staticmethod]
    fn ingest(path: PathBuf) -> PyResult<Self> {
        nfdata::ingest(&path).map(PySnapshot).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (text, provenance = "python"))]
    fn from_text(text: &str, provenance: &str) -> PyResult<Self> {
        nfdata::ingest_str(text, provenance).map(PySnapshot).map_err(err)
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        nfdata::load(&path).map(PySnapshot).map_err(err)
    }

    fn persist(&self, path: PathBuf) -> PyResult<()> {
        nfdata::persist(&self.0, &path).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn provenance(&self) -> String {
        self.0.provenance.clone()
    }

    fn labels(&self) -> Vec<String> {
        self.0.records.keys().cloned().collect()
    }

    /// Matching records as canonical JSON lines, sorted by `(|disc|, label)`.
    #[pyo3(signature = (degree = None, galois = Vec::new(), max_disc = None))]
    fn query(&self, degree: Option<u32>, galois: Vec<String>, max_disc: Option<BigUint>) -> Vec<String> {
        nfdata::query(&self.0, degree, &galois, max_disc.as_ref())
            .into_iter()
            .map(record_to_line)
            .collect()
    }

    fn audit<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &counting::audit_lemmas(&self.0).to_json(false))
    }

    #[pyo3(signature = (label, prime_bound = DEFAULT_PRIME_BOUND))]
    fn zeta_k_at_2(&self, label: &str, prime_bound: u64) -> PyResult<(f64, f64)> {
        let r = self.0.get(label).ok_or_else(|| err(format!("no record {label}")))?;
        let z = analytic::zeta_k_at_2(r, prime_bound).map_err(err)?;
        Ok((z.value, z.error_bound))
    }

    #[pyo3(signature = (max_disc, prime_bound = DEFAULT_PRIME_BOUND))]
    fn partial_constant<'py>(
        &self,
        py: Python<'py>,
        max_disc: BigInt,
        prime_bound: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let c = analytic::partial_constant(&self.0, &max_disc, prime_bound).map_err(err)?;
        to_py(py, &serde_json::to_value(&c).map_err(err)?)
    }

    fn count(&self, labels: Vec<String>, checkpoints: Vec<u128>) -> PyResult<Vec<u64>> {
        let labels: BTreeSet<String> = labels.into_iter().collect();
        counting::count_series(&self.0, &labels, &checkpoints)
            .map(|s| s.counts)
            .map_err(err)
    }

    fn tail_count(&self, z: BigUint, x: BigUint) -> u64 {
        counting::tail_count(&self.0, &z, &x)
    }
}

#[pymodule]
fn octic(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermGroup>()?;
    m.add_class::<PySnapshot>()?;
    m.add_function(wrap_pyfunction!(catalog_labels, m)?)?;
    m.add_function(wrap_pyfunction!(verify_groups, m)?)?;
    m.add_function(wrap_pyfunction!(verify_splitting, m)?)?;
    m.add_function(wrap_pyfunction!(splitting_symbols, m)?)?;
    m.add_function(wrap_pyfunction!(factor_mod_p, m)?)?;
    Ok(())
}
