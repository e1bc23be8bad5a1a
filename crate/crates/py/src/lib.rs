use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde::Serialize;
use serde_json::Value;

use barriers_core::barrier::{barrier_best_first, barrier_exact, code_barrier_exact, BarrierResult, BestFirstConfig, CodeRef, ExactConfig, SyndromeEnergy, Target};
use barriers_core::classical::{expansion_scan, random_biregular, DEFAULT_SUBSET_CAP};
use barriers_core::confinement::{self, confinement_scan, soundness_scan, ConfinementFn, ScanOptions};
use barriers_core::hgp::{hgp, predict};
use barriers_core::logicals::canonical_logicals;
use barriers_core::report::{run_verify, VerifyConfig};
use barriers_core::tensor::bound_ledger;
use barriers_core::{composite_repetition, repetition_code, BitMatrix, BitVector, ClassicalCode, CssCode, HgpCode, Kind};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for x in items {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &serde_json::to_value(value).map_err(err)?)
}

fn matrix_from(rows: Vec<Vec<u8>>) -> PyResult<BitMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    let rows = rows
        .into_iter()
        .map(|r| {
            if r.len() != cols {
                return Err(err("rows have different lengths"));
            }
            Ok(BitVector::from_bits(r))
        })
        .collect::<PyResult<Vec<_>>>()?;
    BitMatrix::from_rows(cols, rows).map_err(err)
}

fn matrix_to(m: &BitMatrix) -> Vec<Vec<u8>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c) as u8).collect()).collect()
}

fn bits_from(bits: Vec<u8>, n: usize) -> PyResult<BitVector> {
    if bits.len() != n {
        return Err(err(format!("expected {n} bits, got {}", bits.len())));
    }
    Ok(BitVector::from_bits(bits))
}

fn kind_from(s: &str) -> PyResult<Kind> {
    s.parse().map_err(err)
}

fn barrier_dict<'py>(py: Python<'py>, r: &BarrierResult) -> PyResult<Bound<'py, PyAny>> {
    let d = to_dict(py, r)?;
    d.set_item("endpoint", r.endpoint().iter_ones().collect::<Vec<_>>())?;
    Ok(d)
}

#[pyclass(name = "ClassicalCode", frozen)]
struct PyClassical {
    inner: ClassicalCode,
}

#[pymethods]
impl PyClassical {
    #[new]
    fn new(rows: Vec<Vec<u8>>) -> PyResult<Self> {
        let inner = ClassicalCode::from_parity(matrix_from(rows)?).map_err(err)?;
        Ok(PyClassical { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (length, periodic = false))]
    fn repetition(length: usize, periodic: bool) -> PyResult<Self> {
        Ok(PyClassical { inner: repetition_code(length, periodic).map_err(err)? })
    }

    #[staticmethod]
    fn composite(length: usize) -> PyResult<Self> {
        Ok(PyClassical { inner: composite_repetition(length).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (n, dv, dc, seed = 7))]
    fn biregular(n: usize, dv: usize, dc: usize, seed: u64) -> PyResult<Self> {
        Ok(PyClassical { inner: random_biregular(n, dv, dc, seed).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn parity(&self) -> Vec<Vec<u8>> {
        matrix_to(self.inner.parity())
    }

    fn transpose(&self) -> PyResult<Self> {
        Ok(PyClassical { inner: self.inner.transpose().map_err(err)? })
    }

    fn distance(&self) -> PyResult<usize> {
        self.inner.distance().map_err(err)
    }

    fn syndrome_energy(&self, bits: Vec<u8>) -> PyResult<usize> {
        self.inner.syndrome_energy(&bits_from(bits, self.inner.n())?).map_err(err)
    }

    #[pyo3(signature = (cap = 22))]
    fn barrier<'py>(&self, py: Python<'py>, cap: usize) -> PyResult<Bound<'py, PyAny>> {
        let cfg = ExactConfig { cap, ..Default::default() };
        barrier_dict(py, &code_barrier_exact(CodeRef::Classical(&self.inner), &cfg).map_err(err)?)
    }

    fn expansion<'py>(&self, py: Python<'py>, max_size: usize) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &expansion_scan(&self.inner, max_size, DEFAULT_SUBSET_CAP).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("ClassicalCode(n={}, m={}, k={})", self.inner.n(), self.inner.m(), self.inner.k())
    }
}

#[pyclass(name = "HgpCode", frozen)]
struct PyHgp {
    inner: HgpCode,
}

impl PyHgp {
    fn css(&self) -> &CssCode {
        &self.inner.css
    }
}

#[pymethods]
impl PyHgp {
    #[new]
    fn new(factors: Vec<PyRef<'_, PyClassical>>) -> PyResult<Self> {
        let codes: Vec<ClassicalCode> = factors.iter().map(|f| f.inner.clone()).collect();
        Ok(PyHgp { inner: hgp(&codes).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.css().n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.css().k()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn hx(&self) -> Vec<Vec<u8>> {
        matrix_to(self.css().hx())
    }

    fn hz(&self) -> Vec<Vec<u8>> {
        matrix_to(self.css().hz())
    }

    fn meta_x(&self) -> Option<Vec<Vec<u8>>> {
        self.css().meta_x().map(matrix_to)
    }

    fn meta_z(&self) -> Option<Vec<Vec<u8>>> {
        self.css().meta_z().map(matrix_to)
    }

    fn blocks<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &self.css().blocks())
    }

    fn predicted<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &predict(&self.inner))
    }

    fn distance(&self, kind: &str) -> PyResult<usize> {
        self.css().quantum_distance(kind_from(kind)?).map_err(err)
    }

    fn energy(&self, kind: &str, bits: Vec<u8>) -> PyResult<usize> {
        self.css().energy(kind_from(kind)?, &bits_from(bits, self.css().n())?).map_err(err)
    }

    /// Canonical logical operators as `{"label", "family", "support"}` dicts.
    fn canonical_logicals<'py>(&self, py: Python<'py>, kind: &str) -> PyResult<Bound<'py, PyList>> {
        let set = canonical_logicals(&self.inner, kind_from(kind)?).map_err(err)?;
        let out = PyList::empty(py);
        for op in &set.operators {
            let d = PyDict::new(py);
            d.set_item("label", op.label_string())?;
            d.set_item("family", op.family)?;
            d.set_item("labels", op.labels.clone())?;
            d.set_item("support", op.vector.iter_ones().collect::<Vec<_>>())?;
            out.append(d)?;
        }
        Ok(out)
    }

    /// Exact code-level barrier, or the barrier of `target` (a bit list or canonical label).
    #[allow(clippy::too_many_arguments)]
    #[pyo3(signature = (kind, target = None, best_first = false, cap = 22, seed = 0, frontier_cap = 1_000_000))]
    fn barrier<'py>(
        &self,
        py: Python<'py>,
        kind: &str,
        target: Option<Bound<'py, PyAny>>,
        best_first: bool,
        cap: usize,
        seed: u64,
        frontier_cap: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let kind = kind_from(kind)?;
        let target = match target {
            None => None,
            Some(t) => Some(if let Ok(label) = t.extract::<String>() {
                let set = canonical_logicals(&self.inner, kind).map_err(err)?;
                set.operators
                    .iter()
                    .find(|o| o.label_string() == label)
                    .map(|o| o.vector.clone())
                    .ok_or_else(|| err(format!("no canonical operator {label:?}")))?
            } else {
                bits_from(t.extract()?, self.css().n())?
            }),
        };
        let energy = SyndromeEnergy::css(self.css(), kind);
        let r = match (target, best_first) {
            (Some(t), true) => {
                let cfg = BestFirstConfig { seed, frontier_cap, ..Default::default() };
                barrier_best_first(&energy, &t, &cfg)
            }
            (Some(t), false) => barrier_exact(&energy, &Target::Vector(t), &ExactConfig { cap, ..Default::default() }),
            (None, true) => return Err(err("best-first search needs a target")),
            (None, false) => code_barrier_exact(CodeRef::Css(self.css(), kind), &ExactConfig { cap, ..Default::default() }),
        }
        .map_err(err)?;
        barrier_dict(py, &r)
    }

    #[pyo3(signature = (kind, w_max, f, t, soundness = false))]
    fn confinement<'py>(&self, py: Python<'py>, kind: &str, w_max: usize, f: &str, t: usize, soundness: bool) -> PyResult<Bound<'py, PyAny>> {
        let f: ConfinementFn = f.parse().map_err(err)?;
        let kind = kind_from(kind)?;
        let opts = ScanOptions::default();
        if soundness {
            to_dict(py, &soundness_scan(self.css(), kind, t, &f, w_max, &opts).map_err(err)?)
        } else {
            to_dict(py, &confinement_scan(self.css(), kind, w_max, &f, t, &opts).map_err(err)?)
        }
    }

    fn __repr__(&self) -> String {
        format!("HgpCode(dim={}, n={}, k={})", self.inner.dim(), self.css().n(), self.css().k())
    }
}

/// Bound ledger of the tensor product of two classical codes.
#[pyfunction]
#[pyo3(signature = (a, b, measure = true))]
fn tensor_bounds<'py>(py: Python<'py>, a: PyRef<'py, PyClassical>, b: PyRef<'py, PyClassical>, measure: bool) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &bound_ledger(&a.inner, &b.inner, measure, &ExactConfig::default()).map_err(err)?)
}

#[pyfunction]
fn barrier_bound_from_confinement(t: usize, f: &str, d: usize) -> PyResult<usize> {
    confinement::barrier_bound_from_confinement(t, &f.parse().map_err(err)?, d).map_err(err)
}

/// Runs a named verification suite and returns the report.
#[pyfunction]
#[pyo3(signature = (suite, seed = 7))]
fn verify<'py>(py: Python<'py>, suite: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let cfg = VerifyConfig { seed, ..Default::default() };
    let report = run_verify(suite, &cfg).map_err(err)?;
    let d = to_dict(py, &report)?;
    d.set_item("passed", report.passed())?;
    Ok(d)
}

#[pymodule]
fn barriers_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyClassical>()?;
    m.add_class::<PyHgp>()?;
    m.add_function(wrap_pyfunction!(tensor_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(barrier_bound_from_confinement, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
