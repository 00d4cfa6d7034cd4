//! Python bindings: `import pybiinvariant`.
//!
//! Vectors are lists of floats and matrices are lists of rows.

use biinvariant::{self as bi, LieAlgebra, Metric, Tolerances};
use nalgebra::{DMatrix, DVector};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(pybiinvariant, BiInvariantError, PyValueError);

fn err(e: bi::Error) -> PyErr {
    BiInvariantError::new_err(e.to_string())
}

fn tolerances(tol: Option<f64>) -> Tolerances {
    tol.map(Tolerances::with_base).unwrap_or_default()
}

fn to_matrix(rows: &[Vec<f64>]) -> PyResult<DMatrix<f64>> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("matrix rows have different lengths"));
    }
    Ok(DMatrix::from_fn(n, cols, |i, j| rows[i][j]))
}

fn from_matrix(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn metric(rows: &[Vec<f64>], tol: &Tolerances) -> PyResult<Metric> {
    Metric::from_matrix(&to_matrix(rows)?, tol).map_err(err)
}

/// `(i, j, [(k, c), ...])` meaning `[e_i, e_j] = Σ c e_k`.
type BracketRow = (usize, usize, Vec<(usize, f64)>);

fn vector(x: Vec<f64>) -> DVector<f64> {
    DVector::from_vec(x)
}

/// A real Lie algebra given by structure constants in a fixed basis.
#[pyclass(name = "LieAlgebra", module = "pybiinvariant", frozen)]
struct PyLieAlgebra {
    inner: LieAlgebra,
}

#[pymethods]
impl PyLieAlgebra {
    /// `brackets` lists `(i, j, [(k, c), ...])` for `i < j`, meaning `[e_i, e_j] = Σ c e_k`.
    #[new]
    fn new(name: String, dim: usize, brackets: Vec<BracketRow>) -> PyResult<Self> {
        let entries = brackets.into_iter().map(|(i, j, t)| ((i, j), t));
        Ok(PyLieAlgebra {
            inner: LieAlgebra::new(name, dim, entries).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file = bi::io::parse_algebra(text).map_err(err)?;
        Ok(PyLieAlgebra {
            inner: file.to_algebra().map_err(err)?,
        })
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(PyLieAlgebra {
            inner: bi::builtin(name).map_err(err)?.algebra,
        })
    }

    #[staticmethod]
    fn catalog_names() -> Vec<&'static str> {
        bi::catalog::NAMES.to_vec()
    }

    fn to_json(&self) -> String {
        bi::io::algebra_to_json(&self.inner)
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn bracket(&self, x: Vec<f64>, y: Vec<f64>) -> PyResult<Vec<f64>> {
        let z = self.inner.bracket(&vector(x), &vector(y)).map_err(err)?;
        Ok(z.iter().copied().collect())
    }

    fn ad(&self, x: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
        Ok(from_matrix(self.inner.ad_matrix(&vector(x)).map_err(err)?.matrix()))
    }

    fn killing_form(&self) -> Vec<Vec<f64>> {
        from_matrix(&self.inner.killing_form().to_matrix())
    }

    /// Basis triples `(i, j, k)` with their Jacobi residuals.
    #[pyo3(signature = (tol = 1e-9))]
    fn jacobi_violations(&self, tol: f64) -> Vec<((usize, usize, usize), f64)> {
        self.inner
            .validate_jacobi(tol)
            .into_iter()
            .map(|v| (v.triple, v.residual))
            .collect()
    }

    #[pyo3(signature = (tol = None))]
    fn is_compact_type(&self, tol: Option<f64>) -> bool {
        bi::compact_type_check(&self.inner, &tolerances(tol)).is_compact_type
    }

    /// Orthonormal basis of the center, as columns.
    #[pyo3(signature = (tol = None))]
    fn center(&self, tol: Option<f64>) -> Vec<Vec<f64>> {
        from_matrix(self.inner.center(&tolerances(tol)).basis())
    }

    /// Orthonormal basis of `[g, g]`, as columns.
    #[pyo3(signature = (tol = None))]
    fn derived_subalgebra(&self, tol: Option<f64>) -> Vec<Vec<f64>> {
        from_matrix(self.inner.derived_subalgebra(&tolerances(tol)).basis())
    }

    fn __repr__(&self) -> String {
        format!("LieAlgebra(name={:?}, dim={})", self.inner.name(), self.inner.dim())
    }
}

/// Center and simple ideals, with ideal bases as columns.
#[pyfunction]
#[pyo3(signature = (alg, seed = 0, tol = None))]
fn decompose<'py>(py: Python<'py>, alg: &PyLieAlgebra, seed: u64, tol: Option<f64>) -> PyResult<Bound<'py, PyDict>> {
    let d = bi::simple_ideals(&alg.inner, seed, &tolerances(tol)).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("center_dim", d.center_dim())?;
    out.set_item("center", from_matrix(d.center.basis()))?;
    out.set_item("ideal_dims", d.ideal_dims())?;
    out.set_item("class_sizes", d.class_sizes())?;
    let ideals = d
        .ideals
        .iter()
        .map(|i| {
            let f = &i.fingerprint;
            let entry = PyDict::new(py);
            entry.set_item("basis", from_matrix(i.subspace.basis()))?;
            entry.set_item("dim", f.dim)?;
            entry.set_item("rank", f.rank)?;
            entry.set_item("root_profile", f.root_profile.clone())?;
            Ok(entry)
        })
        .collect::<PyResult<Vec<_>>>()?;
    out.set_item("ideals", ideals)?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (alg, tol = None))]
fn invariant_forms(alg: &PyLieAlgebra, tol: Option<f64>) -> Vec<Vec<Vec<f64>>> {
    bi::invariant_form_space(&alg.inner, &tolerances(tol))
        .iter()
        .map(|f| from_matrix(&f.to_matrix()))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (alg, metric, tol = None))]
fn is_biinvariant(alg: &PyLieAlgebra, metric: Vec<Vec<f64>>, tol: Option<f64>) -> PyResult<bool> {
    let t = tolerances(tol);
    bi::is_biinvariant_metric(&alg.inner, &self::metric(&metric, &t)?, &t).map_err(err)
}

fn coordinates_dict<'py>(py: Python<'py>, c: &bi::BiInvariantCoordinates) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    out.set_item("center_dim", c.center_dim)?;
    out.set_item("alpha", c.alpha_vector())?;
    out.set_item("class_sizes", c.class_sizes())?;
    let classes = c
        .classes
        .iter()
        .map(|cl| {
            let d = PyDict::new(py);
            d.set_item("dim", cl.fingerprint.dim)?;
            d.set_item("rank", cl.fingerprint.rank)?;
            d.set_item("alpha", cl.alphas.clone())?;
            Ok(d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    out.set_item("classes", classes)?;
    Ok(out)
}

/// Canonical coordinates `α` of a bi-invariant metric, sorted within each class.
#[pyfunction]
#[pyo3(signature = (alg, metric, seed = 0, tol = None))]
fn metric_coordinates<'py>(
    py: Python<'py>,
    alg: &PyLieAlgebra,
    metric: Vec<Vec<f64>>,
    seed: u64,
    tol: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let t = tolerances(tol);
    let c = bi::canonical_coordinates(&alg.inner, &self::metric(&metric, &t)?, seed, &t).map_err(err)?;
    coordinates_dict(py, &c)
}

/// `Σ α_i (-B_i)` over the simple ideals in decomposition order, identity on the center.
#[pyfunction]
#[pyo3(signature = (alg, alphas, seed = 0, tol = None))]
fn compose_metric(alg: &PyLieAlgebra, alphas: Vec<f64>, seed: u64, tol: Option<f64>) -> PyResult<Vec<Vec<f64>>> {
    let t = tolerances(tol);
    let d = bi::simple_ideals(&alg.inner, seed, &t).map_err(err)?;
    let m = bi::compose_metric(&alg.inner, &d, &alphas, None, &t).map_err(err)?;
    Ok(from_matrix(&m.matrix()))
}

#[pyfunction]
#[pyo3(signature = (alg, seed = 0, tol = None))]
fn random_biinvariant_metric(alg: &PyLieAlgebra, seed: u64, tol: Option<f64>) -> PyResult<Vec<Vec<f64>>> {
    let t = tolerances(tol);
    let d = bi::simple_ideals(&alg.inner, seed, &t).map_err(err)?;
    let m = bi::random_biinvariant_metric(&alg.inner, &d, seed, &t).map_err(err)?;
    Ok(from_matrix(&m.matrix()))
}

#[pyfunction]
#[pyo3(signature = (alg, seed = 0, tol = None))]
fn moduli_description<'py>(py: Python<'py>, alg: &PyLieAlgebra, seed: u64, tol: Option<f64>) -> PyResult<Bound<'py, PyDict>> {
    let m = bi::moduli_description(&alg.inner, seed, &tolerances(tol)).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("bi", m.bi.to_string())?;
    out.set_item("bi_model", m.bi.model())?;
    out.set_item("bi_dim", m.bi.dim())?;
    out.set_item("ebi", m.ebi.to_string())?;
    out.set_item("ebi_model", m.ebi.model())?;
    out.set_item("ebi_dim", m.ebi.dim())?;
    out.set_item("center_dim", m.center_dim)?;
    out.set_item("summary", m.summary())?;
    Ok(out)
}

/// Log-gap chart coordinates of the isometry class of a metric.
#[pyfunction]
#[pyo3(signature = (alg, metric, seed = 0, tol = None))]
fn bi_chart(alg: &PyLieAlgebra, metric: Vec<Vec<f64>>, seed: u64, tol: Option<f64>) -> PyResult<Vec<f64>> {
    let t = tolerances(tol);
    let c = bi::canonical_coordinates(&alg.inner, &self::metric(&metric, &t)?, seed, &t).map_err(err)?;
    Ok(bi::bi_chart(&c).coordinates())
}

#[pyfunction]
#[pyo3(signature = (alg1, metric1, alg2, metric2, seed = 0, tol = None))]
fn isometric(
    alg1: &PyLieAlgebra,
    metric1: Vec<Vec<f64>>,
    alg2: &PyLieAlgebra,
    metric2: Vec<Vec<f64>>,
    seed: u64,
    tol: Option<f64>,
) -> PyResult<bool> {
    let t = tolerances(tol);
    let (m1, m2) = (metric(&metric1, &t)?, metric(&metric2, &t)?);
    bi::isometric(&alg1.inner, &m1, &alg2.inner, &m2, seed, &t).map_err(err)
}

/// `(equivalent, λ)` with `metric1 ≅ λ · metric2` when equivalent.
#[pyfunction]
#[pyo3(signature = (alg1, metric1, alg2, metric2, seed = 0, tol = None))]
fn conformally_equivalent(
    alg1: &PyLieAlgebra,
    metric1: Vec<Vec<f64>>,
    alg2: &PyLieAlgebra,
    metric2: Vec<Vec<f64>>,
    seed: u64,
    tol: Option<f64>,
) -> PyResult<(bool, Option<f64>)> {
    let t = tolerances(tol);
    let (m1, m2) = (metric(&metric1, &t)?, metric(&metric2, &t)?);
    let v = bi::conformally_equivalent(&alg1.inner, &m1, &alg2.inner, &m2, seed, &t).map_err(err)?;
    Ok((v.equivalent, v.lambda))
}

#[pyfunction]
#[pyo3(signature = (alg, metric, x, y, tol = None))]
fn kappa(alg: &PyLieAlgebra, metric: Vec<Vec<f64>>, x: Vec<f64>, y: Vec<f64>, tol: Option<f64>) -> PyResult<f64> {
    let t = tolerances(tol);
    bi::kappa(&alg.inner, &self::metric(&metric, &t)?, &vector(x), &vector(y), &t).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alg, metric, x, y, tol = None))]
fn sectional(alg: &PyLieAlgebra, metric: Vec<Vec<f64>>, x: Vec<f64>, y: Vec<f64>, tol: Option<f64>) -> PyResult<f64> {
    let t = tolerances(tol);
    bi::sectional(&alg.inner, &self::metric(&metric, &t)?, &vector(x), &vector(y), &t).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alg, metric, tol = None))]
fn ricci_form(alg: &PyLieAlgebra, metric: Vec<Vec<f64>>, tol: Option<f64>) -> PyResult<Vec<Vec<f64>>> {
    let t = tolerances(tol);
    let r = bi::ricci_form(&alg.inner, &self::metric(&metric, &t)?, &t).map_err(err)?;
    Ok(from_matrix(&r.to_matrix()))
}

#[pyfunction]
#[pyo3(signature = (alg, metric, tol = None))]
fn scalar_curvature(alg: &PyLieAlgebra, metric: Vec<Vec<f64>>, tol: Option<f64>) -> PyResult<f64> {
    let t = tolerances(tol);
    bi::scalar_curvature(&alg.inner, &self::metric(&metric, &t)?, &t).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alg, metric, samples = 1000, seed = 0, tol = None))]
fn positivity_probe<'py>(
    py: Python<'py>,
    alg: &PyLieAlgebra,
    metric: Vec<Vec<f64>>,
    samples: usize,
    seed: u64,
    tol: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let t = tolerances(tol);
    let r = bi::positivity_probe(&alg.inner, &self::metric(&metric, &t)?, samples, seed, &t).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("ricci", from_matrix(&r.ricci.to_matrix()))?;
    out.set_item("scalar", r.scalar)?;
    out.set_item("min_sectional_sampled", r.min_sectional_sampled)?;
    out.set_item("samples", r.samples)?;
    out.set_item("zero_plane", r.zero_plane)?;
    out.set_item("einstein_constant", r.einstein_constant)?;
    out.set_item("flat", r.flat)?;
    Ok(out)
}

#[pymodule]
fn pybiinvariant(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BiInvariantError", m.py().get_type::<BiInvariantError>())?;
    m.add_class::<PyLieAlgebra>()?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_forms, m)?)?;
    m.add_function(wrap_pyfunction!(is_biinvariant, m)?)?;
    m.add_function(wrap_pyfunction!(metric_coordinates, m)?)?;
    m.add_function(wrap_pyfunction!(compose_metric, m)?)?;
    m.add_function(wrap_pyfunction!(random_biinvariant_metric, m)?)?;
    m.add_function(wrap_pyfunction!(moduli_description, m)?)?;
    m.add_function(wrap_pyfunction!(bi_chart, m)?)?;
    m.add_function(wrap_pyfunction!(isometric, m)?)?;
    m.add_function(wrap_pyfunction!(conformally_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(kappa, m)?)?;
    m.add_function(wrap_pyfunction!(sectional, m)?)?;
    m.add_function(wrap_pyfunction!(ricci_form, m)?)?;
    m.add_function(wrap_pyfunction!(scalar_curvature, m)?)?;
    m.add_function(wrap_pyfunction!(positivity_probe, m)?)?;
    Ok(())
}
