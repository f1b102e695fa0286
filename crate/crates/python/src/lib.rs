//! Python bindings for `maxmin-core`.
//!
//! Matrices cross the boundary as lists of rows (`list[list[float]]`);
//! vectors as flat lists.

use maxmin_core as core;
use maxmin_core::{DenseMatrix, MaxminError, ToleranceConfig};
use nalgebra::{DMatrix, DVector};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(
    maxmin,
    SolverError,
    PyException,
    "Raised when a maxmin operation fails."
);
create_exception!(
    maxmin,
    NoSolutionError,
    SolverError,
    "ker(B) is not contained in ker(A)."
);

fn to_py(e: MaxminError) -> PyErr {
    let msg = format!("{}: {}", e.kind(), e);
    match e {
        MaxminError::NoSolution => NoSolutionError::new_err(msg),
        _ => SolverError::new_err(msg),
    }
}

fn matrix(rows: Vec<Vec<f64>>) -> PyResult<DenseMatrix> {
    DenseMatrix::from_rows(&rows).map_err(to_py)
}

fn rows_of(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn columns_of(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.column_iter().map(|c| c.iter().copied().collect()).collect()
}

fn tolerances(rank_rel_tol: Option<f64>) -> PyResult<ToleranceConfig> {
    let mut tol = ToleranceConfig::default();
    if let Some(t) = rank_rel_tol {
        tol = tol.with_rank_rel_tol(t);
    }
    tol.validate().map_err(to_py)?;
    Ok(tol)
}

#[pyclass(name = "MaxminSolution", frozen, get_all, skip_from_py_object)]
#[derive(Debug, Clone)]
pub struct PySolution {
    optimal_value: f64,
    solutions: Vec<Vec<f64>>,
    case_used: String,
    selected_indices: Vec<usize>,
    lambda_max: f64,
    degenerate: bool,
    y_candidates_total: usize,
    y_candidates_accepted: usize,
}

#[pymethods]
impl PySolution {
    fn __repr__(&self) -> String {
        format!(
            "MaxminSolution(optimal_value={}, case_used={}, solutions={})",
            self.optimal_value,
            self.case_used,
            self.solutions.len()
        )
    }
}

impl From<core::MaxminSolution> for PySolution {
    fn from(s: core::MaxminSolution) -> Self {
        Self {
            optimal_value: s.optimal_value,
            solutions: s.solutions.iter().map(|x| x.iter().copied().collect()).collect(),
            case_used: s.case_used.as_str().to_string(),
            selected_indices: s.selected_indices,
            lambda_max: s.lambda_max,
            degenerate: s.diagnostics.degenerate,
            y_candidates_total: s.diagnostics.y_candidates_total,
            y_candidates_accepted: s.diagnostics.y_candidates_accepted,
        }
    }
}

#[pyclass(name = "SuppVecResult", frozen, get_all, skip_from_py_object)]
#[derive(Debug, Clone)]
pub struct PySuppVec {
    lambda_max: f64,
    /// Basis vectors, one list per eigenvector.
    basis: Vec<Vec<f64>>,
    used_special_case: bool,
}

#[pyclass(name = "GeoScoreReport", frozen, get_all, skip_from_py_object)]
#[derive(Debug, Clone)]
pub struct PyGeoReport {
    weights: Vec<f64>,
    optimal_value: f64,
    /// `(name, ax, bx, score)` in input order.
    sites: Vec<(String, f64, f64, f64)>,
    ranking: Vec<String>,
}

#[pyfunction]
#[pyo3(signature = (b, rank_rel_tol=None))]
fn pseudoinverse(b: Vec<Vec<f64>>, rank_rel_tol: Option<f64>) -> PyResult<Vec<Vec<f64>>> {
    let p = core::pseudoinverse(&matrix(b)?, &tolerances(rank_rel_tol)?).map_err(to_py)?;
    Ok(rows_of(&p))
}

/// Orthonormal kernel basis, one list per basis vector.
#[pyfunction]
#[pyo3(signature = (b, rank_rel_tol=None))]
fn null_space(b: Vec<Vec<f64>>, rank_rel_tol: Option<f64>) -> PyResult<Vec<Vec<f64>>> {
    Ok(columns_of(&core::null_space(&matrix(b)?, &tolerances(rank_rel_tol)?)))
}

#[pyfunction]
#[pyo3(signature = (m, rank_rel_tol=None))]
fn rank_of(m: Vec<Vec<f64>>, rank_rel_tol: Option<f64>) -> PyResult<usize> {
    Ok(core::rank_of(&matrix(m)?, &tolerances(rank_rel_tol)?))
}

#[pyfunction]
fn cholesky(l: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    let c = core::cholesky(&matrix(l)?, &ToleranceConfig::default()).map_err(to_py)?;
    Ok(rows_of(&c))
}

/// Returns `(selected_rows, indices)`.
#[pyfunction]
#[pyo3(signature = (d, rank_rel_tol=None))]
fn cols_indep(d: Vec<Vec<f64>>, rank_rel_tol: Option<f64>) -> PyResult<(Vec<Vec<f64>>, Vec<usize>)> {
    let sel = core::cols_indep(&matrix(d)?, &tolerances(rank_rel_tol)?);
    Ok((rows_of(&sel.selected), sel.indices))
}

#[pyfunction]
fn supporting_vectors(matrices: Vec<Vec<Vec<f64>>>) -> PyResult<PySuppVec> {
    let ms = matrices.into_iter().map(matrix).collect::<PyResult<Vec<_>>>()?;
    let r = core::supporting_vectors(&ms, &ToleranceConfig::default()).map_err(to_py)?;
    Ok(PySuppVec {
        lambda_max: r.lambda_max,
        basis: columns_of(&r.basis),
        used_special_case: r.used_special_case,
    })
}

#[pyfunction]
#[pyo3(signature = (a, b, rank_rel_tol=None))]
fn existence_check(a: Vec<Vec<f64>>, b: Vec<Vec<f64>>, rank_rel_tol: Option<f64>) -> PyResult<bool> {
    core::existence_check(&matrix(a)?, &matrix(b)?, &tolerances(rank_rel_tol)?).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (a, b, rank_rel_tol=None))]
fn solve(a: Vec<Vec<f64>>, b: Vec<Vec<f64>>, rank_rel_tol: Option<f64>) -> PyResult<PySolution> {
    let sol = core::solve(&matrix(a)?, &matrix(b)?, &tolerances(rank_rel_tol)?).map_err(to_py)?;
    Ok(sol.into())
}

#[pyfunction]
#[pyo3(signature = (a, b, rank_rel_tol=None))]
fn solve_case1(a: Vec<Vec<f64>>, b: Vec<Vec<f64>>, rank_rel_tol: Option<f64>) -> PyResult<PySolution> {
    let sol = core::solve_case1(&matrix(a)?, &matrix(b)?, &tolerances(rank_rel_tol)?).map_err(to_py)?;
    Ok(sol.into())
}

#[pyfunction]
fn stack_operators(blocks: Vec<Vec<Vec<f64>>>) -> PyResult<Vec<Vec<f64>>> {
    let ms = blocks.into_iter().map(matrix).collect::<PyResult<Vec<_>>>()?;
    let d = core::stack_operators(&ms).map_err(to_py)?;
    Ok(rows_of(&d))
}

#[pyfunction]
fn ratio_value(a: Vec<Vec<f64>>, b: Vec<Vec<f64>>, x: Vec<f64>) -> PyResult<f64> {
    core::ratio_value(&matrix(a)?, &matrix(b)?, &DVector::from_vec(x)).map_err(to_py)
}

#[pyfunction]
fn solve_quadratic_energy(e1: Vec<Vec<f64>>, e2: Vec<Vec<f64>>, l: Vec<Vec<f64>>) -> PyResult<PySolution> {
    let sol = core::solve_quadratic_energy(&matrix(e1)?, &matrix(e2)?, &matrix(l)?, &ToleranceConfig::default())
        .map_err(to_py)?;
    Ok(sol.into())
}

/// Scores sites. Without arguments the packaged sixteen-site dataset is used;
/// otherwise pass `names`, `winter` and `summer` (each `n × 3`).
#[pyfunction]
#[pyo3(signature = (names=None, winter=None, summer=None))]
fn solve_geolocation(
    names: Option<Vec<String>>,
    winter: Option<Vec<Vec<f64>>>,
    summer: Option<Vec<Vec<f64>>>,
) -> PyResult<PyGeoReport> {
    let data = match (names, winter, summer) {
        (None, None, None) => core::GeoDataset::table1(),
        (Some(n), Some(w), Some(s)) => core::GeoDataset::new(n, matrix(w)?, matrix(s)?).map_err(to_py)?,
        _ => return Err(SolverError::new_err("pass all of names, winter, summer or none")),
    };
    let r = core::solve_geolocation(&data, &ToleranceConfig::default()).map_err(to_py)?;
    Ok(PyGeoReport {
        weights: r.weights,
        optimal_value: r.optimal_value,
        sites: r.sites.into_iter().map(|s| (s.name, s.ax, s.bx, s.score)).collect(),
        ranking: r.ranking,
    })
}

#[pymodule]
fn maxmin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SolverError", m.py().get_type::<SolverError>())?;
    m.add("NoSolutionError", m.py().get_type::<NoSolutionError>())?;
    m.add_class::<PySolution>()?;
    m.add_class::<PySuppVec>()?;
    m.add_class::<PyGeoReport>()?;
    m.add_function(wrap_pyfunction!(pseudoinverse, m)?)?;
    m.add_function(wrap_pyfunction!(null_space, m)?)?;
    m.add_function(wrap_pyfunction!(rank_of, m)?)?;
    m.add_function(wrap_pyfunction!(cholesky, m)?)?;
    m.add_function(wrap_pyfunction!(cols_indep, m)?)?;
    m.add_function(wrap_pyfunction!(supporting_vectors, m)?)?;
    m.add_function(wrap_pyfunction!(existence_check, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_case1, m)?)?;
    m.add_function(wrap_pyfunction!(stack_operators, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_value, m)?)?;
    m.add_function(wrap_pyfunction!(solve_quadratic_energy, m)?)?;
    m.add_function(wrap_pyfunction!(solve_geolocation, m)?)?;
    Ok(())
}
