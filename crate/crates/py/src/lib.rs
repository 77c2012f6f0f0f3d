//! Python bindings. Presentations are passed as text in the `.alg` grammar;
//! structured results come back as JSON strings.

use gradalg::catalog;
use gradalg::gradedsearch::{poincare_report, GradeAssignment};
use gradalg::groups16::build_group;
use gradalg::ncgroebner::complete;
use gradalg::presentations::{parse_presentation, Presentation};
use gradalg::quadraticdual::quadratic_dual as dual;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: gradalg::Error) -> PyErr {
    match e {
        gradalg::Error::BoundExceeded { .. } | gradalg::Error::Resource(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn presentation(text: &str) -> PyResult<Presentation> {
    match text.strip_prefix("builtin:") {
        Some(key) => catalog::load_builtin(key).map(|a| a.presentation).map_err(err),
        None => parse_presentation(text).map_err(err),
    }
}

/// Text of a built-in presentation.
#[pyfunction]
fn builtin(key: &str) -> PyResult<String> {
    Ok(catalog::load_builtin(key).map_err(err)?.presentation.to_text())
}

#[pyfunction]
fn hilbert(text: &str, depth: u32) -> PyResult<Vec<u64>> {
    let p = presentation(text)?;
    Ok(complete(&p, depth).hilbert_function(depth).map_err(err)?.values)
}

#[pyfunction]
fn groebner_basis(text: &str, depth: u32) -> PyResult<Vec<String>> {
    let p = presentation(text)?;
    Ok(complete(&p, depth)
        .elements()
        .iter()
        .map(|f| p.poly_text(&f.monic(&p.order)))
        .collect())
}

#[pyfunction]
fn quadratic_dual(text: &str) -> PyResult<String> {
    Ok(dual(&presentation(text)?).map_err(err)?.to_text())
}

/// Poincaré polynomial coefficients and cyclotomic factorization.
#[pyfunction]
fn poincare(group: &str, words: Vec<String>) -> PyResult<(Vec<i64>, Option<Vec<(usize, usize)>>)> {
    let g = build_group(group).map_err(err)?;
    let w: Vec<&str> = words.iter().map(|s| s.as_str()).collect();
    let ga = GradeAssignment::from_words(g, &w).map_err(err)?;
    let (p, f) = poincare_report(&ga).map_err(err)?;
    Ok((p.0, f))
}

/// Claim report as JSON.
#[pyfunction]
#[pyo3(signature = (keys, depth = 8, seed = catalog::DEFAULT_SEED))]
fn verify_claims(keys: Vec<String>, depth: u32, seed: u64) -> PyResult<String> {
    let k: Vec<&str> = keys.iter().map(|s| s.as_str()).collect();
    let rep = catalog::verify_claims(&k, depth, seed).map_err(err)?;
    serde_json::to_string(&rep).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn gradalg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(builtin, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(quadratic_dual, m)?)?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claims, m)?)?;
    Ok(())
}
