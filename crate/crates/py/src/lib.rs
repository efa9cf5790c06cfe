//! Python bindings. Every command takes and returns JSON text, matching the CLI reports.

use modlie_core::io::{AlgebraFile, ModuleFile};
use modlie_core::report::{self, Options, Report};
use modlie_core::{Caps, Error};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e.exit_code() {
        2 | 3 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn options(seed: u64, field_cap: Option<u64>, env_cap: Option<u64>) -> Options {
    let mut caps = Caps::default();
    if let Some(c) = field_cap {
        caps.field_size = c;
    }
    if let Some(c) = env_cap {
        caps.env_dim = c;
    }
    Options { seed, caps }
}

fn run(
    algebra: &str,
    seed: u64,
    field_cap: Option<u64>,
    env_cap: Option<u64>,
    timings: bool,
    cmd: fn(&AlgebraFile, &Options) -> modlie_core::Result<Report>,
) -> PyResult<String> {
    let file = AlgebraFile::parse(algebra).map_err(to_py)?;
    let r = cmd(&file, &options(seed, field_cap, env_cap)).map_err(to_py)?;
    Ok(r.to_json(timings))
}

#[pyfunction]
#[pyo3(signature = (algebra, seed=0, field_cap=None, env_cap=None, timings=false))]
fn analyze(algebra: &str, seed: u64, field_cap: Option<u64>, env_cap: Option<u64>, timings: bool) -> PyResult<String> {
    run(algebra, seed, field_cap, env_cap, timings, report::analyze_cmd)
}

#[pyfunction]
#[pyo3(signature = (algebra, seed=0, field_cap=None, env_cap=None, timings=false))]
fn build_faithful(
    algebra: &str,
    seed: u64,
    field_cap: Option<u64>,
    env_cap: Option<u64>,
    timings: bool,
) -> PyResult<String> {
    run(algebra, seed, field_cap, env_cap, timings, report::build_faithful_cmd)
}

#[pyfunction]
#[pyo3(signature = (algebra, seed=0, field_cap=None, env_cap=None, timings=false))]
fn check_criterion(
    algebra: &str,
    seed: u64,
    field_cap: Option<u64>,
    env_cap: Option<u64>,
    timings: bool,
) -> PyResult<String> {
    run(algebra, seed, field_cap, env_cap, timings, report::check_criterion_cmd)
}

#[pyfunction]
#[pyo3(signature = (algebra, seed=0, field_cap=None, env_cap=None, timings=false))]
fn cover(algebra: &str, seed: u64, field_cap: Option<u64>, env_cap: Option<u64>, timings: bool) -> PyResult<String> {
    run(algebra, seed, field_cap, env_cap, timings, report::cover_cmd)
}

/// Re-checks `module` (a module file or a build_faithful report). Returns the report and its
/// exit code.
#[pyfunction]
#[pyo3(signature = (algebra, module, seed=0, field_cap=None, env_cap=None, timings=false))]
fn verify(
    algebra: &str,
    module: &str,
    seed: u64,
    field_cap: Option<u64>,
    env_cap: Option<u64>,
    timings: bool,
) -> PyResult<(String, i32)> {
    let file = AlgebraFile::parse(algebra).map_err(to_py)?;
    let m = ModuleFile::parse(module).map_err(to_py)?;
    let r = report::verify_cmd(&file, &m, &options(seed, field_cap, env_cap)).map_err(to_py)?;
    Ok((r.to_json(timings), r.exit_code))
}

/// Canonical compact form of an algebra file.
#[pyfunction]
fn canonical(algebra: &str) -> PyResult<String> {
    let file = AlgebraFile::parse(algebra).map_err(to_py)?;
    Ok(file.canonical(&Caps::default()).map_err(to_py)?.to_json())
}

#[pymodule]
fn modlie(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(build_faithful, m)?)?;
    m.add_function(wrap_pyfunction!(check_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(cover, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    Ok(())
}
