//! Python bindings: samplers, exact enumeration and moments, and the pole
//! computation. Exact integers come back as Python ints.

use num_bigint::BigInt;
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sawsis::asymptotics::real::to_decimal_string;
use sawsis::asymptotics::{dominant_pole as pole, growth_bounds as bounds, residue_at_pole};
use sawsis::estimator::estimate_parallel;
use sawsis::genfunc::nes_moment_gf;
use sawsis::{rng, Direction, EnumLimits, Model, ModelParams, SawError, Walk};

fn py_err(e: SawError) -> PyErr {
    match e {
        SawError::LimitExceeded { .. } => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn params(
    model: &str,
    k: Option<usize>,
    l: Option<usize>,
    length: Option<usize>,
) -> PyResult<ModelParams> {
    let need = |name: &str, v: Option<usize>| {
        v.ok_or_else(|| PyValueError::new_err(format!("model {model} needs {name}")))
    };
    Ok(match model.parse::<Model>().map_err(py_err)? {
        Model::Crossing => ModelParams::Crossing { k: need("k", k)? },
        Model::Directed => ModelParams::Directed { k: need("k", k)? },
        Model::Nes => ModelParams::Nes {
            k: need("k", k)?,
            l: need("l", l)?,
        },
        Model::Untrapped => ModelParams::Untrapped {
            n: need("length", length)?,
        },
    })
}

fn parse_walk(steps: &str) -> PyResult<Walk> {
    steps.parse().map_err(py_err)
}

/// Draws `n` walks from stream `(seed, 0)`; each is a dict with `steps`,
/// `inverse_probability`, `a` and `b`.
#[pyfunction]
#[pyo3(signature = (model, k=None, l=None, length=None, n=1, seed=0))]
fn sample<'py>(
    py: Python<'py>,
    model: &str,
    k: Option<usize>,
    l: Option<usize>,
    length: Option<usize>,
    n: usize,
    seed: u64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let p = params(model, k, l, length)?;
    let mut r = rng::stream(seed, 0);
    (0..n)
        .map(|_| {
            let s = p.sample(&mut r).map_err(py_err)?;
            let d = PyDict::new(py);
            d.set_item("steps", s.walk.to_string())?;
            d.set_item("inverse_probability", s.inverse_probability())?;
            d.set_item("a", s.trace.a)?;
            d.set_item("b", s.trace.b)?;
            Ok(d)
        })
        .collect()
}

/// Weighted-sample estimate of the number of walks.
#[pyfunction]
#[pyo3(signature = (model, n, k=None, l=None, length=None, seed=0, threads=1))]
#[allow(clippy::too_many_arguments)]
fn estimate<'py>(
    py: Python<'py>,
    model: &str,
    n: u64,
    k: Option<usize>,
    l: Option<usize>,
    length: Option<usize>,
    seed: u64,
    threads: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let p = params(model, k, l, length)?;
    let e = py
        .detach(|| estimate_parallel(&p, n, seed, threads).and_then(|a| a.estimate()))
        .map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("n", e.n)?;
    d.set_item("mean", e.mean_f64)?;
    d.set_item("mean_numer", e.mean.numer().clone())?;
    d.set_item("mean_denom", e.mean.denom().clone())?;
    d.set_item("std_error", e.std_error)?;
    d.set_item("relative_variance_estimate", e.relative_variance_estimate)?;
    Ok(d)
}

/// Exact walk count and `sum 1/p` by enumeration.
#[pyfunction]
#[pyo3(signature = (model, k, l=None))]
fn enumerate<'py>(
    py: Python<'py>,
    model: &str,
    k: usize,
    l: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let limits = EnumLimits::default();
    let report = py.detach(|| match params(model, Some(k), l, None)? {
        ModelParams::Crossing { k } => sawsis::enumerate_crossing(k, &limits).map_err(py_err),
        ModelParams::Directed { k } => sawsis::enumerate_directed(k, &limits).map_err(py_err),
        ModelParams::Nes { k, l } => sawsis::enumerate_nes(k, l, &limits).map_err(py_err),
        ModelParams::Untrapped { .. } => {
            Err(PyValueError::new_err("untrapped walks are not enumerated"))
        }
    })?;
    let d = PyDict::new(py);
    d.set_item("count", report.count)?;
    d.set_item("weighted_sum", report.weighted_sum)?;
    d.set_item("weighted_sq_sum", report.weighted_sq_sum)?;
    d.set_item("exhaustive", report.exhaustive)?;
    Ok(d)
}

/// Coefficients `E(X_{k,l}^2)` for `l = 0..=lmax`; the `l = 0` entry is 0.
#[pyfunction]
fn nes_moments(k: usize, lmax: usize) -> PyResult<Vec<BigInt>> {
    nes_moment_gf(k)
        .and_then(|g| g.coefficients(lmax))
        .map_err(py_err)
}

/// Dominant pole and residue of the NES moment generating function, as
/// decimal strings.
#[pyfunction]
#[pyo3(signature = (k, digits=40))]
fn dominant_pole(py: Python<'_>, k: usize, digits: usize) -> PyResult<(String, String)> {
    py.detach(|| {
        let rho = pole(k)?;
        let alpha = residue_at_pole(k, &rho)?;
        Ok((
            to_decimal_string(&rho, digits.max(1)),
            to_decimal_string(&alpha, digits.max(1)),
        ))
    })
    .map_err(py_err)
}

/// Lower bounds `(lambda, beta)` from crossing counts for k = 1..=kmax.
#[pyfunction]
fn growth_bounds(py: Python<'_>, kmax: usize) -> PyResult<(f64, f64)> {
    py.detach(|| {
        let limits = EnumLimits::default();
        let reports = (1..=kmax)
            .map(|k| sawsis::enumerate_crossing(k, &limits))
            .collect::<sawsis::Result<Vec<_>>>()?;
        bounds(&reports).map(|b| (b.lambda_lb, b.beta_lb))
    })
    .map_err(py_err)
}

#[pyfunction]
fn eligible_steps_crossing(steps: &str, k: usize) -> PyResult<String> {
    let w = parse_walk(steps)?;
    let ds = sawsis::eligible_steps_crossing(&w, k).map_err(py_err)?;
    Ok(ds.into_iter().map(Direction::letter).collect())
}

#[pyfunction]
fn is_trapping_step(steps: &str, direction: &str) -> PyResult<bool> {
    let w = parse_walk(steps)?;
    let mut chars = direction.chars();
    let d = match (chars.next().and_then(Direction::from_letter), chars.next()) {
        (Some(d), None) => d,
        _ => {
            return Err(PyValueError::new_err(format!(
                "bad direction {direction:?}"
            )))
        }
    };
    sawsis::is_trapping_step(&w, d).map_err(py_err)
}

#[pymodule]
fn pysawsis(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(estimate, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(nes_moments, m)?)?;
    m.add_function(wrap_pyfunction!(dominant_pole, m)?)?;
    m.add_function(wrap_pyfunction!(growth_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(eligible_steps_crossing, m)?)?;
    m.add_function(wrap_pyfunction!(is_trapping_step, m)?)?;
    Ok(())
}
