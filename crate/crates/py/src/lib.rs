//! Python access to scene checking, rendering, the theorem checks and the
//! property suites. Coordinates go in as ints or strings like `"3/5"` and
//! come back as strings, so nothing exact is lost on the way.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use engine::fuzz::{self, Property};
use engine::kernel::{Field, Rational, Tolerance};
use engine::moulton::{find_desargues_failure, SearchBox};
use engine::p2::{cross_ratio as ratio, PointP2};
use engine::scene::{evaluate_scene, parse_scene, render_svg, Scene};
use engine::theorems::{check_desargues, check_desargues_converse};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(v: &Bound<'_, PyAny>) -> PyResult<Rational> {
    v.str()?.to_str()?.trim().parse::<Rational>().map_err(value_err)
}

fn point(p: &Bound<'_, PyAny>) -> PyResult<PointP2<Rational>> {
    let (x, y): (Bound<'_, PyAny>, Bound<'_, PyAny>) = p.extract()?;
    Ok(PointP2::affine(rational(&x)?, rational(&y)?))
}

fn six(points: &[Bound<'_, PyAny>]) -> PyResult<[PointP2<Rational>; 6]> {
    let pts: Vec<_> = points.iter().map(point).collect::<PyResult<_>>()?;
    pts.try_into().map_err(|_| PyValueError::new_err("expected six points A, B, C, A', B', C'"))
}

fn scene(text: &str) -> PyResult<Scene> {
    parse_scene(text).map_err(value_err)
}

fn tolerance(eps_abs: f64, eps_rel: f64) -> PyResult<Tolerance> {
    Tolerance::new(eps_abs, eps_rel).map_err(value_err)
}

fn outcomes<'py, S: Field>(py: Python<'py>, s: &Scene, tol: &Tolerance) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let ev = evaluate_scene::<S>(s, tol).map_err(value_err)?;
    ev.outcomes
        .iter()
        .map(|o| {
            let d = PyDict::new(py);
            d.set_item("check", &o.name)?;
            d.set_item("passed", o.passed)?;
            d.set_item("summary", o.summary())?;
            d.set_item("line", o.span.line)?;
            Ok(d)
        })
        .collect()
}

/// Evaluate a scene and return one dict per check.
#[pyfunction]
#[pyo3(signature = (text, backend = "exact", eps_abs = 1e-12, eps_rel = 1e-9))]
fn check_scene<'py>(
    py: Python<'py>,
    text: &str,
    backend: &str,
    eps_abs: f64,
    eps_rel: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let s = scene(text)?;
    let tol = tolerance(eps_abs, eps_rel)?;
    match backend {
        "exact" => outcomes::<Rational>(py, &s, &tol),
        "approx" => outcomes::<f64>(py, &s, &tol),
        other => Err(PyValueError::new_err(format!("unknown backend {other:?}"))),
    }
}

/// Evaluate a scene and return the SVG for its render directive.
#[pyfunction]
fn render_scene(text: &str) -> PyResult<String> {
    let s = scene(text)?;
    let ev = evaluate_scene::<Rational>(&s, &Tolerance::default()).map_err(value_err)?;
    render_svg(&s, &ev).map_err(value_err)
}

/// Rewrite a scene in canonical form.
#[pyfunction]
fn format_scene(text: &str) -> PyResult<String> {
    Ok(scene(text)?.to_string())
}

fn verdict<'py>(py: Python<'py>, v: &engine::theorems::DesarguesVerdict<Rational>) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("hypothesis", v.hypothesis_holds)?;
    d.set_item("conclusion", v.conclusion_holds)?;
    d.set_item("center", v.perspective_center.as_ref().map(|p| p.to_string()))?;
    d.set_item("side_meets", v.side_meets.iter().map(|p| p.to_string()).collect::<Vec<_>>())?;
    d.set_item("axis", v.axis.as_ref().map(|l| l.to_string()))?;
    Ok(d)
}

/// Check two triangles `[A, B, C, A', B', C']` for perspectivity from a point.
#[pyfunction]
fn desargues<'py>(py: Python<'py>, points: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyDict>> {
    let [a, b, c, a2, b2, c2] = six(&points)?;
    verdict(py, &check_desargues(&a, &b, &c, &a2, &b2, &c2).map_err(value_err)?)
}

/// Check two triangles for perspectivity from a line.
#[pyfunction]
fn desargues_converse<'py>(py: Python<'py>, points: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyDict>> {
    let [a, b, c, a2, b2, c2] = six(&points)?;
    verdict(py, &check_desargues_converse(&a, &b, &c, &a2, &b2, &c2).map_err(value_err)?)
}

/// Cross-ratio of four collinear points, as an exact string.
#[pyfunction]
fn cross_ratio(a: Bound<'_, PyAny>, b: Bound<'_, PyAny>, c: Bound<'_, PyAny>, d: Bound<'_, PyAny>) -> PyResult<String> {
    let r = ratio(&point(&a)?, &point(&b)?, &point(&c)?, &point(&d)?).map_err(value_err)?;
    Ok(r.to_string())
}

/// Run a randomized property suite.
#[pyfunction]
#[pyo3(name = "fuzz", signature = (property, seed = 0, count = 100))]
fn run_fuzz<'py>(py: Python<'py>, property: &str, seed: u64, count: u64) -> PyResult<Bound<'py, PyDict>> {
    let property: Property = property.parse().map_err(value_err)?;
    let report = py.detach(|| fuzz::run(property, seed, count));
    let d = PyDict::new(py);
    d.set_item("property", property.name())?;
    d.set_item("passed", report.passed())?;
    d.set_item("failures", report.failures.iter().map(|f| (f.index, f.message.clone())).collect::<Vec<_>>())?;
    d.set_item("tally", report.tally)?;
    d.set_item("max_residual", report.max_residual)?;
    Ok(d)
}

/// Search the Moulton plane for perspective triangles that break Desargues.
#[pyfunction]
#[pyo3(signature = (budget = 100_000))]
fn moulton_witness<'py>(py: Python<'py>, budget: u64) -> PyResult<Bound<'py, PyDict>> {
    let w = py
        .detach(|| find_desargues_failure(&SearchBox::default(), budget))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let d = PyDict::new(py);
    d.set_item("points", w.points.iter().map(|p| p.to_string()).collect::<Vec<_>>())?;
    d.set_item("center", w.center.to_string())?;
    d.set_item("side_meets", w.side_meets.iter().map(|p| p.to_string()).collect::<Vec<_>>())?;
    d.set_item("defect", w.collinearity_defect.to_string())?;
    d.set_item("verified", w.verify())?;
    d.set_item("scene", w.to_scene())?;
    Ok(d)
}

#[pymodule]
fn epure(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(check_scene, m)?)?;
    m.add_function(wrap_pyfunction!(render_scene, m)?)?;
    m.add_function(wrap_pyfunction!(format_scene, m)?)?;
    m.add_function(wrap_pyfunction!(desargues, m)?)?;
    m.add_function(wrap_pyfunction!(desargues_converse, m)?)?;
    m.add_function(wrap_pyfunction!(cross_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(run_fuzz, m)?)?;
    m.add_function(wrap_pyfunction!(moulton_witness, m)?)?;
    Ok(())
}
