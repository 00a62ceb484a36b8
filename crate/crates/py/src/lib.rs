//! Python module `nonrep`: graphs are passed as a vertex count and a list of
//! `(u, v)` edges, colourings as lists of ints.

use std::collections::BTreeMap;

use nonrep_core::planar::{colour_planar, compute_product_structure};
use nonrep_core::treedecomp::{heuristic_td, TreeDecomposition};
use nonrep_core::verify::{self, ExactPi, Verdict};
use nonrep_core::{bounds, twcolour, words, Colouring, Graph};
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: nonrep_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn graph(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Graph> {
    Graph::from_edges(n, edges).map_err(err)
}

/// Square-free ternary word of length `n`, as a string of digits.
#[pyfunction]
fn ternary_squarefree(n: usize) -> String {
    words::ternary_squarefree(n).to_string()
}

/// Four-colouring of the path on `n` vertices.
#[pyfunction]
fn path_colouring(n: usize) -> Vec<u8> {
    words::path_colouring_4(n).colours().to_vec()
}

/// Strongly nonrepetitive colouring with at most `4^k` colours. `bags` and
/// `tree` give a decomposition of width `k`; without them min-fill is used.
/// Returns `(colours, palette)`.
#[pyfunction]
#[pyo3(signature = (n, edges, bags=None, tree=None))]
fn tw_colouring(
    n: usize,
    edges: Vec<(usize, usize)>,
    bags: Option<Vec<Vec<usize>>>,
    tree: Option<Vec<(usize, usize)>>,
) -> PyResult<(Vec<usize>, usize)> {
    let g = graph(n, edges)?;
    let td = match (bags, tree) {
        (Some(b), t) => TreeDecomposition::new(n, b, t.unwrap_or_default()).map_err(err)?,
        (None, None) => heuristic_td(&g),
        (None, Some(_)) => return Err(PyValueError::new_err("tree edges given without bags")),
    };
    let c = twcolour::strongly_nonrepetitive_colouring(&g, &td).map_err(err)?;
    Ok((c.colours().to_vec(), c.palette()))
}

/// Colouring of a planar triangulation with at most 768 colours. Returns
/// `(colours, palette)`.
#[pyfunction]
fn planar_colouring(n: usize, edges: Vec<(usize, usize)>) -> PyResult<(Vec<usize>, usize)> {
    let g = graph(n, edges)?;
    let ps = compute_product_structure(&g).map_err(err)?;
    let out = colour_planar(&g, &ps.structure, Some(&ps.h_td)).map_err(err)?;
    Ok((out.colouring.colours().to_vec(), out.colouring.palette()))
}

fn verdict_dict<'py>(py: Python<'py>, v: &Verdict) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("pass", v.pass)?;
    d.set_item("counterexample", v.counterexample.clone())?;
    d.set_item("cap", v.cap)?;
    d.set_item("complete", v.complete)?;
    Ok(d)
}

/// Runs the properness, repetitive-path and bad-lazy-walk checks. Returns a
/// dict keyed by check name.
#[pyfunction]
#[pyo3(signature = (n, edges, colours, max_order=verify::DEFAULT_MAX_ORDER, max_walk=verify::DEFAULT_MAX_WALK))]
fn verify_colouring<'py>(
    py: Python<'py>,
    n: usize,
    edges: Vec<(usize, usize)>,
    colours: Vec<usize>,
    max_order: usize,
    max_walk: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let g = graph(n, edges)?;
    let c = Colouring::from_colours(colours);
    let checks = [
        ("proper", verify::is_proper(&g, &c)),
        ("repetitive_path", verify::find_repetitive_path(&g, &c, max_order)),
        ("bad_lazy_walk", verify::find_bad_lazy_walk(&g, &c, max_walk)),
    ];
    let out = PyDict::new(py);
    for (name, v) in checks {
        out.set_item(name, verdict_dict(py, &v.map_err(err)?)?)?;
    }
    Ok(out)
}

/// Least number of colours of a nonrepetitive colouring, or `None` when it
/// exceeds `max_colours`. Graphs are limited to 10 vertices.
#[pyfunction]
#[pyo3(signature = (n, edges, max_colours=verify::EXACT_PI_MAX_COLOURS))]
fn exact_pi(n: usize, edges: Vec<(usize, usize)>, max_colours: usize) -> PyResult<Option<usize>> {
    match verify::exact_pi(&graph(n, edges)?, max_colours).map_err(err)? {
        ExactPi::Exact(p) => Ok(Some(p)),
        ExactPi::ExceedsCap => Ok(None),
    }
}

/// Evaluates a named bound, e.g. `bound("genus", g=5)`.
#[pyfunction]
#[pyo3(signature = (formula, **params))]
fn bound(formula: &str, params: Option<BTreeMap<String, i64>>) -> PyResult<BigUint> {
    let params = params.unwrap_or_default();
    let params: BTreeMap<&str, i64> = params.iter().map(|(k, &v)| (k.as_str(), v)).collect();
    Ok(bounds::evaluate(formula, &params).map_err(err)?.value)
}

#[pymodule]
fn nonrep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(ternary_squarefree, m)?)?;
    m.add_function(wrap_pyfunction!(path_colouring, m)?)?;
    m.add_function(wrap_pyfunction!(tw_colouring, m)?)?;
    m.add_function(wrap_pyfunction!(planar_colouring, m)?)?;
    m.add_function(wrap_pyfunction!(verify_colouring, m)?)?;
    m.add_function(wrap_pyfunction!(exact_pi, m)?)?;
    m.add_function(wrap_pyfunction!(bound, m)?)?;
    m.add("FORMULAS", bounds::FORMULAS.to_vec())?;
    Ok(())
}
