//! Python bindings: trees, rational functions, the Ω series and the
//! verification checks.

use std::collections::HashMap;

use omegaq_core::arith::{parse_rational, rational_to_string, RationalFunction as CoreRf};
use omegaq_core::bundle::{SeriesBundle, SeriesKind};
use omegaq_core::dend::{self, PlanarBinaryTree as CorePbt};
use omegaq_core::omega::{self as core_omega, InfinityMode, Point};
use omegaq_core::tree::{self, RootedTree as CoreTree, TreeSeries};
use omegaq_core::verify;
use num_rational::BigRational;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An unordered rooted tree in bracket encoding, e.g. `"[[][]]"`.
#[pyclass(frozen, skip_from_py_object, eq, hash, name = "RootedTree", module = "omegaq")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct RootedTree(CoreTree);

#[pymethods]
impl RootedTree {
    #[new]
    fn new(encoding: &str) -> PyResult<Self> {
        CoreTree::parse(encoding).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn leaf() -> Self {
        Self(CoreTree::leaf())
    }

    #[staticmethod]
    fn linear(n: usize) -> Self {
        Self(CoreTree::linear(n))
    }

    #[staticmethod]
    fn corolla(n: usize) -> Self {
        Self(CoreTree::corolla(n))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn encoding(&self) -> String {
        self.0.encoding().to_string()
    }

    fn children(&self) -> Vec<RootedTree> {
        self.0.children().iter().cloned().map(Self).collect()
    }

    fn aut_count(&self) -> String {
        self.0.aut_count().to_string()
    }

    /// `self ↷ other` as `{encoding: multiplicity}`.
    fn graft(&self, other: &RootedTree) -> HashMap<String, i64> {
        tree::graft(&self.0, &other.0).iter().map(|(t, m)| (t.encoding().to_string(), *m)).collect()
    }

    fn __str__(&self) -> String {
        self.encoding()
    }

    fn __repr__(&self) -> String {
        format!("RootedTree('{}')", self.0.encoding())
    }
}

/// A planar binary tree: `"."` or `"(" left right ")"`.
#[pyclass(frozen, skip_from_py_object, eq, hash, name = "PlanarBinaryTree", module = "omegaq")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PlanarBinaryTree(CorePbt);

#[pymethods]
impl PlanarBinaryTree {
    #[new]
    fn new(encoding: &str) -> PyResult<Self> {
        CorePbt::parse(encoding).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn left_comb(n: usize) -> Self {
        Self(CorePbt::left_comb(n))
    }

    #[staticmethod]
    fn right_comb(n: usize) -> Self {
        Self(CorePbt::right_comb(n))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn encoding(&self) -> String {
        self.0.encoding().to_string()
    }

    fn descent_set(&self) -> Vec<usize> {
        self.0.descent_set()
    }

    fn major_index(&self) -> usize {
        self.0.major_index()
    }

    fn __str__(&self) -> String {
        self.encoding()
    }

    fn __repr__(&self) -> String {
        format!("PlanarBinaryTree('{}')", self.0.encoding())
    }
}

/// A reduced element of Q(q).
#[pyclass(frozen, skip_from_py_object, eq, name = "RationalFunction", module = "omegaq")]
#[derive(Clone, PartialEq)]
struct RationalFunction(CoreRf);

#[pymethods]
impl RationalFunction {
    /// Numerator and denominator as ascending lists of `"p/q"` strings.
    #[new]
    fn new(num: Vec<String>, den: Vec<String>) -> PyResult<Self> {
        let poly = |v: &[String]| -> PyResult<_> {
            let c = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>().map_err(value_error)?;
            Ok(omegaq_core::arith::QPolynomial::from_coeffs(c))
        };
        CoreRf::new(poly(&num)?, poly(&den)?).map(Self).map_err(value_error)
    }

    fn num(&self) -> Vec<String> {
        self.0.num().coeffs().iter().map(rational_to_string).collect()
    }

    fn den(&self) -> Vec<String> {
        self.0.den().coeffs().iter().map(rational_to_string).collect()
    }

    /// Exact value at a rational point given as `"p/q"`.
    fn eval_at(&self, at: &str) -> PyResult<String> {
        let at = parse_rational(at).map_err(value_error)?;
        self.0.eval_at(&at).map(|v| rational_to_string(&v)).map_err(value_error)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction('{}')", self.0)
    }
}

/// A truncated series of rooted trees with coefficients in Q(q).
#[pyclass(frozen, skip_from_py_object, name = "QSeries", module = "omegaq")]
struct QSeries(TreeSeries<CoreRf>);

fn rational_map<B: std::fmt::Display>(terms: impl IntoIterator<Item = (B, BigRational)>) -> HashMap<String, String> {
    terms.into_iter().map(|(b, r)| (b.to_string(), rational_to_string(&r))).collect()
}

#[pymethods]
impl QSeries {
    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// Coefficient of a tree given as a `RootedTree` or an encoding.
    fn coeff(&self, tree: &Bound<'_, PyAny>) -> PyResult<RationalFunction> {
        let t = match tree.cast::<RootedTree>() {
            Ok(t) => t.get().0.clone(),
            Err(_) => CoreTree::parse(&tree.extract::<String>()?).map_err(value_error)?,
        };
        if t.degree() > self.0.order() {
            return Err(PyKeyError::new_err(format!("{t} is above the truncation order")));
        }
        Ok(RationalFunction(self.0.coeff(&t)))
    }

    /// Terms sorted by (degree, encoding).
    fn terms(&self) -> Vec<(RootedTree, RationalFunction)> {
        self.0.sorted_terms().into_iter().map(|(t, c)| (RootedTree(t.clone()), RationalFunction(c.clone()))).collect()
    }

    /// Coefficient-wise value at `q = 1` or `q = 0`.
    fn specialize(&self, point: &str) -> PyResult<HashMap<String, String>> {
        let point = match point {
            "1" => Point::One,
            "0" => Point::Zero,
            other => return Err(PyValueError::new_err(format!("point must be '0' or '1', got {other:?}"))),
        };
        let s = core_omega::specialize(&self.0, point).map_err(value_error)?;
        Ok(rational_map(s.iter().map(|(t, c)| (t.clone(), c.clone()))))
    }

    /// The limit of `q^{#T-1}` times each coefficient as `q → ∞`.
    fn infinity_limit(&self) -> PyResult<HashMap<String, String>> {
        let s = core_omega::omega_infinity_from(&self.0).map_err(value_error)?;
        Ok(rational_map(s.iter().map(|(t, c)| (t.clone(), c.clone()))))
    }

    fn denominators_within_bound(&self) -> bool {
        core_omega::denominator_check(&self.0).passed()
    }

    fn carlitz(&self) -> Vec<RationalFunction> {
        core_omega::extract_carlitz(&self.0).into_iter().map(RationalFunction).collect()
    }

    fn qlog(&self) -> Vec<RationalFunction> {
        core_omega::extract_qlog(&self.0).into_iter().map(RationalFunction).collect()
    }

    fn __eq__(&self, other: &QSeries) -> bool {
        self.0 == other.0
    }
}

/// Ω up to `order` as `{encoding: "p/q"}`.
#[pyfunction]
fn omega(py: Python<'_>, order: usize) -> HashMap<String, String> {
    let s = py.detach(|| core_omega::omega_classical::<CoreTree>(order));
    rational_map(s.iter().map(|(t, c)| (t.clone(), c.clone())))
}

/// Ω_q up to `order`, by the defining recursion or (`mode="forks"`) the fork equation.
#[pyfunction]
#[pyo3(signature = (order, mode = "recursion"))]
fn omega_q(py: Python<'_>, order: usize, mode: &str) -> PyResult<QSeries> {
    match mode {
        "recursion" => Ok(QSeries(py.detach(|| core_omega::omega_q(order)))),
        "forks" => Ok(QSeries(py.detach(|| core_omega::omega_q_via_forks(order)))),
        other => Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    }
}

/// `Σ (-1)^{#T-1}/aut(T) · T` up to `order`.
#[pyfunction]
fn omega_infinity(order: usize) -> PyResult<HashMap<String, String>> {
    let s = core_omega::omega_infinity(order, InfinityMode::ClosedForm).map_err(value_error)?;
    Ok(rational_map(s.iter().map(|(t, c)| (t.clone(), c.clone()))))
}

/// Image of Ω_q in the dendriform algebra: `mode` is `"recursive"` or `"explicit"`.
#[pyfunction]
#[pyo3(signature = (order, mode = "recursive"))]
fn dend_omega_q(py: Python<'_>, order: usize, mode: &str) -> PyResult<Vec<(PlanarBinaryTree, RationalFunction)>> {
    let s = match mode {
        "recursive" => py.detach(|| dend::omega_q_dend_recursive(order)),
        "explicit" => py.detach(|| dend::omega_q_dend_explicit(order)),
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    Ok(s.sorted_terms().into_iter().map(|(t, c)| (PlanarBinaryTree(t), RationalFunction(c))).collect())
}

/// Carlitz q-Bernoulli numbers `β_0..β_{count-1}` from the umbral recursion.
#[pyfunction]
fn carlitz_numbers(count: usize) -> Vec<RationalFunction> {
    core_omega::carlitz_oracle(count).into_iter().map(RationalFunction).collect()
}

#[pyfunction]
fn enumerate_trees(n: usize) -> Vec<RootedTree> {
    tree::enumerate_trees(n).into_iter().map(RootedTree).collect()
}

#[pyfunction]
fn enumerate_planar_binary_trees(n: usize) -> Vec<PlanarBinaryTree> {
    dend::enumerate_pbt(n).into_iter().map(PlanarBinaryTree).collect()
}

/// A series bundle as JSON, as written by `omegaq compute --format json`.
#[pyfunction]
#[pyo3(signature = (kind, order, mode = None))]
fn compute_json(py: Python<'_>, kind: &str, order: usize, mode: Option<&str>) -> PyResult<String> {
    let kind: SeriesKind = kind.parse().map_err(value_error)?;
    py.detach(|| SeriesBundle::compute(kind, order, mode)).map(|b| b.to_json()).map_err(value_error)
}

/// Runs a registered check; returns `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (check, order = None))]
fn run_check(py: Python<'_>, check: &str, order: Option<usize>) -> PyResult<(bool, String)> {
    let report = py.detach(|| verify::run_check(check, order)).map_err(value_error)?;
    Ok((report.passed, report.to_string()))
}

#[pyfunction]
fn checks() -> Vec<&'static str> {
    verify::CHECKS.iter().map(|(n, _)| *n).collect()
}

#[pymodule]
fn omegaq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RootedTree>()?;
    m.add_class::<PlanarBinaryTree>()?;
    m.add_class::<RationalFunction>()?;
    m.add_class::<QSeries>()?;
    m.add_function(wrap_pyfunction!(omega, m)?)?;
    m.add_function(wrap_pyfunction!(omega_q, m)?)?;
    m.add_function(wrap_pyfunction!(omega_infinity, m)?)?;
    m.add_function(wrap_pyfunction!(dend_omega_q, m)?)?;
    m.add_function(wrap_pyfunction!(carlitz_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_trees, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_planar_binary_trees, m)?)?;
    m.add_function(wrap_pyfunction!(compute_json, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(checks, m)?)?;
    Ok(())
}
