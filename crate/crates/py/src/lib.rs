//! Python bindings. Every library error surfaces as `ValueError`.

use std::sync::Arc;

use dihom::catho::{self, FinCategory, SearchGuard};
use dihom::dmetric::{self, parse_rational, BallDirection, DMetricSpace};
use dihom::fundcat::{self, CatPresentation};
use dihom::{dot, GridScene, PreCubicalSet};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A rectangular grid with open forbidden boxes.
#[pyclass(name = "GridScene", frozen)]
struct PyGridScene(GridScene);

#[pymethods]
impl PyGridScene {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        GridScene::parse(text).map(Self).map_err(err)
    }

    #[getter]
    fn source(&self) -> String {
        self.0.source_id()
    }

    #[getter]
    fn target(&self) -> String {
        self.0.target_id()
    }

    fn to_complex(&self) -> PyComplex {
        PyComplex(self.0.to_precubical())
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }
}

/// A finite pre-cubical set of dimension at most 2.
#[pyclass(name = "Complex", frozen)]
struct PyComplex(PreCubicalSet);

#[pymethods]
impl PyComplex {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        PreCubicalSet::parse(text).map(Self).map_err(err)
    }

    /// `interval`, `directed_circle`, `ordered_circle`, `wedge_circles(k)`
    /// or `chain(n)`.
    #[staticmethod]
    fn model(name: &str) -> PyResult<Self> {
        let m = name.parse().map_err(err)?;
        PreCubicalSet::model(m).map(Self).map_err(err)
    }

    fn counts(&self) -> (usize, usize, usize) {
        (self.0.num_vertices(), self.0.num_edges(), self.0.num_squares())
    }

    fn vertices(&self) -> Vec<String> {
        self.0.vertices().map(str::to_string).collect()
    }

    fn is_valid(&self) -> bool {
        self.0.validate().is_ok()
    }

    fn opposite(&self) -> PyResult<Self> {
        self.0.opposite().map(Self).map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[pyo3(signature = (highlight = Vec::new()))]
    fn to_dot(&self, highlight: Vec<String>) -> String {
        dot::complex_to_dot(&self.0, &highlight)
    }

    /// Classes of dipaths `x -> y` as `(representative edges, size)` pairs.
    #[pyo3(signature = (x, y, max_len = None))]
    fn hom_classes(&self, x: &str, y: &str, max_len: Option<usize>) -> PyResult<Vec<(Vec<String>, usize)>> {
        let set = fundcat::hom_classes(&self.0, x, y, max_len).map_err(err)?;
        Ok(set.classes.into_iter().map(|c| (c.rep.edges, c.size)).collect())
    }

    /// Number of loop classes at `x` of each length `0..=max_len`.
    fn monoid_counts(&self, x: &str, max_len: usize) -> PyResult<Vec<usize>> {
        Ok(fundcat::fundamental_monoid_classes(&self.0, x, max_len).map_err(err)?.counts)
    }

    /// `(simple, witness)` where `witness` is a pair with two classes.
    #[pyo3(signature = (max_len = None))]
    fn one_simple(&self, max_len: Option<usize>) -> PyResult<(bool, Option<(String, String)>)> {
        let v = fundcat::is_one_simple(&self.0, max_len).map_err(err)?;
        Ok((v.simple, v.witness))
    }

    fn pi0(&self) -> PyResult<Vec<Vec<String>>> {
        fundcat::pi0(&self.0).map_err(err)
    }

    fn presentation(&self) -> PyResult<PyPresentation> {
        fundcat::presentation_of(&self.0).map(PyPresentation).map_err(err)
    }
}

/// A category presentation: objects, generators and relations.
#[pyclass(name = "Presentation", frozen)]
struct PyPresentation(CatPresentation);

#[pymethods]
impl PyPresentation {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        CatPresentation::parse(text).map(Self).map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    /// The presented category, with hom-sets cut at `bound` if given.
    #[pyo3(signature = (bound = None))]
    fn realize(&self, bound: Option<usize>) -> PyResult<PyCategory> {
        let r = catho::realize_presentation(&self.0, bound).map_err(err)?;
        Ok(PyCategory(Arc::new(r.category)))
    }
}

/// A finite category with an explicit composition table.
#[pyclass(name = "Category", frozen)]
struct PyCategory(Arc<FinCategory>);

#[pymethods]
impl PyCategory {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let c = FinCategory::parse(text).map_err(err)?;
        if let Some(v) = c.validate().violations.first() {
            return Err(err(v));
        }
        Ok(Self(Arc::new(c)))
    }

    #[staticmethod]
    fn ordinal(n: usize) -> Self {
        Self(Arc::new(FinCategory::ordinal(n)))
    }

    fn objects(&self) -> Vec<String> {
        self.0.objects().to_vec()
    }

    fn num_arrows(&self) -> usize {
        self.0.num_arrows()
    }

    fn hom_size(&self, x: &str, y: &str) -> PyResult<usize> {
        let (x, y) = (self.0.require_object(x).map_err(err)?, self.0.require_object(y).map_err(err)?);
        Ok(self.0.hom(x, y).len())
    }

    fn opposite(&self) -> Self {
        Self(Arc::new(self.0.opposite()))
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn to_dot(&self) -> String {
        dot::category_to_dot(&self.0)
    }

    /// The initial object, if any.
    fn past_contractible(&self) -> Option<String> {
        catho::is_past_contractible(&self.0).map(|x| self.0.objects()[x].clone())
    }

    /// The terminal object, if any.
    fn future_contractible(&self) -> Option<String> {
        catho::is_future_contractible(&self.0).map(|x| self.0.objects()[x].clone())
    }

    fn contraction_steps(&self) -> PyResult<Option<usize>> {
        catho::contraction_steps(&self.0, SearchGuard::default()).map_err(err)
    }

    fn equivalent(&self, other: &PyCategory) -> PyResult<bool> {
        catho::dhomotopy_equivalent(&self.0, &other.0, SearchGuard::default()).map_err(err)
    }
}

/// A finite Lawvere d-metric space with exact rational distances.
#[pyclass(name = "DMetric", frozen)]
struct PyDMetric(DMetricSpace);

#[pymethods]
impl PyDMetric {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        DMetricSpace::parse(text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn interval(n: usize) -> PyResult<Self> {
        dmetric::discretized_interval(n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn directed_circle(n: usize) -> PyResult<Self> {
        dmetric::discretized_directed_circle(n).map(Self).map_err(err)
    }

    fn points(&self) -> Vec<String> {
        self.0.points().to_vec()
    }

    /// Distance as text: an integer, `p/q` or `inf`.
    fn d(&self, x: &str, y: &str) -> PyResult<String> {
        let (x, y) = (self.0.require_point(x).map_err(err)?, self.0.require_point(y).map_err(err)?);
        Ok(self.0.d(x, y).to_string())
    }

    fn is_valid(&self) -> bool {
        self.0.validate().is_ok()
    }

    fn reflect(&self) -> Self {
        Self(self.0.reflect())
    }

    fn product(&self, other: &PyDMetric) -> Self {
        Self(DMetricSpace::product(&[&self.0, &other.0]))
    }

    fn sum(&self, other: &PyDMetric) -> Self {
        Self(DMetricSpace::sum(&[&self.0, &other.0]))
    }

    /// Quotient by groups of point ids to identify.
    fn quotient(&self, groups: Vec<Vec<String>>) -> PyResult<Self> {
        let groups = groups
            .iter()
            .map(|g| g.iter().map(|p| self.0.require_point(p)).collect())
            .collect::<dihom::Result<Vec<Vec<usize>>>>()
            .map_err(err)?;
        self.0.quotient(&groups).map(Self).map_err(err)
    }

    /// Points at distance below `eps` from `at` (`future`) or to it (`past`).
    fn ball(&self, at: &str, eps: &str, direction: &str) -> PyResult<Vec<String>> {
        let x = self.0.require_point(at).map_err(err)?;
        let eps = parse_rational(eps).map_err(err)?;
        let dir = match direction {
            "future" => BallDirection::Future,
            "past" => BallDirection::Past,
            other => return Err(err(format!("direction must be past or future, not `{other}`"))),
        };
        Ok(self.0.ball(x, eps, dir).into_iter().map(|i| self.0.points()[i].clone()).collect())
    }

    fn is_isometric(&self, other: &PyDMetric) -> bool {
        dmetric::is_isometric(&self.0, &other.0)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }
}

#[pymodule]
#[pyo3(name = "dihom")]
fn dihom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGridScene>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyCategory>()?;
    m.add_class::<PyDMetric>()?;
    Ok(())
}
