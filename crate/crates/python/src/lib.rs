//! Python module `slice_cauchy_py`.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use slice_cauchy::algebra::AlgebraSpec;
use slice_cauchy::cauchy::{self, QuadratureGrid};
use slice_cauchy::geometry::{self, Circularized};
use slice_cauchy::jump::{self, Side, EXTENSION_TOL};
use slice_cauchy::parse::parse_element;
use slice_cauchy::{Element, Gis, PlanarDomain, SlicePolynomial, StemFunction};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Algebra", module = "slice_cauchy_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    inner: Arc<AlgebraSpec>,
}

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    fn quaternions() -> Self {
        PyAlgebra { inner: AlgebraSpec::quaternions() }
    }

    /// Real Clifford algebra with `n` anticommuting generators squaring to -1.
    #[staticmethod]
    fn clifford(n: usize) -> PyResult<Self> {
        Ok(PyAlgebra { inner: AlgebraSpec::clifford(n).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    /// Largest violation of the unit, associativity and involution axioms.
    fn axiom_residual(&self) -> f64 {
        self.inner.axiom_residuals().max()
    }

    fn element(&self, text: &str) -> PyResult<PyElement> {
        Ok(PyElement { inner: parse_element(&self.inner, text).map_err(err)? })
    }

    fn basis(&self, index: usize) -> PyResult<PyElement> {
        if index >= self.inner.dim() {
            return Err(err(format!("basis index {index} out of range")));
        }
        Ok(PyElement { inner: Element::basis(&self.inner, index) })
    }

    fn __repr__(&self) -> String {
        format!("Algebra({})", self.inner.name())
    }
}

#[pyclass(name = "Element", module = "slice_cauchy_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyElement {
    inner: Element,
}

impl PyElement {
    fn wrap(inner: Element) -> Self {
        PyElement { inner }
    }
}

#[pymethods]
impl PyElement {
    #[new]
    fn new(algebra: &PyAlgebra, coeffs: Vec<f64>) -> PyResult<Self> {
        Ok(PyElement { inner: Element::new(&algebra.inner, coeffs).map_err(err)? })
    }

    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn algebra(&self) -> PyAlgebra {
        PyAlgebra { inner: Arc::clone(self.inner.algebra()) }
    }

    fn conj(&self) -> Self {
        Self::wrap(self.inner.conj())
    }

    fn trace(&self) -> Self {
        Self::wrap(self.inner.trace())
    }

    fn norm(&self) -> Self {
        Self::wrap(self.inner.norm())
    }

    fn euclidean_norm(&self) -> f64 {
        self.inner.euclidean_norm()
    }

    fn distance(&self, other: &PyElement) -> f64 {
        self.inner.distance(&other.inner)
    }

    fn in_quadratic_cone(&self) -> bool {
        slice_cauchy::algebra::in_quadratic_cone(&self.inner, slice_cauchy::DEFAULT_TOL)
    }

    /// `(alpha, beta, J)` with `x = alpha + beta J`; `J` is `None` for reals.
    fn decompose(&self) -> PyResult<(f64, f64, Option<PyElement>)> {
        let d = slice_cauchy::algebra::decompose(&self.inner, slice_cauchy::DEFAULT_TOL).map_err(err)?;
        Ok((d.alpha, d.beta, d.unit.map(Self::wrap)))
    }

    fn __add__(&self, other: &PyElement) -> PyResult<Self> {
        Ok(Self::wrap(self.inner.try_add(&other.inner).map_err(err)?))
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<Self> {
        Ok(Self::wrap(self.inner.try_add(&-&other.inner).map_err(err)?))
    }

    fn __neg__(&self) -> Self {
        Self::wrap(-&self.inner)
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(e) = other.cast::<PyElement>() {
            return Ok(Self::wrap(self.inner.try_mul(&e.get().inner).map_err(err)?));
        }
        let s: f64 = other.extract()?;
        Ok(Self::wrap(self.inner.scale(s)))
    }

    fn __rmul__(&self, other: f64) -> Self {
        Self::wrap(self.inner.scale(other))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({}, {:?})", self.inner.algebra().name(), self.inner.coeffs())
    }
}

#[pyclass(name = "Gis", module = "slice_cauchy_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyGis {
    inner: Gis,
}

#[pymethods]
impl PyGis {
    #[staticmethod]
    fn full(algebra: &PyAlgebra) -> PyResult<Self> {
        Ok(PyGis { inner: Gis::full_quaternion(&algebra.inner).map_err(err)? })
    }

    #[staticmethod]
    fn paravector(algebra: &PyAlgebra) -> PyResult<Self> {
        Ok(PyGis { inner: Gis::paravector(&algebra.inner).map_err(err)? })
    }

    #[staticmethod]
    fn plane(unit: &PyElement) -> PyResult<Self> {
        Ok(PyGis { inner: Gis::plane(&unit.inner).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn unit(&self, theta: Vec<f64>) -> PyResult<PyElement> {
        Ok(PyElement::wrap(geometry::gis_unit(&self.inner, &theta).map_err(err)?))
    }

    fn combine(&self, alpha: f64, direction: Vec<f64>) -> PyResult<PyElement> {
        if direction.len() + 1 != self.inner.dim() {
            return Err(err(format!("expected {} direction components", self.inner.dim() - 1)));
        }
        Ok(PyElement::wrap(self.inner.combine(alpha, &direction)))
    }
}

#[pyclass(name = "Domain", module = "slice_cauchy_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyDomain {
    inner: PlanarDomain,
}

#[pymethods]
impl PyDomain {
    /// `disk:c,r`, `annulus:c,r1,r2` or `ellipse:c,ax,ay`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyDomain { inner: spec.parse().map_err(err)? })
    }

    #[getter]
    fn diameter(&self) -> f64 {
        self.inner.diameter()
    }

    /// "interior", "boundary", "exterior" or "outside".
    fn classify(&self, gis: &PyGis, x: &PyElement) -> &'static str {
        match geometry::circularize_membership(&self.inner, &gis.inner, &x.inner, slice_cauchy::DEFAULT_TOL) {
            Circularized::Interior => "interior",
            Circularized::Boundary => "boundary",
            Circularized::Exterior => "exterior",
            Circularized::OutsideM => "outside",
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(name = "Stem", module = "slice_cauchy_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyStem {
    inner: StemFunction,
}

#[pymethods]
impl PyStem {
    /// Slice polynomial `sum x^k a_k` with coefficients given as elements or strings.
    #[staticmethod]
    fn polynomial(algebra: &PyAlgebra, coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let mut cs = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            if let Ok(e) = c.cast::<PyElement>() {
                cs.push(e.get().inner.clone());
            } else if let Ok(v) = c.extract::<f64>() {
                cs.push(Element::real(&algebra.inner, v));
            } else {
                let s: String = c.extract()?;
                cs.push(parse_element(&algebra.inner, &s).map_err(err)?);
            }
        }
        Ok(PyStem { inner: SlicePolynomial::new(cs).map_err(err)?.stem() })
    }

    #[staticmethod]
    fn identity(algebra: &PyAlgebra) -> Self {
        PyStem { inner: StemFunction::identity(&algebra.inner) }
    }

    #[staticmethod]
    fn conjugate(algebra: &PyAlgebra) -> Self {
        PyStem { inner: StemFunction::conjugate(&algebra.inner) }
    }

    #[staticmethod]
    fn norm_squared(algebra: &PyAlgebra) -> Self {
        PyStem { inner: StemFunction::norm_squared(&algebra.inner) }
    }

    #[staticmethod]
    fn constant(value: &PyElement) -> Self {
        PyStem { inner: StemFunction::constant(&value.inner) }
    }

    #[staticmethod]
    fn remark(unit: &PyElement) -> Self {
        PyStem { inner: StemFunction::remark(&unit.inner) }
    }

    fn __call__(&self, x: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement::wrap(slice_cauchy::slice::induce(&self.inner, &x.inner).map_err(err)?))
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }
}

fn grid(spec: &str) -> PyResult<QuadratureGrid> {
    spec.parse().map_err(err)
}

#[pyclass(name = "CauchyResult", module = "slice_cauchy_py", frozen, get_all)]
struct PyCauchyResult {
    boundary: PyElement,
    volume: PyElement,
    combined: PyElement,
    boundary_nodes: usize,
    volume_nodes: usize,
    error_estimate: f64,
}

#[pyclass(name = "JumpReport", module = "slice_cauchy_py", frozen, from_py_object, get_all)]
#[derive(Clone)]
struct PyJumpReport {
    point: PyElement,
    f_plus: PyElement,
    f_minus: PyElement,
    jump: PyElement,
    boundary_value: PyElement,
    residual: f64,
    offsets: Vec<f64>,
    monotone: bool,
}

impl From<jump::JumpReport> for PyJumpReport {
    fn from(r: jump::JumpReport) -> Self {
        PyJumpReport {
            point: PyElement::wrap(r.point),
            f_plus: PyElement::wrap(r.f_plus),
            f_minus: PyElement::wrap(r.f_minus),
            jump: PyElement::wrap(r.jump),
            boundary_value: PyElement::wrap(r.boundary_value),
            residual: r.residual,
            offsets: r.offsets,
            monotone: r.monotone,
        }
    }
}

#[pyclass(name = "ExtensionReport", module = "slice_cauchy_py", frozen, get_all)]
struct PyExtensionReport {
    extends: bool,
    max_f_minus: f64,
    reports: Vec<PyJumpReport>,
}

/// Absolute offsets; `None` gives the default fractions of the diameter.
fn offsets(domain: &PlanarDomain, given: Option<Vec<f64>>) -> Vec<f64> {
    given.unwrap_or_else(|| jump::default_offsets(domain))
}

#[pyfunction]
fn sphere_volume(n: usize) -> f64 {
    geometry::sphere_volume(n)
}

#[pyfunction]
fn polar_phi(theta: Vec<f64>) -> PyResult<Vec<f64>> {
    geometry::polar_phi(&theta).map_err(err)
}

#[pyfunction]
fn jacobian_in(theta: Vec<f64>) -> PyResult<f64> {
    geometry::jacobian_in(&theta).map_err(err)
}

#[pyfunction]
fn kernel_cs(gis: &PyGis, x: &PyElement, w: &PyElement) -> PyResult<PyElement> {
    Ok(PyElement::wrap(cauchy::kernel_cs(&gis.inner, &x.inner, &w.inner).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (gis, domain, f, x, grid_spec = "32,8,24,24,8"))]
fn cauchy_reconstruct(
    py: Python<'_>,
    gis: &PyGis,
    domain: &PyDomain,
    f: &PyStem,
    x: &PyElement,
    grid_spec: &str,
) -> PyResult<PyCauchyResult> {
    let g = grid(grid_spec)?;
    let r = py
        .detach(|| cauchy::cauchy_reconstruct(&gis.inner, &domain.inner, &f.inner, &x.inner, &g))
        .map_err(err)?;
    Ok(PyCauchyResult {
        boundary: PyElement::wrap(r.boundary),
        volume: PyElement::wrap(r.volume),
        combined: PyElement::wrap(r.combined),
        boundary_nodes: r.boundary_nodes,
        volume_nodes: r.volume_nodes,
        error_estimate: r.error_estimate,
    })
}

/// `side` is "plus" for points inside the domain and "minus" outside.
#[pyfunction]
#[pyo3(signature = (gis, domain, f, x, side, grid_spec = "256,16,2,2"))]
fn cauchy_transform(
    py: Python<'_>,
    gis: &PyGis,
    domain: &PyDomain,
    f: &PyStem,
    x: &PyElement,
    side: &str,
    grid_spec: &str,
) -> PyResult<PyElement> {
    let side = match side {
        "plus" => Side::Plus,
        "minus" => Side::Minus,
        other => return Err(err(format!("side must be 'plus' or 'minus', got '{other}'"))),
    };
    let g = grid(grid_spec)?;
    py.detach(|| jump::cauchy_transform(&gis.inner, &domain.inner, &f.inner, &x.inner, &g, side))
        .map(PyElement::wrap)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (gis, domain, f, x_hat, grid_spec = "256,16,2,2", offsets = None))]
fn jump_check(
    py: Python<'_>,
    gis: &PyGis,
    domain: &PyDomain,
    f: &PyStem,
    x_hat: &PyElement,
    grid_spec: &str,
    offsets: Option<Vec<f64>>,
) -> PyResult<PyJumpReport> {
    let g = grid(grid_spec)?;
    let hs = self::offsets(&domain.inner, offsets);
    py.detach(|| jump::jump_check(&gis.inner, &domain.inner, &f.inner, &x_hat.inner, &g, &hs))
        .map(PyJumpReport::from)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (gis, domain, f, probes, grid_spec = "256,16,2,2", tol = EXTENSION_TOL, offsets = None))]
#[allow(clippy::too_many_arguments)]
fn extension_test(
    py: Python<'_>,
    gis: &PyGis,
    domain: &PyDomain,
    f: &PyStem,
    probes: Vec<PyElement>,
    grid_spec: &str,
    tol: f64,
    offsets: Option<Vec<f64>>,
) -> PyResult<PyExtensionReport> {
    let g = grid(grid_spec)?;
    let hs = self::offsets(&domain.inner, offsets);
    let probes: Vec<Element> = probes.into_iter().map(|p| p.inner).collect();
    let r = py
        .detach(|| jump::extension_test(&gis.inner, &domain.inner, &f.inner, &g, &probes, tol, &hs))
        .map_err(err)?;
    Ok(PyExtensionReport {
        extends: r.extends,
        max_f_minus: r.max_f_minus,
        reports: r.reports.into_iter().map(PyJumpReport::from).collect(),
    })
}

#[pymodule]
fn slice_cauchy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyGis>()?;
    m.add_class::<PyDomain>()?;
    m.add_class::<PyStem>()?;
    m.add_class::<PyCauchyResult>()?;
    m.add_class::<PyJumpReport>()?;
    m.add_class::<PyExtensionReport>()?;
    m.add_function(wrap_pyfunction!(sphere_volume, m)?)?;
    m.add_function(wrap_pyfunction!(polar_phi, m)?)?;
    m.add_function(wrap_pyfunction!(jacobian_in, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_cs, m)?)?;
    m.add_function(wrap_pyfunction!(cauchy_reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(cauchy_transform, m)?)?;
    m.add_function(wrap_pyfunction!(jump_check, m)?)?;
    m.add_function(wrap_pyfunction!(extension_test, m)?)?;
    Ok(())
}
