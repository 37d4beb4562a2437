use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyList;

use pinloop::freewords::{intersection_number, parse_word, self_intersection_word, CyclicOrder};
use pinloop::io::{parse_pins, parse_rational, MapFile};
use pinloop::mobidisc;
use pinloop::pinning;
use pinloop::presentation;
use pinloop::reducer;
use pinloop::{Error, RegionSet};

create_exception!(pinloop_py, PinloopError, PyException);

fn py_err(e: Error) -> PyErr {
    PinloopError::new_err(format!("{}: {}", e.kind(), e))
}

fn sets(v: &[RegionSet]) -> Vec<Vec<usize>> {
    v.iter().map(RegionSet::to_vec).collect()
}

/// A multiloop on a closed oriented surface, given by its rotation system.
#[pyclass(name = "Multiloop", module = "pinloop_py", skip_from_py_object)]
#[derive(Clone)]
pub struct PyMultiloop {
    inner: pinloop::Multiloop,
}

impl PyMultiloop {
    /// Pins as a comma-separated string of region names, or a list whose
    /// integers are region indices and whose strings are region names.
    fn pins(&self, pins: &Bound<'_, PyAny>) -> PyResult<RegionSet> {
        let map = self.inner.map();
        if let Ok(s) = pins.extract::<String>() {
            return parse_pins(map, &s).map_err(py_err);
        }
        let n = map.n_regions();
        let mut set = RegionSet::empty(n);
        for item in pins.cast::<PyList>()?.iter() {
            let r = match item.extract::<usize>() {
                Ok(i) if i < n => i,
                Ok(i) => return Err(py_err(Error::RegionOutOfRange(i, n))),
                Err(_) => {
                    let name = item.extract::<String>()?;
                    map.region_by_name(&name).ok_or_else(|| py_err(Error::UnknownRegion(name)))?
                }
            };
            set.insert(r);
        }
        Ok(set)
    }
}

#[pymethods]
impl PyMultiloop {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = MapFile::parse(text).and_then(|f| f.to_multiloop()).map_err(py_err)?;
        Ok(PyMultiloop { inner })
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        Ok(PyMultiloop { inner: pinloop::fixtures::fixture(name).map_err(py_err)? })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&MapFile::from_multiloop(&self.inner)).expect("maps serialize")
    }

    #[getter]
    fn n_regions(&self) -> usize {
        self.inner.n_regions()
    }

    #[getter]
    fn n_double_points(&self) -> usize {
        self.inner.n_double_points()
    }

    #[getter]
    fn n_strands(&self) -> usize {
        self.inner.n_strands()
    }

    #[getter]
    fn chi(&self) -> i64 {
        self.inner.map().euler_characteristic()
    }

    #[getter]
    fn genus(&self) -> PyResult<usize> {
        self.inner.map().genus().map_err(py_err)
    }

    fn region_degrees(&self) -> Vec<usize> {
        self.inner.region_degrees()
    }

    fn region_name(&self, region: usize) -> String {
        self.inner.map().region_name(region)
    }

    fn region_by_name(&self, name: &str) -> Option<usize> {
        self.inner.map().region_by_name(name)
    }

    fn self_intersection(&self, pins: &Bound<'_, PyAny>) -> PyResult<u64> {
        presentation::self_intersection(&self.inner, &self.pins(pins)?).map_err(py_err)
    }

    fn is_pinning(&self, pins: &Bound<'_, PyAny>) -> PyResult<bool> {
        pinning::is_pinning(&self.inner, &self.pins(pins)?).map_err(py_err)
    }

    #[pyo3(signature = (pins, order=Vec::new()))]
    fn minimal_pinning_from(&self, pins: &Bound<'_, PyAny>, order: Vec<usize>) -> PyResult<Vec<usize>> {
        let start = self.pins(pins)?;
        Ok(pinning::minimal_pinning_from(&self.inner, &start, &order).map_err(py_err)?.to_vec())
    }

    #[pyo3(signature = (budget=None))]
    fn pinning_number(&self, budget: Option<usize>) -> PyResult<usize> {
        Ok(pinning::pinning_number_exact(&self.inner, budget).map_err(py_err)?.pinning_number)
    }

    #[pyo3(signature = (budget=None))]
    fn minimal_pinning_sets(&self, budget: Option<usize>) -> PyResult<Vec<Vec<usize>>> {
        Ok(sets(&pinning::enumerate_minimal_pinning_sets(&self.inner, budget).map_err(py_err)?))
    }

    #[pyo3(signature = (budget=None))]
    fn forced_regions(&self, budget: Option<usize>) -> PyResult<Vec<usize>> {
        Ok(pinning::forced_regions(&self.inner, budget).map_err(py_err)?.to_vec())
    }

    #[pyo3(signature = (budget=None))]
    fn semilattice_dot(&self, budget: Option<usize>) -> PyResult<String> {
        let lattice = pinning::semilattice(&self.inner, budget).map_err(py_err)?;
        Ok(lattice.to_dot(|r| self.inner.map().region_name(r)))
    }

    fn mobidiscs(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(sets(&mobidisc::mobidisc_set(&self.inner).map_err(py_err)?))
    }

    fn mobidisc_formula(&self) -> PyResult<PyFormula> {
        Ok(PyFormula { inner: mobidisc::mobidisc_formula(&self.inner).map_err(py_err)? })
    }

    fn __repr__(&self) -> String {
        format!(
            "Multiloop(double_points={}, regions={}, strands={})",
            self.inner.n_double_points(),
            self.inner.n_regions(),
            self.inner.n_strands()
        )
    }
}

/// A positive CNF over region variables.
#[pyclass(name = "MobidiscFormula", module = "pinloop_py", skip_from_py_object)]
#[derive(Clone)]
pub struct PyFormula {
    inner: mobidisc::MobidiscFormula,
}

#[pymethods]
impl PyFormula {
    #[staticmethod]
    fn from_dimacs(text: &str) -> PyResult<Self> {
        Ok(PyFormula { inner: mobidisc::MobidiscFormula::from_dimacs(text).map_err(py_err)? })
    }

    fn to_dimacs(&self) -> String {
        self.inner.to_dimacs(|r| r.to_string())
    }

    #[getter]
    fn variables(&self) -> usize {
        self.inner.variables
    }

    #[getter]
    fn clauses(&self) -> Vec<Vec<usize>> {
        sets(&self.inner.clauses)
    }

    fn minimum_hitting_set(&self) -> Vec<usize> {
        mobidisc::minimum_hitting_set(&self.inner).to_vec()
    }

    fn minimal_hitting_sets(&self) -> Vec<Vec<usize>> {
        sets(&mobidisc::minimal_hitting_sets(&self.inner))
    }
}

/// The loop of a plane graph under the vertex cover reduction.
#[pyclass(name = "Reduction", module = "pinloop_py")]
pub struct PyReduction {
    inner: reducer::Reduction,
}

#[pymethods]
impl PyReduction {
    #[getter]
    fn multiloop(&self) -> PyMultiloop {
        PyMultiloop { inner: self.inner.multiloop.clone() }
    }

    #[getter]
    fn correspondence(&self) -> Vec<usize> {
        self.inner.correspondence.clone()
    }

    #[getter]
    fn forced_pins(&self) -> Vec<usize> {
        self.inner.forced_pins.to_vec()
    }

    #[getter]
    fn epsilon(&self) -> String {
        self.inner.epsilon.to_string()
    }

    fn pinning_number(&self) -> PyResult<usize> {
        self.inner.pinning_number().map_err(py_err)
    }
}

fn plane_graph(vertices: Vec<(String, String)>, edges: Vec<(usize, usize)>) -> PyResult<reducer::PlaneGraph> {
    let points = vertices
        .iter()
        .map(|(x, y)| Ok(pinloop::geometry::Point::new(parse_rational(x)?, parse_rational(y)?)))
        .collect::<pinloop::Result<Vec<_>>>()
        .map_err(py_err)?;
    reducer::PlaneGraph::new(points, edges).map_err(py_err)
}

/// Builds the reduction loop of a straight-line plane graph; coordinates are
/// exact rationals written as strings such as `"1/3"`.
#[pyfunction]
fn vc_to_loop(vertices: Vec<(String, String)>, edges: Vec<(usize, usize)>) -> PyResult<PyReduction> {
    let g = plane_graph(vertices, edges)?;
    Ok(PyReduction { inner: reducer::vc_to_loop(&g).map_err(py_err)? })
}

#[pyfunction]
#[pyo3(signature = (vertices, edges, k, max_double_points=None))]
fn verify_correspondence(
    vertices: Vec<(String, String)>,
    edges: Vec<(usize, usize)>,
    k: usize,
    max_double_points: Option<usize>,
) -> PyResult<bool> {
    let g = plane_graph(vertices, edges)?;
    reducer::verify_correspondence(&g, k, max_double_points).map_err(py_err)
}

/// Self-intersection number of a free-group word (`"aBa"`) under a cyclic
/// order of the generators and their inverses (`"aABb"`).
#[pyfunction]
fn word_self_intersection(word: &str, order: &str) -> PyResult<u64> {
    let order = CyclicOrder::parse(order).map_err(py_err)?;
    Ok(self_intersection_word(&parse_word(word).map_err(py_err)?, &order))
}

#[pyfunction]
fn word_intersection(alpha: &str, beta: &str, order: &str) -> PyResult<u64> {
    let order = CyclicOrder::parse(order).map_err(py_err)?;
    let a = parse_word(alpha).map_err(py_err)?;
    let b = parse_word(beta).map_err(py_err)?;
    intersection_number(&a, &b, &order).map_err(py_err)
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    pinloop::fixtures::CATALOG.iter().map(|e| e.name).collect()
}

#[pymodule]
pub fn pinloop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PinloopError", m.py().get_type::<PinloopError>())?;
    m.add_class::<PyMultiloop>()?;
    m.add_class::<PyFormula>()?;
    m.add_class::<PyReduction>()?;
    m.add_function(wrap_pyfunction!(vc_to_loop, m)?)?;
    m.add_function(wrap_pyfunction!(verify_correspondence, m)?)?;
    m.add_function(wrap_pyfunction!(word_self_intersection, m)?)?;
    m.add_function(wrap_pyfunction!(word_intersection, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    Ok(())
}
