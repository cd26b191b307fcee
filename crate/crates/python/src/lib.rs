//! Python bindings: barcodes, block systems, the two translation functors,
//! exact distances and the level-set pipeline. Values cross the boundary as
//! JSON documents and `p/q` rational strings, keeping the arithmetic exact.

use mvsheaf::extreal::parse_q;
use mvsheaf::{json, mv_eps_interleaved_oracle, svg, Error, OracleBudget};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded(_) => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_eps(eps: &str) -> PyResult<mvsheaf::Q> {
    let q = parse_q(eps).map_err(PyValueError::new_err)?;
    if q < mvsheaf::Q::from_integer(0.into()) {
        return Err(PyValueError::new_err("radius must be nonnegative"));
    }
    Ok(q)
}

/// A graded barcode: a finite multiset of interval bars.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Barcode {
    inner: mvsheaf::GradedBarcode,
}

#[pymethods]
impl Barcode {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Barcode> {
        Ok(Barcode { inner: json::barcode_from_json(text).map_err(to_py_err)? })
    }

    fn to_json(&self) -> String {
        json::barcode_to_json(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        let bars: Vec<String> = self.inner.bars().iter().map(|b| b.to_string()).collect();
        format!("Barcode[{}]", bars.join(", "))
    }

    fn __eq__(&self, other: &Barcode) -> bool {
        self.inner == other.inner
    }

    /// Bars as (degree, lo, hi, lo_open, hi_open) tuples with rational
    /// strings.
    fn bars(&self) -> Vec<(i64, String, String, bool, bool)> {
        self.inner
            .bars()
            .iter()
            .map(|b| {
                (
                    b.degree,
                    b.interval.lo().to_string(),
                    b.interval.hi().to_string(),
                    b.interval.lo_open(),
                    b.interval.hi_open(),
                )
            })
            .collect()
    }

    /// Convolve with the interval kernel of the given radius (a rational
    /// string such as "1/2").
    fn convolve(&self, eps: &str) -> PyResult<Barcode> {
        let eps = parse_eps(eps)?;
        Ok(Barcode { inner: mvsheaf::barcode_convolve(&self.inner, &eps) })
    }

    /// Exact bottleneck distance to another barcode: a rational string or
    /// "inf".
    fn bottleneck_distance(&self, other: &Barcode) -> String {
        mvsheaf::bottleneck_distance(&self.inner, &other.inner).to_string()
    }

    /// The block system of this barcode under the section functor.
    fn to_system(&self) -> BlockSystem {
        BlockSystem { inner: mvsheaf::psi_barcode(&self.inner) }
    }

    /// SVG rendering.
    fn plot_svg(&self) -> String {
        svg::plot_barcode(&self.inner)
    }
}

/// A decomposed block system over the half-plane above the anti-diagonal.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct BlockSystem {
    inner: mvsheaf::MVSystem,
}

#[pymethods]
impl BlockSystem {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<BlockSystem> {
        Ok(BlockSystem { inner: json::system_from_json(text).map_err(to_py_err)? })
    }

    fn to_json(&self) -> String {
        json::system_to_json(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        let blocks: Vec<String> = self
            .inner
            .blocks()
            .iter()
            .map(|gb| format!("{}@{}", gb.block, gb.degree))
            .collect();
        format!("BlockSystem[{}]", blocks.join(", "))
    }

    fn __eq__(&self, other: &BlockSystem) -> bool {
        self.inner == other.inner
    }

    /// Pointwise dimension in one degree at a point (rational strings) of the
    /// open half-plane x + y > 0.
    fn dim_at(&self, degree: i64, x: &str, y: &str) -> PyResult<u64> {
        let x = parse_q(x).map_err(PyValueError::new_err)?;
        let y = parse_q(y).map_err(PyValueError::new_err)?;
        mvsheaf::mv_dim_at(&self.inner, degree, &x, &y).map_err(to_py_err)
    }

    /// Shift every block by the diagonal vector (eps, eps), renormalizing
    /// collapsed death blocks.
    fn shift(&self, eps: &str) -> PyResult<BlockSystem> {
        let eps = parse_eps(eps)?;
        Ok(BlockSystem { inner: mvsheaf::mv_shift(&self.inner, &eps).map_err(to_py_err)? })
    }

    fn degree_shift(&self, n: i64) -> BlockSystem {
        BlockSystem { inner: mvsheaf::mv_degree_shift(&self.inner, n) }
    }

    fn direct_sum(&self, other: &BlockSystem) -> BlockSystem {
        BlockSystem { inner: mvsheaf::mv_direct_sum(&self.inner, &other.inner) }
    }

    /// Exact interleaving distance to another system: rational string or
    /// "inf".
    fn interleaving_distance(&self, other: &BlockSystem) -> String {
        mvsheaf::mv_interleaving_distance(&self.inner, &other.inner).to_string()
    }

    /// Brute-force decision of eps-interleaving (small systems only).
    fn eps_interleaved(&self, other: &BlockSystem, eps: &str) -> PyResult<bool> {
        let eps = parse_eps(eps)?;
        mv_eps_interleaved_oracle(&self.inner, &other.inner, &eps, &OracleBudget::default())
            .map_err(to_py_err)
    }

    /// The graded barcode of this system.
    fn to_barcode(&self) -> Barcode {
        Barcode { inner: mvsheaf::xi_system(&self.inner) }
    }
}

/// Graded barcode of the derived pushforward of a PL function, from mesh
/// JSON.
#[pyfunction]
fn pushforward_barcode(mesh_json: &str) -> PyResult<Barcode> {
    let f = json::mesh_from_json(mesh_json).map_err(to_py_err)?;
    Ok(Barcode { inner: mvsheaf::pushforward_barcode(&f).map_err(to_py_err)? })
}

/// Block system of a PL function, from mesh JSON.
#[pyfunction]
fn levelset_system(mesh_json: &str) -> PyResult<BlockSystem> {
    let f = json::mesh_from_json(mesh_json).map_err(to_py_err)?;
    Ok(BlockSystem { inner: mvsheaf::levelset_mv(&f).map_err(to_py_err)? })
}

#[pymodule]
fn mvsheaf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Barcode>()?;
    m.add_class::<BlockSystem>()?;
    m.add_function(wrap_pyfunction!(pushforward_barcode, m)?)?;
    m.add_function(wrap_pyfunction!(levelset_system, m)?)?;
    Ok(())
}
