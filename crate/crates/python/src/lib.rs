use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use scaffold_assign as core;
use scaffold_assign::generate::{Distribution, GenSpec};
use scaffold_assign::SortCheck;

fn to_py(err: core::Error) -> PyErr {
    if err.is_internal() {
        PyRuntimeError::new_err(err.to_string())
    } else {
        PyValueError::new_err(err.to_string())
    }
}

/// Two sorted coordinate multisets with |S| >= |T| >= 1.
#[pyclass(name = "Instance", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyInstance {
    inner: core::Instance,
}

#[pymethods]
impl PyInstance {
    #[new]
    fn new(s: Vec<i64>, t: Vec<i64>) -> PyResult<Self> {
        let inner = core::Instance::new(s, t).map_err(to_py)?;
        Ok(PyInstance { inner })
    }

    /// Parses the `S ...` / `T ...` instance-file format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let inner = core::format::parse_instance(text).map_err(to_py)?;
        Ok(PyInstance { inner })
    }

    #[getter]
    fn s(&self) -> Vec<i64> {
        self.inner.s().to_vec()
    }

    #[getter]
    fn t(&self) -> Vec<i64> {
        self.inner.t().to_vec()
    }

    #[getter]
    fn delta(&self) -> usize {
        self.inner.delta()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Instance(s={:?}, t={:?})", self.inner.s(), self.inner.t())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(name = "Solution", frozen)]
pub struct PySolution {
    inner: core::Solution,
    inst: core::Instance,
}

#[pymethods]
impl PySolution {
    #[getter]
    fn total_cost(&self) -> i64 {
        self.inner.total_cost
    }

    /// `(s_index, t_index, cost)` per source, in source order.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize, i64)> {
        self.inner
            .assignment
            .edges
            .iter()
            .map(|e| (e.s_index, e.t_index, e.cost))
            .collect()
    }

    /// `(s, t)` coordinate pairs, in source order.
    #[getter]
    fn edge_coords(&self) -> Vec<(i64, i64)> {
        self.inner
            .assignment
            .edges
            .iter()
            .map(|e| (self.inst.s()[e.s_index], self.inst.t()[e.t_index]))
            .collect()
    }

    /// Source indices of the removal set, by increasing height.
    #[getter]
    fn removed(&self) -> Vec<usize> {
        self.inner.removed.iter().map(|r| r.s_index).collect()
    }

    #[getter]
    fn neighbor_sum(&self) -> i64 {
        self.inner.neighbor_sum
    }

    #[getter]
    fn reduced_area(&self) -> i64 {
        self.inner.reduced_area
    }

    /// Raises RuntimeError if a structural postcondition fails.
    fn verify(&self) -> PyResult<()> {
        self.inner.verify(&self.inst).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "Solution(total_cost={}, removed={:?})",
            self.inner.total_cost,
            self.removed()
        )
    }
}

#[pyfunction]
fn solve(inst: &PyInstance) -> PyResult<PySolution> {
    let inner = core::solve(&inst.inner).map_err(to_py)?;
    Ok(PySolution {
        inner,
        inst: inst.inner.clone(),
    })
}

#[pyfunction]
#[pyo3(signature = (s, t, verify = true))]
fn solve_presorted(s: Vec<i64>, t: Vec<i64>, verify: bool) -> PyResult<PySolution> {
    let check = if verify {
        SortCheck::Verify
    } else {
        SortCheck::Trust
    };
    let inst = core::Instance::from_sorted(s, t, check).map_err(to_py)?;
    let inner = core::solve(&inst).map_err(to_py)?;
    Ok(PySolution { inner, inst })
}

#[pyfunction]
#[pyo3(signature = (inst, guard = core::oracle::DEFAULT_DP_GUARD))]
fn dp_optimal_cost(inst: &PyInstance, guard: usize) -> PyResult<i64> {
    core::oracle::dp_optimal_cost(&inst.inner, guard).map_err(to_py)
}

#[pyfunction]
fn exhaustive_optimal(inst: &PyInstance) -> PyResult<i64> {
    core::oracle::exhaustive_optimal(&inst.inner).map_err(to_py)
}

#[pyfunction]
fn profit_direct(inst: &PyInstance, s_index: usize) -> PyResult<i64> {
    core::oracle::profit_direct(&inst.inner, s_index).map_err(to_py)
}

#[pyfunction]
fn karp_li_identity_check(inst: &PyInstance, removed: Vec<usize>) -> PyResult<(i64, i64)> {
    core::oracle::karp_li_identity_check(&inst.inner, &removed).map_err(to_py)
}

/// `(breakpoint, level)` pairs of the height function.
#[pyfunction]
fn height_profile(inst: &PyInstance) -> Vec<(i64, i64)> {
    let p = core::height_profile(&inst.inner);
    p.breakpoints.into_iter().zip(p.levels).collect()
}

/// Source heights, then target heights.
#[pyfunction]
fn point_heights(inst: &PyInstance) -> (Vec<i64>, Vec<i64>) {
    let p = core::height_profile(&inst.inner);
    (p.s_height, p.t_height)
}

#[pyfunction]
fn count_crossings(sol: &PySolution) -> u64 {
    core::count_crossings(&sol.inst, &sol.inner.assignment)
}

#[pyfunction]
#[pyo3(signature = (a, b, swap = false))]
fn rhythm_distance(a: &str, b: &str, swap: bool) -> PyResult<i64> {
    core::format::rhythm_distance(a, b, swap).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (seed, size_s, size_t, lo, hi, dist = "uniform"))]
fn generate_instance(
    seed: u64,
    size_s: usize,
    size_t: usize,
    lo: i64,
    hi: i64,
    dist: &str,
) -> PyResult<PyInstance> {
    let dist: Distribution = dist.parse().map_err(to_py)?;
    let spec = GenSpec {
        seed,
        size_s,
        size_t,
        lo,
        hi,
        dist,
    };
    let inner = core::generate::generate_instance(&spec).map_err(to_py)?;
    Ok(PyInstance { inner })
}

#[pymodule]
#[pyo3(name = "scaffold_assign")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_presorted, m)?)?;
    m.add_function(wrap_pyfunction!(dp_optimal_cost, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_optimal, m)?)?;
    m.add_function(wrap_pyfunction!(profit_direct, m)?)?;
    m.add_function(wrap_pyfunction!(karp_li_identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(height_profile, m)?)?;
    m.add_function(wrap_pyfunction!(point_heights, m)?)?;
    m.add_function(wrap_pyfunction!(count_crossings, m)?)?;
    m.add_function(wrap_pyfunction!(rhythm_distance, m)?)?;
    m.add_function(wrap_pyfunction!(generate_instance, m)?)?;
    Ok(())
}
