//! Python bindings. Selections cross the boundary as lists of per-set item
//! index lists, scenarios as flat cost lists.

use std::time::Duration;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use iris_core::det::brute_force_minmax_regret as brute_minmax;
use iris_core::heuristics::{evolve as run_evolve, EvoParams};
use iris_core::io::{instance_to_json, parse_instance};
use iris_core::reductions::{self, Graph, QuantifiedDnf};
use iris_core::regret::RobustResult;
use iris_core::{Error, GenParams, RisDispatcher, RisSolver, Scenario, Selection, SolverConfig};

create_exception!(pyiris, InfeasibleError, PyException);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Infeasible => InfeasibleError::new_err("no feasible selection"),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Items to pick per set, with interval costs and forbidden pairs.
#[pyclass(frozen, skip_from_py_object, module = "pyiris")]
#[derive(Clone)]
struct Instance {
    inner: iris_core::Instance,
}

#[pymethods]
impl Instance {
    /// `sets` is a list of `(quota, [(lo, hi), ...])`; `forbidden` a list of
    /// `(set, item, set, item)`.
    #[new]
    #[pyo3(signature = (sets, forbidden = Vec::new()))]
    fn new(sets: Vec<(usize, Vec<(i64, i64)>)>, forbidden: Vec<(usize, usize, usize, usize)>) -> PyResult<Self> {
        let sets = sets
            .into_iter()
            .map(|(p, items)| {
                iris_core::ItemSet::new(p, items.into_iter().map(|(lo, hi)| iris_core::CostInterval::new(lo, hi)).collect())
            })
            .collect();
        let pairs = forbidden
            .into_iter()
            .map(|(i, k, j, l)| (iris_core::ItemRef::new(i, k), iris_core::ItemRef::new(j, l)));
        let inner = iris_core::Instance::new(sets, pairs).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_instance(text).map_err(to_py)? })
    }

    fn to_json(&self) -> String {
        instance_to_json(&self.inner)
    }

    /// Random instance; `mode` is "normal" or "transitive".
    #[staticmethod]
    #[pyo3(signature = (m, r, p, k = 0, mode = "normal", seed = 0))]
    fn generate(m: usize, r: usize, p: usize, k: usize, mode: &str, seed: u64) -> PyResult<Self> {
        let mode = mode.parse().map_err(to_py)?;
        let inner = iris_core::generate_instance(&GenParams::new(m, r, p, k, mode, seed)).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n_sets(&self) -> usize {
        self.inner.n_sets()
    }

    #[getter]
    fn n_items(&self) -> usize {
        self.inner.n_items()
    }

    #[getter]
    fn forbidden(&self) -> Vec<(usize, usize, usize, usize)> {
        self.inner.forbidden().iter().map(|p| (p.a().set, p.a().item, p.b().set, p.b().item)).collect()
    }

    /// "Unconstrained", "CliqueComponents" or "General".
    fn classify(&self) -> &'static str {
        iris_core::classify(&self.inner).name()
    }

    fn is_feasible(&self, chosen: Vec<Vec<usize>>) -> PyResult<bool> {
        let x = selection(&self.inner, chosen)?;
        Ok(iris_core::is_feasible(&self.inner, &x))
    }

    fn __repr__(&self) -> String {
        format!("Instance(sets={}, items={}, pairs={})", self.inner.n_sets(), self.inner.n_items(), self.inner.forbidden().len())
    }
}

fn selection(inst: &iris_core::Instance, chosen: Vec<Vec<usize>>) -> PyResult<Selection> {
    let x = Selection::new(chosen);
    x.check_well_formed(inst).map_err(to_py)?;
    Ok(x)
}

/// Optimal `(value, chosen)` under flat `costs`, or `None` when infeasible.
#[pyfunction]
fn solve_ris(inst: &Instance, costs: Vec<i64>) -> PyResult<Option<(i64, Vec<Vec<usize>>)>> {
    if costs.len() != inst.inner.n_items() {
        return Err(PyValueError::new_err(format!("expected {} costs", inst.inner.n_items())));
    }
    let res = RisDispatcher::for_instance(&inst.inner).solve(&inst.inner, &Scenario::new(costs)).map_err(to_py)?;
    Ok(res.into_optimal().map(|(x, v)| (v, x.into_chosen())))
}

/// `(regret, best_alternative)` of a feasible selection.
#[pyfunction]
fn evaluate_regret(inst: &Instance, chosen: Vec<Vec<usize>>) -> PyResult<(i64, Vec<Vec<usize>>)> {
    let x = selection(&inst.inner, chosen)?;
    let report = iris_core::evaluate_regret(&inst.inner, &x, &RisDispatcher::for_instance(&inst.inner)).map_err(to_py)?;
    Ok((report.regret, report.witness.into_chosen()))
}

fn result_dict<'py>(py: Python<'py>, res: RobustResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("status", format!("{:?}", res.status))?;
    d.set_item("regret", res.regret)?;
    d.set_item("lower_bound", res.lower_bound)?;
    d.set_item("upper_bound", res.upper_bound)?;
    d.set_item("gap", res.gap)?;
    d.set_item("iterations", res.iterations)?;
    d.set_item("x_star", res.x_star.into_chosen())?;
    Ok(d)
}

/// Exact min-max regret by cut generation. Returns a dict with `status`,
/// `regret`, `lower_bound`, `upper_bound`, `gap`, `iterations`, `x_star`.
#[pyfunction]
#[pyo3(signature = (inst, seed = 0, iteration_limit = 500, master_time_limit = 60.0, heuristics = true))]
fn minmax_regret<'py>(
    py: Python<'py>,
    inst: &Instance,
    seed: u64,
    iteration_limit: usize,
    master_time_limit: f64,
    heuristics: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let limit = Duration::try_from_secs_f64(master_time_limit).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let config = SolverConfig { iteration_limit, master_time_limit: limit, heuristics, ..SolverConfig::default() }.seeded(seed);
    let inner = inst.inner.clone();
    let res = py.detach(move || iris_core::minmax_regret(&inner, &config)).map_err(to_py)?;
    result_dict(py, res)
}

/// Min-max regret by enumeration; small instances only.
#[pyfunction]
fn brute_force_minmax_regret<'py>(py: Python<'py>, inst: &Instance) -> PyResult<Bound<'py, PyDict>> {
    result_dict(py, brute_minmax(&inst.inner).map_err(to_py)?)
}

/// Final population of the evolutionary search as `(regret, chosen)`, best first.
#[pyfunction]
#[pyo3(signature = (inst, seed = 0))]
fn evolve(inst: &Instance, seed: u64) -> PyResult<Vec<(i64, Vec<Vec<usize>>)>> {
    let params = EvoParams { rng_seed: seed, ..EvoParams::default() };
    let pop = run_evolve(&inst.inner, &params, &RisDispatcher::for_instance(&inst.inner)).map_err(to_py)?;
    Ok(pop.members.into_iter().map(|(x, r)| (r, x.into_chosen())).collect())
}

/// `(instance, threshold)` for the independent-set question on `n` vertices.
#[pyfunction]
fn independent_set_to_ris(n: usize, edges: Vec<(usize, usize)>, k: usize) -> PyResult<(Instance, i64)> {
    let g = Graph::new(n, edges).map_err(to_py)?;
    let (inner, threshold) = reductions::independent_set_to_ris(&g, k).map_err(to_py)?;
    Ok((Instance { inner }, threshold))
}

/// `(instance, b, z)` for a quantified DNF in text form (`x1 -y2 y3` per line).
#[pyfunction]
#[pyo3(signature = (text, b = None))]
fn dnf_to_iris(text: &str, b: Option<i64>) -> PyResult<(Instance, i64, i64)> {
    let phi = QuantifiedDnf::parse(text).map_err(to_py)?;
    let art = reductions::dnf_to_iris(&phi, b.unwrap_or_else(|| reductions::default_b(&phi))).map_err(to_py)?;
    Ok((Instance { inner: art.instance }, art.b, art.z))
}

#[pymodule]
fn pyiris(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add("InfeasibleError", m.py().get_type::<InfeasibleError>())?;
    m.add_function(wrap_pyfunction!(solve_ris, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_regret, m)?)?;
    m.add_function(wrap_pyfunction!(minmax_regret, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_minmax_regret, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(independent_set_to_ris, m)?)?;
    m.add_function(wrap_pyfunction!(dnf_to_iris, m)?)?;
    Ok(())
}
