//! Python bindings for the optical-molecule toolkit: parameter types,
//! steady states, dark-phase solvers, designers, sweeps, time integration,
//! and the truncated-Fock oracle.

use num_complex::Complex64 as C64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use optmol::dynamics::{self, PhaseSchedule};
use optmol::params::Model;
use optmol::{config, ensemble, oracle, sweep};

fn err(e: optmol::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "TwoModeParams", frozen, from_py_object)]
#[derive(Clone)]
struct PyTwoModeParams {
    inner: optmol::TwoModeParams,
}

#[pymethods]
impl PyTwoModeParams {
    #[new]
    #[pyo3(signature = (delta1, delta2, gamma1, gamma2, j, lambda1_mag, lambda2_mag, phi=0.0))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        delta1: f64,
        delta2: f64,
        gamma1: f64,
        gamma2: f64,
        j: f64,
        lambda1_mag: f64,
        lambda2_mag: f64,
        phi: f64,
    ) -> Self {
        Self {
            inner: optmol::TwoModeParams {
                delta1,
                delta2,
                gamma1,
                gamma2,
                coupling: j,
                lambda1_mag,
                lambda2_mag,
                phi,
            },
        }
    }

    #[getter]
    fn delta1(&self) -> f64 {
        self.inner.delta1
    }
    #[getter]
    fn delta2(&self) -> f64 {
        self.inner.delta2
    }
    #[getter]
    fn gamma1(&self) -> f64 {
        self.inner.gamma1
    }
    #[getter]
    fn gamma2(&self) -> f64 {
        self.inner.gamma2
    }
    #[getter]
    fn j(&self) -> f64 {
        self.inner.coupling
    }
    #[getter]
    fn lambda1_mag(&self) -> f64 {
        self.inner.lambda1_mag
    }
    #[getter]
    fn lambda2_mag(&self) -> f64 {
        self.inner.lambda2_mag
    }
    #[getter]
    fn phi(&self) -> f64 {
        self.inner.phi
    }

    fn with_phi(&self, phi: f64) -> Self {
        Self {
            inner: self.inner.with_phi(phi),
        }
    }

    /// Violated invariants (empty when the parameters are usable).
    fn validate(&self) -> Vec<String> {
        self.inner.validate().violations
    }

    fn gain_mode(&self) -> bool {
        self.inner.validate().gain_mode
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "TwoModeParams(delta1={}, delta2={}, gamma1={}, gamma2={}, j={}, lambda1_mag={}, lambda2_mag={}, phi={})",
            p.delta1, p.delta2, p.gamma1, p.gamma2, p.coupling, p.lambda1_mag, p.lambda2_mag, p.phi
        )
    }
}

#[pyclass(name = "ThreeModeParams", frozen, from_py_object)]
#[derive(Clone)]
struct PyThreeModeParams {
    inner: optmol::ThreeModeParams,
}

#[pymethods]
impl PyThreeModeParams {
    #[new]
    #[pyo3(signature = (delta1, delta2, gamma1, gamma2, j, lambda1_mag, lambda2_mag, delta_b, gamma_b, eta, phi=0.0))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        delta1: f64,
        delta2: f64,
        gamma1: f64,
        gamma2: f64,
        j: f64,
        lambda1_mag: f64,
        lambda2_mag: f64,
        delta_b: f64,
        gamma_b: f64,
        eta: f64,
        phi: f64,
    ) -> Self {
        Self {
            inner: optmol::ThreeModeParams {
                base: optmol::TwoModeParams {
                    delta1,
                    delta2,
                    gamma1,
                    gamma2,
                    coupling: j,
                    lambda1_mag,
                    lambda2_mag,
                    phi,
                },
                delta_b,
                gamma_b,
                eta,
            },
        }
    }

    #[getter]
    fn delta1(&self) -> f64 {
        self.inner.base.delta1
    }
    #[getter]
    fn delta2(&self) -> f64 {
        self.inner.base.delta2
    }
    #[getter]
    fn gamma1(&self) -> f64 {
        self.inner.base.gamma1
    }
    #[getter]
    fn gamma2(&self) -> f64 {
        self.inner.base.gamma2
    }
    #[getter]
    fn j(&self) -> f64 {
        self.inner.base.coupling
    }
    #[getter]
    fn lambda1_mag(&self) -> f64 {
        self.inner.base.lambda1_mag
    }
    #[getter]
    fn lambda2_mag(&self) -> f64 {
        self.inner.base.lambda2_mag
    }
    #[getter]
    fn phi(&self) -> f64 {
        self.inner.base.phi
    }
    #[getter]
    fn delta_b(&self) -> f64 {
        self.inner.delta_b
    }
    #[getter]
    fn gamma_b(&self) -> f64 {
        self.inner.gamma_b
    }
    #[getter]
    fn eta(&self) -> f64 {
        self.inner.eta
    }

    fn with_phi(&self, phi: f64) -> Self {
        Self {
            inner: self.inner.with_phi(phi),
        }
    }

    fn validate(&self) -> Vec<String> {
        self.inner.validate().violations
    }

    fn gain_mode(&self) -> bool {
        self.inner.validate().gain_mode
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "ThreeModeParams(delta1={}, delta2={}, gamma1={}, gamma2={}, j={}, lambda1_mag={}, lambda2_mag={}, delta_b={}, gamma_b={}, eta={}, phi={})",
            p.base.delta1,
            p.base.delta2,
            p.base.gamma1,
            p.base.gamma2,
            p.base.coupling,
            p.base.lambda1_mag,
            p.base.lambda2_mag,
            p.delta_b,
            p.gamma_b,
            p.eta,
            p.base.phi
        )
    }
}

/// Accept either parameter class where both model sizes make sense.
fn extract_model(params: &Bound<'_, PyAny>) -> PyResult<Model> {
    if let Ok(p) = params.extract::<PyTwoModeParams>() {
        return Ok(Model::TwoMode(p.inner));
    }
    if let Ok(p) = params.extract::<PyThreeModeParams>() {
        return Ok(Model::ThreeMode(p.inner));
    }
    Err(PyValueError::new_err(
        "expected TwoModeParams or ThreeModeParams",
    ))
}

fn model_to_py(py: Python<'_>, model: Model) -> PyResult<Py<PyAny>> {
    match model {
        Model::TwoMode(inner) => {
            Ok(PyTwoModeParams { inner }.into_pyobject(py)?.into_any().unbind())
        }
        Model::ThreeMode(inner) => {
            Ok(PyThreeModeParams { inner }.into_pyobject(py)?.into_any().unbind())
        }
    }
}

#[pyclass(name = "SteadyState", frozen)]
struct PySteadyState {
    inner: optmol::SteadyState,
}

#[pymethods]
impl PySteadyState {
    #[getter]
    fn alpha1(&self) -> C64 {
        self.inner.alpha1
    }
    #[getter]
    fn alpha2(&self) -> C64 {
        self.inner.alpha2
    }
    #[getter]
    fn beta(&self) -> Option<C64> {
        self.inner.beta
    }
    #[getter]
    fn n1(&self) -> f64 {
        self.inner.n1()
    }
    #[getter]
    fn n2(&self) -> f64 {
        self.inner.n2()
    }
    #[getter]
    fn nb(&self) -> Option<f64> {
        self.inner.nb()
    }

    fn amplitudes(&self) -> Vec<C64> {
        self.inner.amplitudes()
    }

    fn __repr__(&self) -> String {
        format!(
            "SteadyState(alpha1={}, alpha2={}, beta={:?})",
            self.inner.alpha1, self.inner.alpha2, self.inner.beta
        )
    }
}

#[pyclass(name = "DarkSolution", frozen)]
struct PyDarkSolution {
    inner: optmol::dark::DarkSolution,
}

#[pymethods]
impl PyDarkSolution {
    #[getter]
    fn cavity(&self) -> u8 {
        self.inner.cavity
    }
    #[getter]
    fn phi(&self) -> f64 {
        self.inner.phi
    }
    #[getter]
    fn feasibility_residual(&self) -> f64 {
        self.inner.feasibility_residual
    }
    #[getter]
    fn feasible(&self) -> bool {
        self.inner.feasible
    }

    fn __repr__(&self) -> String {
        format!(
            "DarkSolution(cavity={}, phi={}, feasibility_residual={:e}, feasible={})",
            self.inner.cavity, self.inner.phi, self.inner.feasibility_residual, self.inner.feasible
        )
    }
}

#[pyclass(name = "OracleResult", frozen)]
struct PyOracleResult {
    inner: oracle::OracleResult,
}

#[pymethods]
impl PyOracleResult {
    #[getter]
    fn cutoff(&self) -> usize {
        self.inner.cutoff
    }
    #[getter]
    fn modes(&self) -> usize {
        self.inner.modes
    }
    #[getter]
    fn mean_a1(&self) -> C64 {
        self.inner.mean_a1
    }
    #[getter]
    fn mean_a2(&self) -> C64 {
        self.inner.mean_a2
    }
    #[getter]
    fn mean_b(&self) -> Option<C64> {
        self.inner.mean_b
    }
    #[getter]
    fn occupation_a1(&self) -> f64 {
        self.inner.occupation_a1
    }
    #[getter]
    fn occupation_a2(&self) -> f64 {
        self.inner.occupation_a2
    }
    #[getter]
    fn occupation_b(&self) -> Option<f64> {
        self.inner.occupation_b
    }
    #[getter]
    fn trace_error(&self) -> f64 {
        self.inner.trace_error
    }
    #[getter]
    fn hermiticity_error(&self) -> f64 {
        self.inner.hermiticity_error
    }
    #[getter]
    fn min_eigenvalue(&self) -> f64 {
        self.inner.min_eigenvalue
    }
    #[getter]
    fn truncation_warning(&self) -> bool {
        self.inner.truncation_warning
    }

    /// Largest absolute first-moment difference against a mean-field state.
    fn max_mean_discrepancy(&self, ss: &PySteadyState) -> f64 {
        self.inner.max_mean_discrepancy(&ss.inner)
    }
}

#[pyclass(name = "Trajectory", frozen)]
struct PyTrajectory {
    inner: dynamics::Trajectory,
}

#[pymethods]
impl PyTrajectory {
    #[getter]
    fn times(&self) -> Vec<f64> {
        self.inner.times().to_vec()
    }

    #[getter]
    fn phis(&self) -> Vec<f64> {
        self.inner.phi_of_t().to_vec()
    }

    /// Per-sample amplitude vectors.
    fn states(&self) -> Vec<Vec<C64>> {
        (0..self.inner.len())
            .map(|k| self.inner.state_at(k).to_vec())
            .collect()
    }

    fn final_state(&self) -> Vec<C64> {
        self.inner.final_state().to_vec()
    }

    fn save_csv(&self, path: String) -> PyResult<()> {
        let mut file = std::fs::File::create(path)?;
        self.inner.write_csv(&mut file)?;
        Ok(())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// Detunings relative to the drive frequency.
#[pyfunction]
#[pyo3(signature = (omega1, omega2, omega_d, omega0=None))]
fn to_rotating_frame(
    omega1: f64,
    omega2: f64,
    omega_d: f64,
    omega0: Option<f64>,
) -> (f64, f64, Option<f64>) {
    let d = optmol::to_rotating_frame(&optmol::LabFrameSpec {
        omega1,
        omega2,
        omega0,
        omega_d,
    });
    (d.delta1, d.delta2, d.delta_b)
}

/// Collective coupling `g * sqrt(n_atoms)`.
#[pyfunction]
fn collective_coupling(g: f64, n_atoms: u64) -> PyResult<f64> {
    optmol::collective_coupling(g, n_atoms).map_err(err)
}

/// Closed-form steady state for either parameter class.
#[pyfunction]
fn steady_state(params: &Bound<'_, PyAny>) -> PyResult<PySteadyState> {
    let model = extract_model(params)?;
    Ok(PySteadyState {
        inner: model.steady_state_closed_form().map_err(err)?,
    })
}

/// Steady state by generic linear solve of the drift system.
#[pyfunction]
fn steady_state_solve(params: &Bound<'_, PyAny>) -> PyResult<PySteadyState> {
    let model = extract_model(params)?;
    Ok(PySteadyState {
        inner: dynamics::steady_state_solve(&dynamics::drift(&model)).map_err(err)?,
    })
}

/// Drift-matrix eigenvalues and the strict stability verdict.
#[pyfunction]
fn stability(params: &Bound<'_, PyAny>) -> PyResult<(Vec<C64>, bool)> {
    let model = extract_model(params)?;
    let st = dynamics::stability(&dynamics::drift(&model));
    Ok((st.eigenvalues, st.is_stable))
}

/// Dark-phase solution for cavity 1 or 2 (uses the eta-modified condition
/// for three-mode parameters).
#[pyfunction]
fn dark_phase(params: &Bound<'_, PyAny>, cavity: u8) -> PyResult<PyDarkSolution> {
    let model = extract_model(params)?;
    Ok(PyDarkSolution {
        inner: model.dark_phase(cavity).map_err(err)?,
    })
}

/// Symmetric two-mode design; returns `(params, phi_dark_1, phi_dark_2)`.
#[pyfunction]
fn design_symmetric(delta: f64, gamma: f64, lambda: f64) -> (PyTwoModeParams, f64, f64) {
    let d = optmol::dark::design_symmetric(delta, gamma, lambda);
    (PyTwoModeParams { inner: d.params }, d.phi_dark_1, d.phi_dark_2)
}

/// Symmetric three-mode design; requires `delta > gamma/2`.
#[pyfunction]
fn design_symmetric_atoms(
    delta: f64,
    gamma: f64,
    lambda: f64,
) -> PyResult<(PyThreeModeParams, f64, f64)> {
    let d = ensemble::design_symmetric_atoms(delta, gamma, lambda).map_err(err)?;
    Ok((PyThreeModeParams { inner: d.params }, d.phi_dark_1, d.phi_dark_2))
}

/// Occupations over a uniform phase grid. Rows are `(phi, n1, n2)` or
/// `(phi, n1, n2, nb)`; singular grid points yield `nan` entries.
#[pyfunction]
fn sweep_occupations(
    params: &Bound<'_, PyAny>,
    phi_from: f64,
    phi_to: f64,
    points: usize,
) -> PyResult<Vec<Vec<f64>>> {
    let model = extract_model(params)?;
    let result = sweep::run_sweep(
        &model,
        &sweep::SweepSpec {
            phi_from,
            phi_to,
            points,
        },
    )
    .map_err(err)?;
    let rows = result
        .phis
        .iter()
        .zip(&result.states)
        .map(|(phi, state)| {
            let mut row = vec![*phi];
            match state {
                Some(s) => {
                    row.push(s.n1());
                    row.push(s.n2());
                    if let Some(nb) = s.nb() {
                        row.push(nb);
                    }
                }
                None => {
                    row.extend([f64::NAN; 2]);
                    if model.dim() == 3 {
                        row.push(f64::NAN);
                    }
                }
            }
            row
        })
        .collect();
    Ok(rows)
}

/// Fixed-step integration of the mean-field equations. Give either a
/// constant phase or a linear ramp `(phi0, phi1, t0, t1)`.
#[pyfunction]
#[pyo3(signature = (params, t_final, dt, phase_const=None, phase_ramp=None, initial=None))]
fn integrate(
    params: &Bound<'_, PyAny>,
    t_final: f64,
    dt: f64,
    phase_const: Option<f64>,
    phase_ramp: Option<(f64, f64, f64, f64)>,
    initial: Option<Vec<C64>>,
) -> PyResult<PyTrajectory> {
    let model = extract_model(params)?;
    let schedule = match (phase_const, phase_ramp) {
        (Some(phi), None) => PhaseSchedule::Constant(phi),
        (None, Some((phi0, phi1, t0, t1))) => PhaseSchedule::Ramp { phi0, phi1, t0, t1 },
        _ => {
            return Err(PyValueError::new_err(
                "give exactly one of phase_const or phase_ramp",
            ))
        }
    };
    let initial = initial.unwrap_or_else(|| vec![C64::new(0.0, 0.0); model.dim()]);
    Ok(PyTrajectory {
        inner: dynamics::integrate(&model, &initial, &schedule, t_final, dt).map_err(err)?,
    })
}

/// Truncated-Fock Lindblad steady state (loss-only parameters).
#[pyfunction]
#[pyo3(signature = (params, cutoff, dim_cap=oracle::DEFAULT_DIM_CAP))]
fn oracle_steady_state(
    params: &Bound<'_, PyAny>,
    cutoff: usize,
    dim_cap: usize,
) -> PyResult<PyOracleResult> {
    let model = extract_model(params)?;
    let fock = oracle::FockConfig::with_cap(cutoff, model.dim(), dim_cap).map_err(err)?;
    Ok(PyOracleResult {
        inner: oracle::liouvillian_steady_state(&model, &fock).map_err(err)?,
    })
}

/// Oracle convergence study; returns `(results, deltas, converged)`.
#[pyfunction]
fn truncation_sweep(
    params: &Bound<'_, PyAny>,
    cutoffs: Vec<usize>,
) -> PyResult<(Vec<PyOracleResult>, Vec<f64>, bool)> {
    let model = extract_model(params)?;
    let sweep = oracle::truncation_sweep(&model, &cutoffs).map_err(err)?;
    Ok((
        sweep
            .results
            .into_iter()
            .map(|inner| PyOracleResult { inner })
            .collect(),
        sweep.deltas,
        sweep.converged,
    ))
}

/// Load a flat JSON parameter file; returns the matching parameter class.
#[pyfunction]
fn load_config(py: Python<'_>, path: String) -> PyResult<Py<PyAny>> {
    let model = config::load(std::path::Path::new(&path)).map_err(err)?;
    model_to_py(py, model)
}

/// Write a parameter set to a flat JSON file.
#[pyfunction]
fn save_config(params: &Bound<'_, PyAny>, path: String) -> PyResult<()> {
    let model = extract_model(params)?;
    config::save(&model, std::path::Path::new(&path)).map_err(err)
}

#[pymodule]
#[pyo3(name = "optmol")]
fn optmol_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTwoModeParams>()?;
    m.add_class::<PyThreeModeParams>()?;
    m.add_class::<PySteadyState>()?;
    m.add_class::<PyDarkSolution>()?;
    m.add_class::<PyOracleResult>()?;
    m.add_class::<PyTrajectory>()?;
    m.add_function(wrap_pyfunction!(to_rotating_frame, m)?)?;
    m.add_function(wrap_pyfunction!(collective_coupling, m)?)?;
    m.add_function(wrap_pyfunction!(steady_state, m)?)?;
    m.add_function(wrap_pyfunction!(steady_state_solve, m)?)?;
    m.add_function(wrap_pyfunction!(stability, m)?)?;
    m.add_function(wrap_pyfunction!(dark_phase, m)?)?;
    m.add_function(wrap_pyfunction!(design_symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(design_symmetric_atoms, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_occupations, m)?)?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_steady_state, m)?)?;
    m.add_function(wrap_pyfunction!(truncation_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(load_config, m)?)?;
    m.add_function(wrap_pyfunction!(save_config, m)?)?;
    Ok(())
}
