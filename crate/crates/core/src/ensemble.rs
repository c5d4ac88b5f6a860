//! Three-mode model: a bosonized atomic ensemble coupled to cavity 1.
//! Closed-form steady states, the unchanged cavity-1 dark condition, the
//! eta-modified cavity-2 dark condition, and the symmetric designer that
//! keeps both conditions satisfiable at once.
//!
//! The collective mode treats `[b, b^dag] = 1` as exact (low-excitation
//! bosonization); the constant energy offset of the ensemble is dropped.

use num_complex::Complex64 as C64;

use crate::dark::{dark_phase_cavity1, DarkSolution, FEASIBILITY_TOL};
use crate::dynamics::{self, drift_three, interference_components};
use crate::params::{Model, SteadyState, ThreeModeParams};
use crate::{Error, Result};

const I: C64 = C64::new(0.0, 1.0);

/// Closed-form three-mode steady state.
///
/// With `db = i delta_b + gamma_b/2` and the same interference components
/// `R1, I1, R2, I2` as the two-mode model:
///
/// * `alpha1 = e^{-i phi} db (R1 + i I1) / det(M')`
/// * `alpha2 = [db (R2 + i I2) + i |l2| eta^2] / det(M')`
/// * `beta   = -i eta alpha1 / db`
///
/// At `eta = 0` this reduces to the two-mode closed form with `beta = 0`.
pub fn steady_state_closed_form_atoms(p: &ThreeModeParams) -> Result<SteadyState> {
    let sys = drift_three(p);
    let det = sys.det();
    if det.norm() < sys.singularity_threshold() {
        return Err(Error::SingularSystem { det });
    }
    let base = &p.base;
    let (r1, i1, r2, i2) = interference_components(base);
    let db = I * p.delta_b + C64::from(p.gamma_b / 2.0);
    let phase = (-I * base.phi).exp();
    let alpha1 = phase * db * C64::new(r1, i1) / det;
    let alpha2 = (db * C64::new(r2, i2) + I * base.lambda2_mag * p.eta * p.eta) / det;
    let beta = -I * p.eta * alpha1 / db;
    Ok(SteadyState {
        alpha1,
        alpha2,
        beta: Some(beta),
    })
}

/// Dark condition for cavity 1 with atoms present: identical to the atom-free
/// condition (the ensemble couples only through cavity 1, which carries no
/// field at the solution), and the collective mode is dark there too.
pub fn dark_phase_cavity1_atoms(p: &ThreeModeParams) -> Result<DarkSolution> {
    dark_phase_cavity1(&p.base)
}

/// Dark condition for cavity 2 with atoms present. The ensemble shifts the
/// effective cavity-1 detuning by `-delta_b eta^2 / (delta_b^2 + gamma_b^2/4)`
/// and broadens the effective decay by `+gamma_b eta^2 / (delta_b^2 +
/// gamma_b^2/4)`:
///
/// * `cos phi = |l2| [d1 D - delta_b eta^2] / (J |l1| D)`
/// * `sin phi = |l2| [g1 D + gamma_b eta^2] / (2 J |l1| D)`
///
/// with `D = delta_b^2 + gamma_b^2/4`, realizable iff the squared magnitudes
/// sum to one (the eta-modified magnitude condition).
pub fn dark_phase_cavity2_atoms(p: &ThreeModeParams) -> Result<DarkSolution> {
    let base = &p.base;
    if !base.both_drives_on() {
        return Err(Error::DriveOff);
    }
    let d = p.delta_b * p.delta_b + p.gamma_b * p.gamma_b / 4.0;
    let eta2 = p.eta * p.eta;
    let denom = base.lambda1_mag * base.coupling * d;
    let cos_req = base.lambda2_mag * (base.delta1 * d - p.delta_b * eta2) / denom;
    let sin_req = base.lambda2_mag * (base.gamma1 * d + p.gamma_b * eta2) / (2.0 * denom);
    let residual = (cos_req * cos_req + sin_req * sin_req) - 1.0;
    let phi = sin_req.atan2(cos_req);
    Ok(DarkSolution {
        cavity: 2,
        phi: if phi == -std::f64::consts::PI {
            std::f64::consts::PI
        } else {
            phi
        },
        feasibility_residual: residual,
        feasible: residual.abs() < FEASIBILITY_TOL,
    })
}

/// Symmetric three-mode design and its two dark phases.
#[derive(Clone, Copy, Debug)]
pub struct SymmetricDesignAtoms {
    pub params: ThreeModeParams,
    pub phi_dark_1: f64,
    pub phi_dark_2: f64,
}

/// Symmetric design with atoms: all detunings equal to `delta`, all decays
/// equal to `gamma`, equal drives, `J = sqrt(delta^2 + gamma^2/4)` and
/// `eta = sqrt(2 (delta^2 - gamma^2/4))`. Requires `delta > gamma/2`,
/// otherwise the collective coupling would vanish or turn imaginary.
pub fn design_symmetric_atoms(
    delta: f64,
    gamma: f64,
    lambda: f64,
) -> Result<SymmetricDesignAtoms> {
    let bound = gamma / 2.0;
    if delta <= bound {
        return Err(Error::InfeasibleDesign { delta, bound });
    }
    let base = crate::dark::design_symmetric(delta, gamma, lambda);
    let eta = (2.0 * (delta * delta - gamma * gamma / 4.0)).sqrt();
    let params = ThreeModeParams {
        base: base.params,
        delta_b: delta,
        gamma_b: gamma,
        eta,
    };
    let phi2 = dark_phase_cavity2_atoms(&params)?.phi;
    Ok(SymmetricDesignAtoms {
        params,
        phi_dark_1: base.phi_dark_1,
        phi_dark_2: phi2,
    })
}

impl Model {
    /// Closed-form steady state for either model size.
    pub fn steady_state_closed_form(&self) -> Result<SteadyState> {
        match self {
            Model::TwoMode(p) => dynamics::steady_state_closed_form(p),
            Model::ThreeMode(p) => steady_state_closed_form_atoms(p),
        }
    }

    /// Dark phase for the requested cavity, dispatching on model size.
    pub fn dark_phase(&self, cavity: u8) -> Result<DarkSolution> {
        match (self, cavity) {
            (Model::TwoMode(p), 1) => crate::dark::dark_phase_cavity1(p),
            (Model::TwoMode(p), 2) => crate::dark::dark_phase_cavity2(p),
            (Model::ThreeMode(p), 1) => dark_phase_cavity1_atoms(p),
            (Model::ThreeMode(p), 2) => dark_phase_cavity2_atoms(p),
            _ => Err(Error::BadInput(format!("cavity must be 1 or 2, got {cavity}"))),
        }
    }
}
