//! Dark-cavity phase conditions for the two-mode model: closed-form phase
//! solvers with feasibility residuals, the mutual-exclusion and balanced
//! gain/loss diagnostics, and the symmetric parameter designer that makes
//! both dark conditions hold at once.

use num_complex::Complex64 as C64;

use crate::dynamics::{drift_two, steady_state_closed_form};
use crate::params::TwoModeParams;
use crate::{Error, Result};

/// Normalized feasibility residuals below this count as a realizable dark
/// condition.
pub const FEASIBILITY_TOL: f64 = 1e-10;

/// A solved dark-phase condition for one cavity.
///
/// `phi` is the atan2 principal value in `(-pi, pi]` of the required
/// `(cos phi, sin phi)` pair. The pair only describes an actual phase when
/// its squared magnitude is 1; `feasibility_residual` is the signed deviation
/// `(cos^2 + sin^2) - 1` of the raw pair, so `feasible` means the magnitude
/// constraint holds within [`FEASIBILITY_TOL`]. Infeasible inputs still
/// report the best-aligned phase rather than erroring, so sweeps can degrade
/// gracefully.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DarkSolution {
    pub cavity: u8,
    pub phi: f64,
    pub feasibility_residual: f64,
    pub feasible: bool,
}

fn principal(phi: f64) -> f64 {
    // atan2 lands in [-pi, pi]; fold the closed lower end onto +pi.
    if phi == -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        phi
    }
}

fn dark_solution(cavity: u8, cos_req: f64, sin_req: f64) -> DarkSolution {
    let residual = (cos_req * cos_req + sin_req * sin_req) - 1.0;
    DarkSolution {
        cavity,
        phi: principal(sin_req.atan2(cos_req)),
        feasibility_residual: residual,
        feasible: residual.abs() < FEASIBILITY_TOL,
    }
}

/// Phase that empties cavity 1:
/// `cos phi = |l1| d2 / (|l2| J)`, `sin phi = -|l1| g2 / (2 |l2| J)`,
/// realizable iff `|l2|^2 J^2 = |l1|^2 (d2^2 + g2^2/4)`.
pub fn dark_phase_cavity1(p: &TwoModeParams) -> Result<DarkSolution> {
    if !p.both_drives_on() {
        return Err(Error::DriveOff);
    }
    let denom = p.lambda2_mag * p.coupling;
    let cos_req = p.lambda1_mag * p.delta2 / denom;
    let sin_req = -p.lambda1_mag * p.gamma2 / (2.0 * denom);
    Ok(dark_solution(1, cos_req, sin_req))
}

/// Phase that empties cavity 2:
/// `cos phi = |l2| d1 / (|l1| J)`, `sin phi = +|l2| g1 / (2 |l1| J)`,
/// realizable iff `|l1|^2 J^2 = |l2|^2 (d1^2 + g1^2/4)`.
pub fn dark_phase_cavity2(p: &TwoModeParams) -> Result<DarkSolution> {
    if !p.both_drives_on() {
        return Err(Error::DriveOff);
    }
    let denom = p.lambda1_mag * p.coupling;
    let cos_req = p.lambda2_mag * p.delta1 / denom;
    let sin_req = p.lambda2_mag * p.gamma1 / (2.0 * denom);
    Ok(dark_solution(2, cos_req, sin_req))
}

/// Why the two cavities cannot both be dark: the cavity-1 condition demands
/// `sin phi < 0` while the cavity-2 condition demands `sin phi > 0` whenever
/// both decay rates are positive.
#[derive(Clone, Copy, Debug)]
pub struct MutualExclusion {
    /// `sin phi` demanded by the cavity-1 dark condition.
    pub required_sin_cavity1: f64,
    /// `sin phi` demanded by the cavity-2 dark condition.
    pub required_sin_cavity2: f64,
    /// True when the opposing signs rule out a common phase.
    pub simultaneous_impossible: bool,
    pub residual_cavity1: f64,
    pub residual_cavity2: f64,
    /// Some decay rate is negative: the sign argument no longer applies;
    /// defer to [`gain_diagnostic`].
    pub gain_mode: bool,
}

/// Evaluate the sign obstruction and both feasibility residuals. Meaningful
/// for loss-only parameters with both drives on.
pub fn mutual_exclusion(p: &TwoModeParams) -> MutualExclusion {
    let sin1 = -p.lambda1_mag * p.gamma2 / (2.0 * p.lambda2_mag * p.coupling);
    let sin2 = p.lambda2_mag * p.gamma1 / (2.0 * p.lambda1_mag * p.coupling);
    let gain_mode = p.gamma1 < 0.0 || p.gamma2 < 0.0;
    let res = |cavity| match cavity {
        1 => dark_phase_cavity1(p).map(|d| d.feasibility_residual),
        _ => dark_phase_cavity2(p).map(|d| d.feasibility_residual),
    };
    MutualExclusion {
        required_sin_cavity1: sin1,
        required_sin_cavity2: sin2,
        simultaneous_impossible: !gain_mode && sin1 < 0.0 && sin2 > 0.0,
        residual_cavity1: res(1).unwrap_or(f64::NAN),
        residual_cavity2: res(2).unwrap_or(f64::NAN),
        gain_mode,
    }
}

/// Determinant diagnostic for gain-mode parameter sets.
#[derive(Clone, Copy, Debug)]
pub struct GainDiagnostic {
    pub det_m: C64,
    /// False when `|det(M)|` is below the singularity threshold, i.e. the
    /// linear system has no steady state.
    pub has_steady_state: bool,
    /// `gamma1 = -gamma2` within rounding.
    pub balanced_gain_loss: bool,
    /// Both dark feasibility constraints hold within tolerance. Balanced
    /// gain/loss with both conditions met forces `det(M) = 0`.
    pub dark_conditions_met: bool,
}

pub fn gain_diagnostic(p: &TwoModeParams) -> GainDiagnostic {
    let sys = drift_two(p);
    let det_m = sys.det();
    let gamma_scale = p.gamma1.abs().max(p.gamma2.abs()).max(1e-300);
    let balanced = (p.gamma1 + p.gamma2).abs() <= 1e-12 * gamma_scale;
    let dark_conditions_met = match (dark_phase_cavity1(p), dark_phase_cavity2(p)) {
        (Ok(d1), Ok(d2)) => d1.feasible && d2.feasible,
        _ => false,
    };
    GainDiagnostic {
        det_m,
        has_steady_state: !sys.is_singular(),
        balanced_gain_loss: balanced,
        dark_conditions_met,
    }
}

/// A parameter set on which both dark conditions are satisfied, plus the two
/// phases that realize them.
#[derive(Clone, Copy, Debug)]
pub struct SymmetricDesign {
    pub params: TwoModeParams,
    pub phi_dark_1: f64,
    pub phi_dark_2: f64,
}

/// Symmetric design `d1 = d2 = delta`, `g1 = g2 = gamma`,
/// `|l1| = |l2| = lambda`, `J = sqrt(delta^2 + gamma^2/4)`: both magnitude
/// conditions coincide and hold exactly, so the dark cavity can be moved from
/// 1 to 2 by sweeping the phase alone. Expects `gamma > 0` and `lambda > 0`.
///
/// The returned parameter set carries `phi = 0`; pick one of the reported
/// dark phases via [`TwoModeParams::with_phi`].
pub fn design_symmetric(delta: f64, gamma: f64, lambda: f64) -> SymmetricDesign {
    let coupling = (delta * delta + gamma * gamma / 4.0).sqrt();
    let params = TwoModeParams {
        delta1: delta,
        delta2: delta,
        gamma1: gamma,
        gamma2: gamma,
        coupling,
        lambda1_mag: lambda,
        lambda2_mag: lambda,
        phi: 0.0,
    };
    SymmetricDesign {
        params,
        phi_dark_1: principal((-gamma / 2.0).atan2(delta)),
        phi_dark_2: principal((gamma / 2.0).atan2(delta)),
    }
}

/// Check a dark solution against the actual steady state; used by tests and
/// the CLI summary.
pub fn occupation_at(p: &TwoModeParams, phi: f64) -> Result<(f64, f64)> {
    let ss = steady_state_closed_form(&p.with_phi(phi))?;
    Ok((ss.n1(), ss.n2()))
}
