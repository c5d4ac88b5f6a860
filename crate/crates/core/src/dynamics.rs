//! Mean-field linear dynamics: drift-system construction, steady states
//! (closed form and generic solve), spectral stability, and fixed-step
//! time integration with phase schedules.

use std::io;

use num_complex::Complex64 as C64;

use crate::linalg;
use crate::params::{Model, SteadyState, ThreeModeParams, TwoModeParams};
use crate::{Error, Result};

/// Relative factor for the singular-system test:
/// `|det(M)| < SINGULARITY_FACTOR * (max row norm)^2`.
pub const SINGULARITY_FACTOR: f64 = 1e-12;

/// Maximum allowed `dt * spectral_radius(M)` for fixed-step integration.
pub const MAX_STEP_RADIUS: f64 = 0.1;

const I: C64 = C64::new(0.0, 1.0);

/// Linear drift system `dA/dt = M A + B` for 2 or 3 modes.
///
/// `m` is row-major, `dim * dim` long. The construction keeps `M` complex
/// symmetric (`M[i][j] = M[j][i]`): the off-diagonals are `-iJ`, `-i eta`,
/// and `0`. For three modes the last drive entry is always zero (the atoms
/// are not driven directly).
#[derive(Clone, Debug, PartialEq)]
pub struct DriftSystem {
    pub dim: usize,
    pub m: Vec<C64>,
    pub b: Vec<C64>,
}

impl DriftSystem {
    pub fn m_at(&self, row: usize, col: usize) -> C64 {
        self.m[row * self.dim + col]
    }

    /// Determinant via the shared cofactor routine.
    pub fn det(&self) -> C64 {
        linalg::det(self.dim, &self.m)
    }

    /// Largest Euclidean row norm of `M`.
    pub fn max_row_norm(&self) -> f64 {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.m_at(i, j).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Scaled singularity threshold on `|det(M)|`.
    pub fn singularity_threshold(&self) -> f64 {
        let r = self.max_row_norm();
        SINGULARITY_FACTOR * r * r
    }

    pub fn is_singular(&self) -> bool {
        self.det().norm() < self.singularity_threshold()
    }

    /// Copy with a replaced drive vector (same drift matrix).
    pub fn with_drive(&self, b: Vec<C64>) -> Self {
        assert_eq!(b.len(), self.dim);
        Self {
            dim: self.dim,
            m: self.m.clone(),
            b,
        }
    }
}

/// Drive vector `B = -i (|lambda1| e^{-i phi}, |lambda2| [, 0])`.
fn drive_vector(p: &TwoModeParams, dim: usize, phi: f64) -> [C64; 3] {
    let mut b = [C64::new(0.0, 0.0); 3];
    b[0] = -I * p.lambda1_mag * (-I * phi).exp();
    b[1] = -I * C64::from(p.lambda2_mag);
    debug_assert!(dim == 2 || dim == 3);
    b
}

/// Two-mode drift system.
pub fn drift_two(p: &TwoModeParams) -> DriftSystem {
    let d1 = -(I * p.delta1 + C64::from(p.gamma1 / 2.0));
    let d2 = -(I * p.delta2 + C64::from(p.gamma2 / 2.0));
    let jc = -I * p.coupling;
    let b = drive_vector(p, 2, p.phi);
    DriftSystem {
        dim: 2,
        m: vec![d1, jc, jc, d2],
        b: b[..2].to_vec(),
    }
}

/// Three-mode drift system (cavity 1 coupled to the collective atomic mode).
pub fn drift_three(p: &ThreeModeParams) -> DriftSystem {
    let base = &p.base;
    let d1 = -(I * base.delta1 + C64::from(base.gamma1 / 2.0));
    let d2 = -(I * base.delta2 + C64::from(base.gamma2 / 2.0));
    let db = -(I * p.delta_b + C64::from(p.gamma_b / 2.0));
    let jc = -I * base.coupling;
    let ec = -I * p.eta;
    let z = C64::new(0.0, 0.0);
    let b = drive_vector(base, 3, base.phi);
    DriftSystem {
        dim: 3,
        m: vec![d1, jc, ec, jc, d2, z, ec, z, db],
        b: b.to_vec(),
    }
}

/// Drift system for either model size.
pub fn drift(model: &Model) -> DriftSystem {
    match model {
        Model::TwoMode(p) => drift_two(p),
        Model::ThreeMode(p) => drift_three(p),
    }
}

/// Closed-form two-mode steady state.
///
/// With `R1 = |l2| J cos phi - |l1| d2`, `I1 = |l1| g2/2 + |l2| J sin phi`,
/// `R2 = |l1| J cos phi - |l2| d1`, `I2 = |l2| g1/2 - |l1| J sin phi`:
///
/// `alpha1 = -e^{-i phi} (R1 + i I1) / det(M)` and
/// `alpha2 = -(R2 + i I2) / det(M)`.
pub fn steady_state_closed_form(p: &TwoModeParams) -> Result<SteadyState> {
    let sys = drift_two(p);
    let det = sys.det();
    if det.norm() < sys.singularity_threshold() {
        return Err(Error::SingularSystem { det });
    }
    let (r1, i1, r2, i2) = interference_components(p);
    let phase = (-I * p.phi).exp();
    Ok(SteadyState {
        alpha1: -phase * C64::new(r1, i1) / det,
        alpha2: -C64::new(r2, i2) / det,
        beta: None,
    })
}

/// The real/imaginary interference components `(R1, I1, R2, I2)` shared by
/// the closed-form steady states and the dark conditions.
pub(crate) fn interference_components(p: &TwoModeParams) -> (f64, f64, f64, f64) {
    let (l1, l2, j) = (p.lambda1_mag, p.lambda2_mag, p.coupling);
    let (c, s) = (p.phi.cos(), p.phi.sin());
    let r1 = l2 * j * c - l1 * p.delta2;
    let i1 = l1 * p.gamma2 / 2.0 + l2 * j * s;
    let r2 = l1 * j * c - l2 * p.delta1;
    let i2 = l2 * p.gamma1 / 2.0 - l1 * j * s;
    (r1, i1, r2, i2)
}

/// Steady state of an arbitrary drift system by Gaussian elimination on
/// `M A = -B`.
pub fn steady_state_solve(sys: &DriftSystem) -> Result<SteadyState> {
    let det = sys.det();
    if det.norm() < sys.singularity_threshold() {
        return Err(Error::SingularSystem { det });
    }
    let rhs: Vec<C64> = sys.b.iter().map(|z| -z).collect();
    let amps = linalg::solve(sys.dim, &sys.m, &rhs)
        .ok_or(Error::SingularSystem { det })?;
    Ok(SteadyState {
        alpha1: amps[0],
        alpha2: amps[1],
        beta: (sys.dim == 3).then(|| amps[2]),
    })
}

/// Spectrum of the drift matrix and the strict stability verdict.
#[derive(Clone, Debug)]
pub struct Stability {
    pub eigenvalues: Vec<C64>,
    pub is_stable: bool,
}

/// Eigenvalues of `M`; stable iff every real part is strictly negative.
pub fn stability(sys: &DriftSystem) -> Stability {
    let eigenvalues = linalg::eigenvalues(sys.dim, &sys.m);
    let max_re = eigenvalues.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    Stability {
        eigenvalues,
        is_stable: max_re < 0.0,
    }
}

fn spectral_radius(sys: &DriftSystem) -> f64 {
    linalg::eigenvalues(sys.dim, &sys.m)
        .iter()
        .map(|e| e.norm())
        .fold(0.0, f64::max)
}

/// Drive-phase schedule for time integration.
#[derive(Clone, Debug, PartialEq)]
pub enum PhaseSchedule {
    Constant(f64),
    /// Hold `phi0` before `t0`, ramp linearly to `phi1` over `[t0, t1]`,
    /// hold `phi1` after.
    Ramp {
        phi0: f64,
        phi1: f64,
        t0: f64,
        t1: f64,
    },
    /// Piecewise-linear interpolation through `(time, phi)` breakpoints;
    /// constant extrapolation outside.
    Piecewise(Vec<(f64, f64)>),
}

impl PhaseSchedule {
    pub fn phi_at(&self, t: f64) -> f64 {
        match self {
            PhaseSchedule::Constant(phi) => *phi,
            PhaseSchedule::Ramp { phi0, phi1, t0, t1 } => {
                if t <= *t0 {
                    *phi0
                } else if t >= *t1 {
                    *phi1
                } else {
                    phi0 + (phi1 - phi0) * (t - t0) / (t1 - t0)
                }
            }
            PhaseSchedule::Piecewise(points) => {
                match points.iter().position(|&(tk, _)| t < tk) {
                    Some(0) => points[0].1,
                    Some(k) => {
                        let (ta, pa) = points[k - 1];
                        let (tb, pb) = points[k];
                        pa + (pb - pa) * (t - ta) / (tb - ta)
                    }
                    None => points.last().map(|&(_, p)| p).unwrap_or(0.0),
                }
            }
        }
    }

    fn check(&self) -> Result<()> {
        match self {
            PhaseSchedule::Constant(_) => Ok(()),
            PhaseSchedule::Ramp { t0, t1, .. } => {
                if t0 < t1 {
                    Ok(())
                } else {
                    Err(Error::BadInput(format!(
                        "ramp needs t0 < t1 (got t0 = {t0}, t1 = {t1})"
                    )))
                }
            }
            PhaseSchedule::Piecewise(points) => {
                if points.is_empty() {
                    return Err(Error::BadInput("piecewise schedule is empty".into()));
                }
                if points.windows(2).all(|w| w[0].0 < w[1].0) {
                    Ok(())
                } else {
                    Err(Error::BadInput(
                        "piecewise schedule times must be strictly increasing".into(),
                    ))
                }
            }
        }
    }
}

/// Time-sampled mean-field trajectory. `times` are strictly increasing and
/// `phi_of_t` records the schedule actually applied at each sample.
#[derive(Clone, Debug)]
pub struct Trajectory {
    times: Vec<f64>,
    dim: usize,
    amplitudes: Vec<C64>,
    phi_of_t: Vec<f64>,
}

impl Trajectory {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn phi_of_t(&self) -> &[f64] {
        &self.phi_of_t
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Amplitude vector at sample `k`.
    pub fn state_at(&self, k: usize) -> &[C64] {
        &self.amplitudes[k * self.dim..(k + 1) * self.dim]
    }

    pub fn final_state(&self) -> &[C64] {
        self.state_at(self.len() - 1)
    }

    /// CSV export: `t,re_a1,im_a1,re_a2,im_a2[,re_b,im_b],phi`.
    pub fn write_csv<W: io::Write>(&self, w: &mut W) -> io::Result<()> {
        if self.dim == 3 {
            writeln!(w, "t,re_a1,im_a1,re_a2,im_a2,re_b,im_b,phi")?;
        } else {
            writeln!(w, "t,re_a1,im_a1,re_a2,im_a2,phi")?;
        }
        for k in 0..self.len() {
            let a = self.state_at(k);
            let mut row = vec![crate::csvfmt::float(self.times[k])];
            for z in a {
                row.push(crate::csvfmt::float(z.re));
                row.push(crate::csvfmt::float(z.im));
            }
            row.push(crate::csvfmt::float(self.phi_of_t[k]));
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Fixed-step fourth-order Runge-Kutta integration of
/// `dA/dt = M A + B(phi(t))` from `initial` up to `t_final`.
///
/// `t_final` is rounded to a whole number of steps of length `dt`. Fails if
/// `dt * spectral_radius(M)` exceeds [`MAX_STEP_RADIUS`].
pub fn integrate(
    model: &Model,
    initial: &[C64],
    schedule: &PhaseSchedule,
    t_final: f64,
    dt: f64,
) -> Result<Trajectory> {
    if !(t_final > 0.0) || !(dt > 0.0) {
        return Err(Error::BadInput(format!(
            "need t_final > 0 and dt > 0 (got t_final = {t_final}, dt = {dt})"
        )));
    }
    schedule.check()?;
    let dim = model.dim();
    if initial.len() != dim {
        return Err(Error::BadInput(format!(
            "initial state has length {}, expected {dim}",
            initial.len()
        )));
    }
    let sys = drift(model);
    let radius = spectral_radius(&sys);
    if dt * radius > MAX_STEP_RADIUS {
        return Err(Error::StepSizeTooLarge {
            dt,
            product: dt * radius,
        });
    }

    let base = model.base();
    let rhs = |t: f64, a: &[C64; 3], out: &mut [C64; 3]| {
        let b = drive_vector(base, dim, schedule.phi_at(t));
        for i in 0..dim {
            let row = &sys.m[i * dim..(i + 1) * dim];
            out[i] = b[i] + row.iter().zip(&a[..dim]).map(|(m, a)| m * a).sum::<C64>();
        }
    };

    let n_steps = ((t_final / dt).round() as usize).max(1);
    let mut state = [C64::new(0.0, 0.0); 3];
    state[..dim].copy_from_slice(initial);

    let mut times = Vec::with_capacity(n_steps + 1);
    let mut amplitudes = Vec::with_capacity((n_steps + 1) * dim);
    let mut phi_of_t = Vec::with_capacity(n_steps + 1);
    let record = |t: f64, a: &[C64; 3], out_t: &mut Vec<f64>, out_a: &mut Vec<C64>, out_p: &mut Vec<f64>| {
        out_t.push(t);
        out_a.extend_from_slice(&a[..dim]);
        out_p.push(schedule.phi_at(t));
    };
    record(0.0, &state, &mut times, &mut amplitudes, &mut phi_of_t);

    let zero = [C64::new(0.0, 0.0); 3];
    let (mut k1, mut k2, mut k3, mut k4) = (zero, zero, zero, zero);
    let mut tmp = zero;
    for step in 0..n_steps {
        let t = step as f64 * dt;
        rhs(t, &state, &mut k1);
        for i in 0..dim {
            tmp[i] = state[i] + k1[i] * (dt / 2.0);
        }
        rhs(t + dt / 2.0, &tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = state[i] + k2[i] * (dt / 2.0);
        }
        rhs(t + dt / 2.0, &tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = state[i] + k3[i] * dt;
        }
        rhs(t + dt, &tmp, &mut k4);
        for i in 0..dim {
            state[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0);
        }
        record(
            (step + 1) as f64 * dt,
            &state,
            &mut times,
            &mut amplitudes,
            &mut phi_of_t,
        );
    }

    Ok(Trajectory {
        times,
        dim,
        amplitudes,
        phi_of_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn symmetric_params(phi: f64) -> TwoModeParams {
        TwoModeParams {
            delta1: 1.0,
            delta2: 1.0,
            gamma1: 1.0,
            gamma2: 1.0,
            coupling: 5.0_f64.sqrt() / 2.0,
            lambda1_mag: 0.1,
            lambda2_mag: 0.1,
            phi,
        }
    }

    fn symmetric_atoms(phi: f64) -> ThreeModeParams {
        ThreeModeParams {
            base: symmetric_params(phi),
            delta_b: 1.0,
            gamma_b: 1.0,
            eta: 6.0_f64.sqrt() / 2.0,
        }
    }

    /// Phase that makes cavity 1 dark for the symmetric benchmark parameters:
    /// arcsin(-1/sqrt(5)) with positive cosine.
    fn dark1_phi() -> f64 {
        (-1.0_f64).atan2(2.0)
    }

    #[test]
    fn drift_two_benchmark_entries() {
        let sys = drift_two(&symmetric_params(0.0));
        let j = 5.0_f64.sqrt() / 2.0;
        assert_eq!(sys.m_at(0, 0), c(-0.5, -1.0));
        assert_eq!(sys.m_at(1, 1), c(-0.5, -1.0));
        assert_eq!(sys.m_at(0, 1), c(0.0, -j));
        assert_eq!(sys.m_at(1, 0), c(0.0, -j));
        assert_eq!(sys.b[0], c(0.0, -0.1));
        assert_eq!(sys.b[1], c(0.0, -0.1));
        assert!((sys.det() - c(0.5, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn drift_two_undriven() {
        let p = TwoModeParams {
            lambda1_mag: 0.0,
            lambda2_mag: 0.0,
            ..symmetric_params(0.3)
        };
        let sys = drift_two(&p);
        assert!(sys.b.iter().all(|z| *z == c(0.0, 0.0)));
    }

    #[test]
    fn drift_three_decouples_at_zero_eta() {
        let p = ThreeModeParams {
            eta: 0.0,
            ..symmetric_atoms(0.7)
        };
        let sys3 = drift_three(&p);
        let sys2 = drift_two(&p.base);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(sys3.m_at(i, j), sys2.m_at(i, j));
            }
        }
        assert_eq!(sys3.m_at(0, 2), c(0.0, 0.0));
        assert_eq!(sys3.m_at(2, 0), c(0.0, 0.0));
    }

    #[test]
    fn drift_three_benchmark_atom_coupling() {
        let sys = drift_three(&symmetric_atoms(0.0));
        let eta = 6.0_f64.sqrt() / 2.0;
        assert_eq!(sys.m_at(0, 2), c(0.0, -eta));
        assert_eq!(sys.m_at(2, 0), c(0.0, -eta));
        assert_eq!(sys.b[2], c(0.0, 0.0));
    }

    #[test]
    fn closed_form_dark_point() {
        let ss = steady_state_closed_form(&symmetric_params(dark1_phi())).unwrap();
        assert!(ss.n1() <= 1e-24);
        assert!((ss.alpha2 - c(-0.08, -0.04)).norm() < 1e-15);
        assert!((ss.n2() - 0.008).abs() < 1e-15);
    }

    #[test]
    fn closed_form_symmetric_phase_zero() {
        let ss = steady_state_closed_form(&symmetric_params(0.0)).unwrap();
        let expect = c(-0.04472135954999579, -0.010557280900008412);
        assert!((ss.alpha1 - expect).norm() < 1e-15);
        assert!((ss.alpha2 - expect).norm() < 1e-15);
        assert!((ss.n1() - 0.0021114561800016822).abs() < 1e-15);
        assert!((ss.n1() - ss.n2()).abs() < 1e-16);
    }

    #[test]
    fn closed_form_undriven_is_vacuum() {
        let p = TwoModeParams {
            lambda1_mag: 0.0,
            lambda2_mag: 0.0,
            ..symmetric_params(1.1)
        };
        let ss = steady_state_closed_form(&p).unwrap();
        assert_eq!(ss.alpha1, c(0.0, 0.0));
        assert_eq!(ss.alpha2, c(0.0, 0.0));
    }

    #[test]
    fn solve_matches_closed_form_on_symmetric_params() {
        for &phi in &[0.0, 0.4, dark1_phi(), -2.9, 3.1] {
            let p = symmetric_params(phi);
            let cf = steady_state_closed_form(&p).unwrap();
            let sv = steady_state_solve(&drift_two(&p)).unwrap();
            let scale = cf.alpha1.norm().max(cf.alpha2.norm());
            assert!((cf.alpha1 - sv.alpha1).norm() <= 1e-12 * scale);
            assert!((cf.alpha2 - sv.alpha2).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn balanced_gain_loss_is_singular() {
        let p = TwoModeParams {
            gamma2: -1.0,
            ..symmetric_params(0.2)
        };
        let sys = drift_two(&p);
        match steady_state_solve(&sys) {
            Err(Error::SingularSystem { det }) => assert!(det.norm() < 1e-15),
            other => panic!("expected singular system, got {other:?}"),
        }
    }

    #[test]
    fn solve_undriven_is_zero() {
        let p = TwoModeParams {
            lambda1_mag: 0.0,
            lambda2_mag: 0.0,
            ..symmetric_params(0.0)
        };
        let ss = steady_state_solve(&drift_two(&p)).unwrap();
        assert_eq!(ss.alpha1, c(0.0, 0.0));
        assert_eq!(ss.alpha2, c(0.0, 0.0));
    }

    #[test]
    fn stability_symmetric_params() {
        let st = stability(&drift_two(&symmetric_params(0.0)));
        assert!(st.is_stable);
        let j = 5.0_f64.sqrt() / 2.0;
        let mut eig = st.eigenvalues.clone();
        eig.sort_by(|x, y| x.im.total_cmp(&y.im));
        assert!((eig[0] - c(-0.5, -(1.0 + j))).norm() < 1e-14);
        assert!((eig[1] - c(-0.5, -(1.0 - j))).norm() < 1e-14);
    }

    #[test]
    fn stability_lossless_is_marginal() {
        let p = TwoModeParams {
            gamma1: 0.0,
            gamma2: 0.0,
            ..symmetric_params(0.0)
        };
        let st = stability(&drift_two(&p));
        let max_re = st.eigenvalues.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(max_re, 0.0);
        assert!(!st.is_stable);
    }

    #[test]
    fn stability_balanced_gain_loss_is_unstable() {
        let p = TwoModeParams {
            gamma2: -1.0,
            ..symmetric_params(0.0)
        };
        assert!(!stability(&drift_two(&p)).is_stable);
    }

    #[test]
    fn integrate_relaxes_to_steady_state() {
        let p = symmetric_params(0.0);
        let traj = integrate(
            &Model::TwoMode(p),
            &[c(0.0, 0.0), c(0.0, 0.0)],
            &PhaseSchedule::Constant(0.0),
            40.0,
            0.01,
        )
        .unwrap();
        let ss = steady_state_solve(&drift_two(&p)).unwrap();
        let f = traj.final_state();
        let err = (f[0] - ss.alpha1).norm().hypot((f[1] - ss.alpha2).norm());
        assert!(err < 1e-8, "end-state error {err}");
    }

    #[test]
    fn integrate_pure_decay() {
        let p = TwoModeParams {
            lambda1_mag: 0.0,
            lambda2_mag: 0.0,
            ..symmetric_params(0.0)
        };
        let traj = integrate(
            &Model::TwoMode(p),
            &[c(0.3, -0.2), c(-0.1, 0.5)],
            &PhaseSchedule::Constant(0.0),
            60.0,
            0.02,
        )
        .unwrap();
        let f = traj.final_state();
        assert!(f[0].norm() < 1e-12 && f[1].norm() < 1e-12);
    }

    #[test]
    fn integrate_rejects_large_steps() {
        let err = integrate(
            &Model::TwoMode(symmetric_params(0.0)),
            &[c(0.0, 0.0), c(0.0, 0.0)],
            &PhaseSchedule::Constant(0.0),
            1.0,
            0.1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::StepSizeTooLarge { .. }));
    }

    #[test]
    fn schedule_shapes() {
        let ramp = PhaseSchedule::Ramp {
            phi0: 0.0,
            phi1: 1.0,
            t0: 10.0,
            t1: 20.0,
        };
        assert_eq!(ramp.phi_at(5.0), 0.0);
        assert_eq!(ramp.phi_at(15.0), 0.5);
        assert_eq!(ramp.phi_at(25.0), 1.0);
        let pw = PhaseSchedule::Piecewise(vec![(0.0, 0.0), (1.0, 2.0), (3.0, -2.0)]);
        assert_eq!(pw.phi_at(-1.0), 0.0);
        assert_eq!(pw.phi_at(0.5), 1.0);
        assert_eq!(pw.phi_at(2.0), 0.0);
        assert_eq!(pw.phi_at(9.0), -2.0);
    }

    #[test]
    fn trajectory_csv_headers() {
        let traj = integrate(
            &Model::TwoMode(symmetric_params(0.0)),
            &[c(0.0, 0.0), c(0.0, 0.0)],
            &PhaseSchedule::Constant(0.0),
            0.1,
            0.02,
        )
        .unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,re_a1,im_a1,re_a2,im_a2,phi\n"));
        assert_eq!(text.lines().count(), 1 + traj.len());

        let traj3 = integrate(
            &Model::ThreeMode(symmetric_atoms(0.0)),
            &[c(0.0, 0.0); 3],
            &PhaseSchedule::Constant(0.0),
            0.1,
            0.02,
        )
        .unwrap();
        let mut buf3 = Vec::new();
        traj3.write_csv(&mut buf3).unwrap();
        assert!(String::from_utf8(buf3)
            .unwrap()
            .starts_with("t,re_a1,im_a1,re_a2,im_a2,re_b,im_b,phi\n"));
    }
}
