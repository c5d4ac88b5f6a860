//! Independent verification oracle: the full open-system steady state on a
//! truncated Fock space, with a standard zero-temperature dissipator per
//! mode. For this linear model the first moments must coincide with the
//! mean-field steady states up to truncation error.
//!
//! The steady density state is computed by splitting the generator into the
//! no-jump part `A(rho) = C rho + rho C^dag` (with `C = -iH - sum_k gamma_k
//! n_k / 2`) and the jump part `S(rho) = sum_k gamma_k a_k rho a_k^dag`, and
//! power-iterating the map `rho -> -A^{-1} S(rho)`. For a driven loss-only
//! system the no-jump evolution loses all trace, so this map is positive and
//! trace-preserving with the steady state as its unique fixed point; `A` is
//! inverted exactly through one dense eigendecomposition of `C`. Every run
//! ends with an explicit residual check of the full generator.

use std::io;

use faer::linalg::solvers::Solve;
use num_complex::Complex64 as C64;

use crate::params::{Model, SteadyState};
use crate::{Error, Result};

/// Default cap on the total Hilbert-space dimension `(cutoff+1)^modes`.
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Oracle runs whose last cutoff refinement moves a first moment by less
/// than this are reported as converged.
pub const TRUNCATION_CONVERGENCE_TOL: f64 = 1e-6;

/// Truncated Fock basis: `cutoff_per_mode` excitations per mode, 2 or 3
/// modes, total dimension capped.
#[derive(Clone, Copy, Debug)]
pub struct FockConfig {
    cutoff_per_mode: usize,
    modes: usize,
    dim_cap: usize,
}

impl FockConfig {
    pub fn new(cutoff_per_mode: usize, modes: usize) -> Result<Self> {
        Self::with_cap(cutoff_per_mode, modes, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(cutoff_per_mode: usize, modes: usize, dim_cap: usize) -> Result<Self> {
        if cutoff_per_mode < 1 {
            return Err(Error::BadInput("cutoff_per_mode must be >= 1".into()));
        }
        if modes != 2 && modes != 3 {
            return Err(Error::BadInput(format!("modes must be 2 or 3, got {modes}")));
        }
        let dim = (cutoff_per_mode + 1).pow(modes as u32);
        if dim > dim_cap {
            return Err(Error::DimensionCap { dim, cap: dim_cap });
        }
        Ok(Self {
            cutoff_per_mode,
            modes,
            dim_cap,
        })
    }

    pub fn cutoff_per_mode(&self) -> usize {
        self.cutoff_per_mode
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn hilbert_dim(&self) -> usize {
        (self.cutoff_per_mode + 1).pow(self.modes as u32)
    }
}

/// First and second moments of the oracle steady state, plus the numerical
/// health of the density matrix itself.
#[derive(Clone, Copy, Debug)]
pub struct OracleResult {
    pub modes: usize,
    pub cutoff: usize,
    pub mean_a1: C64,
    pub mean_a2: C64,
    pub mean_b: Option<C64>,
    /// `<a1^dag a1>`; differs from `|<a1>|^2` by quantum fluctuations and
    /// truncation, reported but compared to nothing.
    pub occupation_a1: f64,
    pub occupation_a2: f64,
    pub occupation_b: Option<f64>,
    pub trace_error: f64,
    pub hermiticity_error: f64,
    pub min_eigenvalue: f64,
    /// Set when the mean-field occupations predict the cutoff is too tight
    /// (occupation above cutoff/4).
    pub truncation_warning: bool,
}

impl OracleResult {
    pub fn means(&self) -> Vec<C64> {
        let mut v = vec![self.mean_a1, self.mean_a2];
        if let Some(b) = self.mean_b {
            v.push(b);
        }
        v
    }

    /// Largest absolute first-moment difference against a mean-field state.
    pub fn max_mean_discrepancy(&self, ss: &SteadyState) -> f64 {
        self.means()
            .iter()
            .zip(ss.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

struct FockSpace {
    dim: usize,
    modes: usize,
    cutoff: usize,
    strides: Vec<usize>,
}

impl FockSpace {
    fn new(fock: &FockConfig) -> Self {
        let modes = fock.modes;
        let d = fock.cutoff_per_mode + 1;
        // last mode varies fastest
        let strides: Vec<usize> = (0..modes).map(|k| d.pow((modes - 1 - k) as u32)).collect();
        Self {
            dim: fock.hilbert_dim(),
            modes,
            cutoff: fock.cutoff_per_mode,
            strides,
        }
    }

    fn occupation(&self, state: usize, mode: usize) -> usize {
        (state / self.strides[mode]) % (self.cutoff + 1)
    }
}

/// Sparse Hermitian Hamiltonian in the rotating frame, as triplets.
fn hamiltonian(space: &FockSpace, model: &Model) -> Vec<(usize, usize, C64)> {
    let p = model.base();
    let mut h = Vec::new();
    let i1 = C64::new(0.0, 1.0);
    let drive1 = p.lambda1_mag * (i1 * p.phi).exp();

    let hop = |mode_from: usize, mode_to: usize, g: f64, h: &mut Vec<(usize, usize, C64)>| {
        // g (a_to^dag a_from + h.c.)
        for s in 0..space.dim {
            let n_from = space.occupation(s, mode_from);
            let n_to = space.occupation(s, mode_to);
            if n_from >= 1 && n_to < space.cutoff {
                let t = s - space.strides[mode_from] + space.strides[mode_to];
                let v = g * ((n_from as f64) * (n_to as f64 + 1.0)).sqrt();
                h.push((t, s, C64::from(v)));
                h.push((s, t, C64::from(v)));
            }
        }
    };

    for s in 0..space.dim {
        let mut diag = p.delta1 * space.occupation(s, 0) as f64
            + p.delta2 * space.occupation(s, 1) as f64;
        if let Model::ThreeMode(p3) = model {
            diag += p3.delta_b * space.occupation(s, 2) as f64;
        }
        if diag != 0.0 {
            h.push((s, s, C64::from(diag)));
        }
        // drives: |l1|(a1 e^{i phi} + h.c.) + |l2|(a2 + h.c.)
        for (mode, amp) in [(0usize, drive1), (1, C64::from(p.lambda2_mag))] {
            let n = space.occupation(s, mode);
            if n >= 1 {
                let v = amp * (n as f64).sqrt();
                h.push((s - space.strides[mode], s, v));
                h.push((s, s - space.strides[mode], v.conj()));
            }
        }
    }
    hop(1, 0, p.coupling, &mut h);
    if let Model::ThreeMode(p3) = model {
        hop(2, 0, p3.eta, &mut h);
    }
    h
}

/// Jump part of the generator: `S(rho) = sum_k gamma_k a_k rho a_k^dag`.
fn jump_recycle(
    space: &FockSpace,
    gammas: &[f64],
    rho: &faer::Mat<faer::c64>,
    out: &mut faer::Mat<faer::c64>,
) {
    let m = space.dim;
    out.fill(faer::c64::new(0.0, 0.0));
    for (mode, &gamma) in gammas.iter().enumerate() {
        let stride = space.strides[mode];
        for i in 0..m {
            let ni = space.occupation(i, mode);
            if ni == 0 {
                continue;
            }
            for j in 0..m {
                let nj = space.occupation(j, mode);
                if nj == 0 {
                    continue;
                }
                let w = gamma * ((ni * nj) as f64).sqrt();
                out[(i - stride, j - stride)] += C64::from(w) * rho[(i, j)];
            }
        }
    }
}

/// Full generator applied to a density matrix; used for the final residual
/// check.
fn apply_generator(
    space: &FockSpace,
    h: &[(usize, usize, C64)],
    gammas: &[f64],
    rho: &faer::Mat<faer::c64>,
) -> faer::Mat<faer::c64> {
    let m = space.dim;
    let mut out = faer::Mat::<faer::c64>::zeros(m, m);
    jump_recycle(space, gammas, rho, &mut out);
    let mi = C64::new(0.0, -1.0);
    for &(r, c, v) in h {
        // -i H rho and +i rho H
        for j in 0..m {
            out[(r, j)] += mi * v * rho[(c, j)];
            out[(j, c)] += -mi * rho[(j, r)] * v;
        }
    }
    for i in 0..m {
        for j in 0..m {
            let mut damp = 0.0;
            for (mode, &gamma) in gammas.iter().enumerate() {
                damp += gamma / 2.0
                    * (space.occupation(i, mode) + space.occupation(j, mode)) as f64;
            }
            out[(i, j)] -= C64::from(damp) * rho[(i, j)];
        }
    }
    out
}

const POWER_ITERATION_CAP: usize = 20_000;
const POWER_ITERATION_DELTA: f64 = 1e-14;
const RESIDUAL_REL_TOL: f64 = 1e-8;

/// Steady density state as a row-major dense matrix with unit trace.
fn solve_steady_density(space: &FockSpace, model: &Model) -> Result<Vec<C64>> {
    let m = space.dim;
    let base = model.base();

    // Undriven damped system: the vacuum, exactly.
    if base.lambda1_mag == 0.0 && base.lambda2_mag == 0.0 {
        let mut rho = vec![C64::new(0.0, 0.0); m * m];
        rho[0] = C64::from(1.0);
        return Ok(rho);
    }

    let h = hamiltonian(space, model);
    let gammas = model.decay_rates();

    // Effective no-jump drift C = -iH - sum_k gamma_k n_k / 2.
    let mut c_mat = faer::Mat::<faer::c64>::zeros(m, m);
    let mi = C64::new(0.0, -1.0);
    for &(r, c, v) in &h {
        c_mat[(r, c)] += mi * v;
    }
    for s in 0..m {
        let damp: f64 = gammas
            .iter()
            .enumerate()
            .map(|(mode, &g)| g / 2.0 * space.occupation(s, mode) as f64)
            .sum();
        c_mat[(s, s)] -= faer::c64::from(damp);
    }

    let evd = c_mat.eigen().map_err(|_| Error::DegenerateGenerator)?;
    let vecs = evd.U().to_owned();
    let vals: Vec<C64> = (0..m).map(|k| evd.S()[k]).collect();
    let vecs_inv = vecs
        .partial_piv_lu()
        .solve(faer::Mat::<faer::c64>::identity(m, m));

    // Sylvester denominators: with any drive on, every eigenvalue of C has a
    // strictly negative real part, so these never vanish.
    let mut denom = faer::Mat::<faer::c64>::zeros(m, m);
    for k in 0..m {
        for l in 0..m {
            let d = vals[k] + vals[l].conj();
            if d.norm() < 1e-300 {
                return Err(Error::DegenerateGenerator);
            }
            denom[(k, l)] = d;
        }
    }

    // Power-iterate rho -> -A^{-1} S(rho), normalized to unit trace.
    let mut rho = faer::Mat::<faer::c64>::identity(m, m);
    let scale = faer::Scale(faer::c64::from(1.0 / m as f64));
    rho = scale * rho;
    let mut flux = faer::Mat::<faer::c64>::zeros(m, m);
    let mut converged = false;
    let mut iterations = 0usize;
    while iterations < POWER_ITERATION_CAP {
        iterations += 1;
        jump_recycle(space, &gammas, &rho, &mut flux);
        // Solve C X + X C^dag = -flux in the eigenbasis of C.
        let mut g = &vecs_inv * &flux * vecs_inv.adjoint();
        for k in 0..m {
            for l in 0..m {
                g[(k, l)] = -g[(k, l)] / denom[(k, l)];
            }
        }
        let x = &vecs * &g * vecs.adjoint();
        let trace: C64 = (0..m).map(|k| x[(k, k)]).sum();
        if !(trace.norm() > 0.0) || !trace.re.is_finite() {
            return Err(Error::DegenerateGenerator);
        }
        let next = faer::Scale(C64::from(1.0) / trace) * &x;
        let mut delta = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                delta = delta.max((next[(i, j)] - rho[(i, j)]).norm());
            }
        }
        rho = next;
        if delta <= POWER_ITERATION_DELTA {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::DegenerateGenerator);
    }

    // Residual of the full generator, relative to the recycled flux scale.
    jump_recycle(space, &gammas, &rho, &mut flux);
    let flux_scale = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| flux[(i, j)].norm())
        .fold(0.0f64, f64::max);
    let residual = apply_generator(space, &h, &gammas, &rho);
    let res_max = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| residual[(i, j)].norm())
        .fold(0.0f64, f64::max);
    if res_max > RESIDUAL_REL_TOL * flux_scale.max(1e-300) {
        return Err(Error::DegenerateGenerator);
    }

    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            out.push(rho[(i, j)]);
        }
    }
    Ok(out)
}

/// Full quantum steady state for either model size, with first moments,
/// occupations, and state-health diagnostics.
///
/// Requires loss-only parameters (every decay rate strictly positive) and a
/// Fock configuration whose mode count matches the model.
pub fn liouvillian_steady_state(model: &Model, fock: &FockConfig) -> Result<OracleResult> {
    if fock.modes != model.dim() {
        return Err(Error::BadInput(format!(
            "Fock config has {} modes but the model has {}",
            fock.modes,
            model.dim()
        )));
    }
    if model.decay_rates().iter().any(|&g| !(g > 0.0)) {
        return Err(Error::LossOnlyRequired);
    }

    let truncation_warning = match model.steady_state_closed_form() {
        Ok(ss) => {
            let worst = ss.n1().max(ss.n2()).max(ss.nb().unwrap_or(0.0));
            worst > fock.cutoff_per_mode as f64 / 4.0
        }
        Err(_) => true,
    };

    let space = FockSpace::new(fock);
    let rho = solve_steady_density(&space, model)?;
    let m = space.dim;

    let trace: C64 = (0..m).map(|k| rho[k * m + k]).sum();
    let trace_error = (trace - C64::from(1.0)).norm();

    let mut herm = 0.0f64;
    for i in 0..m {
        for j in i..m {
            herm = herm.max((rho[i * m + j] - rho[j * m + i].conj()).norm());
        }
    }

    let mean = |mode: usize| -> C64 {
        let stride = space.strides[mode];
        (0..m)
            .filter(|&s| space.occupation(s, mode) >= 1)
            .map(|s| rho[s * m + (s - stride)] * (space.occupation(s, mode) as f64).sqrt())
            .sum()
    };
    let occupation = |mode: usize| -> f64 {
        (0..m)
            .map(|s| rho[s * m + s].re * space.occupation(s, mode) as f64)
            .sum()
    };

    let hermitized = faer::Mat::<faer::c64>::from_fn(m, m, |i, j| {
        (rho[i * m + j] + rho[j * m + i].conj()) / 2.0
    });
    let eigs = hermitized
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|_| Error::DegenerateGenerator)?;
    let min_eigenvalue = eigs.iter().copied().fold(f64::INFINITY, f64::min);

    Ok(OracleResult {
        modes: space.modes,
        cutoff: space.cutoff,
        mean_a1: mean(0),
        mean_a2: mean(1),
        mean_b: (space.modes == 3).then(|| mean(2)),
        occupation_a1: occupation(0),
        occupation_a2: occupation(1),
        occupation_b: (space.modes == 3).then(|| occupation(2)),
        trace_error,
        hermiticity_error: herm,
        min_eigenvalue,
        truncation_warning,
    })
}

/// Convergence study over increasing cutoffs. `deltas[k]` is the largest
/// first-moment movement between cutoffs `k` and `k+1`; `converged` means
/// the final refinement moved nothing above
/// [`TRUNCATION_CONVERGENCE_TOL`].
#[derive(Clone, Debug)]
pub struct TruncationSweep {
    pub results: Vec<OracleResult>,
    pub deltas: Vec<f64>,
    pub converged: bool,
}

pub fn truncation_sweep(model: &Model, cutoffs: &[usize]) -> Result<TruncationSweep> {
    if cutoffs.len() < 2 {
        return Err(Error::BadInput("truncation sweep needs at least 2 cutoffs".into()));
    }
    if !cutoffs.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::BadInput("cutoffs must be strictly increasing".into()));
    }
    let mut results = Vec::with_capacity(cutoffs.len());
    for &cutoff in cutoffs {
        let fock = FockConfig::new(cutoff, model.dim())?;
        results.push(liouvillian_steady_state(model, &fock)?);
    }
    let deltas: Vec<f64> = results
        .windows(2)
        .map(|w| {
            w[0].means()
                .iter()
                .zip(w[1].means())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        })
        .collect();
    let converged = deltas.last().is_some_and(|&d| d <= TRUNCATION_CONVERGENCE_TOL);
    Ok(TruncationSweep {
        results,
        deltas,
        converged,
    })
}

/// Report CSV: `cutoff,re_a1,im_a1,re_a2,im_a2[,re_b,im_b],n1,n2[,nb],trace_error`.
pub fn write_report_csv<W: io::Write>(w: &mut W, rows: &[OracleResult]) -> io::Result<()> {
    let three = rows.first().map(|r| r.modes == 3).unwrap_or(false);
    if three {
        writeln!(w, "cutoff,re_a1,im_a1,re_a2,im_a2,re_b,im_b,n1,n2,nb,trace_error")?;
    } else {
        writeln!(w, "cutoff,re_a1,im_a1,re_a2,im_a2,n1,n2,trace_error")?;
    }
    for r in rows {
        let mut cols = vec![r.cutoff.to_string()];
        cols.push(crate::csvfmt::float(r.mean_a1.re));
        cols.push(crate::csvfmt::float(r.mean_a1.im));
        cols.push(crate::csvfmt::float(r.mean_a2.re));
        cols.push(crate::csvfmt::float(r.mean_a2.im));
        if let Some(b) = r.mean_b {
            cols.push(crate::csvfmt::float(b.re));
            cols.push(crate::csvfmt::float(b.im));
        }
        cols.push(crate::csvfmt::float(r.occupation_a1));
        cols.push(crate::csvfmt::float(r.occupation_a2));
        if let Some(nb) = r.occupation_b {
            cols.push(crate::csvfmt::float(nb));
        }
        cols.push(crate::csvfmt::float(r.trace_error));
        writeln!(w, "{}", cols.join(","))?;
    }
    Ok(())
}
