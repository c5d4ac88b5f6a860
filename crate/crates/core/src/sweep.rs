//! Phase sweeps: evaluate the closed-form steady state on a uniform phi grid
//! and export `phi,n1,n2[,nb]` tables. Singular grid points (possible with
//! gain parameters) become `nan` rows instead of aborting the sweep.

use std::io;

use crate::params::{Model, SteadyState};
use crate::{Error, Result};

/// A uniform phase grid over `[phi_from, phi_to]` with `points >= 2` samples
/// including both endpoints.
#[derive(Clone, Copy, Debug)]
pub struct SweepSpec {
    pub phi_from: f64,
    pub phi_to: f64,
    pub points: usize,
}

impl SweepSpec {
    fn check(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::BadInput(format!(
                "sweep needs at least 2 points (got {})",
                self.points
            )));
        }
        if !(self.phi_from < self.phi_to) {
            return Err(Error::BadInput(format!(
                "sweep needs phi_from < phi_to (got {} and {})",
                self.phi_from, self.phi_to
            )));
        }
        Ok(())
    }

    pub fn phi_at(&self, index: usize) -> f64 {
        let frac = index as f64 / (self.points - 1) as f64;
        self.phi_from + (self.phi_to - self.phi_from) * frac
    }
}

/// Phase-sweep table: per-grid-point steady states, `None` where the drift
/// system was singular.
#[derive(Clone, Debug)]
pub struct SweepResult {
    pub dim: usize,
    pub phis: Vec<f64>,
    pub states: Vec<Option<SteadyState>>,
}

impl SweepResult {
    pub fn singular_points(&self) -> usize {
        self.states.iter().filter(|s| s.is_none()).count()
    }

    /// Grid index minimizing the given occupation (`0` for n1, `1` for n2,
    /// `2` for nb); `None` entries are skipped.
    pub fn argmin_occupation(&self, which: usize) -> Option<usize> {
        let value = |s: &SteadyState| match which {
            0 => Some(s.n1()),
            1 => Some(s.n2()),
            _ => s.nb(),
        };
        let mut best: Option<(usize, f64)> = None;
        for (k, state) in self.states.iter().enumerate() {
            if let Some(v) = state.as_ref().and_then(&value) {
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((k, v));
                }
            }
        }
        best.map(|(k, _)| k)
    }

    /// CSV export: `phi,n1,n2[,nb]`.
    pub fn write_csv<W: io::Write>(&self, w: &mut W) -> io::Result<()> {
        if self.dim == 3 {
            writeln!(w, "phi,n1,n2,nb")?;
        } else {
            writeln!(w, "phi,n1,n2")?;
        }
        for (phi, state) in self.phis.iter().zip(&self.states) {
            let (n1, n2, nb) = match state {
                Some(s) => (s.n1(), s.n2(), s.nb()),
                None => (f64::NAN, f64::NAN, (self.dim == 3).then_some(f64::NAN)),
            };
            let mut row = vec![
                crate::csvfmt::float(*phi),
                crate::csvfmt::float(n1),
                crate::csvfmt::float(n2),
            ];
            if let Some(nb) = nb {
                row.push(crate::csvfmt::float(nb));
            }
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Evaluate the closed-form steady state across the grid.
pub fn run_sweep(model: &Model, spec: &SweepSpec) -> Result<SweepResult> {
    spec.check()?;
    let mut phis = Vec::with_capacity(spec.points);
    let mut states = Vec::with_capacity(spec.points);
    for k in 0..spec.points {
        let phi = spec.phi_at(k);
        phis.push(phi);
        match model.with_phi(phi).steady_state_closed_form() {
            Ok(ss) => states.push(Some(ss)),
            Err(Error::SingularSystem { .. }) => states.push(None),
            Err(e) => return Err(e),
        }
    }
    Ok(SweepResult {
        dim: model.dim(),
        phis,
        states,
    })
}
