//! Parameter and result types for the two- and three-mode models, frame
//! conversion, and validation.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Laboratory-frame frequencies of the cavities, the optional atomic
/// transition, and the common drive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LabFrameSpec {
    pub omega1: f64,
    pub omega2: f64,
    /// Atomic transition frequency; absent for the two-mode model.
    pub omega0: Option<f64>,
    pub omega_d: f64,
}

/// Rotating-frame detunings produced by [`to_rotating_frame`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Detunings {
    pub delta1: f64,
    pub delta2: f64,
    pub delta_b: Option<f64>,
}

/// Detunings relative to the drive: `delta_k = omega_k - omega_d`.
///
/// Total on finite inputs; invariant under a common shift of every frequency.
pub fn to_rotating_frame(spec: &LabFrameSpec) -> Detunings {
    Detunings {
        delta1: spec.omega1 - spec.omega_d,
        delta2: spec.omega2 - spec.omega_d,
        delta_b: spec.omega0.map(|w0| w0 - spec.omega_d),
    }
}

/// Collective coupling of `n_atoms` identical atoms with single-atom coupling
/// `g`: `eta = g * sqrt(N)`.
///
/// `eta` may also be set directly on [`ThreeModeParams`]; values like
/// `sqrt(6)/2` need not come from an integer atom count.
pub fn collective_coupling(g: f64, n_atoms: u64) -> Result<f64> {
    if n_atoms == 0 {
        return Err(Error::ZeroAtoms);
    }
    if !(g >= 0.0) {
        return Err(Error::BadInput(format!(
            "single-atom coupling must be non-negative (got {g})"
        )));
    }
    Ok(g * (n_atoms as f64).sqrt())
}

/// Rotating-frame parameters of the two-cavity model.
///
/// The drive on cavity 1 is `|lambda1| e^{i phi}` and the drive on cavity 2 is
/// real non-negative `|lambda2|`; `phi` therefore carries the full relative
/// phase. `phi` is stored as given (not wrapped); every observable is
/// 2 pi-periodic in it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoModeParams {
    pub delta1: f64,
    pub delta2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    /// Inter-cavity coupling; must be positive.
    #[serde(rename = "J")]
    pub coupling: f64,
    pub lambda1_mag: f64,
    pub lambda2_mag: f64,
    pub phi: f64,
}

impl TwoModeParams {
    /// Copy with a different drive phase difference.
    pub fn with_phi(&self, phi: f64) -> Self {
        Self { phi, ..*self }
    }

    pub fn both_drives_on(&self) -> bool {
        self.lambda1_mag > 0.0 && self.lambda2_mag > 0.0
    }

    pub fn validate(&self) -> Validation {
        let mut v = Validation::default();
        let fields = [
            ("delta1", self.delta1),
            ("delta2", self.delta2),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("J", self.coupling),
            ("lambda1_mag", self.lambda1_mag),
            ("lambda2_mag", self.lambda2_mag),
            ("phi", self.phi),
        ];
        for (name, x) in fields {
            if !x.is_finite() {
                v.violations.push(format!("{name} must be finite (got {x})"));
            }
        }
        if !(self.coupling > 0.0) {
            v.violations.push("J must be positive".into());
        }
        if self.lambda1_mag < 0.0 {
            v.violations.push("lambda1_mag must be non-negative".into());
        }
        if self.lambda2_mag < 0.0 {
            v.violations.push("lambda2_mag must be non-negative".into());
        }
        // Negative decay is deliberate gain operation, not a mistake.
        v.gain_mode = self.gamma1 < 0.0 || self.gamma2 < 0.0;
        v
    }
}

/// Two-mode model plus a bosonized atomic ensemble coupled to cavity 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThreeModeParams {
    #[serde(flatten)]
    pub base: TwoModeParams,
    /// Detuning of the collective atomic mode.
    pub delta_b: f64,
    /// Decay rate of the collective mode; must be positive.
    pub gamma_b: f64,
    /// Collective atom-cavity coupling `g * sqrt(N)`; non-negative.
    pub eta: f64,
}

impl ThreeModeParams {
    pub fn with_phi(&self, phi: f64) -> Self {
        Self {
            base: self.base.with_phi(phi),
            ..*self
        }
    }

    pub fn validate(&self) -> Validation {
        let mut v = self.base.validate();
        for (name, x) in [
            ("delta_b", self.delta_b),
            ("gamma_b", self.gamma_b),
            ("eta", self.eta),
        ] {
            if !x.is_finite() {
                v.violations.push(format!("{name} must be finite (got {x})"));
            }
        }
        if !(self.gamma_b > 0.0) {
            v.violations.push("gamma_b must be positive".into());
        }
        if self.eta < 0.0 {
            v.violations.push("eta must be non-negative".into());
        }
        v
    }
}

/// Diagnostic outcome of parameter validation: every violated invariant plus
/// a gain-mode note (negative decay is allowed but worth flagging).
#[derive(Clone, Debug, Default)]
pub struct Validation {
    pub violations: Vec<String>,
    pub gain_mode: bool,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Either model size, for code paths that handle both uniformly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    TwoMode(TwoModeParams),
    ThreeMode(ThreeModeParams),
}

impl Model {
    pub fn base(&self) -> &TwoModeParams {
        match self {
            Model::TwoMode(p) => p,
            Model::ThreeMode(p) => &p.base,
        }
    }

    /// Number of dynamical modes (2 or 3).
    pub fn dim(&self) -> usize {
        match self {
            Model::TwoMode(_) => 2,
            Model::ThreeMode(_) => 3,
        }
    }

    pub fn with_phi(&self, phi: f64) -> Self {
        match self {
            Model::TwoMode(p) => Model::TwoMode(p.with_phi(phi)),
            Model::ThreeMode(p) => Model::ThreeMode(p.with_phi(phi)),
        }
    }

    pub fn validate(&self) -> Validation {
        match self {
            Model::TwoMode(p) => p.validate(),
            Model::ThreeMode(p) => p.validate(),
        }
    }

    /// Decay rates of all present modes.
    pub fn decay_rates(&self) -> Vec<f64> {
        match self {
            Model::TwoMode(p) => vec![p.gamma1, p.gamma2],
            Model::ThreeMode(p) => vec![p.base.gamma1, p.base.gamma2, p.gamma_b],
        }
    }
}

impl From<TwoModeParams> for Model {
    fn from(p: TwoModeParams) -> Self {
        Model::TwoMode(p)
    }
}

impl From<ThreeModeParams> for Model {
    fn from(p: ThreeModeParams) -> Self {
        Model::ThreeMode(p)
    }
}

/// Steady-state mean amplitudes. Occupations are always recomputed from the
/// amplitudes, never stored.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteadyState {
    pub alpha1: C64,
    pub alpha2: C64,
    /// Collective-mode amplitude; `None` for the two-mode model.
    pub beta: Option<C64>,
}

impl SteadyState {
    /// Mean photon number in cavity 1, `|alpha1|^2`.
    pub fn n1(&self) -> f64 {
        self.alpha1.norm_sqr()
    }

    /// Mean photon number in cavity 2, `|alpha2|^2`.
    pub fn n2(&self) -> f64 {
        self.alpha2.norm_sqr()
    }

    /// Mean excitation of the collective mode, `|beta|^2`.
    pub fn nb(&self) -> Option<f64> {
        self.beta.map(|b| b.norm_sqr())
    }

    /// Amplitudes as a vector of length 2 or 3.
    pub fn amplitudes(&self) -> Vec<C64> {
        let mut v = vec![self.alpha1, self.alpha2];
        if let Some(b) = self.beta {
            v.push(b);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotating_frame_is_the_detuning() {
        let d = to_rotating_frame(&LabFrameSpec {
            omega1: 5.0,
            omega2: 5.0,
            omega0: None,
            omega_d: 4.0,
        });
        assert_eq!(d.delta1, 1.0);
        assert_eq!(d.delta2, 1.0);
        assert_eq!(d.delta_b, None);
    }

    #[test]
    fn rotating_frame_on_resonance() {
        let d = to_rotating_frame(&LabFrameSpec {
            omega1: 3.0,
            omega2: 3.0,
            omega0: None,
            omega_d: 3.0,
        });
        assert_eq!((d.delta1, d.delta2), (0.0, 0.0));
    }

    #[test]
    fn rotating_frame_with_atoms() {
        let d = to_rotating_frame(&LabFrameSpec {
            omega1: 5.0,
            omega2: 5.0,
            omega0: Some(5.0),
            omega_d: 4.0,
        });
        assert_eq!((d.delta1, d.delta2, d.delta_b), (1.0, 1.0, Some(1.0)));
    }

    #[test]
    fn rotating_frame_shift_invariance() {
        let spec = LabFrameSpec {
            omega1: 2.5,
            omega2: -0.75,
            omega0: Some(1.25),
            omega_d: 0.5,
        };
        let shifted = LabFrameSpec {
            omega1: spec.omega1 + 128.0,
            omega2: spec.omega2 + 128.0,
            omega0: spec.omega0.map(|w| w + 128.0),
            omega_d: spec.omega_d + 128.0,
        };
        assert_eq!(to_rotating_frame(&spec), to_rotating_frame(&shifted));
    }

    #[test]
    fn collective_coupling_values() {
        assert_eq!(collective_coupling(1.0, 1).unwrap(), 1.0);
        assert_eq!(collective_coupling(0.5, 4).unwrap(), 1.0);
        assert!(matches!(
            collective_coupling(1.0, 0),
            Err(Error::ZeroAtoms)
        ));
        assert!(collective_coupling(-0.1, 3).is_err());
    }

    fn symmetric_params() -> TwoModeParams {
        TwoModeParams {
            delta1: 1.0,
            delta2: 1.0,
            gamma1: 1.0,
            gamma2: 1.0,
            coupling: 5.0_f64.sqrt() / 2.0,
            lambda1_mag: 0.1,
            lambda2_mag: 0.1,
            phi: 0.0,
        }
    }

    #[test]
    fn validate_accepts_symmetric_set() {
        let v = symmetric_params().validate();
        assert!(v.is_ok());
        assert!(!v.gain_mode);
    }

    #[test]
    fn validate_rejects_zero_coupling() {
        let p = TwoModeParams {
            coupling: 0.0,
            ..symmetric_params()
        };
        let v = p.validate();
        assert!(!v.is_ok());
        assert!(v.violations.iter().any(|m| m.contains("J must be positive")));
    }

    #[test]
    fn negative_decay_is_a_warning_not_an_error() {
        let p = TwoModeParams {
            gamma2: -1.0,
            ..symmetric_params()
        };
        let v = p.validate();
        assert!(v.is_ok());
        assert!(v.gain_mode);
    }

    #[test]
    fn three_mode_validation() {
        let p = ThreeModeParams {
            base: symmetric_params(),
            delta_b: 1.0,
            gamma_b: 1.0,
            eta: 6.0_f64.sqrt() / 2.0,
        };
        assert!(p.validate().is_ok());
        let bad = ThreeModeParams { gamma_b: 0.0, ..p };
        assert!(!bad.validate().is_ok());
    }

    #[test]
    fn occupations_recomputed_from_amplitudes() {
        let ss = SteadyState {
            alpha1: C64::new(-0.08, -0.04),
            alpha2: C64::new(0.3, -0.4),
            beta: Some(C64::new(0.0, 0.1)),
        };
        assert_eq!(ss.n1(), 0.08_f64 * 0.08 + 0.04 * 0.04);
        assert_eq!(ss.n2(), 0.25);
        assert_eq!(ss.nb(), Some(0.1 * 0.1f64));
    }
}
