//! Property-based checks over randomly generated parameter sets. These
//! complement the fixed-seed suites in the acceptance tests with
//! shrinkable proptest cases.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use optmol::dynamics::{drift, steady_state_closed_form, steady_state_solve};
use optmol::params::{to_rotating_frame, LabFrameSpec, Model, ThreeModeParams, TwoModeParams};

fn two_mode_strategy() -> impl Strategy<Value = TwoModeParams> {
    (
        -3.0..3.0f64,
        -3.0..3.0f64,
        0.05..3.0f64,
        0.05..3.0f64,
        0.1..3.0f64,
        0.0..1.0f64,
        0.0..1.0f64,
        -PI..PI,
    )
        .prop_map(
            |(delta1, delta2, gamma1, gamma2, coupling, l1, l2, phi)| TwoModeParams {
                delta1,
                delta2,
                gamma1,
                gamma2,
                coupling,
                lambda1_mag: l1,
                lambda2_mag: l2,
                phi,
            },
        )
}

fn three_mode_strategy() -> impl Strategy<Value = ThreeModeParams> {
    (two_mode_strategy(), -3.0..3.0f64, 0.05..3.0f64, 0.0..3.0f64).prop_map(
        |(base, delta_b, gamma_b, eta)| ThreeModeParams {
            base,
            delta_b,
            gamma_b,
            eta,
        },
    )
}

fn well_conditioned(model: &Model) -> bool {
    let sys = drift(model);
    let r = sys.max_row_norm();
    sys.det().norm() > 1e-3 * r * r
}

proptest! {
    #[test]
    fn closed_form_agrees_with_solve(p in two_mode_strategy()) {
        let model = Model::TwoMode(p);
        prop_assume!(well_conditioned(&model));
        let cf = steady_state_closed_form(&p).unwrap();
        let sv = steady_state_solve(&drift(&model)).unwrap();
        let scale = cf.alpha1.norm().max(cf.alpha2.norm()).max(1e-30);
        prop_assert!((cf.alpha1 - sv.alpha1).norm() <= 1e-12 * scale);
        prop_assert!((cf.alpha2 - sv.alpha2).norm() <= 1e-12 * scale);
    }

    #[test]
    fn occupations_are_2pi_periodic(p in three_mode_strategy(), turns in -3i32..=3) {
        let model = Model::ThreeMode(p);
        prop_assume!(well_conditioned(&model));
        let a = model.steady_state_closed_form().unwrap();
        let b = model
            .with_phi(p.base.phi + 2.0 * PI * turns as f64)
            .steady_state_closed_form()
            .unwrap();
        let tol = |x: f64| 1e-12 * x.max(1.0) * (turns.unsigned_abs().max(1) as f64);
        prop_assert!((a.n1() - b.n1()).abs() <= tol(a.n1()));
        prop_assert!((a.n2() - b.n2()).abs() <= tol(a.n2()));
        prop_assert!((a.nb().unwrap() - b.nb().unwrap()).abs() <= tol(a.nb().unwrap()));
    }

    #[test]
    fn global_drive_phase_is_a_gauge(p in two_mode_strategy(), theta in -PI..PI) {
        let model = Model::TwoMode(p);
        prop_assume!(well_conditioned(&model));
        let sys = drift(&model);
        let rot = (-C64::new(0.0, 1.0) * theta).exp();
        let rotated = sys.with_drive(sys.b.iter().map(|z| z * rot).collect());
        let a = steady_state_solve(&sys).unwrap().amplitudes();
        let b = steady_state_solve(&rotated).unwrap().amplitudes();
        let scale = a.iter().map(|z| z.norm()).fold(1e-30f64, f64::max);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x * rot - y).norm() <= 1e-12 * scale);
            prop_assert!((x.norm_sqr() - y.norm_sqr()).abs() <= 1e-12 * x.norm_sqr().max(1.0));
        }
    }

    #[test]
    fn drive_scaling_is_linear(p in two_mode_strategy(), s in 0.1..10.0f64) {
        let model = Model::TwoMode(p);
        prop_assume!(well_conditioned(&model));
        let scaled = TwoModeParams {
            lambda1_mag: s * p.lambda1_mag,
            lambda2_mag: s * p.lambda2_mag,
            ..p
        };
        let a = steady_state_closed_form(&p).unwrap();
        let b = steady_state_closed_form(&scaled).unwrap();
        let scale = (a.alpha1.norm().max(a.alpha2.norm()) * s).max(1e-30);
        prop_assert!((a.alpha1 * s - b.alpha1).norm() <= 1e-12 * scale);
        prop_assert!((a.alpha2 * s - b.alpha2).norm() <= 1e-12 * scale);
        prop_assert!((a.n1() * s * s - b.n1()).abs() <= 1e-12 * (a.n1() * s * s).max(1e-30));
    }

    #[test]
    fn rotating_frame_ignores_common_shifts(
        w1 in -10.0..10.0f64,
        w2 in -10.0..10.0f64,
        w0 in -10.0..10.0f64,
        wd in -10.0..10.0f64,
        c in -100.0..100.0f64,
    ) {
        let spec = LabFrameSpec { omega1: w1, omega2: w2, omega0: Some(w0), omega_d: wd };
        let shifted = LabFrameSpec {
            omega1: w1 + c,
            omega2: w2 + c,
            omega0: Some(w0 + c),
            omega_d: wd + c,
        };
        let a = to_rotating_frame(&spec);
        let b = to_rotating_frame(&shifted);
        // exact up to one rounding of the shifted subtraction
        prop_assert!((a.delta1 - b.delta1).abs() <= 1e-12 * (1.0 + a.delta1.abs()));
        prop_assert!((a.delta2 - b.delta2).abs() <= 1e-12 * (1.0 + a.delta2.abs()));
    }

    #[test]
    fn validated_params_are_accepted_downstream(p in two_mode_strategy()) {
        prop_assume!(p.validate().is_ok());
        // drift construction and stability are total on validated input
        let sys = drift(&Model::TwoMode(p));
        let st = optmol::dynamics::stability(&sys);
        prop_assert_eq!(st.eigenvalues.len(), 2);
    }
}
