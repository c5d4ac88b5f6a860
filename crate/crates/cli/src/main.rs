//! Command-line front end: config ingestion, phase sweeps, dark-phase
//! queries, symmetric parameter design, time integration, and oracle checks.
//! Every number printed here comes straight out of the library calls.
//!
//! Exit codes: 0 success, 1 config error, 2 infeasible or limit exceeded,
//! 3 numerical-step error.

// NaN arguments must fail closed, hence `!(x > 0.0)` rather than `x <= 0.0`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64 as C64;

use optmol::dynamics::{drift, integrate, stability, steady_state_solve, PhaseSchedule};
use optmol::oracle::{liouvillian_steady_state, write_report_csv, FockConfig};
use optmol::params::Model;
use optmol::sweep::{run_sweep, SweepSpec};
use optmol::{config, Error};

#[derive(Parser)]
#[command(name = "optmol", version, about = "Driven two-cavity optical molecule: steady states, dark-cavity phases, and a Fock-space oracle")]
struct Cli {
    /// JSON parameter file (flat keys: delta1, delta2, gamma1, gamma2, J,
    /// lambda1_mag, lambda2_mag, phi[, delta_b, gamma_b, eta])
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write CSV or config output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Include the atomic ensemble (three-mode design)
    #[arg(long, global = true)]
    atoms: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Steady-state occupations over a uniform phase grid, as CSV
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        phi_from: f64,
        #[arg(long, allow_hyphen_values = true)]
        phi_to: f64,
        #[arg(long)]
        points: usize,
    },
    /// Solve the dark condition for one cavity and report the steady state
    Dark {
        #[arg(long)]
        cavity: u8,
    },
    /// Emit a symmetric parameter set on which both dark conditions hold
    Design {
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        lambda: f64,
    },
    /// Integrate the mean-field equations through a phase schedule
    Integrate {
        /// Hold the phase constant at this value (radians)
        #[arg(long, allow_hyphen_values = true, conflicts_with = "phase_ramp")]
        phase_const: Option<f64>,
        /// Linear ramp `phi0:phi1:t0:t1`
        #[arg(long, allow_hyphen_values = true)]
        phase_ramp: Option<String>,
        #[arg(long)]
        t_final: f64,
        #[arg(long)]
        dt: f64,
        /// Start from the steady state of the initial phase instead of vacuum
        #[arg(long)]
        from_steady_state: bool,
    },
    /// Compare the mean-field steady state against the truncated-Fock oracle
    Oracle {
        #[arg(long)]
        cutoff: usize,
    },
    /// Print the steady state at the phase stored in the config
    SteadyState,
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code(&err));
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::Io(_) | Error::BadInput(_) | Error::ZeroAtoms => 1,
        Error::SingularSystem { .. }
        | Error::DriveOff
        | Error::DimensionCap { .. }
        | Error::LossOnlyRequired
        | Error::DegenerateGenerator
        | Error::InfeasibleDesign { .. } => 2,
        Error::StepSizeTooLarge { .. } => 3,
    }
}

fn load_model(cli: &Cli) -> Result<Model, Error> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("no --config file given".into()))?;
    let model = config::load(path)?;
    let validation = model.validate();
    if !validation.is_ok() {
        return Err(Error::Config(format!(
            "invalid parameters: {}",
            validation.violations.join("; ")
        )));
    }
    if validation.gain_mode {
        eprintln!("warning: gain-mode parameters (negative decay rate)");
    }
    Ok(model)
}

/// Stream CSV either to --out or to stdout.
fn write_output<F>(out: &Option<PathBuf>, write: F) -> Result<(), Error>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match out {
        Some(path) => {
            let mut file = File::create(path)?;
            write(&mut file)?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
        }
    }
    Ok(())
}

fn fmt_pi(phi: f64) -> String {
    format!("{phi} rad = {} pi", phi / std::f64::consts::PI)
}

fn run(cli: &Cli) -> Result<i32, Error> {
    match &cli.command {
        Command::Sweep {
            phi_from,
            phi_to,
            points,
        } => cmd_sweep(cli, *phi_from, *phi_to, *points),
        Command::Dark { cavity } => cmd_dark(cli, *cavity),
        Command::Design {
            delta,
            gamma,
            lambda,
        } => cmd_design(cli, *delta, *gamma, *lambda),
        Command::Integrate {
            phase_const,
            phase_ramp,
            t_final,
            dt,
            from_steady_state,
        } => cmd_integrate(
            cli,
            phase_const,
            phase_ramp.as_deref(),
            *t_final,
            *dt,
            *from_steady_state,
        ),
        Command::Oracle { cutoff } => cmd_oracle(cli, *cutoff),
        Command::SteadyState => cmd_steady_state(cli),
    }
}

fn cmd_sweep(cli: &Cli, phi_from: f64, phi_to: f64, points: usize) -> Result<i32, Error> {
    let model = load_model(cli)?;
    let sweep = run_sweep(
        &model,
        &SweepSpec {
            phi_from,
            phi_to,
            points,
        },
    )?;
    let singular = sweep.singular_points();
    if singular > 0 {
        eprintln!("warning: {singular} singular grid points emitted as nan rows");
    }
    write_output(&cli.out, |mut w| sweep.write_csv(&mut w))?;
    Ok(0)
}

fn cmd_dark(cli: &Cli, cavity: u8) -> Result<i32, Error> {
    let model = load_model(cli)?;
    let solution = model.dark_phase(cavity)?;
    println!("cavity {cavity} dark phase: {}", fmt_pi(solution.phi));
    println!(
        "feasibility residual: {:e} ({})",
        solution.feasibility_residual,
        if solution.feasible { "feasible" } else { "infeasible" }
    );
    let ss = model.with_phi(solution.phi).steady_state_closed_form()?;
    match ss.nb() {
        Some(nb) => println!("steady state at that phase: n1 = {:e}, n2 = {:e}, nb = {:e}", ss.n1(), ss.n2(), nb),
        None => println!("steady state at that phase: n1 = {:e}, n2 = {:e}", ss.n1(), ss.n2()),
    }
    Ok(if solution.feasible { 0 } else { 2 })
}

fn cmd_design(cli: &Cli, delta: f64, gamma: f64, lambda: f64) -> Result<i32, Error> {
    if !(gamma > 0.0) || !(lambda > 0.0) || !delta.is_finite() {
        return Err(Error::BadInput(format!(
            "design needs gamma > 0, lambda > 0 and finite delta (got delta = {delta}, gamma = {gamma}, lambda = {lambda})"
        )));
    }
    let (model, phi1, phi2) = if cli.atoms {
        let d = optmol::ensemble::design_symmetric_atoms(delta, gamma, lambda)?;
        (Model::ThreeMode(d.params), d.phi_dark_1, d.phi_dark_2)
    } else {
        let d = optmol::dark::design_symmetric(delta, gamma, lambda);
        (Model::TwoMode(d.params), d.phi_dark_1, d.phi_dark_2)
    };
    let summary = |w: &mut dyn Write| -> io::Result<()> {
        writeln!(w, "cavity 1 dark phase: {}", fmt_pi(phi1))?;
        writeln!(w, "cavity 2 dark phase: {}", fmt_pi(phi2))
    };
    match &cli.out {
        Some(path) => {
            config::save(&model, path)?;
            println!("wrote config to {}", path.display());
            summary(&mut io::stdout().lock())?;
        }
        None => {
            println!("{}", config::to_json_string(&model));
            summary(&mut io::stderr().lock())?;
        }
    }
    Ok(0)
}

fn parse_ramp(text: &str) -> Result<PhaseSchedule, Error> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 4 {
        return Err(Error::BadInput(format!(
            "--phase-ramp wants phi0:phi1:t0:t1, got '{text}'"
        )));
    }
    let mut vals = [0.0f64; 4];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| Error::BadInput(format!("not a number in --phase-ramp: '{part}'")))?;
    }
    Ok(PhaseSchedule::Ramp {
        phi0: vals[0],
        phi1: vals[1],
        t0: vals[2],
        t1: vals[3],
    })
}

fn cmd_integrate(
    cli: &Cli,
    phase_const: &Option<f64>,
    phase_ramp: Option<&str>,
    t_final: f64,
    dt: f64,
    from_steady_state: bool,
) -> Result<i32, Error> {
    let model = load_model(cli)?;
    let schedule = match (phase_const, phase_ramp) {
        (Some(phi), None) => PhaseSchedule::Constant(*phi),
        (None, Some(text)) => parse_ramp(text)?,
        _ => {
            return Err(Error::BadInput(
                "give exactly one of --phase-const or --phase-ramp".into(),
            ))
        }
    };

    let dim = model.dim();
    let initial: Vec<C64> = if from_steady_state {
        let at_start = model.with_phi(schedule.phi_at(0.0));
        steady_state_solve(&drift(&at_start))?.amplitudes()
    } else {
        vec![C64::new(0.0, 0.0); dim]
    };

    let traj = integrate(&model, &initial, &schedule, t_final, dt)?;
    write_output(&cli.out, |mut w| traj.write_csv(&mut w))?;

    let phi_end = schedule.phi_at(*traj.times().last().unwrap());
    let target = steady_state_solve(&drift(&model.with_phi(phi_end)))?;
    let distance = traj
        .final_state()
        .iter()
        .zip(target.amplitudes())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let report = format!(
        "final state distance to steady state at phi = {phi_end}: {distance:e}"
    );
    if cli.out.is_some() {
        println!("{report}");
    } else {
        eprintln!("{report}");
    }
    Ok(0)
}

fn cmd_oracle(cli: &Cli, cutoff: usize) -> Result<i32, Error> {
    let model = load_model(cli)?;
    let fock = FockConfig::new(cutoff, model.dim())?;
    let result = liouvillian_steady_state(&model, &fock)?;
    if result.truncation_warning {
        eprintln!("warning: cutoff {cutoff} may be too tight for the predicted occupations");
    }
    write_output(&cli.out, |mut w| write_report_csv(&mut w, &[result]))?;

    let mean_field = model.steady_state_closed_form()?;
    let discrepancy = result.max_mean_discrepancy(&mean_field);
    let threshold = if model.dim() == 2 { 1e-5 } else { 1e-4 };
    let verdict = if discrepancy < threshold { "PASS" } else { "FAIL" };
    let report = format!(
        "max first-moment discrepancy vs closed form: {discrepancy:e} ({verdict}, threshold {threshold:e})"
    );
    if cli.out.is_some() {
        println!("{report}");
    } else {
        eprintln!("{report}");
    }
    Ok(if discrepancy < threshold { 0 } else { 2 })
}

fn cmd_steady_state(cli: &Cli) -> Result<i32, Error> {
    let model = load_model(cli)?;
    let ss = model.steady_state_closed_form()?;
    let sys = drift(&model);
    let st = stability(&sys);
    println!("phi = {}", model.base().phi);
    println!("alpha1 = {} + {}i  (n1 = {:e})", ss.alpha1.re, ss.alpha1.im, ss.n1());
    println!("alpha2 = {} + {}i  (n2 = {:e})", ss.alpha2.re, ss.alpha2.im, ss.n2());
    if let (Some(beta), Some(nb)) = (ss.beta, ss.nb()) {
        println!("beta   = {} + {}i  (nb = {:e})", beta.re, beta.im, nb);
    }
    let det = sys.det();
    println!("det(M) = {} + {}i", det.re, det.im);
    let eigs: Vec<String> = st
        .eigenvalues
        .iter()
        .map(|e| format!("{} + {}i", e.re, e.im))
        .collect();
    println!("eigenvalues: [{}]", eigs.join(", "));
    println!("stable: {}", st.is_stable);
    Ok(0)
}
