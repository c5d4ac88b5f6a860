//! Flat JSON parameter files. Two-mode configs carry exactly the keys
//! `delta1, delta2, gamma1, gamma2, J, lambda1_mag, lambda2_mag, phi`;
//! three-mode configs add `delta_b, gamma_b, eta`. Key presence selects the
//! model; unknown or missing keys are rejected outright so that typos do not
//! silently fall back to defaults.

use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::params::{Model, ThreeModeParams, TwoModeParams};
use crate::{Error, Result};

const BASE_KEYS: [&str; 8] = [
    "delta1",
    "delta2",
    "gamma1",
    "gamma2",
    "J",
    "lambda1_mag",
    "lambda2_mag",
    "phi",
];
const ATOM_KEYS: [&str; 3] = ["delta_b", "gamma_b", "eta"];

pub fn from_json_str(text: &str) -> Result<Model> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Config("config must be a JSON object".into()))?;

    for key in obj.keys() {
        if !BASE_KEYS.contains(&key.as_str()) && !ATOM_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!("unknown key '{key}'")));
        }
    }
    let missing: Vec<&str> = BASE_KEYS
        .iter()
        .copied()
        .filter(|k| !obj.contains_key(*k))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Config(format!("missing keys: {}", missing.join(", "))));
    }
    let atoms_present = ATOM_KEYS.iter().filter(|k| obj.contains_key(**k)).count();
    if atoms_present != 0 && atoms_present != ATOM_KEYS.len() {
        return Err(Error::Config(
            "atom keys delta_b, gamma_b, eta must be given together or not at all".into(),
        ));
    }

    let number = |key: &str| -> Result<f64> {
        obj[key]
            .as_f64()
            .ok_or_else(|| Error::Config(format!("key '{key}' must be a number")))
    };
    let base = TwoModeParams {
        delta1: number("delta1")?,
        delta2: number("delta2")?,
        gamma1: number("gamma1")?,
        gamma2: number("gamma2")?,
        coupling: number("J")?,
        lambda1_mag: number("lambda1_mag")?,
        lambda2_mag: number("lambda2_mag")?,
        phi: number("phi")?,
    };
    if atoms_present == 0 {
        return Ok(Model::TwoMode(base));
    }
    Ok(Model::ThreeMode(ThreeModeParams {
        base,
        delta_b: number("delta_b")?,
        gamma_b: number("gamma_b")?,
        eta: number("eta")?,
    }))
}

pub fn load(path: &Path) -> Result<Model> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    from_json_str(&text)
}

pub fn to_json_string(model: &Model) -> String {
    // Field order is fixed by the struct definitions, so output is stable.
    match model {
        Model::TwoMode(p) => serde_json::to_string_pretty(p).expect("params serialize"),
        Model::ThreeMode(p) => serde_json::to_string_pretty(p).expect("params serialize"),
    }
}

pub fn save(model: &Model, path: &Path) -> Result<()> {
    let mut text = to_json_string(model);
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}
