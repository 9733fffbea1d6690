//! Browser bindings for the interactive demo page: three operations, each
//! returning a JSON payload for plain JavaScript to render.
//!
//! Build with `wasm-pack build crates/wasm --target web --out-dir www/pkg`
//! and serve `crates/wasm/www/`.

use wasm_bindgen::prelude::*;

use mfao_core::bogoliubov::{assemble_transform, build_blocks, unitarity_residual, BcsAngles};
use mfao_core::classical::{hamilton_rates, to_action_angle};
use mfao_core::fock::{spectrum, ModelParams};
use mfao_core::meanfield::{
    closed_form_rates, integrate, uniform_grid, IntegrationMethod, Occupations,
};
use mfao_core::symmetry::conservation_probe;

fn check_finite(pairs: &[(&str, f64)]) -> Result<(), String> {
    for (name, v) in pairs {
        if !v.is_finite() {
            return Err(format!("{name} must be finite"));
        }
    }
    Ok(())
}

/// The four energy levels as `[{index, label, energy}, ...]`.
#[wasm_bindgen]
pub fn spectrum_levels(hbar_omega: f64, u: f64, gbb: f64) -> Result<String, String> {
    check_finite(&[("hbar_omega", hbar_omega), ("u", u), ("gbb", gbb)])?;
    let levels = spectrum(ModelParams::new(hbar_omega, u, gbb));
    let entries: Vec<String> = levels
        .iter()
        .map(|l| {
            format!(
                "{{\"index\":{},\"label\":\"{}\",\"energy\":{}}}",
                l.index, l.label, l.energy
            )
        })
        .collect();
    Ok(format!("[{}]", entries.join(",")))
}

/// Mean-field trajectory of the angles plus the constant rates and actions:
/// `{rates: {theta, phi, gamma, xi}, actions: {j1, j2}, columns, rows}`.
#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn meanfield_trajectory(
    hbar_omega: f64,
    u: f64,
    gbb: f64,
    theta0: f64,
    phi0: f64,
    gamma0: f64,
    xi0: f64,
    p1: f64,
    p2: f64,
    t_end: f64,
    steps: u32,
) -> Result<String, String> {
    check_finite(&[
        ("hbar_omega", hbar_omega),
        ("u", u),
        ("gbb", gbb),
        ("theta0", theta0),
        ("phi0", phi0),
        ("gamma0", gamma0),
        ("xi0", xi0),
        ("t_end", t_end),
    ])?;
    if steps == 0 || t_end <= 0.0 {
        return Err("need steps >= 1 and t_end > 0".to_string());
    }
    let p = ModelParams::new(hbar_omega, u, gbb);
    let occ = Occupations::new(p1, p2).map_err(|e| e.to_string())?;
    let a0 = BcsAngles::new(theta0, phi0, gamma0, xi0);
    let traj = integrate(
        a0,
        occ,
        p,
        &uniform_grid(t_end, steps as usize),
        IntegrationMethod::ClosedForm,
    )
    .map_err(|e| e.to_string())?;
    let rates = closed_form_rates(p);
    let s0 = to_action_angle(a0);
    let rows: Vec<String> = traj
        .times
        .iter()
        .zip(&traj.samples)
        .map(|(t, (a, _))| format!("[{},{},{},{},{}]", t, a.theta, a.phi, a.gamma, a.xi))
        .collect();
    Ok(format!(
        "{{\"rates\":{{\"theta\":{},\"phi\":{},\"gamma\":{},\"xi\":{}}},\
           \"actions\":{{\"j1\":{},\"j2\":{}}},\
           \"columns\":[\"t\",\"theta\",\"phi\",\"gamma\",\"xi\"],\
           \"rows\":[{}]}}",
        rates.d_theta,
        rates.d_phi,
        rates.d_gamma,
        rates.d_xi,
        s0.j1,
        s0.j2,
        rows.join(",")
    ))
}

/// Symmetry probe of the transformation at the given angles:
/// `{classification, number_conserved, spin_conserved, number_norm,
///   spin_norm, unitarity_residual, alpha1_rate, alpha2_rate}`.
#[wasm_bindgen]
pub fn transform_probe(
    theta: f64,
    phi: f64,
    gamma: f64,
    xi: f64,
    hbar_omega: f64,
    u: f64,
    gbb: f64,
) -> Result<String, String> {
    check_finite(&[
        ("theta", theta),
        ("phi", phi),
        ("gamma", gamma),
        ("xi", xi),
        ("hbar_omega", hbar_omega),
        ("u", u),
        ("gbb", gbb),
    ])?;
    let angles = BcsAngles::new(theta, phi, gamma, xi);
    let report = conservation_probe(angles);
    let m = assemble_transform(&build_blocks(angles));
    let rates = hamilton_rates(ModelParams::new(hbar_omega, u, gbb));
    Ok(format!(
        "{{\"classification\":\"{}\",\"number_conserved\":{},\"spin_conserved\":{},\
           \"number_norm\":{},\"spin_norm\":{},\"unitarity_residual\":{},\
           \"alpha1_rate\":{},\"alpha2_rate\":{}}}",
        report.classification.name(),
        report.number_conserved,
        report.spin_conserved,
        report.number_commutator_norm,
        report.spin_commutator_norm,
        unitarity_residual(&m),
        rates.d_alpha1,
        rates.d_alpha2,
    ))
}
