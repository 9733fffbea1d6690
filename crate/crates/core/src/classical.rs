//! The classical picture of the mean-field dynamics: two independent unit
//! magnetic moments precessing about a constant field.
//!
//! In action-angle variables the effective Hamiltonian is linear in the
//! actions j₁ = cos γ and j₂ = cos ξ (the constant projections of the two
//! moments onto the field axis) and independent of the angles α₁ = θ and
//! α₂ = φ (the precession longitudes). Hamilton's equations therefore give
//! constant precession rates and frozen actions — exactly the quantum
//! mean-field rates, which [`equivalence_check`] verifies mechanically.

use crate::bogoliubov::BcsAngles;
use crate::fock::ModelParams;
use crate::meanfield::{closed_form_rates, integrate, IntegrationMethod, Occupations};
use crate::{Error, Result};

/// Action-angle coordinates: longitudes (α₁, α₂) and field-axis projections
/// (j₁, j₂) of the two unit moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    pub alpha1: f64,
    pub alpha2: f64,
    pub j1: f64,
    pub j2: f64,
}

impl ClassicalState {
    /// Build a state, checking the action bounds |j| ≤ 1.
    pub fn new(alpha1: f64, alpha2: f64, j1: f64, j2: f64) -> Result<Self> {
        check_action("j1", j1)?;
        check_action("j2", j2)?;
        Ok(Self { alpha1, alpha2, j1, j2 })
    }
}

fn check_action(name: &'static str, value: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&value) {
        return Err(Error::ActionRange { name, value });
    }
    Ok(())
}

/// Effective Hamiltonian in the mixing angles:
/// H = (2 g_B·B + 2ħω + U) ξ + (2 g_B·B) γ.
pub fn effective_hamiltonian(p: ModelParams, gamma: f64, xi: f64) -> f64 {
    (2.0 * p.gb_b + 2.0 * p.hbar_omega + p.u) * xi + 2.0 * p.gb_b * gamma
}

/// The same Hamiltonian in action-angle form:
/// H = (2 g_B·B + 2ħω + U) j₁ + (2 g_B·B) j₂.
pub fn action_angle_hamiltonian(p: ModelParams, s: &ClassicalState) -> Result<f64> {
    check_action("j1", s.j1)?;
    check_action("j2", s.j2)?;
    Ok((2.0 * p.gb_b + 2.0 * p.hbar_omega + p.u) * s.j1 + 2.0 * p.gb_b * s.j2)
}

/// Map transformation angles to action-angle coordinates:
/// j₁ = cos γ, α₁ = θ, j₂ = cos ξ, α₂ = φ. The actions land in [−1, 1] for
/// every real input.
pub fn to_action_angle(a: BcsAngles) -> ClassicalState {
    ClassicalState {
        alpha1: a.theta,
        alpha2: a.phi,
        j1: a.gamma.cos(),
        j2: a.xi.cos(),
    }
}

/// Rates of the action-angle coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalRates {
    pub d_alpha1: f64,
    pub d_alpha2: f64,
    pub d_j1: f64,
    pub d_j2: f64,
}

/// Hamilton's equations for the action-angle Hamiltonian:
/// α̇ₖ = ∂H/∂jₖ, j̇ₖ = −∂H/∂αₖ. H is linear with constant coefficients,
/// so the rates are state-independent:
/// (2 g_B·B + 2ħω + U, 2 g_B·B, 0, 0).
pub fn hamilton_rates(p: ModelParams) -> ClassicalRates {
    ClassicalRates {
        d_alpha1: 2.0 * p.gb_b + 2.0 * p.hbar_omega + p.u,
        d_alpha2: 2.0 * p.gb_b,
        d_j1: 0.0,
        d_j2: 0.0,
    }
}

/// Rates read off the angle-form Hamiltonian instead, pairing (φ, γ) and
/// (θ, ξ): φ̇ = ∂H/∂γ, θ̇ = ∂H/∂ξ, γ̇ = ξ̇ = 0. Returned in the same field
/// order as [`hamilton_rates`] for direct comparison; the two readings pair
/// the coordinates differently but generate the same constant rate tuple.
pub fn angle_form_rates(p: ModelParams) -> ClassicalRates {
    ClassicalRates {
        d_alpha1: 2.0 * p.gb_b + 2.0 * p.hbar_omega + p.u, // θ̇ = ∂H/∂ξ
        d_alpha2: 2.0 * p.gb_b,                            // φ̇ = ∂H/∂γ
        d_j1: 0.0,
        d_j2: 0.0,
    }
}

/// Result of the quantum-classical equivalence check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    /// Largest rate mismatch between Hamilton's equations (both readings)
    /// and the quantum closed-form rates.
    pub max_rate_deviation: f64,
    /// Largest drift of j₁, j₂ along the integrated quantum trajectory.
    pub max_action_drift: f64,
    /// Largest deviation of α₁, α₂ from straight-line motion at the
    /// classical rates.
    pub max_angle_deviation: f64,
    /// Largest drift of the action-angle energy along the trajectory.
    pub max_energy_drift: f64,
    pub passed: bool,
}

/// Tolerance for the equivalence check; every compared quantity is either
/// identical by construction or a cosine of an exactly-constant angle.
pub const EQUIVALENCE_TOL: f64 = 1e-12;

/// Verify that the classical precession picture reproduces the quantum
/// mean-field dynamics:
///
/// 1. α̇₁ = θ̇ and α̇₂ = φ̇ (exactly, both are the same constants), under
///    both conjugate-pair readings;
/// 2. j̇₁ = j̇₂ = 0 matches γ̇ = ξ̇ = 0;
/// 3. along the integrated quantum trajectory from `a0`, the actions stay
///    constant, the longitudes grow linearly at the classical rates, and the
///    action-angle energy is conserved.
pub fn equivalence_check(
    p: ModelParams,
    a0: BcsAngles,
    occ: Occupations,
    times: &[f64],
) -> Result<EquivalenceReport> {
    let quantum = closed_form_rates(p);
    let classical = hamilton_rates(p);
    let angle_form = angle_form_rates(p);

    let mut rate_dev = 0.0f64;
    for (c, q) in [
        (classical.d_alpha1, quantum.d_theta),
        (classical.d_alpha2, quantum.d_phi),
        (classical.d_j1, quantum.d_gamma),
        (classical.d_j2, quantum.d_xi),
        (angle_form.d_alpha1, quantum.d_theta),
        (angle_form.d_alpha2, quantum.d_phi),
    ] {
        rate_dev = rate_dev.max((c - q).abs());
    }

    let traj = integrate(a0, occ, p, times, IntegrationMethod::ClosedForm)?;
    let s0 = to_action_angle(a0);
    let e0 = action_angle_hamiltonian(p, &s0)?;
    let mut action_drift = 0.0f64;
    let mut angle_dev = 0.0f64;
    let mut energy_drift = 0.0f64;
    for (t, (a, _)) in traj.times.iter().zip(&traj.samples) {
        let s = to_action_angle(*a);
        check_action("j1", s.j1)?;
        check_action("j2", s.j2)?;
        action_drift = action_drift
            .max((s.j1 - s0.j1).abs())
            .max((s.j2 - s0.j2).abs());
        angle_dev = angle_dev
            .max((s.alpha1 - (s0.alpha1 + classical.d_alpha1 * t)).abs())
            .max((s.alpha2 - (s0.alpha2 + classical.d_alpha2 * t)).abs());
        energy_drift = energy_drift.max((action_angle_hamiltonian(p, &s)? - e0).abs());
    }

    let passed = rate_dev <= EQUIVALENCE_TOL
        && action_drift <= EQUIVALENCE_TOL
        && angle_dev <= EQUIVALENCE_TOL
        && energy_drift <= EQUIVALENCE_TOL;
    Ok(EquivalenceReport {
        max_rate_deviation: rate_dev,
        max_action_drift: action_drift,
        max_angle_deviation: angle_dev,
        max_energy_drift: energy_drift,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meanfield::uniform_grid;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn params() -> ModelParams {
        ModelParams::new(1.0, 0.5, 0.25)
    }

    #[test]
    fn effective_hamiltonian_examples() {
        assert_relative_eq!(effective_hamiltonian(params(), 1.0, 1.0), 3.5);
        assert_eq!(effective_hamiltonian(params(), 0.0, 0.0), 0.0);
        let free = ModelParams::new(0.0, 0.0, 0.0);
        assert_eq!(effective_hamiltonian(free, 0.7, -2.0), 0.0);
    }

    #[test]
    fn action_angle_hamiltonian_examples() {
        let s = ClassicalState::new(0.0, 0.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(action_angle_hamiltonian(params(), &s).unwrap(), 3.5);
        let s = ClassicalState::new(0.3, -0.4, 0.0, 0.0).unwrap();
        assert_eq!(action_angle_hamiltonian(params(), &s).unwrap(), 0.0);
        let s = ClassicalState::new(0.0, 0.0, -1.0, 1.0).unwrap();
        assert_relative_eq!(action_angle_hamiltonian(params(), &s).unwrap(), -2.5);
    }

    #[test]
    fn actions_out_of_range_are_rejected() {
        assert!(ClassicalState::new(0.0, 0.0, 1.2, 0.0).is_err());
        let bad = ClassicalState {
            alpha1: 0.0,
            alpha2: 0.0,
            j1: 0.0,
            j2: -1.01,
        };
        assert!(matches!(
            action_angle_hamiltonian(params(), &bad),
            Err(Error::ActionRange { name: "j2", .. })
        ));
    }

    #[test]
    fn action_angle_map_examples() {
        let s = to_action_angle(BcsAngles::ZERO);
        assert_eq!((s.alpha1, s.alpha2, s.j1, s.j2), (0.0, 0.0, 1.0, 1.0));
        let s = to_action_angle(BcsAngles::new(0.0, 0.0, FRAC_PI_2, FRAC_PI_3));
        assert_relative_eq!(s.j1, 0.0, epsilon = 1e-15);
        assert_relative_eq!(s.j2, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn actions_stay_bounded_for_any_angles() {
        for k in 0..200 {
            let x = -30.0 + 0.3 * k as f64;
            let s = to_action_angle(BcsAngles::new(x, -x, 2.0 * x, x * x));
            assert!(s.j1.abs() <= 1.0 && s.j2.abs() <= 1.0);
        }
    }

    #[test]
    fn hamilton_rates_example() {
        let r = hamilton_rates(params());
        assert_eq!((r.d_alpha1, r.d_alpha2, r.d_j1, r.d_j2), (3.0, 0.5, 0.0, 0.0));
        let r = hamilton_rates(ModelParams::new(0.0, 0.0, 0.0));
        assert_eq!((r.d_alpha1, r.d_alpha2, r.d_j1, r.d_j2), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn both_conjugate_pair_readings_agree() {
        for p in [params(), ModelParams::new(-0.3, 2.0, 1.5)] {
            assert_eq!(hamilton_rates(p), angle_form_rates(p));
        }
    }

    #[test]
    fn equivalence_holds_at_reference_params() {
        let occ = Occupations::new(0.3, 0.6).unwrap();
        let a0 = BcsAngles::new(0.2, -0.5, 1.1, 0.8);
        let rep =
            equivalence_check(params(), a0, occ, &uniform_grid(10.0, 200)).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.max_rate_deviation <= 1e-12);
        assert!(rep.max_action_drift <= 1e-12);
    }

    #[test]
    fn equivalence_is_trivial_for_the_free_theory() {
        let occ = Occupations::new(0.0, 1.0).unwrap();
        let rep = equivalence_check(
            ModelParams::new(0.0, 0.0, 0.0),
            BcsAngles::ZERO,
            occ,
            &uniform_grid(5.0, 50),
        )
        .unwrap();
        assert!(rep.passed);
        assert_eq!(rep.max_angle_deviation, 0.0);
    }
}
