//! Mean-field equations of motion for the transformation angles, evaluated
//! two independent ways, plus reduced dynamics per parameterization and
//! trajectory integration.
//!
//! The two routes:
//!
//! 1. **Trace route** ([`eom_rhs_trace`]): the channel matrices
//!    −i Tr([λᵢ†λⱼ, H] F₀) and −i Tr([λᵢλⱼ, H] F₀) computed by exact 4×4
//!    algebra against the mean-field density operator F₀. Diagonal entries of
//!    the normal channel are the occupation rates and vanish identically.
//! 2. **Closed-form route** ([`closed_form_rates`] / [`eom_residual_general`]):
//!    the constant angle rates γ̇ = ξ̇ = 0, φ̇ = 2 g_B·B,
//!    θ̇ = 2 g_B·B + 2ħω + U, which zero the residual of the two channel
//!    equations for every angle/occupation/parameter choice.
//!
//! Because the rate field is constant, closed-form integration is exact and
//! the RK4 integrator exists purely as a cross-check path.

use crate::bogoliubov::{quasiparticle_op, Angle, BcsAngles, ParameterizationKind};
use crate::fock::{hamiltonian, Mode, ModelParams};
use crate::{commutator, Block2, C64, Error, FockOperator, Result};

/// Quasiparticle occupations (p₁, p₂), each in [0, 1]. Constants of the
/// mean-field motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Occupations {
    p1: f64,
    p2: f64,
}

impl Occupations {
    pub fn new(p1: f64, p2: f64) -> Result<Self> {
        for (name, value) in [("p1", p1), ("p2", p2)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::OccupationRange { name, value });
            }
        }
        Ok(Self { p1, p2 })
    }

    pub fn p1(self) -> f64 {
        self.p1
    }

    pub fn p2(self) -> f64 {
        self.p2
    }
}

/// Time derivatives of the four angles.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AngleRates {
    pub d_theta: f64,
    pub d_phi: f64,
    pub d_gamma: f64,
    pub d_xi: f64,
}

/// Mean-field density operator F₀ = Π_i [pᵢ λᵢ†λᵢ + (1−pᵢ) λᵢλᵢ†].
///
/// Self-adjoint with unit trace and eigenvalues in [0, 1]; reproduces the
/// occupation matrix, Tr(F₀ λᵢ†λⱼ) = δᵢⱼ pᵢ.
pub fn meanfield_density(a: BcsAngles, occ: Occupations) -> FockOperator {
    let mut f = FockOperator::identity();
    for (mode, p) in [(Mode::Up, occ.p1), (Mode::Down, occ.p2)] {
        let lam = quasiparticle_op(a, mode, false);
        let lam_dag = quasiparticle_op(a, mode, true);
        f *= lam_dag * lam * C64::from(p) + lam * lam_dag * C64::from(1.0 - p);
    }
    f
}

/// The two channel matrices of the equations of motion, computed by exact
/// Fock-space traces:
///
/// - normal channel: Nᵢⱼ = −i Tr([λᵢ†λⱼ, H] F₀)
/// - pair channel:   Pᵢⱼ = −i Tr([λᵢλⱼ, H] F₀)
///
/// This is the oracle route: it never sees the closed-form rates. Its
/// diagonal normal entries are the occupation rates ṗᵢ (identically zero),
/// and its off-diagonal entries carry the degeneracy factors (p₂ − p₁) and
/// (1 − p₁ − p₂).
pub fn eom_rhs_trace(
    a: BcsAngles,
    occ: Occupations,
    p: ModelParams,
) -> (Block2, Block2) {
    let h = hamiltonian(p);
    let f0 = meanfield_density(a, occ);
    let lam = [
        quasiparticle_op(a, Mode::Up, false),
        quasiparticle_op(a, Mode::Down, false),
    ];
    let lam_dag = [
        quasiparticle_op(a, Mode::Up, true),
        quasiparticle_op(a, Mode::Down, true),
    ];
    let minus_i = -C64::i();
    let mut normal = Block2::zeros();
    let mut pair = Block2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            normal[(i, j)] =
                minus_i * (commutator(&(lam_dag[i] * lam[j]), &h) * f0).trace();
            pair[(i, j)] = minus_i * (commutator(&(lam[i] * lam[j]), &h) * f0).trace();
        }
    }
    (normal, pair)
}

/// Closed-form angle rates: γ̇ = ξ̇ = 0, φ̇ = 2 g_B·B,
/// θ̇ = 2 g_B·B + 2ħω + U.
pub fn closed_form_rates(p: ModelParams) -> AngleRates {
    AngleRates {
        d_theta: 2.0 * p.gb_b + 2.0 * p.hbar_omega + p.u,
        d_phi: 2.0 * p.gb_b,
        d_gamma: 0.0,
        d_xi: 0.0,
    }
}

/// Residuals (LHS − RHS) of the two channel equations for the supplied
/// rates, with every time derivative expanded by the chain rule.
///
/// The normal-channel equation balances
/// −i g_B·B (p₂−p₁) e^{−iφ} sin 2γ against four derivative terms built from
/// the block entries; the pair-channel equation balances
/// (i/2)(1−p₁−p₂)(2ħω+U) e^{−i(θ−φ)} sin 2ξ against its own four. Both
/// residuals vanish for [`closed_form_rates`] at every angle and occupation;
/// where the degeneracy prefactors vanish the equations are trivially
/// satisfied by any rates.
pub fn eom_residual_general(
    a: BcsAngles,
    r: AngleRates,
    occ: Occupations,
    p: ModelParams,
) -> (C64, C64) {
    let (sg, cg) = a.gamma.sin_cos();
    let (sx, cx) = a.xi.sin_cos();
    let e = |x: f64| C64::new(0.0, x).exp();
    let i = C64::i();

    // chain-rule derivatives of the real trig products
    let d_cg_cx = -r.d_gamma * sg * cx - r.d_xi * cg * sx;
    let d_sg_cx = r.d_gamma * cg * cx - r.d_xi * sg * sx;
    let d_sg_sx = r.d_gamma * cg * sx + r.d_xi * sg * cx;
    let d_cg_sx = -r.d_gamma * sg * sx + r.d_xi * cg * cx;

    let (b, two_hw_u) = (p.gb_b, 2.0 * p.hbar_omega + p.u);
    let (p1, p2) = (occ.p1, occ.p2);

    // normal channel
    let lhs_n = -i * C64::from(b * (p2 - p1) * (2.0 * a.gamma).sin()) * e(-a.phi);
    let t1 = -e(-a.phi) * (sg * cx) * C64::from(d_cg_cx);
    let t2 = C64::from(cg * cx)
        * e(-a.phi)
        * (C64::from(d_sg_cx) - i * C64::from(r.d_phi * sg * cx));
    let t3 = e(a.theta - a.phi)
        * (cg * sx)
        * e(-a.theta)
        * (C64::from(d_sg_sx) - i * C64::from(r.d_theta * sg * sx));
    let t4 = -e(a.theta - 2.0 * a.phi)
        * (sg * sx)
        * e(-(a.theta - a.phi))
        * (C64::from(d_cg_sx) - i * C64::from((r.d_theta - r.d_phi) * cg * sx));
    let rhs_n = C64::from(p2 - p1) * (t1 + t2 + t3 + t4);

    // pair channel
    let lhs_p = i * C64::from(0.5 * (1.0 - p1 - p2) * two_hw_u * (2.0 * a.xi).sin())
        * e(-(a.theta - a.phi));
    let s1 = -e(a.phi)
        * (sg * cx)
        * e(-a.theta)
        * (C64::from(d_sg_sx) - i * C64::from(r.d_theta * sg * sx));
    let s2 = -C64::from(cg * cx)
        * e(-(a.theta - a.phi))
        * (C64::from(d_cg_sx) - i * C64::from((r.d_theta - r.d_phi) * cg * sx));
    let s3 = e(-(a.theta - a.phi)) * (cg * sx) * C64::from(d_cg_cx);
    let s4 = e(-(a.theta - 2.0 * a.phi))
        * (sg * sx)
        * e(-a.phi)
        * (C64::from(d_sg_cx) - i * C64::from(r.d_phi * sg * cx));
    let rhs_p = C64::from(1.0 - p1 - p2) * (s1 + s2 + s3 + s4);

    (lhs_n - rhs_n, lhs_p - rhs_p)
}

/// Reduced dynamics of a special parameterization.
#[derive(Debug, Clone, PartialEq)]
pub enum ReducedDynamics {
    /// Constant rates for the free angles.
    Rates(AngleRates),
    /// No dynamics at all (the identity transformation).
    Frozen,
    /// No rates; instead a static constraint set. The listed angles must sit
    /// at integer multiples of π/2; the `arbitrary` angles drop out entirely.
    Static {
        half_pi_angles: &'static [Angle],
        arbitrary: &'static [Angle],
    },
}

impl ReducedDynamics {
    /// Whether the parameterization generates a nontrivial time evolution.
    pub fn has_effective_dynamics(&self) -> bool {
        matches!(self, ReducedDynamics::Rates(_))
    }
}

/// Reduced dynamics for each special parameterization:
///
/// - `Pairing`: ξ̇ = 0, θ̇ = 2ħω + U (the field drops out with φ pinned).
/// - `Spin`: γ̇ = 0, φ̇ = 2 g_B·B (the interaction drops out).
/// - `Identity`: frozen.
/// - `Orthogonal`: static set γ = kπ/2 with θ arbitrary.
/// - `StaticPair`: static set γ = kπ/2 and ξ = kπ/2.
/// - `LabelSwap`: ξ̇ = 0, φ̇ = −(2ħω + U); the pairing dynamics with
///   θ ↦ −φ. The sign is fixed by the trace oracle (see
///   [`label_swap_adjudication`]): the pair phase enters this family
///   conjugated, so φ plays the role of −θ.
///
/// `General` is rejected; use [`closed_form_rates`].
pub fn reduced_rates(kind: ParameterizationKind, p: ModelParams) -> Result<ReducedDynamics> {
    let two_hw_u = 2.0 * p.hbar_omega + p.u;
    match kind {
        ParameterizationKind::General => Err(Error::InvalidArgument(
            "general parameterization has no reduced form; use closed_form_rates".to_string(),
        )),
        ParameterizationKind::Pairing => Ok(ReducedDynamics::Rates(AngleRates {
            d_theta: two_hw_u,
            ..AngleRates::default()
        })),
        ParameterizationKind::Spin => Ok(ReducedDynamics::Rates(AngleRates {
            d_phi: 2.0 * p.gb_b,
            ..AngleRates::default()
        })),
        ParameterizationKind::Identity => Ok(ReducedDynamics::Frozen),
        ParameterizationKind::Orthogonal => Ok(ReducedDynamics::Static {
            half_pi_angles: &[Angle::Gamma],
            arbitrary: &[Angle::Theta],
        }),
        ParameterizationKind::StaticPair => Ok(ReducedDynamics::Static {
            half_pi_angles: &[Angle::Gamma, Angle::Xi],
            arbitrary: &[],
        }),
        ParameterizationKind::LabelSwap => Ok(ReducedDynamics::Rates(AngleRates {
            d_phi: -two_hw_u,
            ..AngleRates::default()
        })),
    }
}

/// Outcome of asking the trace oracle which φ̇ the label-swap family obeys.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabelSwapAdjudication {
    /// φ̇ extracted from the pair-channel trace (expected −(2ħω + U)).
    pub oracle_phi_rate: f64,
    /// ξ̇ extracted from the same trace (expected 0).
    pub oracle_xi_rate: f64,
    /// θ̇ of the pairing parameterization, for comparison (+(2ħω + U)).
    pub pairing_theta_rate: f64,
}

/// Solve the pair-channel equation of the label-swap family (γ = θ = 0) for
/// its rates using only [`eom_rhs_trace`].
///
/// With Ω = cosξ·I and the pair block carried by e^{−iφ} sinξ, the channel
/// equation reads (p₁+p₂−1)·e^{iφ}(−ξ̇ − (i/2) φ̇ sin 2ξ) = P₀₁, which is
/// solved directly. Degenerate inputs (p₁+p₂ = 1 or sin 2ξ = 0) leave the
/// rates unconstrained and are rejected.
pub fn label_swap_adjudication(
    p: ModelParams,
    occ: Occupations,
    xi: f64,
    phi: f64,
) -> Result<LabelSwapAdjudication> {
    let degeneracy = occ.p1 + occ.p2 - 1.0;
    let sin_2xi = (2.0 * xi).sin();
    if degeneracy.abs() < 1e-9 || sin_2xi.abs() < 1e-9 {
        return Err(Error::InvalidArgument(
            "degenerate label-swap probe: need p1 + p2 != 1 and sin 2ξ != 0".to_string(),
        ));
    }
    let angles = BcsAngles::new(0.0, phi, 0.0, xi);
    let (_, pair) = eom_rhs_trace(angles, occ, p);
    let v = pair[(0, 1)] * C64::new(0.0, -phi).exp() / C64::from(degeneracy);
    let pairing = match reduced_rates(ParameterizationKind::Pairing, p)? {
        ReducedDynamics::Rates(r) => r.d_theta,
        _ => unreachable!(),
    };
    Ok(LabelSwapAdjudication {
        oracle_xi_rate: -v.re,
        oracle_phi_rate: -2.0 * v.im / sin_2xi,
        pairing_theta_rate: pairing,
    })
}

/// Integration method for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationMethod {
    /// Exact linear solution of the constant rate field.
    ClosedForm,
    /// Classical fourth-order Runge-Kutta, one step per grid interval.
    Rk4,
}

impl IntegrationMethod {
    pub fn name(self) -> &'static str {
        match self {
            IntegrationMethod::ClosedForm => "closed_form",
            IntegrationMethod::Rk4 => "rk4",
        }
    }
}

impl std::str::FromStr for IntegrationMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed_form" => Ok(IntegrationMethod::ClosedForm),
            "rk4" => Ok(IntegrationMethod::Rk4),
            other => Err(Error::UnknownMethod(other.to_string())),
        }
    }
}

/// An integrated angle trajectory. Occupations are constants of the motion
/// and ride along unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub samples: Vec<(BcsAngles, Occupations)>,
    pub method: IntegrationMethod,
}

fn rk4_step<F>(y: [f64; 4], t: f64, h: f64, f: F) -> [f64; 4]
where
    F: Fn(f64, [f64; 4]) -> [f64; 4],
{
    let add = |a: [f64; 4], b: [f64; 4], s: f64| {
        [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]]
    };
    let k1 = f(t, y);
    let k2 = f(t + h / 2.0, add(y, k1, h / 2.0));
    let k3 = f(t + h / 2.0, add(y, k2, h / 2.0));
    let k4 = f(t + h, add(y, k3, h));
    std::array::from_fn(|i| y[i] + h * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0)
}

/// Integrate the mean-field angle dynamics over `times`.
///
/// The grid must be non-empty, strictly increasing, and start at 0.
/// `ClosedForm` evaluates the exact linear solution at each grid point; `Rk4`
/// steps the (constant) rate field, which agrees to roundoff and exists to
/// cross-check the closed form.
pub fn integrate(
    a0: BcsAngles,
    occ: Occupations,
    p: ModelParams,
    times: &[f64],
    method: IntegrationMethod,
) -> Result<Trajectory> {
    if times.is_empty() || times[0] != 0.0 || times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadTimeGrid);
    }
    let rates = closed_form_rates(p);
    let samples = match method {
        IntegrationMethod::ClosedForm => times
            .iter()
            .map(|&t| {
                let a = BcsAngles::new(
                    a0.theta + rates.d_theta * t,
                    a0.phi + rates.d_phi * t,
                    a0.gamma + rates.d_gamma * t,
                    a0.xi + rates.d_xi * t,
                );
                (a, occ)
            })
            .collect(),
        IntegrationMethod::Rk4 => {
            let field = |_t: f64, _y: [f64; 4]| {
                [rates.d_theta, rates.d_phi, rates.d_gamma, rates.d_xi]
            };
            let mut y = [a0.theta, a0.phi, a0.gamma, a0.xi];
            let mut samples = Vec::with_capacity(times.len());
            samples.push((a0, occ));
            for w in times.windows(2) {
                y = rk4_step(y, w[0], w[1] - w[0], field);
                samples.push((BcsAngles::new(y[0], y[1], y[2], y[3]), occ));
            }
            samples
        }
    };
    Ok(Trajectory {
        times: times.to_vec(),
        samples,
        method,
    })
}

/// Uniform grid of `steps + 1` points covering [0, t_end].
pub fn uniform_grid(t_end: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|k| t_end * k as f64 / steps as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::basis_state;
    use crate::max_entry_norm;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_4;

    fn params() -> ModelParams {
        ModelParams::new(1.0, 0.5, 0.25)
    }

    #[test]
    fn occupation_bounds_are_enforced() {
        assert!(Occupations::new(0.0, 1.0).is_ok());
        assert!(matches!(
            Occupations::new(-0.1, 0.5),
            Err(Error::OccupationRange { name: "p1", .. })
        ));
        assert!(matches!(
            Occupations::new(0.5, 1.2),
            Err(Error::OccupationRange { name: "p2", .. })
        ));
    }

    #[test]
    fn density_projects_onto_basis_states_at_identity_angles() {
        let f = meanfield_density(BcsAngles::ZERO, Occupations::new(0.0, 0.0).unwrap());
        let vac = basis_state(0) * basis_state(0).adjoint();
        assert!(max_entry_norm(&(f - vac)) <= 1e-15);

        let f = meanfield_density(BcsAngles::ZERO, Occupations::new(1.0, 0.0).unwrap());
        let up = basis_state(1) * basis_state(1).adjoint();
        assert!(max_entry_norm(&(f - up)) <= 1e-15);
    }

    #[test]
    fn density_reproduces_occupation_matrix() {
        let a = BcsAngles::new(0.9, -0.3, 1.7, 0.45);
        let occ = Occupations::new(0.3, 0.6).unwrap();
        let f = meanfield_density(a, occ);
        assert!(max_entry_norm(&(f - f.adjoint())) <= 1e-15);
        assert_relative_eq!(f.trace().re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(f.trace().im, 0.0, epsilon = 1e-15);
        for (i, mi) in Mode::ALL.iter().enumerate() {
            for (j, mj) in Mode::ALL.iter().enumerate() {
                let tr = (f * quasiparticle_op(a, *mi, true) * quasiparticle_op(a, *mj, false))
                    .trace();
                let expect = if i == j {
                    if i == 0 {
                        occ.p1()
                    } else {
                        occ.p2()
                    }
                } else {
                    0.0
                };
                assert_relative_eq!(tr.re, expect, epsilon = 1e-13);
                assert_relative_eq!(tr.im, 0.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn density_eigenvalues_are_occupation_products() {
        let a = BcsAngles::new(0.4, 2.0, -0.8, 1.1);
        let (p1, p2) = (0.3, 0.6);
        let f = meanfield_density(a, Occupations::new(p1, p2).unwrap());
        let mut eigs: Vec<f64> = f.symmetric_eigen().eigenvalues.iter().copied().collect();
        let mut expected = vec![
            (1.0 - p1) * (1.0 - p2),
            p1 * (1.0 - p2),
            (1.0 - p1) * p2,
            p1 * p2,
        ];
        eigs.sort_by(f64::total_cmp);
        expected.sort_by(f64::total_cmp);
        for (e, x) in eigs.iter().zip(&expected) {
            assert_relative_eq!(e, x, epsilon = 1e-13);
        }
    }

    #[test]
    fn trace_normal_diagonal_vanishes_at_identity_angles() {
        let occ = Occupations::new(0.3, 0.6).unwrap();
        let (normal, _) = eom_rhs_trace(BcsAngles::ZERO, occ, params());
        assert!(normal[(0, 0)].norm() <= 1e-15);
        assert!(normal[(1, 1)].norm() <= 1e-15);
    }

    #[test]
    fn trace_pair_channel_matches_closed_form_at_pair_mixing_angles() {
        // pair channel (1,0) entry = (i/2)(1−p₁−p₂)(2ħω+U) e^{−i(θ−φ)} sin 2ξ
        let p = params();
        let occ = Occupations::new(0.2, 0.5).unwrap();
        let (theta, xi) = (0.7, 0.6);
        let a = BcsAngles::new(theta, 0.0, 0.0, xi);
        let (_, pair) = eom_rhs_trace(a, occ, p);
        let expect = C64::i()
            * C64::from(
                0.5 * (1.0 - occ.p1() - occ.p2())
                    * (2.0 * p.hbar_omega + p.u)
                    * (2.0 * xi).sin(),
            )
            * C64::new(0.0, -theta).exp();
        assert!((pair[(1, 0)] - expect).norm() <= 1e-13);
    }

    #[test]
    fn trace_normal_channel_matches_closed_form_at_spin_mixing_angles() {
        // normal channel (0,1) entry = −i g_B·B (p₂−p₁) e^{iφ} sin 2γ
        let p = params();
        let occ = Occupations::new(0.2, 0.9).unwrap();
        let (phi, gamma) = (0.4, FRAC_PI_4);
        let a = BcsAngles::new(0.0, phi, gamma, 0.0);
        let (normal, _) = eom_rhs_trace(a, occ, p);
        let expect = -C64::i()
            * C64::from(p.gb_b * (occ.p2() - occ.p1()) * (2.0 * gamma).sin())
            * C64::new(0.0, phi).exp();
        assert!((normal[(0, 1)] - expect).norm() <= 1e-13);
    }

    #[test]
    fn closed_form_rates_example() {
        let r = closed_form_rates(params());
        assert_eq!(r.d_theta, 3.0);
        assert_eq!(r.d_phi, 0.5);
        assert_eq!(r.d_gamma, 0.0);
        assert_eq!(r.d_xi, 0.0);
        assert_eq!(
            closed_form_rates(ModelParams::new(0.0, 0.0, 0.0)),
            AngleRates::default()
        );
    }

    #[test]
    fn interaction_shift_moves_only_theta_rate() {
        let base = closed_form_rates(params());
        let shifted = closed_form_rates(ModelParams::new(1.0, 0.5 + 0.3, 0.25));
        assert_relative_eq!(shifted.d_theta - base.d_theta, 0.3);
        assert_eq!(shifted.d_phi, base.d_phi);
        assert_eq!(shifted.d_gamma, base.d_gamma);
        assert_eq!(shifted.d_xi, base.d_xi);
    }

    #[test]
    fn closed_form_rates_zero_the_residuals() {
        let p = params();
        let occ = Occupations::new(0.15, 0.85).unwrap();
        for a in [
            BcsAngles::new(0.3, -1.2, 0.8, 2.4),
            BcsAngles::new(5.0, 2.2, -0.4, 0.9),
            BcsAngles::new(-0.7, 0.0, 1.3, -2.2),
        ] {
            let (rn, rp) = eom_residual_general(a, closed_form_rates(p), occ, p);
            assert!(rn.norm() <= 1e-14, "normal residual {}", rn.norm());
            assert!(rp.norm() <= 1e-14, "pair residual {}", rp.norm());
        }
    }

    #[test]
    fn zero_rates_leave_a_nonzero_normal_residual() {
        let p = ModelParams::new(1.0, 0.5, 0.25);
        let occ = Occupations::new(0.1, 0.9).unwrap();
        let a = BcsAngles::new(0.0, 0.0, FRAC_PI_4, 0.0);
        let (rn, _) = eom_residual_general(a, AngleRates::default(), occ, p);
        // the surviving term is the field coupling −i g_B·B (p₂−p₁) sin 2γ
        assert!(rn.norm() > 0.1);
    }

    #[test]
    fn free_theory_with_zero_rates_has_zero_residuals() {
        let p = ModelParams::new(0.0, 0.0, 0.0);
        let occ = Occupations::new(0.3, 0.6).unwrap();
        let a = BcsAngles::new(0.4, 1.0, 0.7, -0.2);
        let (rn, rp) = eom_residual_general(a, AngleRates::default(), occ, p);
        assert_eq!(rn.norm(), 0.0);
        assert_eq!(rp.norm(), 0.0);
    }

    #[test]
    fn reduced_rates_per_kind() {
        let p = params();
        assert_eq!(
            reduced_rates(ParameterizationKind::Pairing, p).unwrap(),
            ReducedDynamics::Rates(AngleRates {
                d_theta: 2.5,
                ..AngleRates::default()
            })
        );
        assert_eq!(
            reduced_rates(ParameterizationKind::Spin, p).unwrap(),
            ReducedDynamics::Rates(AngleRates {
                d_phi: 0.5,
                ..AngleRates::default()
            })
        );
        assert_eq!(
            reduced_rates(ParameterizationKind::Identity, p).unwrap(),
            ReducedDynamics::Frozen
        );
        assert_eq!(
            reduced_rates(ParameterizationKind::Orthogonal, p).unwrap(),
            ReducedDynamics::Static {
                half_pi_angles: &[Angle::Gamma],
                arbitrary: &[Angle::Theta],
            }
        );
        assert_eq!(
            reduced_rates(ParameterizationKind::StaticPair, p).unwrap(),
            ReducedDynamics::Static {
                half_pi_angles: &[Angle::Gamma, Angle::Xi],
                arbitrary: &[],
            }
        );
        assert_eq!(
            reduced_rates(ParameterizationKind::LabelSwap, p).unwrap(),
            ReducedDynamics::Rates(AngleRates {
                d_phi: -2.5,
                ..AngleRates::default()
            })
        );
        assert!(reduced_rates(ParameterizationKind::General, p).is_err());
    }

    #[test]
    fn reduced_rates_are_consistent_with_the_general_solution() {
        // pairing θ̇ equals the general θ̇ with the field switched off;
        // spin φ̇ equals the general φ̇ unchanged
        let p = params();
        let no_field = ModelParams::new(p.hbar_omega, p.u, 0.0);
        match reduced_rates(ParameterizationKind::Pairing, p).unwrap() {
            ReducedDynamics::Rates(r) => {
                assert_eq!(r.d_theta, closed_form_rates(no_field).d_theta)
            }
            _ => unreachable!(),
        }
        match reduced_rates(ParameterizationKind::Spin, p).unwrap() {
            ReducedDynamics::Rates(r) => assert_eq!(r.d_phi, closed_form_rates(p).d_phi),
            _ => unreachable!(),
        }
    }

    #[test]
    fn label_swap_oracle_supports_the_negated_pairing_rate() {
        let p = params();
        let occ = Occupations::new(0.2, 0.5).unwrap();
        let adj = label_swap_adjudication(p, occ, 0.6, 0.4).unwrap();
        assert_relative_eq!(adj.oracle_phi_rate, -2.5, epsilon = 1e-12);
        assert_relative_eq!(adj.oracle_xi_rate, 0.0, epsilon = 1e-12);
        assert_relative_eq!(
            adj.oracle_phi_rate.abs(),
            adj.pairing_theta_rate,
            epsilon = 1e-12
        );
        // and reduced_rates agrees with the oracle
        match reduced_rates(ParameterizationKind::LabelSwap, p).unwrap() {
            ReducedDynamics::Rates(r) => {
                assert_relative_eq!(r.d_phi, adj.oracle_phi_rate, epsilon = 1e-12)
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn label_swap_adjudication_rejects_degenerate_probes() {
        let p = params();
        assert!(label_swap_adjudication(p, Occupations::new(0.5, 0.5).unwrap(), 0.6, 0.0)
            .is_err());
        assert!(label_swap_adjudication(p, Occupations::new(0.2, 0.5).unwrap(), 0.0, 0.0)
            .is_err());
    }

    #[test]
    fn closed_form_trajectory_example() {
        let occ = Occupations::new(0.3, 0.6).unwrap();
        let times = uniform_grid(2.0, 4);
        let traj = integrate(
            BcsAngles::ZERO,
            occ,
            params(),
            &times,
            IntegrationMethod::ClosedForm,
        )
        .unwrap();
        let (last, _) = traj.samples.last().copied().unwrap();
        assert_relative_eq!(last.theta, 6.0, epsilon = 1e-14);
        assert_relative_eq!(last.phi, 1.0, epsilon = 1e-14);
        assert_eq!(last.gamma, 0.0);
        assert_eq!(last.xi, 0.0);
    }

    #[test]
    fn trajectory_starts_at_the_initial_condition() {
        let a0 = BcsAngles::new(0.1, 0.2, 0.3, 0.4);
        let occ = Occupations::new(0.3, 0.6).unwrap();
        for method in [IntegrationMethod::ClosedForm, IntegrationMethod::Rk4] {
            let traj = integrate(a0, occ, params(), &uniform_grid(1.0, 3), method).unwrap();
            assert_eq!(traj.samples[0].0, a0);
        }
    }

    #[test]
    fn rk4_matches_closed_form() {
        let a0 = BcsAngles::new(0.1, -0.2, 0.5, 0.8);
        let occ = Occupations::new(0.3, 0.6).unwrap();
        let times = uniform_grid(10.0, 1000);
        let cf = integrate(a0, occ, params(), &times, IntegrationMethod::ClosedForm).unwrap();
        let rk = integrate(a0, occ, params(), &times, IntegrationMethod::Rk4).unwrap();
        let mut worst = 0.0f64;
        for ((a, _), (b, _)) in cf.samples.iter().zip(&rk.samples) {
            worst = worst
                .max((a.theta - b.theta).abs())
                .max((a.phi - b.phi).abs())
                .max((a.gamma - b.gamma).abs())
                .max((a.xi - b.xi).abs());
        }
        assert!(worst <= 1e-8, "rk4 deviates from closed form by {worst}");
    }

    #[test]
    fn occupations_are_preserved_bitwise() {
        let occ = Occupations::new(0.1 + 0.2, 0.6).unwrap(); // deliberately non-representable
        for method in [IntegrationMethod::ClosedForm, IntegrationMethod::Rk4] {
            let traj =
                integrate(BcsAngles::ZERO, occ, params(), &uniform_grid(1.0, 10), method)
                    .unwrap();
            for (_, o) in &traj.samples {
                assert_eq!(o.p1().to_bits(), occ.p1().to_bits());
                assert_eq!(o.p2().to_bits(), occ.p2().to_bits());
            }
        }
    }

    #[test]
    fn bad_grids_are_rejected() {
        let occ = Occupations::new(0.3, 0.6).unwrap();
        for times in [vec![], vec![0.5, 1.0], vec![0.0, 1.0, 1.0], vec![0.0, 2.0, 1.0]] {
            assert_eq!(
                integrate(
                    BcsAngles::ZERO,
                    occ,
                    params(),
                    &times,
                    IntegrationMethod::ClosedForm
                ),
                Err(Error::BadTimeGrid)
            );
        }
    }
}
