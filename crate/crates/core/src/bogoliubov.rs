//! The four-angle quasiparticle (BCS-type) transformation.
//!
//! Four real angles (θ, φ, γ, ξ) parameterize a unitary mixing of the two
//! particle modes with their adjoints. γ mixes the two spins (normal
//! channel), ξ mixes creation with annihilation (pair channel), and θ, φ are
//! the phases riding on the pair and spin channels respectively. Pinning
//! pairs of angles to zero yields six special parameterizations with distinct
//! physics; see [`ParameterizationKind`].

use crate::fock::{annihilation_op, creation_op, Mode};
use crate::{max_entry_norm, Block2, C64, Error, FockOperator, Result};

/// The four real angles of the transformation. Unrestricted: the mean-field
/// dynamics grow θ and φ linearly without bound, so no 2π reduction is
/// applied anywhere.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BcsAngles {
    pub theta: f64,
    pub phi: f64,
    pub gamma: f64,
    pub xi: f64,
}

impl BcsAngles {
    pub const ZERO: BcsAngles = BcsAngles {
        theta: 0.0,
        phi: 0.0,
        gamma: 0.0,
        xi: 0.0,
    };

    pub fn new(theta: f64, phi: f64, gamma: f64, xi: f64) -> Self {
        Self { theta, phi, gamma, xi }
    }
}

/// Names of the four angles, used to address free angles of a
/// parameterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Angle {
    Theta,
    Phi,
    Gamma,
    Xi,
}

impl Angle {
    pub const ALL: [Angle; 4] = [Angle::Theta, Angle::Phi, Angle::Gamma, Angle::Xi];

    pub fn name(self) -> &'static str {
        match self {
            Angle::Theta => "theta",
            Angle::Phi => "phi",
            Angle::Gamma => "gamma",
            Angle::Xi => "xi",
        }
    }
}

/// The 2×2 blocks of the transformation: `omega` couples creation to
/// creation operators (normal channel), `z` couples creation to annihilation
/// operators (pair channel).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformBlocks {
    pub omega: Block2,
    pub z: Block2,
}

/// Populate the blocks from the angles:
///
/// ```text
/// Ω = [  cosγ cosξ            −e^{−iφ} sinγ cosξ ]
///     [  e^{iφ} sinγ cosξ      cosγ cosξ         ]
///
/// Z = [  e^{iθ} sinγ sinξ          e^{i(θ−φ)} cosγ sinξ  ]
///     [ −e^{i(θ−φ)} cosγ sinξ      e^{i(θ−2φ)} sinγ sinξ ]
/// ```
pub fn build_blocks(a: BcsAngles) -> TransformBlocks {
    let (sg, cg) = a.gamma.sin_cos();
    let (sx, cx) = a.xi.sin_cos();
    let e = |x: f64| C64::new(0.0, x).exp();
    let omega = Block2::new(
        C64::from(cg * cx),
        -e(-a.phi) * (sg * cx),
        e(a.phi) * (sg * cx),
        C64::from(cg * cx),
    );
    let z = Block2::new(
        e(a.theta) * (sg * sx),
        e(a.theta - a.phi) * (cg * sx),
        -e(a.theta - a.phi) * (cg * sx),
        e(a.theta - 2.0 * a.phi) * (sg * sx),
    );
    TransformBlocks { omega, z }
}

/// Assemble the 4×4 matrix mapping the column (a₁, a₂, a₁†, a₂†) to
/// (λ₁, λ₂, λ₁†, λ₂†):
///
/// ```text
/// M = [ Ω†   −Z† ]
///     [ −Zᵀ   Ωᵀ ]
/// ```
///
/// The bottom-right block is the entrywise conjugate of the top-left one (and
/// likewise for the off-diagonal blocks), so the lower rows are the adjoints
/// of the upper ones. The pair block enters with reversed sign relative to
/// the raw [`build_blocks`] output — the ξ ↦ −ξ relabel — matching the
/// component realization in [`quasiparticle_op`]; see the note there.
pub fn assemble_transform(b: &TransformBlocks) -> nalgebra::Matrix4<C64> {
    let mut m = nalgebra::Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&b.omega.adjoint());
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&(-b.z.adjoint()));
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&(-b.z.transpose()));
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&b.omega.transpose());
    m
}

/// Max-entry magnitude of M·M† − I.
pub fn unitarity_residual(m: &nalgebra::Matrix4<C64>) -> f64 {
    let r = m * m.adjoint() - nalgebra::Matrix4::identity();
    max_entry_norm(&r)
}

/// Quasiparticle operator λ_mode (or λ_mode† when `daggered`) realized on the
/// Fock space:
///
/// ```text
/// λᵢ† = Σⱼ [ ωⱼᵢ aⱼ† − zⱼᵢ aⱼ ]
/// ```
///
/// The minus sign on the pair block is forced by the fermion algebra: with a
/// plus sign the mixed-angle operators fail nilpotency,
/// {λ₁†, λ₁†} = 4 e^{iθ} sinγ cosγ sinξ cosξ ≠ 0. The resulting operators
/// satisfy the canonical anticommutation relations for every angle choice.
pub fn quasiparticle_op(a: BcsAngles, mode: Mode, daggered: bool) -> FockOperator {
    let b = build_blocks(a);
    let i = mode.index();
    let mut m = FockOperator::zeros();
    for mj in Mode::ALL {
        let j = mj.index();
        m += creation_op(mj) * b.omega[(j, i)] - annihilation_op(mj) * b.z[(j, i)];
    }
    if daggered {
        m
    } else {
        m.adjoint()
    }
}

/// The special parameterizations: each pins exactly two angles to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParameterizationKind {
    /// All four angles free.
    General,
    /// φ = γ = 0: pure pair mixing (Bogoliubov-type reduction).
    Pairing,
    /// ξ = θ = 0: pure spin mixing (Hartree-Fock-type reduction).
    Spin,
    /// ξ = γ = 0: the identity transformation.
    Identity,
    /// ξ = φ = 0: a real (orthogonal) spin rotation; θ drops out.
    Orthogonal,
    /// φ = θ = 0: real mixing in both channels; static solutions only.
    StaticPair,
    /// γ = θ = 0: pair mixing with the phase on φ instead of θ.
    LabelSwap,
}

impl ParameterizationKind {
    pub const ALL_SPECIAL: [ParameterizationKind; 6] = [
        ParameterizationKind::Pairing,
        ParameterizationKind::Spin,
        ParameterizationKind::Identity,
        ParameterizationKind::Orthogonal,
        ParameterizationKind::StaticPair,
        ParameterizationKind::LabelSwap,
    ];

    /// Angles pinned to zero by this kind.
    pub fn pinned(self) -> &'static [Angle] {
        match self {
            ParameterizationKind::General => &[],
            ParameterizationKind::Pairing => &[Angle::Phi, Angle::Gamma],
            ParameterizationKind::Spin => &[Angle::Xi, Angle::Theta],
            ParameterizationKind::Identity => &[Angle::Xi, Angle::Gamma],
            ParameterizationKind::Orthogonal => &[Angle::Xi, Angle::Phi],
            ParameterizationKind::StaticPair => &[Angle::Phi, Angle::Theta],
            ParameterizationKind::LabelSwap => &[Angle::Gamma, Angle::Theta],
        }
    }

    /// Angles left free by this kind.
    pub fn free(self) -> Vec<Angle> {
        Angle::ALL
            .iter()
            .copied()
            .filter(|a| !self.pinned().contains(a))
            .collect()
    }

    /// Free angles the blocks do not depend on once this kind's pins are
    /// applied: both phases of the identity kind (Ω = I, Z = 0 regardless)
    /// and θ of the orthogonal kind (θ only rides on the vanishing pair
    /// block). These may be omitted from an assignment.
    pub fn immaterial(self) -> &'static [Angle] {
        match self {
            ParameterizationKind::Identity => &[Angle::Theta, Angle::Phi],
            ParameterizationKind::Orthogonal => &[Angle::Theta],
            _ => &[],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ParameterizationKind::General => "general",
            ParameterizationKind::Pairing => "pairing",
            ParameterizationKind::Spin => "spin",
            ParameterizationKind::Identity => "identity",
            ParameterizationKind::Orthogonal => "orthogonal",
            ParameterizationKind::StaticPair => "static_pair",
            ParameterizationKind::LabelSwap => "label_swap",
        }
    }
}

impl std::str::FromStr for ParameterizationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(ParameterizationKind::General),
            "pairing" => Ok(ParameterizationKind::Pairing),
            "spin" => Ok(ParameterizationKind::Spin),
            "identity" => Ok(ParameterizationKind::Identity),
            "orthogonal" => Ok(ParameterizationKind::Orthogonal),
            "static_pair" => Ok(ParameterizationKind::StaticPair),
            "label_swap" => Ok(ParameterizationKind::LabelSwap),
            other => Err(Error::UnknownParameterization(other.to_string())),
        }
    }
}

/// Build angles for a parameterization from its free-angle assignment.
///
/// `free` must supply every angle the kind leaves free and none of the pinned
/// ones; pinned angles are set to zero. `General` requires all four.
/// Immaterial angles (see [`ParameterizationKind::immaterial`]) may be
/// omitted and default to zero.
pub fn special_parameterization(
    kind: ParameterizationKind,
    free: &[(Angle, f64)],
) -> Result<BcsAngles> {
    let mut angles = BcsAngles::ZERO;
    let mut seen: Vec<Angle> = Vec::with_capacity(4);
    for &(angle, value) in free {
        if kind.pinned().contains(&angle) {
            return Err(Error::PinnedAngle(angle, kind));
        }
        if seen.contains(&angle) {
            return Err(Error::InvalidArgument(format!(
                "angle {} supplied twice",
                angle.name()
            )));
        }
        seen.push(angle);
        match angle {
            Angle::Theta => angles.theta = value,
            Angle::Phi => angles.phi = value,
            Angle::Gamma => angles.gamma = value,
            Angle::Xi => angles.xi = value,
        }
    }
    for angle in kind.free() {
        if !seen.contains(&angle) && !kind.immaterial().contains(&angle) {
            return Err(Error::MissingAngle(angle, kind));
        }
    }
    Ok(angles)
}
