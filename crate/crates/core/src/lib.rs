//! Numerical laboratory for a pair of interacting spin-1/2 fermion modes on a
//! single site, coupled to a constant magnetic field.
//!
//! The Hilbert space is four-dimensional (vacuum, one fermion of either spin,
//! one opposite-spin pair), so everything is done with exact dense algebra:
//!
//! - [`fock`] — ladder operators, the Hamiltonian and its closed-form
//!   spectrum, observables, and exact time evolution.
//! - [`bogoliubov`] — the four-angle quasiparticle (BCS-type) transformation,
//!   its 2×2 blocks, the assembled 4×4 transform, and the six special
//!   parameterizations obtained by pinning pairs of angles.
//! - [`meanfield`] — the mean-field equations of motion evaluated two
//!   independent ways (exact Fock-space traces and closed-form angle rates),
//!   reduced dynamics per parameterization, and trajectory integration.
//! - [`symmetry`] — expansion of quasiparticle observables over the particle
//!   operator basis and classification of each transformation by which
//!   charges (particle number, spin-z) it breaks.
//! - [`classical`] — the equivalent classical picture: two precessing unit
//!   moments in action-angle variables, with a machine-checked equivalence
//!   to the quantum mean-field rates.
//! - [`validation`] — the seeded property-check suite behind `mfao validate`.
//!
//! All operations are pure functions on immutable values and are safe to call
//! concurrently. Units are chosen with ħ = 1; the model parameters carry the
//! single-particle energy ħω, the pair interaction strength U, and the
//! magnetic coupling g_B·B as plain numbers.

pub mod bogoliubov;
pub mod classical;
pub mod fock;
pub mod meanfield;
pub mod symmetry;
pub mod validation;

mod error;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Double-precision complex scalar.
pub type C64 = nalgebra::Complex<f64>;

/// Operator on the four-dimensional Fock space.
pub type FockOperator = nalgebra::Matrix4<C64>;

/// State amplitudes (ρ, β, α, τ) over the Fock basis.
pub type StateVector = nalgebra::Vector4<C64>;

/// 2×2 complex matrix: transformation blocks and trace channels.
pub type Block2 = nalgebra::Matrix2<C64>;

pub use bogoliubov::{Angle, BcsAngles, ParameterizationKind, TransformBlocks};
pub use fock::{Mode, ModelParams, Observable};
pub use meanfield::{AngleRates, IntegrationMethod, Occupations, ReducedDynamics, Trajectory};
pub use symmetry::{Classification, SymmetryReport};

/// Largest entry modulus of a complex matrix (max norm).
pub fn max_entry_norm<R, C, S>(m: &nalgebra::Matrix<C64, R, C, S>) -> f64
where
    R: nalgebra::Dim,
    C: nalgebra::Dim,
    S: nalgebra::RawStorage<C64, R, C>,
{
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Commutator AB − BA.
pub fn commutator(a: &FockOperator, b: &FockOperator) -> FockOperator {
    a * b - b * a
}

/// Anticommutator AB + BA.
pub fn anticommutator(a: &FockOperator, b: &FockOperator) -> FockOperator {
    a * b + b * a
}
