use crate::bogoliubov::{Angle, ParameterizationKind};

/// Error type for argument and domain violations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid mode index {0}; modes are 1 (spin up) and 2 (spin down)")]
    InvalidMode(u8),

    #[error("unknown observable `{0}`; expected number, spin_z, pair_create or pair_annihilate")]
    UnknownObservable(String),

    #[error("unknown parameterization `{0}`")]
    UnknownParameterization(String),

    #[error("unknown integration method `{0}`; expected closed_form or rk4")]
    UnknownMethod(String),

    #[error("angle {0:?} is pinned to zero by the {1:?} parameterization")]
    PinnedAngle(Angle, ParameterizationKind),

    #[error("missing value for free angle {0:?} of the {1:?} parameterization")]
    MissingAngle(Angle, ParameterizationKind),

    #[error("occupation {name} = {value} lies outside [0, 1]")]
    OccupationRange { name: &'static str, value: f64 },

    #[error("action {name} = {value} lies outside [-1, 1]")]
    ActionRange { name: &'static str, value: f64 },

    #[error("operator lies outside the quadratic operator span (reconstruction residual {residual:.3e})")]
    OutsideSpan { residual: f64 },

    #[error("time grid must be non-empty, strictly increasing and start at 0")]
    BadTimeGrid,

    #[error("{0}")]
    InvalidArgument(String),
}
