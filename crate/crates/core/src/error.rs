use thiserror::Error;

use crate::geometry::Polarization;

/// Errors raised by the waveguide model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension order violated: {0}")]
    DimensionOrder(&'static str),
    #[error("inner guide does not nest inside the outer guide: {0}")]
    NonNesting(&'static str),
    #[error("{0} must be finite and strictly positive")]
    NonPositive(&'static str),

    #[error("TE mode index (0, 0) does not exist")]
    InvalidTeIndex,
    #[error("TM mode requires m >= 1 and n >= 1, got ({m}, {n})")]
    InvalidTmIndex { m: u32, n: u32 },

    #[error("mode is at cutoff (relative radicand {relative:.3e}); axial wavenumber is singular")]
    AtCutoff { relative: f64 },
    #[error("point ({x}, {y}) lies outside the {width} x {height} cross section")]
    OutOfCrossSection {
        x: f64,
        y: f64,
        width: f64,
        height: f64,
    },

    #[error("incident mode is evanescent in the outer guide")]
    IncidentEvanescent,
    #[error("incident mode is cut off in the outer guide")]
    IncidentCutOff,
    #[error("mode-matching constraint violated (relative residual {residual:.3e})")]
    ConstraintViolated { residual: f64 },
    #[error("incident {incident:?} mode cannot couple to inner {inner:?} mode (TE and TM are orthogonal)")]
    PolarizationMismatch {
        incident: Polarization,
        inner: Polarization,
    },

    #[error("closed-form denominator vanished")]
    SingularDenominator,
    #[error("matching system is numerically singular")]
    SingularSystem,

    #[error("invalid configuration: {field}: {reason}")]
    ConfigInvalid { field: String, reason: String },
    #[error("invariant violated at omega = {omega:?} rad/s: {detail}")]
    InvariantViolated { omega: f64, detail: String },
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, reason: impl ToString) -> Self {
        Error::ConfigInvalid {
            field: field.into(),
            reason: reason.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
