use thiserror::Error;

use crate::label::BareLabel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} did not converge under basis doubling (last change {delta:.3e} GHz)")]
    NotConverged { what: String, delta: f64 },

    #[error("product dimension {dim} exceeds cap {cap} (truncations {truncations:?})")]
    Sizing {
        dim: usize,
        cap: usize,
        truncations: Vec<usize>,
    },

    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    #[error("ambiguous label {label}: best overlap {best:.6}, runner-up {second:.6}")]
    AmbiguousLabel {
        label: BareLabel,
        best: f64,
        second: f64,
    },

    #[error("label {label} does not fit basis with dimensions {dims:?}")]
    LabelOutOfBasis { label: BareLabel, dims: Vec<usize> },

    #[error("singular denominator {pair}: {value:.3e} GHz")]
    SingularDenominator { pair: String, value: f64 },

    #[error("forbidden transition on element {element}: |{from}> -> |{to}> has vanishing charge matrix element")]
    ForbiddenTransition {
        element: usize,
        from: usize,
        to: usize,
    },

    #[error("integration failed at t = {t:.6} ns (step {step:.3e} ns): {message}")]
    Integration { t: f64, step: f64, message: String },

    #[error("configuration invalid:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the `fluxlat` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParams(_)
            | Error::Sizing { .. }
            | Error::LabelOutOfBasis { .. }
            | Error::Config(_)
            | Error::Json(_) => 2,
            Error::Io(_) => 1,
            _ => 3,
        }
    }
}
