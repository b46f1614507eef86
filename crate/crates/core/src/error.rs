use alloc::string::String;

/// Errors raised by the DMT toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A domain value is outside its admissible range.
    #[error("invalid {name}: {reason}")]
    InvalidInput {
        name: &'static str,
        reason: String,
    },
    /// The amplify-and-forward results only cover a unit source-relay exponent.
    #[error("amplify-and-forward relaying requires gamma = 1, got {gamma}")]
    GammaUnsupported { gamma: f64 },
    /// Lattice search is limited to a handful of variables.
    #[error("exponent program has {dim} variables, at most {max} are supported")]
    DimensionTooLarge { dim: usize, max: usize },
    /// Lattice step must lie in (0, 0.1].
    #[error("lattice step {step} outside (0, 0.1]")]
    StepInvalid { step: f64 },
    /// Not enough usable outage points for a slope fit.
    #[error("need at least 2 points with >= {event_floor} outage events, found {usable}")]
    InsufficientData { usable: usize, event_floor: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidInput {
        name,
        reason: reason.into(),
    }
}
