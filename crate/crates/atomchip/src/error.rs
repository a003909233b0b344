//! Error type shared across the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced when validating inputs or running a calculation.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A mandatory field is absent from a data record.
    MissingField(String),
    /// A field that must be strictly positive is zero or negative.
    NonPositive { field: String, value: f64 },
    /// A unit tag is not recognised for the field it annotates.
    UnknownUnit { field: String, unit: String },
    /// A field is outside its allowed range.
    OutOfRange { field: String, message: String },
    /// Trap light is not red-detuned of every included transition.
    NotATrap(String),
    /// Configuration failed schema validation; the message names the path.
    InvalidConfig(String),
    /// A config parameter path did not resolve.
    UnresolvedPath(String),
    /// The requested pulse sequence implies too many integrator steps.
    StepLimit { steps: u64, limit: u64 },
    /// Underlying I/O failure (message includes the path).
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MissingField(name) => write!(f, "missing field: {name}"),
            Error::NonPositive { field, value } => {
                write!(f, "field {field} must be positive, got {value}")
            }
            Error::UnknownUnit { field, unit } => {
                write!(f, "unknown unit tag {unit:?} for field {field}")
            }
            Error::OutOfRange { field, message } => write!(f, "{field}: {message}"),
            Error::NotATrap(msg) => write!(f, "not a trap: {msg}"),
            Error::InvalidConfig(msg) => write!(f, "invalid config: {msg}"),
            Error::UnresolvedPath(path) => write!(f, "parameter path does not resolve: {path}"),
            Error::StepLimit { steps, limit } => write!(
                f,
                "pulse sequence implies {steps} integrator steps (limit {limit}); \
                 increase the step size by shortening segments or reducing frequencies"
            ),
            Error::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}
