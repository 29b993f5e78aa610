use std::fmt;

/// Error type shared by every layer of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    Domain(String),
    /// A series failed to reach its tolerance within `max_terms`.
    Truncation { terms: usize, last_bound: f64 },
    /// Evaluation on the singular set of a meromorphic function.
    Pole(String),
    /// Saddle quantities requested below the admissible horizon.
    OutOfRange { value: f64, lower: f64 },
    /// Numerical result not trustworthy; carries what was computed.
    Accuracy { message: String, estimate: f64, other: Option<f64> },
    /// Invalid configuration (step size, precision, term counts, ...).
    Config(String),
    /// A sampling budget ran out before the requested amount was collected.
    Partial { message: String, collected: usize, wanted: usize },
    /// Runaway guard of a simulation loop.
    Cap { t_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Pole(_) | Error::OutOfRange { .. } | Error::Config(_) => 2,
            Error::Truncation { .. } | Error::Accuracy { .. } | Error::Cap { .. } => 3,
            Error::Partial { .. } => 4,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Truncation { terms, last_bound } => {
                write!(f, "series not converged after {terms} terms (last bound {last_bound:e})")
            }
            Error::Pole(m) => write!(f, "pole: {m}"),
            Error::OutOfRange { value, lower } => {
                write!(f, "out of range: {value} must exceed {lower}")
            }
            Error::Accuracy { message, estimate, other } => match other {
                Some(o) => write!(f, "accuracy error: {message} ({estimate:e} vs {o:e})"),
                None => write!(f, "accuracy error: {message} (estimate {estimate:e})"),
            },
            Error::Config(m) => write!(f, "configuration error: {m}"),
            Error::Partial { message, collected, wanted } => {
                write!(f, "partial result: {message} ({collected} of {wanted})")
            }
            Error::Cap { t_max } => write!(f, "simulation exceeded the time cap {t_max}"),
        }
    }
}

impl std::error::Error for Error {}
