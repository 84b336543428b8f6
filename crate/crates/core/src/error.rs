use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical quantity outside its domain (zero distance, negative SNR, NaN power, ...).
    #[error("{quantity}: {reason} (got {value})")]
    Domain {
        quantity: &'static str,
        reason: &'static str,
        value: f64,
    },

    #[error("invalid rejection curve: {0}")]
    RejectionCurve(String),

    /// Scenario document failed validation. `path` is a dotted schema path.
    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid override `{spec}`: {message}")]
    Override { spec: String, message: String },

    #[error("invalid sweep: {0}")]
    Sweep(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(quantity: &'static str, reason: &'static str, value: f64) -> Self {
        Error::Domain {
            quantity,
            reason,
            value,
        }
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by the input document or arguments rather than
    /// by the environment. The CLI maps these to exit code 1.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Schema { .. }
                | Error::UnknownPreset(_)
                | Error::Override { .. }
                | Error::Sweep(_)
                | Error::RejectionCurve(_)
                | Error::Domain { .. }
        )
    }
}
