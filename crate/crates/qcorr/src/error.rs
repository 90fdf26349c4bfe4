//! Error type shared by every module in the crate.

use thiserror::Error;

/// Unified error enum.
///
/// The `Display` text of each variant leads with a stable error name so
/// that callers (and the CLI) can surface a recognizable category without
/// matching on the enum.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A scalar parameter fell outside its admissible range.
    #[error("DomainError: {0}")]
    Domain(String),

    /// A matrix had the wrong shape for the requested operation.
    #[error("DimensionError: expected {expected}, got {got} ({context})")]
    Dimension {
        expected: String,
        got: String,
        context: String,
    },

    /// A candidate density operator failed validation.
    #[error("InvalidStateError: {0}")]
    InvalidState(String),

    /// A matrix was not within tolerance of the X sparsity pattern.
    #[error("NotXFormError: {0}")]
    NotXForm(String),

    /// An operator expected to be Hermitian was not.
    #[error("NonHermitianError: {0}")]
    NonHermitian(String),

    /// A Kraus set failed the completeness (trace-preservation) check.
    #[error("InvalidChannelError: {0}")]
    InvalidChannel(String),

    /// A Bell-measurement outcome had probability at or below tolerance.
    #[error("ZeroProbabilityOutcome: {0}")]
    ZeroProbability(String),

    /// A sweep or figure configuration was malformed.
    #[error("ConfigError: {0}")]
    Config(String),

    /// An I/O failure while reading configs or writing sweep output.
    #[error("IoError: {0}")]
    Io(String),
}

impl Error {
    /// Shorthand constructor for dimension mismatches.
    pub fn dims(
        expected: impl Into<String>,
        got: impl Into<String>,
        context: impl Into<String>,
    ) -> Self {
        Error::Dimension {
            expected: expected.into(),
            got: got.into(),
            context: context.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_leads_with_error_name() {
        let e = Error::Domain("k must lie in [0, 1], got 1.5".into());
        assert!(e.to_string().starts_with("DomainError:"));

        let e = Error::dims("4x4", "2x2", "concurrence input");
        assert!(e.to_string().starts_with("DimensionError:"));

        let e = Error::ZeroProbability("outcome 2 has probability 0".into());
        assert!(e.to_string().starts_with("ZeroProbabilityOutcome:"));
    }
}
