//! File formats, reports, SVG rendering and the sweep harness behind the
//! `stickknot` binary.

pub mod knotfile;
pub mod render;
pub mod report;
pub mod sweep;

use stickknot::Error;

use knotfile::FileError;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

/// Every way a subcommand can fail, grouped by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::File(_) | CliError::Output { .. } | CliError::Usage(_) => EXIT_INPUT,
            CliError::Core(e) => match e {
                Error::InvalidInput(_) | Error::Domain(_) => EXIT_INPUT,
                Error::Validation(_) => EXIT_VALIDATION,
                Error::AngleUndefined { .. }
                | Error::CertificateDegenerate(_)
                | Error::ProjectionFailure(_)
                | Error::SolverOverflow(_)
                | Error::Generation(_) => EXIT_NUMERIC,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::File(_) => "malformed-input",
            CliError::Output { .. } => "output",
            CliError::Usage(_) => "usage",
            CliError::Core(e) => match e {
                Error::InvalidInput(_) => "invalid-input",
                Error::Domain(_) => "domain",
                Error::Validation(_) => "validation",
                Error::AngleUndefined { .. } => "angle-undefined",
                Error::CertificateDegenerate(_) => "certificate-degenerate",
                Error::ProjectionFailure(_) => "projection-failure",
                Error::SolverOverflow(_) => "solver-overflow",
                Error::Generation(_) => "generation",
            },
        }
    }

    /// The single stderr line: `error: kind=<kind> reason=<message>`.
    pub fn line(&self) -> String {
        let reason = self.to_string().replace(['\n', '\r'], " ");
        format!("error: kind={} reason={}", self.kind(), reason)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use stickknot::ValidationError;

    #[test]
    fn exit_codes() {
        let e: CliError = FileError::Empty.into();
        assert_eq!(e.exit_code(), 2);
        let e: CliError = Error::Validation(ValidationError::TooFewVertices(3)).into();
        assert_eq!(e.exit_code(), 3);
        let e: CliError = Error::ProjectionFailure(64).into();
        assert_eq!(e.exit_code(), 4);
        assert_eq!(
            e.line(),
            "error: kind=projection-failure reason=no generic projection found after 64 directions"
        );
    }
}
