//! Library side of the `dualspec` binary: argument parsing, the commands and
//! their output records.
//!
//! Exit codes: 0 success, 2 configuration error, 3 solver error, 4 failed
//! duality correspondence. Every failure prints one line to standard error:
//!
//! `dualspec-error code=<n> kind=<kind>: <message>`

pub mod commands;
pub mod config;
pub mod output;

use dualspec_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                Error::InvalidParameter(_) | Error::Grid(_) | Error::NotResolventSet { .. } => 2,
                Error::CorrespondenceViolation { .. } | Error::IdentityViolation { .. } => 4,
                _ => 3,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
            CliError::Core(e) => match e {
                Error::Pole { .. } => "pole",
                Error::NoConvergence { .. } => "no_convergence",
                Error::Overflow { .. } => "overflow",
                Error::SpectralPole { .. } => "spectral_pole",
                Error::NotDiscreteRegime => "not_discrete_regime",
                Error::BracketFailure { .. } => "bracket_failure",
                Error::OutOfSupport { .. } => "out_of_support",
                Error::NotResolventSet { .. } => "not_resolvent_set",
                Error::NotInSpectrum(_) => "not_in_spectrum",
                Error::QuadratureFailure(_) => "quadrature_failure",
                Error::IdentityViolation { .. } => "identity_violation",
                Error::CorrespondenceViolation { .. } => "correspondence_violation",
                Error::Grid(_) => "grid",
                Error::InvalidParameter(_) => "invalid_parameter",
                Error::FreeLimit(_) => "free_limit",
            },
        }
    }

    /// The one-line reason printed on failure.
    pub fn reason(&self) -> String {
        let msg = self.to_string().replace('\n', " ");
        format!("dualspec-error code={} kind={}: {msg}", self.exit_code(), self.kind())
    }
}
