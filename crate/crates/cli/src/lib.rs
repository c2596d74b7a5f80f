//! Library half of the `discord-scope` CLI: spec/family file formats,
//! output plumbing, and the command implementations.

pub mod commands;
pub mod output;
pub mod spec_io;

use discord_scope_core::Error as CoreError;

/// Process exit codes, fixed per failure class.
pub mod exit_codes {
    /// Malformed or unreadable state spec.
    pub const MALFORMED_SPEC: u8 = 2;
    /// Invalid landscape axes.
    pub const INVALID_AXES: u8 = 3;
    /// Zero-line verification failed on too many samples.
    pub const VERIFICATION: u8 = 4;
    /// Numerical module error (invalid density matrix and kin).
    pub const MODULE: u8 = 5;
    /// Not enough distinct detection phases to fit the fringe.
    pub const INSUFFICIENT_PHASES: u8 = 6;
}

#[derive(Debug)]
pub struct CliError {
    pub exit_code: u8,
    pub message: String,
}

impl CliError {
    pub fn malformed_spec(message: impl Into<String>) -> CliError {
        CliError {
            exit_code: exit_codes::MALFORMED_SPEC,
            message: message.into(),
        }
    }

    pub fn invalid_axes(message: impl Into<String>) -> CliError {
        CliError {
            exit_code: exit_codes::INVALID_AXES,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> CliError {
        CliError {
            exit_code: exit_codes::MODULE,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        let exit_code = match e {
            CoreError::InvalidWeights { .. } => exit_codes::MALFORMED_SPEC,
            CoreError::InvalidAxes => exit_codes::INVALID_AXES,
            CoreError::VerificationFailed { .. } => exit_codes::VERIFICATION,
            CoreError::InsufficientPhases { .. } => exit_codes::INSUFFICIENT_PHASES,
            _ => exit_codes::MODULE,
        };
        CliError {
            exit_code,
            message: e.to_string(),
        }
    }
}
