//! Library side of the `weyrkit` command-line tool: file formats, the
//! subcommands as functions returning reports, and exit-code policy.
//!
//! Exit codes: 0 success (or similar), 1 internal error or oracle mismatch,
//! 2 input error, 3 not similar, 4 irrational spectrum.

pub mod commands;
pub mod files;

pub use commands::{
    cmd_basis, cmd_centralizer, cmd_compare, cmd_form, cmd_invariants, cmd_kernel_dims, cmd_structure, Coords,
    Options, Report,
};
pub use files::{DeclaredBlock, DeclaredStructureFile, MatrixFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    IrrationalSpectrum(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::IrrationalSpectrum(_) => 4,
            CliError::Internal(_) => 1,
        }
    }

    /// Prefixes the message with where the problem was found.
    pub fn context(self, place: &str) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("{place}: {m}")),
            CliError::IrrationalSpectrum(m) => CliError::IrrationalSpectrum(format!("{place}: {m}")),
            CliError::Internal(m) => CliError::Internal(format!("{place}: {m}")),
        }
    }
}

impl From<weyrkit::Error> for CliError {
    fn from(e: weyrkit::Error) -> Self {
        use weyrkit::Error as E;
        match e {
            E::IrrationalSpectrum { .. } => CliError::IrrationalSpectrum(e.to_string()),
            E::ShapeMismatch(_)
            | E::NotSquare { .. }
            | E::InvalidPartition(_)
            | E::InvalidStructure(_)
            | E::Precondition(_)
            | E::Parse(_)
            | E::IndexOutOfRange(_) => CliError::Input(e.to_string()),
            E::NotAnEigenvalue(_) | E::ZeroPolynomial | E::Internal(_) => CliError::Internal(e.to_string()),
        }
    }
}
