use thiserror::Error;

/// Failures of a command, each mapped to a fixed process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("dimension mismatch: {0}")]
    DimsMismatch(String),
    #[error("not unitary: {0}")]
    NotUnitary(String),
    #[error("i/o failure: {0}")]
    Io(String),
    #[error("bad argument: {0}")]
    BadArgument(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => exit::PARSE_ERROR,
            CliError::InvalidDensity(_) => exit::INVALID_DENSITY,
            CliError::DimsMismatch(_) => exit::DIMS_MISMATCH,
            CliError::NotUnitary(_) => exit::NOT_UNITARY,
            CliError::Io(_) => exit::IO_FAILURE,
            CliError::BadArgument(_) => exit::BAD_ARGUMENT,
        }
    }
}

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const EQUIVALENT: i32 = 0;
    pub const INEQUIVALENT: i32 = 1;
    pub const PARSE_ERROR: i32 = 2;
    pub const INVALID_DENSITY: i32 = 3;
    pub const INCONCLUSIVE: i32 = 4;
    pub const DIMS_MISMATCH: i32 = 5;
    pub const NOT_UNITARY: i32 = 6;
    pub const IO_FAILURE: i32 = 7;
    pub const BAD_ARGUMENT: i32 = 8;
}
