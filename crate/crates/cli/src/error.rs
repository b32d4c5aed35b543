use std::fmt;

/// Failures mapped onto the process exit status.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Library(squeezelab::Error),
    Verification { failed: usize, total: usize },
    Io(std::io::Error),
}

impl CliError {
    /// 2 for configuration problems, 3 for guard violations, 4 for failed
    /// verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Library(e) if e.is_config_error() => 2,
            CliError::Library(_) => 3,
            CliError::Verification { .. } => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Library(e) if e.is_config_error() => write!(f, "configuration error: {e}"),
            CliError::Library(e) => write!(f, "guard violation: {e}"),
            CliError::Verification { failed, total } => {
                write!(
                    f,
                    "verification failed: {failed} of {total} reports exceed tolerance"
                )
            }
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<squeezelab::Error> for CliError {
    fn from(e: squeezelab::Error) -> Self {
        CliError::Library(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
