use std::fmt;

/// Failure classes of the command-line tool, one per exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// A check reported failures, or an internal consistency test failed.
    Assertion(String),
    /// Malformed arguments, configuration or out-of-domain inputs.
    Usage(String),
    /// Quadrature or an iterative solver did not converge.
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Assertion(_) => 1,
            CliError::Usage(_) => 2,
            CliError::NonConvergence(_) => 3,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Assertion(m) => write!(f, "check failed: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::NonConvergence(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<gentrig::Error> for CliError {
    fn from(e: gentrig::Error) -> Self {
        use gentrig::Error as E;
        match e {
            E::Domain(_) | E::Precondition(_) | E::Index(_) => CliError::Usage(e.to_string()),
            E::Quadrature(_) | E::NonConvergence(_) => CliError::NonConvergence(e.to_string()),
            E::Internal(_) => CliError::Assertion(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
