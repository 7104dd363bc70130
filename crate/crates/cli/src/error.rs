use std::fmt;

use spanner_core::Error;

/// A failure with a stable machine-readable code, printed as
/// `error[CODE]: message`.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn params(message: impl Into<String>) -> Self {
        Self::new("E_PARAMS", message)
    }

    pub fn parse(path: &str, line: usize, message: impl fmt::Display) -> Self {
        Self::new("E_PARSE", format!("{path}:{line}: {message}"))
    }

    pub fn io(path: &str, err: std::io::Error) -> Self {
        Self::new("E_IO", format!("{path}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Keep the whole report on one line.
        write!(f, "error[{}]: {}", self.code, self.message.replace('\n', " "))
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::DegenerateOverlap(..) | Error::VertexOnEdge(..) | Error::CoincidentCrossings { .. } => "E_DEGENERATE",
            Error::DuplicatePoints(..) | Error::NonFinite(_) => "E_INPUT",
            Error::InvalidStretch(_) | Error::InvalidParams(_) => "E_PARAMS",
            Error::UnknownVertex(_) | Error::UnknownEdge(_) | Error::NotCrossing => "E_INPUT",
            Error::Disconnected => "E_DISCONNECTED",
            Error::SeparatorTooLarge { .. } | Error::Unbalanced { .. } => "E_SEPARATOR",
            Error::NoLongEdge(_) => "E_NO_LONG_EDGE",
        };
        let hint = if code == "E_DEGENERATE" { " (regenerate with --perturb to restore general position)" } else { "" };
        CliError::new(code, format!("{err}{hint}"))
    }
}
