use std::fmt;

use serde::Serialize;

/// Exit status for validation failures.
pub const EXIT_VALIDATION: u8 = 1;
/// Exit status for I/O, parse and usage errors.
pub const EXIT_IO: u8 = 2;

/// A failure reported on stderr as `{code, message, location}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub location: Option<String>,
    #[serde(skip)]
    pub exit: u8,
}

impl CliError {
    pub fn validation(code: impl Into<String>, message: impl Into<String>) -> Self {
        CliError { code: code.into(), message: message.into(), location: None, exit: EXIT_VALIDATION }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError { code: "ParseError".into(), message: message.into(), location: None, exit: EXIT_IO }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { code: "IoError".into(), message: message.into(), location: None, exit: EXIT_IO }
    }

    pub fn at(mut self, location: impl Into<String>) -> Self {
        self.location = Some(location.into());
        self
    }

    /// Prefixes an existing location, e.g. a file name in front of a JSON path.
    pub fn within(mut self, outer: &str) -> Self {
        self.location = Some(match self.location {
            Some(inner) => format!("{outer}: {inner}"),
            None => outer.to_string(),
        });
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

impl From<gaugeform::Error> for CliError {
    fn from(e: gaugeform::Error) -> Self {
        CliError::validation(e.code(), e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Some(loc) => write!(f, "{} at {loc}: {}", self.code, self.message),
            None => write!(f, "{}: {}", self.code, self.message),
        }
    }
}

impl std::error::Error for CliError {}
