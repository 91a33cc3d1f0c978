use irredkit::Error;
use thiserror::Error as ThisError;

/// Failures of the command-line layer, each mapped to an exit code.
#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{file}: syntax error at line {line}, column {column}: {message}")]
    Syntax {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{file}: schema error at `{path}`{}: {message}", position_suffix(.position))]
    Schema {
        file: String,
        path: String,
        position: Option<(usize, usize)>,
        message: String,
    },
    #[error("{file}: {message}")]
    Io { file: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("output format `{0}` is not supported for this command")]
    UnsupportedFormat(String),
    #[error("{context}: {source}")]
    Input { context: String, source: Error },
    #[error("{context}: {source}")]
    Numerical { context: String, source: Error },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 input or parse error, 2 numerical failure, 3 resource limit.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { source, .. } | CliError::Numerical { source, .. }
                if matches!(source, Error::OrderLimitExceeded { .. }) =>
            {
                3
            }
            CliError::Numerical { .. } | CliError::Verification(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn schema(file: &str, path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema {
            file: file.to_string(),
            path: path.into(),
            position: None,
            message: message.into(),
        }
    }

    pub(crate) fn input(context: impl Into<String>, source: Error) -> Self {
        CliError::Input {
            context: context.into(),
            source,
        }
    }

    pub(crate) fn numerical(context: impl Into<String>, source: Error) -> Self {
        CliError::Numerical {
            context: context.into(),
            source,
        }
    }
}

fn position_suffix(p: &Option<(usize, usize)>) -> String {
    match p {
        Some((line, column)) => format!(" (line {line}, column {column})"),
        None => String::new(),
    }
}
