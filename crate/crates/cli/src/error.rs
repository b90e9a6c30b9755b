use std::io;

use rzf_core::RzfError;
use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Infinite(String),
    #[error(transparent)]
    Core(#[from] RzfError),
    #[error("{context}: {source}")]
    Io { context: String, source: io::Error },
}

impl CliError {
    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        CliError::Io { context: context.into(), source }
    }

    /// 2 usage, 3 data, 4 refusal to report an infinite time.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Infinite(_) | CliError::Core(RzfError::InfiniteEpt) => 4,
            CliError::Core(RzfError::StateSpaceTooLarge { .. } | RzfError::InvalidParameter(_)) => 2,
            CliError::Parse { .. } | CliError::Data(_) | CliError::Core(_) | CliError::Io { .. } => 3,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        let line = e.position().map_or(0, |p| p.line());
        match e.into_kind() {
            csv::ErrorKind::Io(source) => CliError::io("csv", source),
            csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
                CliError::Parse { line, msg: format!("expected {expected_len} fields, found {len}") }
            }
            csv::ErrorKind::Utf8 { .. } => CliError::Parse { line, msg: "invalid UTF-8".into() },
            other => CliError::Data(format!("{other:?}")),
        }
    }
}
