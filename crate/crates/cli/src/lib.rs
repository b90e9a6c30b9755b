//! Library side of the `rzf` command: graph ingestion, ranking reports and the
//! command implementations used by the binary.

pub mod commands;
pub mod error;
pub mod ingest;
pub mod report;

pub use error::{CliError, Result};
