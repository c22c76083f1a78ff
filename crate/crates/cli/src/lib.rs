//! Command-line orchestration for `fock-core`: configuration, report
//! emission, and the acceptance suite behind `verify`.

pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod sample;
pub mod verify;

pub use config::{Command, RunConfig, Suite};
pub use error::{CliError, CliResult};
pub use report::Report;
pub use run::{run, Outcome};
