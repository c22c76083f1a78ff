use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub results: Value,
    pub version: &'static str,
    pub wall_time_s: f64,
    pub warnings: Vec<String>,
    pub seed: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data always serializes")
    }

    /// The results alone; identical across runs of the same config.
    pub fn results_json(&self) -> String {
        serde_json::to_string(&self.results).expect("plain data always serializes")
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        std::fs::write(path, self.to_json() + "\n").map_err(|e| CliError::io(path, e))
    }
}
