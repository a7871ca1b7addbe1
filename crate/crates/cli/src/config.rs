//! Optional TOML config mirroring the command-line flags.

use std::path::Path;

use serde::Deserialize;

use crate::Format;

/// Every field is optional; a flag given on the command line always wins.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub format: Option<Format>,
    pub tol: Option<f64>,
    pub cutoff: Option<u64>,
    pub samples: Option<u64>,
    pub confidence: Option<f64>,
    pub k_max: Option<usize>,
    pub strategy: Option<String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
