//! Budget configuration: defaults, then a JSON file, then command-line flags.

use std::path::{Path, PathBuf};

use regorb_core::orbitengine::CoverageBudget;
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

pub const CONFIG_ENV: &str = "REGORB_CONFIG";
pub const DEFAULT_CONFIG_FILE: &str = "regorb.json";

/// Keys accepted in the configuration file; all optional.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub max_vspace: Option<u64>,
    pub max_orbit: Option<u64>,
    pub seed: Option<u64>,
    pub cache_path: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl Config {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("config {}: {e}", path.display())))
    }

    /// The file named by `REGORB_CONFIG`, else `regorb.json` in the working directory if present.
    pub fn load() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) => Self::from_file(Path::new(&p)),
            None if Path::new(DEFAULT_CONFIG_FILE).exists() => Self::from_file(Path::new(DEFAULT_CONFIG_FILE)),
            None => Ok(Self::default()),
        }
    }

    /// Overlays flag values, which take precedence.
    pub fn with_overrides(mut self, seed: Option<u64>, cache: Option<PathBuf>, threads: Option<usize>) -> Self {
        self.seed = seed.or(self.seed);
        self.cache_path = cache.or(self.cache_path);
        self.threads = threads.or(self.threads);
        self
    }

    pub fn budget(&self, huge: bool) -> CoverageBudget {
        let d = CoverageBudget::default();
        CoverageBudget {
            max_vspace: self.max_vspace.unwrap_or(d.max_vspace),
            max_orbit: self.max_orbit.unwrap_or(d.max_orbit),
            seed: self.seed.unwrap_or(d.seed),
            threads: self.threads.unwrap_or(d.threads).max(1),
            huge,
            ..d
        }
    }
}
