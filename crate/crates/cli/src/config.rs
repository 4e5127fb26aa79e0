use std::path::{Path, PathBuf};

use serde::Deserialize;
use x116::arith::FactorBudget;

pub const CONFIG_ENV: &str = "X116_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
}

/// Settings read from the TOML file named by `X116_CONFIG`; every field is
/// optional and command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub trial_bound: Option<u64>,
    pub rho_iterations: Option<u64>,
    pub prime_rounds: Option<u32>,
    pub rng_seed: Option<u64>,
    pub height_bound: Option<u64>,
    pub worker_count: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Config {
    pub fn from_toml(src: &str) -> Result<Self, String> {
        toml::from_str(src).map_err(|e| e.to_string())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::from_toml(&src).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn from_env() -> Result<Self, String> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overlay(self, other: Config) -> Config {
        Config {
            trial_bound: other.trial_bound.or(self.trial_bound),
            rho_iterations: other.rho_iterations.or(self.rho_iterations),
            prime_rounds: other.prime_rounds.or(self.prime_rounds),
            rng_seed: other.rng_seed.or(self.rng_seed),
            height_bound: other.height_bound.or(self.height_bound),
            worker_count: other.worker_count.or(self.worker_count),
            output_path: other.output_path.or(self.output_path),
            format: other.format.or(self.format),
        }
    }

    pub fn budget(&self) -> FactorBudget {
        let d = FactorBudget::default();
        FactorBudget {
            trial_bound: self.trial_bound.unwrap_or(d.trial_bound),
            rho_iterations: self.rho_iterations.unwrap_or(d.rho_iterations),
            prime_rounds: self.prime_rounds.unwrap_or(d.prime_rounds),
            seed: self.rng_seed.unwrap_or(d.seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_and_overlay() {
        let file = Config::from_toml("trial_bound = 500\nformat = \"csv\"\nworker_count = 2\n").unwrap();
        assert_eq!(file.trial_bound, Some(500));
        assert_eq!(file.format, Some(Format::Csv));
        let flags = Config { trial_bound: Some(50), ..Config::default() };
        let merged = file.overlay(flags);
        assert_eq!(merged.trial_bound, Some(50));
        assert_eq!(merged.worker_count, Some(2));
        assert_eq!(merged.budget().trial_bound, 50);
        assert_eq!(merged.budget().prime_rounds, FactorBudget::default().prime_rounds);
        assert!(Config::from_toml("bogus = 1").is_err());
    }
}
