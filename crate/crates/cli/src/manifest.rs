use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use hotgraph_core::{ComputeConfig, DeltaSeed, HotSetParams, RboConfig, StrategyPolicy};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyArg {
    Exact,
    Approximate,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaSeedArg {
    Neighborhood,
    UpdatedAndNeighborhood,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RboSettings {
    pub p: f64,
    pub depth_fraction: f64,
    pub full_depth_period: usize,
}

impl From<&RboSettings> for RboConfig {
    fn from(s: &RboSettings) -> Self {
        RboConfig {
            p: s.p,
            depth_fraction: s.depth_fraction,
            full_depth_period: s.full_depth_period,
        }
    }
}

/// Everything needed to reproduce one `run` invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Initial graph, as written by `generate-stream`.
    pub dataset: PathBuf,
    pub stream: PathBuf,
    pub r: f64,
    pub n: usize,
    pub delta: f64,
    pub delta_seed: DeltaSeedArg,
    pub policy: PolicyArg,
    pub refresh_period: Option<usize>,
    pub beta: f64,
    pub iterations: usize,
    pub rbo: RboSettings,
    pub out_dir: PathBuf,
    /// Seed the stream was generated with. Runs themselves draw no random numbers.
    pub seed: u64,
    /// Earlier run directory to score this run against.
    pub baseline: Option<PathBuf>,
}

impl RunManifest {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::in_file(path)(e.into()))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self)?;
        fs::write(path, text + "\n").map_err(|e| CliError::in_file(path)(e.into()))
    }

    pub fn check_paths(&self) -> CliResult<()> {
        let mut paths = vec![&self.dataset, &self.stream];
        paths.extend(&self.baseline);
        for p in paths {
            if !p.exists() {
                return Err(CliError::Data(format!("{} does not exist", p.display())));
            }
        }
        Ok(())
    }

    pub fn hot_params(&self) -> CliResult<HotSetParams> {
        let params = HotSetParams {
            r: self.r,
            n: self.n,
            delta: self.delta,
            delta_seed: match self.delta_seed {
                DeltaSeedArg::Neighborhood => DeltaSeed::Neighborhood,
                DeltaSeedArg::UpdatedAndNeighborhood => DeltaSeed::UpdatedAndNeighborhood,
            },
        };
        params.validate()?;
        Ok(params)
    }

    pub fn policy(&self) -> CliResult<StrategyPolicy> {
        let policy = match (self.policy, self.refresh_period) {
            (PolicyArg::Exact, _) => StrategyPolicy::always_exact(),
            (PolicyArg::Approximate, _) => StrategyPolicy::always_approximate(),
            (PolicyArg::Auto, Some(p)) => StrategyPolicy::auto(p),
            (PolicyArg::Auto, None) => {
                return Err(CliError::Usage(
                    "--policy auto needs --refresh-period".into(),
                ))
            }
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn compute(&self) -> CliResult<ComputeConfig> {
        let cfg = ComputeConfig {
            beta: self.beta,
            iterations: self.iterations,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
