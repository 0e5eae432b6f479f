//! Flat `key = value` configuration for the `simulate` subcommand.

use std::fmt;
use std::str::FromStr;

use evi_core::distributions::DistributionSpec;
use evi_core::estimators::EstimatorKind;
use evi_core::montecarlo::{
    default_k_grid, ExperimentConfig, DEFAULT_C, DEFAULT_N, DEFAULT_REPLICATES,
};
use evi_core::{Error, Result};

/// Seed used when neither the config file nor the command line gives one.
pub const DEFAULT_SEED: u64 = 1;

/// `start:stop:step`, inclusive of `stop` when it lies on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KGrid {
    pub start: usize,
    pub stop: usize,
    pub step: usize,
}

impl KGrid {
    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.stop).step_by(self.step).collect()
    }
}

impl FromStr for KGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Config(format!(
                "k grid must be start:stop:step with 1 <= start <= stop and step >= 1, got {s:?}"
            ))
        };
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(bad());
        };
        let parse = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let grid = KGrid {
            start: parse(start)?,
            stop: parse(stop)?,
            step: parse(step)?,
        };
        if grid.start < 1 || grid.start > grid.stop || grid.step < 1 {
            return Err(bad());
        }
        Ok(grid)
    }
}

impl fmt::Display for KGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

/// Parses `gg,gg_star,hill` or `all`.
pub fn parse_estimators(s: &str) -> Result<Vec<EstimatorKind>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(EstimatorKind::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let kind: EstimatorKind = name.parse()?;
        if !out.contains(&kind) {
            out.push(kind);
        }
    }
    if out.is_empty() {
        return Err(Error::Config("no estimators selected".into()));
    }
    Ok(out)
}

/// Every field is optional so that files and flags can be layered.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SimulateSettings {
    pub distribution: Option<DistributionSpec>,
    pub n: Option<usize>,
    pub replicates: Option<usize>,
    pub c: Option<f64>,
    pub seed: Option<u64>,
    pub estimators: Option<Vec<EstimatorKind>>,
    pub k_grid: Option<KGrid>,
}

/// Re-tags any error as a configuration error.
pub fn as_config(e: Error) -> Error {
    match e {
        Error::Config(_) => e,
        other => Error::Config(other.to_string()),
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("line {line}: invalid value {value:?} for {key}")))
}

impl SimulateSettings {
    /// Parses the text of a config file. Keys: `distribution`, `n`, `N`, `c`,
    /// `seed`, `estimators`, `k_grid`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {line}: expected key = value, got {content:?}"
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "distribution" => out.distribution = Some(value.parse().map_err(as_config)?),
                "n" => out.n = Some(parse_value(key, value, line)?),
                "N" | "replicates" => out.replicates = Some(parse_value(key, value, line)?),
                "c" => out.c = Some(parse_value(key, value, line)?),
                "seed" => out.seed = Some(parse_value(key, value, line)?),
                "estimators" => out.estimators = Some(parse_estimators(value)?),
                "k_grid" | "k-grid" => out.k_grid = Some(value.parse()?),
                other => {
                    return Err(Error::Config(format!("line {line}: unknown key {other:?}")));
                }
            }
        }
        Ok(out)
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overridden_by(self, other: Self) -> Self {
        Self {
            distribution: other.distribution.or(self.distribution),
            n: other.n.or(self.n),
            replicates: other.replicates.or(self.replicates),
            c: other.c.or(self.c),
            seed: other.seed.or(self.seed),
            estimators: other.estimators.or(self.estimators),
            k_grid: other.k_grid.or(self.k_grid),
        }
    }

    /// Fills defaults (Fréchet ξ=3, n=500, N=100, c=4, gg and gg_star) and
    /// validates the result.
    pub fn resolve(self) -> Result<ExperimentConfig> {
        let distribution = match self.distribution {
            Some(d) => d,
            None => DistributionSpec::frechet(3.0)?,
        };
        let n = self.n.unwrap_or(DEFAULT_N);
        let c = self.c.unwrap_or(DEFAULT_C);
        let estimators = self
            .estimators
            .unwrap_or_else(|| vec![EstimatorKind::Gg, EstimatorKind::GgStar]);
        let k_grid = match self.k_grid {
            Some(g) => g.values(),
            None if c > 1.0 && c.is_finite() => default_k_grid(n, c, &estimators),
            None => Vec::new(),
        };
        let cfg = ExperimentConfig {
            distribution,
            n,
            replicates: self.replicates.unwrap_or(DEFAULT_REPLICATES),
            c,
            k_grid,
            estimators,
            master_seed: self.seed.unwrap_or(DEFAULT_SEED),
        };
        cfg.validate().map_err(as_config)?;
        Ok(cfg)
    }
}
