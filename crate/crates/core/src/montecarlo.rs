//! Simulation study engine.
//!
//! Replicate `r` (1-based) always draws its sample from
//! `SeededStream::new(master_seed, r)`, so results depend only on the
//! configuration. Replicates run in parallel but are aggregated in replicate
//! order, which keeps parallel and sequential runs bit-identical.

use rayon::prelude::*;

use crate::asymptotics::{v_k, LimitLaw, Regime};
use crate::distributions::{DistributionSpec, SeededStream};
use crate::error::{Error, Result};
use crate::estimators::{estimate, EstimatorKind, GgConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub distribution: DistributionSpec,
    pub n: usize,
    /// Number of replicates `N`.
    pub replicates: usize,
    pub c: f64,
    pub k_grid: Vec<usize>,
    pub estimators: Vec<EstimatorKind>,
    pub master_seed: u64,
}

/// Defaults of the reference study: n = 500, N = 100, c = 4.
pub const DEFAULT_N: usize = 500;
pub const DEFAULT_REPLICATES: usize = 100;
pub const DEFAULT_C: f64 = 4.0;

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.distribution.validate()?;
        if self.replicates < 1 {
            return Err(Error::Config("need at least one replicate".into()));
        }
        if self.n < 4 {
            return Err(Error::Config(format!(
                "sample size must be at least 4, got {}",
                self.n
            )));
        }
        if !(self.c > 1.0 && self.c.is_finite()) {
            return Err(Error::Config(format!(
                "ratio c must be finite and > 1, got {}",
                self.c
            )));
        }
        if self.estimators.is_empty() {
            return Err(Error::Config("no estimators selected".into()));
        }
        if self.k_grid.is_empty() {
            return Err(Error::Config("empty k grid".into()));
        }
        for &kind in &self.estimators {
            let (lo, hi) = (kind.min_k(self.c), kind.max_k(self.n));
            if let Some(&k) = self.k_grid.iter().find(|&&k| k < lo || k > hi) {
                return Err(Error::Config(format!(
                    "k={k} is outside the valid range {lo}..={hi} of {kind} for n={}",
                    self.n
                )));
            }
        }
        Ok(())
    }
}

/// `k = start, start+step, …` up to the largest `k` valid for every selected
/// estimator, with `start = max(8, smallest valid k)` and
/// `step = max(1, ⌊n/100⌋)`.
pub fn default_k_grid(n: usize, c: f64, estimators: &[EstimatorKind]) -> Vec<usize> {
    let lo = estimators
        .iter()
        .map(|e| e.min_k(c))
        .max()
        .unwrap_or(1)
        .max(8);
    let hi = estimators.iter().map(|e| e.max_k(n)).min().unwrap_or(0);
    let step = (n / 100).max(1);
    (lo..=hi).step_by(step).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub estimator: EstimatorKind,
    pub k: usize,
    /// `None` when every replicate failed.
    pub mean: Option<f64>,
    pub mse: Option<f64>,
    /// Population variance of the successful estimates.
    pub variance: Option<f64>,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentResult {
    pub fn row(&self, estimator: EstimatorKind, k: usize) -> Option<&ExperimentRow> {
        self.rows
            .iter()
            .find(|r| r.estimator == estimator && r.k == k)
    }

    pub fn rows_for(&self, estimator: EstimatorKind) -> impl Iterator<Item = &ExperimentRow> {
        self.rows.iter().filter(move |r| r.estimator == estimator)
    }

    /// `estimator,k,mean,mse,errors`, one row per (estimator, k).
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["estimator", "k", "mean", "mse", "errors"])?;
        for r in &self.rows {
            w.write_record([
                r.estimator.name().to_string(),
                r.k.to_string(),
                fmt_opt(r.mean),
                fmt_opt(r.mse),
                r.errors.to_string(),
            ])?;
        }
        finish_csv(w)
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("CSV writer emits UTF-8"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

fn map_replicates<T, F>(replicates: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    let ids = 1..=replicates as u64;
    match exec {
        Execution::Sequential => ids.map(f).collect(),
        Execution::Parallel => ids.into_par_iter().map(f).collect(),
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    run_experiment_with(cfg, Execution::Parallel)
}

pub fn run_experiment_with(cfg: &ExperimentConfig, exec: Execution) -> Result<ExperimentResult> {
    cfg.validate()?;
    let cells: Vec<(EstimatorKind, usize)> = cfg
        .estimators
        .iter()
        .flat_map(|&e| cfg.k_grid.iter().map(move |&k| (e, k)))
        .collect();

    let per_replicate: Vec<Vec<Option<f64>>> = map_replicates(cfg.replicates, exec, |r| match cfg
        .distribution
        .sample(cfg.n, SeededStream::new(cfg.master_seed, r))
    {
        Ok(s) => cells
            .iter()
            .map(|&(e, k)| estimate(e, &s, k, cfg.c).ok().map(|est| est.xi_hat))
            .collect(),
        Err(_) => vec![None; cells.len()],
    });

    let xi = cfg.distribution.true_xi();
    let rows = cells
        .iter()
        .enumerate()
        .map(|(j, &(estimator, k))| {
            let values: Vec<f64> = per_replicate.iter().filter_map(|rep| rep[j]).collect();
            let errors = cfg.replicates - values.len();
            let (mean, mse, variance) = if values.is_empty() {
                (None, None, None)
            } else {
                let m = values.len() as f64;
                let mean = values.iter().sum::<f64>() / m;
                let mse = values.iter().map(|v| (v - xi).powi(2)).sum::<f64>() / m;
                let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / m;
                (Some(mean), Some(mse), Some(var))
            };
            ExperimentRow {
                estimator,
                k,
                mean,
                mse,
                variance,
                errors,
            }
        })
        .collect();
    Ok(ExperimentResult {
        config: cfg.clone(),
        rows,
    })
}

/// Estimates of one estimator over `replicates` samples; failed replicates
/// are counted and skipped.
pub fn replicate_estimates(
    distribution: &DistributionSpec,
    n: usize,
    replicates: usize,
    kind: EstimatorKind,
    k: usize,
    c: f64,
    seed: u64,
) -> (Vec<f64>, usize) {
    let out = map_replicates(replicates, Execution::Parallel, |r| {
        let s = distribution.sample(n, SeededStream::new(seed, r)).ok()?;
        estimate(kind, &s, k, c).ok().map(|e| e.xi_hat)
    });
    let values: Vec<f64> = out.into_iter().flatten().collect();
    let errors = replicates - values.len();
    (values, errors)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticCheckResult {
    /// Sorted `V_k(ξ)(ξ̂ - ξ)` over successful replicates.
    pub values: Vec<f64>,
    pub ks_distance: f64,
    pub law: LimitLaw,
    pub error_count: usize,
}

impl AsymptoticCheckResult {
    /// Header `x`, the sorted standardized values, then `ks_distance,<value>`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .flexible(true)
            .from_writer(Vec::new());
        w.write_record(["x"])?;
        for v in &self.values {
            w.write_record([v.to_string()])?;
        }
        w.write_record(["ks_distance".to_string(), self.ks_distance.to_string()])?;
        finish_csv(w)
    }
}

/// Compares `V_k(ξ)(ξ̂ - ξ)`, centred and scaled with the true ξ, to the
/// explicit limit law at the realized ratio `k/⌊k/c⌋`.
pub fn run_asymptotic_check(
    distribution: &DistributionSpec,
    n: usize,
    replicates: usize,
    k: usize,
    c: f64,
    seed: u64,
) -> Result<AsymptoticCheckResult> {
    distribution.validate()?;
    let xi = distribution.true_xi();
    if Regime::of(xi) == Regime::HalfNegative {
        return Err(Error::UnsupportedLaw);
    }
    if replicates < 1 {
        return Err(Error::Config("need at least one replicate".into()));
    }
    let gg = GgConfig::from_ratio(k, c)?;
    if k >= n {
        return Err(Error::Config(format!("need k < n, got k={k}, n={n}")));
    }
    let law = LimitLaw::new(xi, gg.c())?;
    let (estimates, error_count) =
        replicate_estimates(distribution, n, replicates, EstimatorKind::Gg, k, c, seed);
    let scale = v_k(xi, k);
    let mut values: Vec<f64> = estimates.iter().map(|e| scale * (e - xi)).collect();
    values.sort_by(f64::total_cmp);
    let ks = ks_distance(&values, &law)?;
    Ok(AsymptoticCheckResult {
        values,
        ks_distance: ks,
        law,
        error_count,
    })
}

/// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and
/// the limit law.
pub fn ks_distance(samples: &[f64], law: &LimitLaw) -> Result<f64> {
    ks_distance_by(samples, |t| law.cdf(t))
}

pub fn ks_distance_by<F>(samples: &[f64], cdf: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x)?;
        let above = (i + 1) as f64 / m - f;
        let below = f - i as f64 / m;
        d = d.max(above.abs()).max(below.abs());
    }
    Ok(d)
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len().is_multiple_of(2) {
        0.5 * (v[mid - 1] + v[mid])
    } else {
        v[mid]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::normal_quantile;

    fn frechet_cfg() -> ExperimentConfig {
        ExperimentConfig {
            distribution: DistributionSpec::frechet(1.0).unwrap(),
            n: 200,
            replicates: 20,
            c: 4.0,
            k_grid: vec![10, 20, 40],
            estimators: EstimatorKind::ALL.to_vec(),
            master_seed: 11,
        }
    }

    #[test]
    fn single_replicate_aggregation() {
        let cfg = ExperimentConfig {
            replicates: 1,
            estimators: vec![EstimatorKind::Hill],
            ..frechet_cfg()
        };
        let res = run_experiment(&cfg).unwrap();
        let s = cfg
            .distribution
            .sample(cfg.n, SeededStream::new(cfg.master_seed, 1))
            .unwrap();
        for &k in &cfg.k_grid {
            let est = crate::estimators::hill(&s, k).unwrap().xi_hat;
            let row = res.row(EstimatorKind::Hill, k).unwrap();
            assert_eq!(row.mean, Some(est));
            assert_eq!(row.mse, Some((est - 1.0).powi(2)));
            assert_eq!(row.errors, 0);
        }
    }

    #[test]
    fn deterministic_and_order_independent() {
        let cfg = frechet_cfg();
        let a = run_experiment_with(&cfg, Execution::Parallel).unwrap();
        let b = run_experiment_with(&cfg, Execution::Parallel).unwrap();
        let c = run_experiment_with(&cfg, Execution::Sequential).unwrap();
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        assert_eq!(a, c);
    }

    #[test]
    fn mse_is_bias_squared_plus_variance() {
        let res = run_experiment(&frechet_cfg()).unwrap();
        for row in &res.rows {
            let (mean, mse, var) = (row.mean.unwrap(), row.mse.unwrap(), row.variance.unwrap());
            assert!(mse >= 0.0);
            let split = (mean - 1.0).powi(2) + var;
            assert!((mse - split).abs() <= 1e-10 * mse.max(1e-300), "{row:?}");
        }
    }

    #[test]
    fn errors_are_counted_per_estimator() {
        let cfg = ExperimentConfig {
            distribution: DistributionSpec::standard_normal(),
            n: 40,
            replicates: 30,
            c: 4.0,
            k_grid: vec![30],
            estimators: vec![EstimatorKind::Gg, EstimatorKind::Hill],
            master_seed: 5,
        };
        // X(n-30) is usually negative, so Hill's logarithm fails
        let res = run_experiment(&cfg).unwrap();
        let hill = res.row(EstimatorKind::Hill, 30).unwrap();
        let gg = res.row(EstimatorKind::Gg, 30).unwrap();
        assert_eq!(gg.errors, 0);
        assert!(hill.errors > 0);
        if hill.errors == cfg.replicates {
            assert_eq!(hill.mean, None);
        }
    }

    #[test]
    fn config_validation() {
        let base = frechet_cfg();
        let bad = [
            ExperimentConfig {
                replicates: 0,
                ..base.clone()
            },
            ExperimentConfig {
                n: 3,
                ..base.clone()
            },
            ExperimentConfig {
                c: 1.0,
                ..base.clone()
            },
            ExperimentConfig {
                k_grid: vec![],
                ..base.clone()
            },
            ExperimentConfig {
                estimators: vec![],
                ..base.clone()
            },
            ExperimentConfig {
                k_grid: vec![60],
                ..base.clone()
            }, // pickands > n/4
            ExperimentConfig {
                k_grid: vec![7],
                ..base.clone()
            }, // ⌊7/4⌋ < 2
            ExperimentConfig {
                k_grid: vec![200],
                estimators: vec![EstimatorKind::Hill],
                ..base.clone()
            },
        ];
        for cfg in bad {
            let err = run_experiment(&cfg).unwrap_err();
            assert!(err.is_config(), "{err:?}");
        }
    }

    #[test]
    fn default_grid() {
        let grid = default_k_grid(500, 4.0, &[EstimatorKind::Gg, EstimatorKind::GgStar]);
        assert_eq!(grid.first(), Some(&8));
        assert_eq!(grid[1], 13);
        assert!(*grid.last().unwrap() <= 499);
        let grid = default_k_grid(500, 4.0, &EstimatorKind::ALL);
        assert!(*grid.last().unwrap() <= 125);
        let grid = default_k_grid(50, 4.0, &[EstimatorKind::Hill]);
        assert_eq!(grid, (8..=49).collect::<Vec<_>>());
        let grid = default_k_grid(500, 6.0, &[EstimatorKind::Gg]);
        assert_eq!(grid[0], 12);
    }

    #[test]
    fn experiment_csv_format() {
        let cfg = ExperimentConfig {
            estimators: vec![EstimatorKind::Hill, EstimatorKind::Gg],
            k_grid: vec![10],
            ..frechet_cfg()
        };
        let csv = run_experiment(&cfg).unwrap().to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "estimator,k,mean,mse,errors");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("hill,10,"));
        assert!(lines[2].starts_with("gg,10,"));
    }

    #[test]
    fn ks_examples() {
        let law = LimitLaw::new(-1.0, 4.0).unwrap();
        assert!(matches!(ks_distance(&[], &law), Err(Error::EmptyInput)));
        assert_eq!(ks_distance(&[0.0], &law).unwrap(), 0.5);

        // samples at F⁻¹((i - 1/2)/m); this law is N(0, s²) for some s
        let scale = 2.0 * 1.0 * law.sigma / (law.c.powf(1.0) * law.c.ln());
        let m = 50;
        let pts: Vec<f64> = (1..=m)
            .map(|i| scale * normal_quantile((i as f64 - 0.5) / m as f64).unwrap())
            .collect();
        let d = ks_distance(&pts, &law).unwrap();
        assert!((d - 0.5 / m as f64).abs() < 1e-12, "{d}");
    }

    #[test]
    fn ks_of_exact_draws_is_small() {
        let law = LimitLaw::new(1.0, 4.0).unwrap();
        let mut rng = SeededStream::new(9, 0).rng();
        let m = 10_000;
        // Gumbel via inverse transform
        let pts: Vec<f64> = (0..m)
            .map(|_| -(-crate::distributions::open_unit(&mut rng).ln()).ln())
            .collect();
        assert!(ks_distance(&pts, &law).unwrap() < 0.02);
    }

    #[test]
    fn asymptotic_single_replicate() {
        let spec = DistributionSpec::weibull_m(-1.0).unwrap();
        let res = run_asymptotic_check(&spec, 500, 1, 100, 4.0, 3).unwrap();
        assert_eq!(res.values.len(), 1);
        let f = res.law.cdf(res.values[0]).unwrap();
        assert!((res.ks_distance - f.max(1.0 - f)).abs() < 1e-15);
        let csv = res.to_csv().unwrap();
        assert!(csv.starts_with("x\n"));
        assert!(csv
            .trim_end()
            .ends_with(&format!("ks_distance,{}", res.ks_distance)));
    }

    #[test]
    fn asymptotic_check_rejects_half() {
        let spec = DistributionSpec::weibull_m(-0.5).unwrap();
        assert!(matches!(
            run_asymptotic_check(&spec, 500, 10, 100, 4.0, 3),
            Err(Error::UnsupportedLaw)
        ));
    }

    #[test]
    fn asymptotic_uses_realized_ratio() {
        let spec = DistributionSpec::weibull_m(-1.0).unwrap();
        let res = run_asymptotic_check(&spec, 500, 2, 42, 4.0, 3).unwrap();
        assert_eq!(res.law.c, 4.2);
    }

    #[test]
    fn median_values() {
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
    }
}
