use std::fs;
use std::io::Write;
use std::path::Path;

use evi_core::distributions::{DistributionSpec, Family};
use evi_core::estimators::{estimate as run_estimator, GgConfig};
use evi_core::montecarlo::{run_asymptotic_check, run_experiment};
use evi_core::{Error, OrderedSample, SampleFormat};

use crate::config::{as_config, parse_estimators, SimulateSettings};
use crate::{CheckArgs, EstimateArgs, SimulateArgs};

/// Bad flags or configuration.
pub const USAGE: u8 = 1;
/// Bad data, or a request the mathematics cannot serve.
pub const DATA: u8 = 2;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Self {
            code: DATA,
            message: message.into(),
        }
    }

    pub fn output(e: std::io::Error) -> Self {
        Self::data(format!("cannot write output: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_config() { USAGE } else { DATA };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::data(format!("cannot write output: {e}"))
    }
}

fn parse_format(s: &str) -> Result<SampleFormat, Failure> {
    match s.split_once(':') {
        None if s == "plain" => Ok(SampleFormat::Plain),
        Some(("csv", col)) if !col.is_empty() => Ok(SampleFormat::CsvColumn(col.to_string())),
        _ => Err(Failure::usage(format!(
            "unknown format {s:?}; expected plain or csv:<column>"
        ))),
    }
}

fn check_c(c: f64) -> Result<(), Failure> {
    if c > 1.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Failure::usage(format!(
            "--c must be finite and greater than 1, got {c}"
        )))
    }
}

pub fn estimate(args: &EstimateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    check_c(args.c)?;
    let ks = match (args.k, args.k_grid) {
        (Some(0), _) => return Err(Failure::usage("--k must be at least 1")),
        (Some(k), _) => vec![k],
        (None, Some(grid)) => grid.values(),
        (None, None) => return Err(Failure::usage("one of --k or --k-grid is required")),
    };
    let kinds = parse_estimators(&args.estimator).map_err(as_config)?;
    let format = parse_format(&args.format)?;
    let sample =
        OrderedSample::load(&args.input, &format).map_err(|e| Failure::data(e.to_string()))?;

    let mut w = csv::Writer::from_writer(out);
    w.write_record(["estimator", "k", "k_prime", "xi_hat", "error"])?;
    for &kind in &kinds {
        for &k in &ks {
            let planned_k_prime = kind
                .uses_ratio()
                .then(|| GgConfig::from_ratio(k, args.c).ok().map(|g| g.k_prime()))
                .flatten();
            let (k_prime, xi_hat, error) = match run_estimator(kind, &sample, k, args.c) {
                Ok(r) => (r.k_prime, r.xi_hat.to_string(), String::new()),
                Err(e) => (planned_k_prime, String::new(), e.to_string()),
            };
            let k_prime = k_prime.map(|v| v.to_string()).unwrap_or_default();
            w.write_record([kind.name(), &k.to_string(), &k_prime, &xi_hat, &error])?;
        }
    }
    w.flush().map_err(Failure::output)
}

pub fn simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let from_file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                Failure::usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            SimulateSettings::parse(&text)?
        }
        None => SimulateSettings::default(),
    };
    let from_flags = SimulateSettings {
        distribution: args
            .distribution
            .as_deref()
            .map(|d| d.parse::<DistributionSpec>().map_err(as_config))
            .transpose()?,
        n: args.n,
        replicates: args.replicates,
        c: args.c,
        seed: args.seed,
        estimators: args
            .estimators
            .as_deref()
            .map(parse_estimators)
            .transpose()?,
        k_grid: args.k_grid,
    };
    let cfg = from_file.overridden_by(from_flags).resolve()?;
    let names: Vec<&str> = cfg.estimators.iter().map(|e| e.name()).collect();
    let grid = cfg
        .k_grid
        .iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(",");
    eprintln!(
        "simulate: distribution={} n={} N={} c={} seed={} estimators={} k_grid={}",
        cfg.distribution,
        cfg.n,
        cfg.replicates,
        cfg.c,
        cfg.master_seed,
        names.join(","),
        grid
    );
    let csv = run_experiment(&cfg)?.to_csv()?;
    write_output(args.out.as_deref(), &csv, out)
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::data(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(Failure::output),
    }
}

pub fn check_asymptotic(args: &CheckArgs, out: &mut dyn Write) -> Result<(), Failure> {
    check_c(args.c)?;
    let dist: DistributionSpec = args.distribution.parse().map_err(as_config)?;
    eprintln!(
        "check-asymptotic: distribution={dist} n={} N={} k={} c={} seed={}",
        args.n, args.replicates, args.k, args.c, args.seed
    );
    let res = run_asymptotic_check(&dist, args.n, args.replicates, args.k, args.c, args.seed)?;
    if res.error_count > 0 {
        eprintln!(
            "check-asymptotic: {} replicates failed and were skipped",
            res.error_count
        );
    }
    write_output(None, &res.to_csv()?, out)
}

pub fn list_distributions(out: &mut dyn Write) -> Result<(), Failure> {
    let mut rows = vec![[
        "family".to_string(),
        "parameters".to_string(),
        "index".to_string(),
        "second order".to_string(),
        "best rate".to_string(),
    ]];
    for family in Family::ALL {
        rows.push([
            family.display_name().to_string(),
            if family.parameters().is_empty() {
                "-".into()
            } else {
                family.parameters().join(", ")
            },
            family.xi_formula().to_string(),
            format!("{}, β={}", family.model_class(), family.beta()),
            family.best_rate().to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..5)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    for row in &rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < row.len() {
                line.extend(std::iter::repeat_n(
                    ' ',
                    widths[c] - cell.chars().count() + 2,
                ));
            }
        }
        writeln!(out, "{line}").map_err(Failure::output)?;
    }
    Ok(())
}
