//! Extreme value index estimators.
//!
//! The root estimator solves, for `1 < k' < k < n`,
//!
//! ```text
//! H(θ) = [φ_θ(1/k') / φ_θ(1/k)] · (X(n-k+1) - X(n)) / (X(n-k'+1) - X(n)) = 1
//! ```
//!
//! `H` is non-decreasing in θ, tends to 0 as θ → -∞ and to `1 + Z` as
//! θ → +∞, where `Z = (X(n-k+1) - X(n-k'+1)) / (X(n-k'+1) - X(n))`. So a root
//! exists and is unique whenever `Z > 0`. It is found by expanding a
//! symmetric bracket `[-2^m, 2^m]` and bisecting.
//!
//! The classical baselines (Hill, Pickands, moment, generalized Zipf) are
//! direct formula evaluations on the upper order statistics.

use std::fmt;
use std::str::FromStr;

use crate::asymptotics::{mu, v_k};
use crate::error::{Error, Result};
use crate::sample::OrderedSample;
use crate::special::PHI_LOG_THRESHOLD;

/// Bisection stops once the bracket is this narrow.
pub const ROOT_TOLERANCE: f64 = 1e-10;
/// Largest `|θ|` searched, as a power of two (`2^6 = 64`).
pub const MAX_BRACKET_EXPONENT: i32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EstimatorKind {
    Gg,
    GgStar,
    Hill,
    Pickands,
    Moment,
    Zipf,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 6] = [
        EstimatorKind::Gg,
        EstimatorKind::GgStar,
        EstimatorKind::Hill,
        EstimatorKind::Pickands,
        EstimatorKind::Moment,
        EstimatorKind::Zipf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::Gg => "gg",
            EstimatorKind::GgStar => "gg_star",
            EstimatorKind::Hill => "hill",
            EstimatorKind::Pickands => "pickands",
            EstimatorKind::Moment => "moment",
            EstimatorKind::Zipf => "zipf",
        }
    }

    /// Whether the estimator takes a `(k, k')` pair.
    pub fn uses_ratio(self) -> bool {
        matches!(self, EstimatorKind::Gg | EstimatorKind::GgStar)
    }

    /// Smallest admissible `k`, given the ratio `c` for the root estimators.
    pub fn min_k(self, c: f64) -> usize {
        match self {
            // ⌊k/c⌋ >= 2
            EstimatorKind::Gg | EstimatorKind::GgStar => {
                let mut k = (2.0 * c).floor().max(3.0) as usize;
                while ((k as f64) / c).floor() < 2.0 {
                    k += 1;
                }
                k
            }
            EstimatorKind::Zipf => 2,
            _ => 1,
        }
    }

    /// Largest admissible `k` for a sample of size `n`.
    pub fn max_k(self, n: usize) -> usize {
        match self {
            EstimatorKind::Pickands => n / 4,
            _ => n.saturating_sub(1),
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        EstimatorKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown estimator {s:?}")))
    }
}

/// The `(k, k')` pair of the root estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GgConfig {
    k: usize,
    k_prime: usize,
}

impl GgConfig {
    pub fn new(k: usize, k_prime: usize) -> Result<Self> {
        if k_prime < 2 || k_prime >= k {
            return Err(Error::Config(format!(
                "root estimator needs 1 < k' < k, got k={k}, k'={k_prime}"
            )));
        }
        Ok(Self { k, k_prime })
    }

    /// `k' = ⌊k/c⌋`; the realized ratio `k/k'` may differ from `c`.
    pub fn from_ratio(k: usize, c: f64) -> Result<Self> {
        if !(c > 1.0 && c.is_finite()) {
            return Err(Error::Config(format!(
                "ratio c must be finite and > 1, got {c}"
            )));
        }
        let k_prime = (k as f64 / c).floor() as usize;
        if k_prime < 2 {
            return Err(Error::Config(format!(
                "k'=floor({k}/{c})={k_prime} must be at least 2"
            )));
        }
        Self::new(k, k_prime)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn k_prime(&self) -> usize {
        self.k_prime
    }

    /// Realized ratio `c = k/k'`.
    pub fn c(&self) -> f64 {
        self.k as f64 / self.k_prime as f64
    }

    fn check_sample(&self, s: &OrderedSample) -> Result<()> {
        if self.k >= s.len() {
            return Err(Error::Config(format!(
                "root estimator needs k < n, got k={}, n={}",
                self.k,
                s.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacingStatistics {
    /// `Z = num/den`.
    pub z: f64,
    /// `X(n-k+1) - X(n-k'+1)`.
    pub num: f64,
    /// `X(n-k'+1) - X(n)`.
    pub den: f64,
}

impl SpacingStatistics {
    pub fn new(s: &OrderedSample, cfg: &GgConfig) -> Result<Self> {
        cfg.check_sample(s)?;
        let top = s.upper(1)?;
        let mid = s.upper(cfg.k_prime)?;
        let low = s.upper(cfg.k)?;
        let num = low - mid;
        let den = mid - top;
        let z = if den != 0.0 { num / den } else { f64::NAN };
        Ok(Self { z, num, den })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootDiagnostics {
    pub iterations: u32,
    pub bracket_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateResult {
    pub xi_hat: f64,
    pub estimator: EstimatorKind,
    pub k: usize,
    pub k_prime: Option<usize>,
    pub diagnostics: Option<RootDiagnostics>,
}

impl EstimateResult {
    fn plain(estimator: EstimatorKind, k: usize, xi_hat: f64) -> Self {
        Self {
            xi_hat,
            estimator,
            k,
            k_prime: None,
            diagnostics: None,
        }
    }
}

/// `φ_θ(1/k') / φ_θ(1/k)` written so that neither factor overflows for
/// large negative θ. `ln_kp < ln_k`.
fn phi_ratio(theta: f64, ln_kp: f64, ln_k: f64) -> f64 {
    if theta.abs() < PHI_LOG_THRESHOLD {
        ln_kp / ln_k
    } else if theta > 0.0 {
        (-theta * ln_kp).exp_m1() / (-theta * ln_k).exp_m1()
    } else {
        // (k'^-θ - 1)/(k^-θ - 1) = (k'/k)^-θ · (1 - k'^θ)/(1 - k^θ)
        (theta * (ln_k - ln_kp)).exp() * (theta * ln_kp).exp_m1() / (theta * ln_k).exp_m1()
    }
}

/// `1 - φ_θ(1/k') / φ_θ(1/k)` without cancellation.
fn one_minus_phi_ratio(theta: f64, ln_kp: f64, ln_k: f64) -> f64 {
    let d = ln_k - ln_kp;
    if theta.abs() < PHI_LOG_THRESHOLD {
        d / ln_k
    } else if theta > 0.0 {
        (-theta * ln_kp).exp() * (-theta * d).exp_m1() / (-theta * ln_k).exp_m1()
    } else {
        (theta * d).exp_m1() / (theta * ln_k).exp_m1()
    }
}

/// Evaluates `H(θ)`. Fails with [`Error::Tie`] when `X(n-k'+1) = X(n)`.
pub fn h_function(s: &OrderedSample, cfg: &GgConfig, theta: f64) -> Result<f64> {
    let solver = RootEquation::new(s, cfg)?;
    Ok(solver.eval(theta))
}

struct RootEquation {
    ln_kp: f64,
    ln_k: f64,
    /// `(X(n-k+1) - X(n)) / (X(n-k'+1) - X(n)) = 1 + Z`
    spacing_ratio: f64,
    stats: SpacingStatistics,
}

impl RootEquation {
    fn new(s: &OrderedSample, cfg: &GgConfig) -> Result<Self> {
        let stats = SpacingStatistics::new(s, cfg)?;
        if stats.den == 0.0 {
            return Err(Error::Tie(format!(
                "X(n-k'+1) equals X(n) for k'={}",
                cfg.k_prime
            )));
        }
        let top = s.upper(1)?;
        let spacing_ratio = (s.upper(cfg.k)? - top) / stats.den;
        Ok(Self {
            ln_kp: (cfg.k_prime as f64).ln(),
            ln_k: (cfg.k as f64).ln(),
            spacing_ratio,
            stats,
        })
    }

    fn eval(&self, theta: f64) -> f64 {
        phi_ratio(theta, self.ln_kp, self.ln_k) * self.spacing_ratio
    }

    fn solve(&self) -> Result<(f64, RootDiagnostics)> {
        if self.stats.num == 0.0 {
            return Err(Error::RootAtInfinity);
        }
        // H - 1 = (1 - q)(1 + Z) - 1 = (1 - q)Z - q
        let z = self.stats.num / self.stats.den;
        let g = |theta: f64| {
            let q = one_minus_phi_ratio(theta, self.ln_kp, self.ln_k);
            (1.0 - q) * z - q
        };

        let mut bracket = None;
        for m in 0..=MAX_BRACKET_EXPONENT {
            let r = 2f64.powi(m);
            let (g_lo, g_hi) = (g(-r), g(r));
            if g_lo == 0.0 {
                return Ok((
                    -r,
                    RootDiagnostics {
                        iterations: 0,
                        bracket_width: 0.0,
                    },
                ));
            }
            if g_hi == 0.0 {
                return Ok((
                    r,
                    RootDiagnostics {
                        iterations: 0,
                        bracket_width: 0.0,
                    },
                ));
            }
            if g_lo < 0.0 && g_hi > 0.0 {
                bracket = Some((-r, r));
                break;
            }
        }
        let (mut lo, mut hi) = bracket.ok_or(Error::BracketCap {
            cap: 2f64.powi(MAX_BRACKET_EXPONENT),
        })?;

        let mut iterations = 0;
        while hi - lo > ROOT_TOLERANCE {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let v = g(mid);
            if v == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if v < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            iterations += 1;
        }
        Ok((
            0.5 * (lo + hi),
            RootDiagnostics {
                iterations,
                bracket_width: hi - lo,
            },
        ))
    }
}

/// The root estimator `ξ̂(k, k')`.
pub fn gg_estimate(s: &OrderedSample, cfg: &GgConfig) -> Result<EstimateResult> {
    let (xi_hat, diag) = RootEquation::new(s, cfg)?.solve()?;
    Ok(EstimateResult {
        xi_hat,
        estimator: EstimatorKind::Gg,
        k: cfg.k,
        k_prime: Some(cfg.k_prime),
        diagnostics: Some(diag),
    })
}

/// `ξ̂* = ξ̂ - μ(ξ̂)/V_k(ξ̂)` with `c = k/k'`.
pub fn gg_bias_corrected(s: &OrderedSample, cfg: &GgConfig) -> Result<EstimateResult> {
    let raw = gg_estimate(s, cfg)?;
    Ok(EstimateResult {
        xi_hat: bias_correct(raw.xi_hat, cfg),
        estimator: EstimatorKind::GgStar,
        ..raw
    })
}

pub(crate) fn bias_correct(xi_hat: f64, cfg: &GgConfig) -> f64 {
    let shift = mu(xi_hat, cfg.c());
    if shift == 0.0 {
        return xi_hat;
    }
    xi_hat - shift / v_k(xi_hat, cfg.k)
}

fn check_k(name: &str, k: usize, lo: usize, hi: usize) -> Result<()> {
    if k < lo || k > hi {
        return Err(Error::Config(format!(
            "{name} needs {lo} <= k <= {hi}, got k={k}"
        )));
    }
    Ok(())
}

/// Log-excesses `ln X(n-i+1) - ln X(n-k)` for `i = 1..=k`.
fn log_excesses(s: &OrderedSample, k: usize) -> Result<Vec<f64>> {
    let threshold = s.upper(k + 1)?;
    if threshold <= 0.0 {
        return Err(Error::Domain(format!(
            "log of non-positive order statistic X(n-k)={threshold}"
        )));
    }
    let base = threshold.ln();
    (1..=k).map(|i| Ok(s.upper(i)?.ln() - base)).collect()
}

pub fn hill(s: &OrderedSample, k: usize) -> Result<EstimateResult> {
    check_k("hill", k, 1, s.len() - 1)?;
    let ex = log_excesses(s, k)?;
    let xi = ex.iter().sum::<f64>() / k as f64;
    Ok(EstimateResult::plain(EstimatorKind::Hill, k, xi))
}

pub fn pickands(s: &OrderedSample, k: usize) -> Result<EstimateResult> {
    check_k("pickands", k, 1, s.len() / 4)?;
    let upper = s.upper(k)? - s.upper(2 * k)?;
    let lower = s.upper(2 * k)? - s.upper(4 * k)?;
    if upper <= 0.0 || lower <= 0.0 {
        return Err(Error::Tie(format!("zero Pickands spacing at k={k}")));
    }
    let xi = (upper / lower).ln() / std::f64::consts::LN_2;
    Ok(EstimateResult::plain(EstimatorKind::Pickands, k, xi))
}

/// Moment estimator: `ξ̂H + 1 - ½ [1 - ξ̂H²/S]⁻¹` with `S` the mean squared
/// log-excess.
pub fn moment(s: &OrderedSample, k: usize) -> Result<EstimateResult> {
    check_k("moment", k, 1, s.len() - 1)?;
    let ex = log_excesses(s, k)?;
    let kf = k as f64;
    let h = ex.iter().sum::<f64>() / kf;
    let s2 = ex.iter().map(|e| e * e).sum::<f64>() / kf;
    // S >= H² always; equality (up to rounding) leaves the bracket at zero
    if s2 == 0.0 || (s2 - h * h) <= 1e-12 * s2 {
        return Err(Error::DegenerateMoment);
    }
    let xi = h + 1.0 - 0.5 / (1.0 - h * h / s2);
    Ok(EstimateResult::plain(EstimatorKind::Moment, k, xi))
}

/// Generalized Zipf estimator: weighted least-squares slope of
/// `ln UH(j)` against `ln((k+1)/j)`, with
/// `UH(j) = X(n-j) · [mean_{i<=j} ln X(n-i+1) - ln X(n-j)]`.
pub fn zipf(s: &OrderedSample, k: usize) -> Result<EstimateResult> {
    check_k("zipf", k, 2, s.len() - 1)?;
    let mut log_uh = Vec::with_capacity(k);
    let mut cum_log = 0.0;
    for j in 1..=k {
        let x_top = s.upper(j)?;
        let x_next = s.upper(j + 1)?;
        if x_next <= 0.0 {
            return Err(Error::Domain(format!(
                "non-positive order statistic X(n-{j})={x_next}"
            )));
        }
        cum_log += x_top.ln();
        let uh = x_next * (cum_log / j as f64 - x_next.ln());
        if uh.is_nan() || uh <= 0.0 {
            return Err(Error::Domain(format!("UH({j}) = {uh} is not positive")));
        }
        log_uh.push(uh.ln());
    }
    let kp1 = (k + 1) as f64;
    let weights: Vec<f64> = (1..=k).map(|j| (kp1 / j as f64).ln()).collect();
    let xi = regression_slope(&weights, &log_uh);
    Ok(EstimateResult::plain(EstimatorKind::Zipf, k, xi))
}

fn regression_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let sxx: f64 = x.iter().map(|a| a * a).sum();
    (sxy - sx * sy / n) / (sxx - sx * sx / n)
}

/// Runs one estimator at `k`; the root estimators use `k' = ⌊k/c⌋`.
pub fn estimate(
    kind: EstimatorKind,
    s: &OrderedSample,
    k: usize,
    c: f64,
) -> Result<EstimateResult> {
    match kind {
        EstimatorKind::Gg => gg_estimate(s, &GgConfig::from_ratio(k, c)?),
        EstimatorKind::GgStar => gg_bias_corrected(s, &GgConfig::from_ratio(k, c)?),
        EstimatorKind::Hill => hill(s, k),
        EstimatorKind::Pickands => pickands(s, k),
        EstimatorKind::Moment => moment(s, k),
        EstimatorKind::Zipf => zipf(s, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{euler_gamma, phi};
    use proptest::prelude::*;
    use std::f64::consts::{E, LN_2};

    /// Sample whose i-th largest value is φ_ξ(1/i).
    fn fixed_point_sample(xi: f64, n: usize) -> OrderedSample {
        let data: Vec<f64> = (1..=n).map(|i| phi(xi, 1.0 / i as f64).unwrap()).collect();
        OrderedSample::from_raw(&data).unwrap()
    }

    fn sample(v: &[f64]) -> OrderedSample {
        OrderedSample::from_raw(v).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(GgConfig::new(40, 10).is_ok());
        assert!(GgConfig::new(40, 1).is_err());
        assert!(GgConfig::new(10, 10).is_err());
        let cfg = GgConfig::from_ratio(42, 4.0).unwrap();
        assert_eq!(cfg.k_prime(), 10);
        assert_eq!(cfg.c(), 4.2);
        assert!(GgConfig::from_ratio(7, 4.0).is_err());
        assert!(GgConfig::from_ratio(8, 4.0).is_ok());
        assert!(GgConfig::from_ratio(8, 1.0).is_err());
        let s = fixed_point_sample(0.0, 40);
        assert!(gg_estimate(&s, &GgConfig::new(40, 10).unwrap()).is_err());
    }

    #[test]
    fn min_k_matches_from_ratio() {
        for &c in &[1.5, 2.0, 3.3, 4.0, 7.9] {
            let k = EstimatorKind::Gg.min_k(c);
            assert!(GgConfig::from_ratio(k, c).is_ok(), "c={c} k={k}");
            assert!(GgConfig::from_ratio(k - 1, c).is_err(), "c={c} k={}", k - 1);
        }
    }

    #[test]
    fn h_at_fixed_point_is_one() {
        for &xi in &[-1.0, 0.0, 0.5, 3.0] {
            let s = fixed_point_sample(xi, 100);
            let cfg = GgConfig::new(40, 10).unwrap();
            assert!((h_function(&s, &cfg, xi).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn h_limits() {
        let s = fixed_point_sample(-1.0, 100);
        let cfg = GgConfig::new(40, 10).unwrap();
        let stats = SpacingStatistics::new(&s, &cfg).unwrap();
        assert!((stats.num + 30.0).abs() < 1e-12);
        assert!((stats.den + 9.0).abs() < 1e-12);
        assert!(h_function(&s, &cfg, -60.0).unwrap() < 1e-30);
        let far = h_function(&s, &cfg, 1e6).unwrap();
        assert!((far - (1.0 + stats.z)).abs() < 1e-4);
    }

    #[test]
    fn h_with_zero_num_tends_to_one() {
        // X(n-k+1) = X(n-k'+1): Z = 0
        let mut data: Vec<f64> = (0..100).map(|i| i as f64).collect();
        for v in data.iter_mut().take(91).skip(60) {
            *v = 60.0;
        }
        let s = sample(&data);
        let cfg = GgConfig::new(40, 10).unwrap();
        let stats = SpacingStatistics::new(&s, &cfg).unwrap();
        assert_eq!(stats.num, 0.0);
        assert!((h_function(&s, &cfg, 1e8).unwrap() - 1.0).abs() < 1e-7);
        assert!(h_function(&s, &cfg, 2.0).unwrap() < 1.0);
        assert!(h_function(&s, &cfg, 64.0).unwrap() <= 1.0);
        assert!(matches!(gg_estimate(&s, &cfg), Err(Error::RootAtInfinity)));
    }

    #[test]
    fn h_oracle_value() {
        // direct evaluation: [φ_-0.5(1/10)/φ_-0.5(1/40)]·(-39)/(-9)
        let s = fixed_point_sample(-1.0, 100);
        let cfg = GgConfig::new(40, 10).unwrap();
        let h = h_function(&s, &cfg, -0.5).unwrap();
        assert!((h - 1.759_746_926_647_957_7).abs() < 1e-13, "{h}");
    }

    #[test]
    fn h_tie_error() {
        let mut data: Vec<f64> = (0..100).map(|i| i as f64).collect();
        for v in data.iter_mut().skip(90) {
            *v = 99.0;
        }
        let s = sample(&data);
        let cfg = GgConfig::new(40, 10).unwrap();
        assert!(matches!(h_function(&s, &cfg, 0.0), Err(Error::Tie(_))));
        assert!(matches!(gg_estimate(&s, &cfg), Err(Error::Tie(_))));
    }

    #[test]
    fn gg_fixed_point_examples() {
        let cases = [(0.0, 100, 40, 10), (-1.0, 100, 40, 10), (3.0, 200, 80, 20)];
        for (xi, n, k, kp) in cases {
            let s = fixed_point_sample(xi, n);
            let r = gg_estimate(&s, &GgConfig::new(k, kp).unwrap()).unwrap();
            assert!((r.xi_hat - xi).abs() < 1e-8, "xi={xi}: {}", r.xi_hat);
            assert_eq!(r.k_prime, Some(kp));
            let d = r.diagnostics.unwrap();
            assert!(d.bracket_width <= ROOT_TOLERANCE);
            assert!(d.iterations <= 60);
        }
    }

    #[test]
    fn gg_bracket_cap() {
        // 1 + Z = 1e12 puts the root below θ = -64
        let s = sample(&[-2e12, -1e12, -1.0, 0.0]);
        let r = gg_estimate(&s, &GgConfig::new(3, 2).unwrap());
        assert!(matches!(r, Err(Error::BracketCap { .. })), "{r:?}");
    }

    #[test]
    fn gg_star_examples() {
        // ξ̂ < -1/2: μ = 0, no correction
        let s = fixed_point_sample(-1.0, 100);
        let cfg = GgConfig::new(40, 10).unwrap();
        let a = gg_estimate(&s, &cfg).unwrap();
        let b = gg_bias_corrected(&s, &cfg).unwrap();
        assert_eq!(a.xi_hat, b.xi_hat);
        assert_eq!(b.estimator, EstimatorKind::GgStar);

        assert_eq!(bias_correct(0.0, &cfg), 0.0);

        // 1 - γ/((1 - 1/100)·ln 100)
        let cfg = GgConfig::new(100, 25).unwrap();
        let v = bias_correct(1.0, &cfg);
        assert!((v - 0.873_393_142_356_135_2).abs() < 1e-12, "{v}");
        assert!((v - (1.0 - euler_gamma() / (0.99 * 100f64.ln()))).abs() < 1e-12);
    }

    #[test]
    fn hill_examples() {
        let r = hill(&sample(&[1.0, 2.0, 4.0, 8.0]), 3).unwrap();
        assert!((r.xi_hat - 2.0 * LN_2).abs() < 1e-12);
        assert_eq!(
            hill(&sample(&[1.0, 3.0, 3.0, 3.0, 3.0]), 3).unwrap().xi_hat,
            0.0
        );
        let r = hill(&sample(&[1.0, E, E, E]), 3).unwrap();
        assert!((r.xi_hat - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hill_errors() {
        let s = sample(&[-1.0, 2.0, 4.0, 8.0]);
        assert!(matches!(hill(&s, 3), Err(Error::Domain(_))));
        assert!(hill(&s, 0).is_err());
        assert!(hill(&s, 4).is_err());
    }

    #[test]
    fn pickands_examples() {
        let s = sample(&[0.0, 0.2, 0.4, 0.6, 1.0, 2.0, 3.0, 5.0]);
        assert!((pickands(&s, 2).unwrap().xi_hat - 1.0).abs() < 1e-15);
        let s = sample(&[0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(pickands(&s, 2).unwrap().xi_hat, 0.0);
        // {1 - i}: spacings 25 and 50
        let s = fixed_point_sample(-1.0, 100);
        assert!((pickands(&s, 25).unwrap().xi_hat + 1.0).abs() < 1e-15);
    }

    #[test]
    fn pickands_errors() {
        let s = sample(&[1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 3.0, 5.0]);
        assert!(matches!(pickands(&s, 2), Err(Error::Tie(_))));
        assert!(pickands(&s, 3).is_err());
        assert!(pickands(&s, 0).is_err());
    }

    #[test]
    fn moment_examples() {
        let r = moment(&sample(&[1.0, 2.0, 4.0, 8.0]), 3).unwrap();
        assert!((r.xi_hat - (2.0 * LN_2 - 2.5)).abs() < 1e-12);
        assert!((r.xi_hat + 1.113_705_638_880_109).abs() < 1e-12);
    }

    #[test]
    fn moment_degenerate() {
        // every log-excess equals 1
        let s = sample(&[0.5, 1.0, E, E, E]);
        assert!(matches!(moment(&s, 3), Err(Error::DegenerateMoment)));
        let s = sample(&[1.0, 2.0, 2.0, 2.0]);
        assert!(matches!(moment(&s, 2), Err(Error::DegenerateMoment)));
    }

    #[test]
    fn zipf_examples() {
        // UH1 = 4 ln 2, UH2 = 3 ln 2; two-point slope ln(4/3)/ln(3/1.5)
        let r = zipf(&sample(&[1.0, 2.0, 4.0, 8.0]), 2).unwrap();
        let oracle = (4.0f64 / 3.0).ln() / (3.0f64.ln() - 1.5f64.ln());
        assert!((r.xi_hat - oracle).abs() < 1e-9);
        assert!((r.xi_hat - 0.415_037_499_278_843_5).abs() < 1e-9);
        assert_eq!(regression_slope(&[1.0, 2.0, 3.0], &[0.7, 0.7, 0.7]), 0.0);
    }

    #[test]
    fn zipf_errors() {
        assert!(matches!(
            zipf(&sample(&[-1.0, 0.0, 4.0, 8.0]), 2),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            zipf(&sample(&[1.0, 8.0, 8.0, 8.0]), 2),
            Err(Error::Domain(_))
        ));
        assert!(zipf(&sample(&[1.0, 2.0, 4.0, 8.0]), 1).is_err());
    }

    #[test]
    fn dispatch_and_names() {
        let s = fixed_point_sample(0.0, 100);
        let r = estimate(EstimatorKind::Gg, &s, 40, 4.0).unwrap();
        assert_eq!(r.k_prime, Some(10));
        assert!(r.xi_hat.abs() < 1e-8);
        for kind in EstimatorKind::ALL {
            assert_eq!(kind.name().parse::<EstimatorKind>().unwrap(), kind);
        }
        assert!("foo".parse::<EstimatorKind>().is_err());
    }

    fn arb_xi0() -> impl Strategy<Value = f64> {
        prop::sample::select(vec![-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0])
    }

    fn arb_sample() -> impl Strategy<Value = OrderedSample> {
        prop::collection::vec(0.01f64..100.0, 30..120).prop_map(|v| sample(&v))
    }

    proptest! {
        #[test]
        fn fixed_point_for_all_k(xi in arb_xi0(), kp in 2usize..40, extra in 1usize..60) {
            let k = kp + extra;
            let s = fixed_point_sample(xi, k + 1 + extra);
            let r = gg_estimate(&s, &GgConfig::new(k, kp).unwrap()).unwrap();
            prop_assert!((r.xi_hat - xi).abs() < 1e-8, "xi={} k={} k'={} got {}", xi, k, kp, r.xi_hat);
        }

        #[test]
        fn h_monotone(s in arb_sample(), mut thetas in prop::collection::vec(-20.0f64..20.0, 2..30)) {
            let cfg = GgConfig::new(24, 6).unwrap();
            thetas.sort_by(f64::total_cmp);
            let hs: Vec<f64> = thetas.iter().map(|&t| h_function(&s, &cfg, t).unwrap()).collect();
            for w in hs.windows(2) {
                prop_assert!(w[0] <= w[1] + 1e-12);
            }
        }

        #[test]
        fn solver_hits_root(s in arb_sample()) {
            let cfg = GgConfig::new(24, 6).unwrap();
            if let Ok(r) = gg_estimate(&s, &cfg) {
                let h = h_function(&s, &cfg, r.xi_hat).unwrap();
                prop_assert!((h - 1.0).abs() <= 1e-8);
            }
        }

        #[test]
        fn location_scale_invariance(s in arb_sample(), a in 0.05f64..20.0, b in -50.0f64..50.0) {
            let t = s.affine(a, b).unwrap();
            let cfg = GgConfig::new(24, 6).unwrap();
            let (x, y) = (gg_estimate(&s, &cfg).unwrap(), gg_estimate(&t, &cfg).unwrap());
            prop_assert!((x.xi_hat - y.xi_hat).abs() < 1e-8);
            let (x, y) = (gg_bias_corrected(&s, &cfg).unwrap(), gg_bias_corrected(&t, &cfg).unwrap());
            prop_assert!((x.xi_hat - y.xi_hat).abs() < 1e-8);
            let (x, y) = (pickands(&s, 7).unwrap(), pickands(&t, 7).unwrap());
            prop_assert!((x.xi_hat - y.xi_hat).abs() < 1e-8);
        }

        #[test]
        fn scale_invariance_log_based(s in arb_sample(), a in 0.05f64..20.0) {
            let t = s.affine(a, 0.0).unwrap();
            for k in [5usize, 20] {
                prop_assert!((hill(&s, k).unwrap().xi_hat - hill(&t, k).unwrap().xi_hat).abs() < 1e-9);
                if let (Ok(x), Ok(y)) = (moment(&s, k), moment(&t, k)) {
                    prop_assert!((x.xi_hat - y.xi_hat).abs() < 1e-7);
                }
                prop_assert!((zipf(&s, k).unwrap().xi_hat - zipf(&t, k).unwrap().xi_hat).abs() < 1e-7);
            }
        }
    }
}
