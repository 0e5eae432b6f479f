//! Test distributions with known extreme value index.
//!
//! | family        | F(x)                                   | ξ          |
//! |---------------|----------------------------------------|------------|
//! | WeibullM      | exp[-(1+ξx)^(-1/ξ)], 1+ξx > 0          | ξ          |
//! | Burr          | 1 - [w/(w+x^τ)]^λ, x > 0               | 1/(λτ)     |
//! | Frechet       | exp(-x^(-1/ξ)), x > 0                  | ξ          |
//! | Weibull       | 1 - exp(-λx^τ), x > 0                  | 0          |
//! | StandardNormal| Φ(x)                                   | 0          |
//! | ReversedBurr  | 1 - [w/(w+(x_F-x)^(-τ))]^λ, x < x_F    | -1/(λτ)    |
//!
//! Every sampler is inverse-transform: uniforms from a [`SeededStream`] are
//! pushed through the closed-form quantile. Quantiles are evaluated from the
//! pair `(p, 1-p)` so upper-tail levels do not lose digits to cancellation.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sample::OrderedSample;
use crate::special::{normal_cdf, normal_quantile_pq, phi};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    WeibullM,
    Burr,
    Frechet,
    Weibull,
    StandardNormal,
    ReversedBurr,
}

/// Second-order tail classification, documentation only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelClass {
    A,
    B,
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelClass::A => f.write_str("Model A"),
            ModelClass::B => f.write_str("Model B"),
        }
    }
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::WeibullM,
        Family::Burr,
        Family::Frechet,
        Family::Weibull,
        Family::StandardNormal,
        Family::ReversedBurr,
    ];

    /// Name used in config files and on the command line.
    pub fn key(self) -> &'static str {
        match self {
            Family::WeibullM => "weibullm",
            Family::Burr => "burr",
            Family::Frechet => "frechet",
            Family::Weibull => "weibull",
            Family::StandardNormal => "normal",
            Family::ReversedBurr => "reversedburr",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Family::WeibullM => "WeibullM",
            Family::Burr => "Burr",
            Family::Frechet => "Frechet",
            Family::Weibull => "Weibull",
            Family::StandardNormal => "Normal",
            Family::ReversedBurr => "ReversedBurr",
        }
    }

    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Family::WeibullM | Family::Frechet => &["xi"],
            Family::Burr => &["w", "tau", "lambda"],
            Family::Weibull => &["lambda", "tau"],
            Family::StandardNormal => &[],
            Family::ReversedBurr => &["w", "tau", "lambda", "xf"],
        }
    }

    pub fn xi_formula(self) -> &'static str {
        match self {
            Family::WeibullM | Family::Frechet => "ξ=xi",
            Family::Burr => "ξ=1/(λτ)",
            Family::Weibull | Family::StandardNormal => "ξ=0",
            Family::ReversedBurr => "ξ=-1/(λτ)",
        }
    }

    pub fn model_class(self) -> ModelClass {
        match self {
            Family::Weibull | Family::StandardNormal => ModelClass::B,
            _ => ModelClass::A,
        }
    }

    /// Second-order parameter β as a formula string.
    pub fn beta(self) -> &'static str {
        match self {
            Family::WeibullM | Family::Frechet => "1",
            Family::Burr | Family::ReversedBurr => "1/λ",
            Family::Weibull => "1-1/τ",
            Family::StandardNormal => "1/2",
        }
    }

    /// Best attainable convergence rate of the root estimator.
    pub fn best_rate(self) -> &'static str {
        match self {
            Family::WeibullM => "ln(n) if ξ>0; ln²(n) if ξ=0; n^(δ/(1+δ/β)-ε) if ξ<0",
            Family::Burr | Family::Frechet => "ln(n)",
            Family::Weibull | Family::StandardNormal => "ln₂²(n)",
            Family::ReversedBurr => "n^(δ/(1+δ/β)-ε)",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['_', '-'], "");
        match key.as_str() {
            "weibullm" | "gev" => Ok(Family::WeibullM),
            "burr" => Ok(Family::Burr),
            "frechet" => Ok(Family::Frechet),
            "weibull" => Ok(Family::Weibull),
            "normal" | "standardnormal" => Ok(Family::StandardNormal),
            "reversedburr" => Ok(Family::ReversedBurr),
            _ => Err(Error::Config(format!(
                "unknown distribution family {:?}",
                s.trim()
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionSpec {
    WeibullM {
        xi: f64,
    },
    Burr {
        w: f64,
        tau: f64,
        lambda: f64,
    },
    Frechet {
        xi: f64,
    },
    Weibull {
        lambda: f64,
        tau: f64,
    },
    StandardNormal,
    ReversedBurr {
        w: f64,
        tau: f64,
        lambda: f64,
        x_f: f64,
    },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "parameter {name} must be positive and finite, got {v}"
        )))
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "parameter {name} must be finite, got {v}"
        )))
    }
}

impl DistributionSpec {
    pub fn weibull_m(xi: f64) -> Result<Self> {
        finite("xi", xi)?;
        Ok(Self::WeibullM { xi })
    }

    pub fn burr(w: f64, tau: f64, lambda: f64) -> Result<Self> {
        positive("w", w)?;
        positive("tau", tau)?;
        positive("lambda", lambda)?;
        Ok(Self::Burr { w, tau, lambda })
    }

    pub fn frechet(xi: f64) -> Result<Self> {
        positive("xi", xi)?;
        Ok(Self::Frechet { xi })
    }

    pub fn weibull(lambda: f64, tau: f64) -> Result<Self> {
        positive("lambda", lambda)?;
        positive("tau", tau)?;
        Ok(Self::Weibull { lambda, tau })
    }

    pub fn standard_normal() -> Self {
        Self::StandardNormal
    }

    pub fn reversed_burr(w: f64, tau: f64, lambda: f64, x_f: f64) -> Result<Self> {
        positive("w", w)?;
        positive("tau", tau)?;
        positive("lambda", lambda)?;
        finite("xf", x_f)?;
        Ok(Self::ReversedBurr {
            w,
            tau,
            lambda,
            x_f,
        })
    }

    /// Re-checks the parameter constraints, e.g. after building a variant directly.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::WeibullM { xi } => Self::weibull_m(xi).map(drop),
            Self::Burr { w, tau, lambda } => Self::burr(w, tau, lambda).map(drop),
            Self::Frechet { xi } => Self::frechet(xi).map(drop),
            Self::Weibull { lambda, tau } => Self::weibull(lambda, tau).map(drop),
            Self::StandardNormal => Ok(()),
            Self::ReversedBurr {
                w,
                tau,
                lambda,
                x_f,
            } => Self::reversed_burr(w, tau, lambda, x_f).map(drop),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Self::WeibullM { .. } => Family::WeibullM,
            Self::Burr { .. } => Family::Burr,
            Self::Frechet { .. } => Family::Frechet,
            Self::Weibull { .. } => Family::Weibull,
            Self::StandardNormal => Family::StandardNormal,
            Self::ReversedBurr { .. } => Family::ReversedBurr,
        }
    }

    pub fn true_xi(&self) -> f64 {
        match *self {
            Self::WeibullM { xi } | Self::Frechet { xi } => xi,
            Self::Burr { tau, lambda, .. } => 1.0 / (lambda * tau),
            Self::Weibull { .. } | Self::StandardNormal => 0.0,
            Self::ReversedBurr { tau, lambda, .. } => -1.0 / (lambda * tau),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Self::WeibullM { xi } => {
                if xi == 0.0 {
                    return (-(-x).exp()).exp();
                }
                if 1.0 + xi * x <= 0.0 {
                    return if xi > 0.0 { 0.0 } else { 1.0 };
                }
                (-(-(xi * x).ln_1p() / xi).exp()).exp()
            }
            Self::Burr { w, tau, lambda } => burr_cdf(x, w, tau, lambda),
            Self::Frechet { xi } => {
                if x <= 0.0 {
                    0.0
                } else {
                    (-x.powf(-1.0 / xi)).exp()
                }
            }
            Self::Weibull { lambda, tau } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-lambda * x.powf(tau)).exp_m1()
                }
            }
            Self::StandardNormal => normal_cdf(x),
            Self::ReversedBurr {
                w,
                tau,
                lambda,
                x_f,
            } => {
                if x >= x_f {
                    1.0
                } else {
                    burr_cdf(1.0 / (x_f - x), w, tau, lambda)
                }
            }
        }
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!(
                "probability must lie in (0,1), got {p}"
            )));
        }
        Ok(self.quantile_pq(p, 1.0 - p))
    }

    /// Tail quantile function `U(v) = F⁻¹(1 - 1/v)` for `v > 1`.
    pub fn tail_quantile(&self, v: f64) -> Result<f64> {
        if !(v > 1.0 && v.is_finite()) {
            return Err(Error::Domain(format!(
                "tail quantile needs finite v > 1, got {v}"
            )));
        }
        let q = 1.0 / v;
        Ok(self.quantile_pq(1.0 - q, q))
    }

    /// `F⁻¹(p)` with `q = 1 - p` supplied separately; `p, q ∈ (0, 1)`.
    fn quantile_pq(&self, p: f64, q: f64) -> f64 {
        match *self {
            Self::WeibullM { xi } => {
                let e = neg_ln(p, q);
                // x = ((-ln p)^(-ξ) - 1)/ξ, continuous through ξ = 0
                -phi(-xi, e).expect("-ln p > 0 on (0,1)")
            }
            Self::Burr { w, tau, lambda } => burr_quantile(p, q, w, tau, lambda),
            Self::Frechet { xi } => neg_ln(p, q).powf(-xi),
            Self::Weibull { lambda, tau } => (neg_ln(q, p) / lambda).powf(1.0 / tau),
            Self::StandardNormal => normal_quantile_pq(p, q),
            Self::ReversedBurr {
                w,
                tau,
                lambda,
                x_f,
            } => x_f - 1.0 / burr_quantile(p, q, w, tau, lambda),
        }
    }

    /// Draws `n` values by inverse transform and returns them sorted.
    pub fn sample(&self, n: usize, stream: SeededStream) -> Result<OrderedSample> {
        if n < 2 {
            return Err(Error::TooFewValues(n));
        }
        let mut rng = stream.rng();
        let data: Vec<f64> = (0..n)
            .map(|_| {
                let p = open_unit(&mut rng);
                self.quantile_pq(p, 1.0 - p)
            })
            .collect();
        OrderedSample::from_raw(&data)
    }
}

/// `-ln p` given `p` and `q = 1 - p`, accurate when `p` is close to 1.
fn neg_ln(p: f64, q: f64) -> f64 {
    if p > 0.5 {
        -(-q).ln_1p()
    } else {
        -p.ln()
    }
}

fn burr_cdf(x: f64, w: f64, tau: f64, lambda: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    // 1 - (1 + x^τ/w)^(-λ)
    -(-lambda * (x.powf(tau) / w).ln_1p()).exp_m1()
}

fn burr_quantile(p: f64, q: f64, w: f64, tau: f64, lambda: f64) -> f64 {
    // x^τ = w[(1-p)^(-1/λ) - 1]
    let e = neg_ln(q, p);
    (w * (e / lambda).exp_m1()).powf(1.0 / tau)
}

/// Identifies one reproducible uniform stream: ChaCha8 keyed by
/// `master_seed`, with `stream_index` selecting the ChaCha stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeededStream {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeededStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self {
            master_seed,
            stream_index,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// Uniform on the open interval (0, 1) with 53-bit resolution.
pub fn open_unit<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

fn fmt_param(f: &mut fmt::Formatter<'_>, pairs: &[(&str, f64)]) -> fmt::Result {
    for (i, (name, value)) in pairs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{name}={value}")?;
    }
    Ok(())
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family().key())?;
        match *self {
            Self::WeibullM { xi } | Self::Frechet { xi } => fmt_param(f, &[("xi", xi)])?,
            Self::Burr { w, tau, lambda } => {
                fmt_param(f, &[("w", w), ("tau", tau), ("lambda", lambda)])?
            }
            Self::Weibull { lambda, tau } => fmt_param(f, &[("lambda", lambda), ("tau", tau)])?,
            Self::StandardNormal => {}
            Self::ReversedBurr {
                w,
                tau,
                lambda,
                x_f,
            } => fmt_param(
                f,
                &[("w", w), ("tau", tau), ("lambda", lambda), ("xf", x_f)],
            )?,
        }
        f.write_str(")")
    }
}

/// Parses `family(name=value, ...)`; the parentheses may be omitted for
/// parameterless families.
impl FromStr for DistributionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(open) => {
                let close = s
                    .rfind(')')
                    .filter(|&c| c > open && s[c + 1..].trim().is_empty())
                    .ok_or_else(|| Error::Config(format!("unbalanced parentheses in {s:?}")))?;
                (&s[..open], &s[open + 1..close])
            }
            None => (s, ""),
        };
        let family: Family = name.parse()?;

        let mut params: Vec<(String, f64)> = Vec::new();
        for item in args.split(',').map(str::trim).filter(|a| !a.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected name=value, got {item:?}")))?;
            let key = normalize_param(key);
            if !family.parameters().contains(&key.as_str()) {
                return Err(Error::Config(format!(
                    "{} has no parameter {key:?} (expected {})",
                    family.key(),
                    family.parameters().join(", ")
                )));
            }
            if params.iter().any(|(k, _)| *k == key) {
                return Err(Error::Config(format!("parameter {key:?} given twice")));
            }
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad value for {key}: {:?}", value.trim())))?;
            params.push((key, value));
        }
        let get = |name: &str| -> Result<f64> {
            params
                .iter()
                .find(|(k, _)| k == name)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::Config(format!("{} requires parameter {name}", family.key())))
        };
        match family {
            Family::WeibullM => Self::weibull_m(get("xi")?),
            Family::Burr => Self::burr(get("w")?, get("tau")?, get("lambda")?),
            Family::Frechet => Self::frechet(get("xi")?),
            Family::Weibull => Self::weibull(get("lambda")?, get("tau")?),
            Family::StandardNormal => Ok(Self::StandardNormal),
            Family::ReversedBurr => {
                Self::reversed_burr(get("w")?, get("tau")?, get("lambda")?, get("xf")?)
            }
        }
    }
}

fn normalize_param(key: &str) -> String {
    match key.trim() {
        "ξ" => "xi".into(),
        "τ" => "tau".into(),
        "λ" => "lambda".into(),
        "x_F" | "x_f" | "xF" => "xf".into(),
        other => other.to_ascii_lowercase(),
    }
}
