//! Asymptotic distribution of the root estimator.
//!
//! With `δ = min(-ξ, 1/2)` and `V_k(ξ) = φ_δ(k)·[ln k if ξ >= 0, else 1]`,
//! `V_k(ξ)(ξ̂ - ξ)` converges (for `k = c·k'`) to
//!
//! | regime          | limit CDF at t                                   |
//! |-----------------|--------------------------------------------------|
//! | ξ > 0           | exp(-e^(-t))                                     |
//! | ξ = 0           | exp(-e^(-t/2))                                   |
//! | -1/2 < ξ < 0    | exp(-[1 + t·ln c / φ_ξ(1/c)]^(-1/ξ))             |
//! | ξ < -1/2        | Φ(-t·c^(-ξ)·ln c / (2ξσ)),  σ = c^(-ξ)·√(c-1)    |
//!
//! At ξ = -1/2 the limit exists but has no closed form. The limit has mean
//! `μ(ξ)` away from ξ ∈ {0, -1/2}, which drives the bias correction.
//!
//! Best convergence rates per model class (documentation only; these
//! constrain sequences `k_n`, not finite-sample computations):
//!
//! | family       | model | β      | best rate                 |
//! |--------------|-------|--------|---------------------------|
//! | WeibullM     | A     | 1      | ln n / ln² n / n^(δ/(1+δ/β)-ε) for ξ >0 / =0 / <0 |
//! | Burr         | A     | 1/λ    | ln n                      |
//! | Frechet      | A     | 1      | ln n                      |
//! | Weibull      | B     | 1-1/τ  | ln₂² n                    |
//! | Normal       | B     | 1/2    | ln₂² n                    |
//! | ReversedBurr | A     | 1/λ    | n^(δ/(1+δ/β)-ε)           |

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::special::{euler_gamma, gamma_function, normal_cdf, phi};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    PositiveXi,
    ZeroXi,
    /// -1/2 < ξ < 0
    ModerateNegative,
    /// ξ = -1/2, no explicit limit law.
    HalfNegative,
    /// ξ < -1/2
    StrongNegative,
}

impl Regime {
    pub fn of(xi: f64) -> Self {
        if xi > 0.0 {
            Regime::PositiveXi
        } else if xi == 0.0 {
            Regime::ZeroXi
        } else if xi > -0.5 {
            Regime::ModerateNegative
        } else if xi == -0.5 {
            Regime::HalfNegative
        } else {
            Regime::StrongNegative
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitLaw {
    pub regime: Regime,
    pub xi: f64,
    pub c: f64,
    pub sigma: f64,
    pub delta: f64,
}

impl LimitLaw {
    pub fn new(xi: f64, c: f64) -> Result<Self> {
        if !xi.is_finite() {
            return Err(Error::Domain(format!("xi must be finite, got {xi}")));
        }
        if !(c > 1.0 && c.is_finite()) {
            return Err(Error::Domain(format!(
                "ratio c must be finite and > 1, got {c}"
            )));
        }
        Ok(Self {
            regime: Regime::of(xi),
            xi,
            c,
            sigma: sigma(xi, c),
            delta: delta(xi),
        })
    }

    pub fn cdf(&self, t: f64) -> Result<f64> {
        limit_cdf(self, t)
    }
}

pub fn delta(xi: f64) -> f64 {
    (-xi).min(0.5)
}

pub fn sigma(xi: f64, c: f64) -> f64 {
    c.powf(-xi) * (c - 1.0).sqrt()
}

/// Normalizing sequence `V_k(ξ)`; `k >= 2`.
pub fn v_k(xi: f64, k: usize) -> f64 {
    let kf = k as f64;
    let base = phi(delta(xi), kf).expect("k is positive");
    if xi >= 0.0 {
        base * kf.ln()
    } else {
        base
    }
}

/// Mean `μ(ξ)` of the limit law; taken as 0 where it is not defined
/// (ξ = 0 and ξ <= -1/2).
pub fn mu(xi: f64, c: f64) -> f64 {
    if xi > 0.0 {
        euler_gamma()
    } else if xi > -0.5 && xi < 0.0 {
        let g = gamma_function(1.0 - xi).expect("1 - ξ lies in (1, 1.5)");
        let p = phi(xi, 1.0 / c).expect("1/c is positive");
        -(1.0 - g) * p / c.ln()
    } else {
        0.0
    }
}

pub fn limit_cdf(law: &LimitLaw, t: f64) -> Result<f64> {
    let LimitLaw { xi, c, sigma, .. } = *law;
    let value = match law.regime {
        Regime::PositiveXi => (-(-t).exp()).exp(),
        Regime::ZeroXi => (-(-t / 2.0).exp()).exp(),
        Regime::ModerateNegative => {
            let slope = c.ln() / phi(xi, 1.0 / c)?;
            let bracket = 1.0 + t * slope;
            // slope < 0: the bracket vanishes at the upper end of the support
            if bracket > 0.0 {
                (-bracket.powf(-1.0 / xi)).exp()
            } else {
                1.0
            }
        }
        Regime::StrongNegative => normal_cdf(-t * c.powf(-xi) * c.ln() / (2.0 * xi * sigma)),
        Regime::HalfNegative => return Err(Error::UnsupportedLaw),
    };
    Ok(value)
}

/// Diagnostic ratio
/// `[φ_ξ(y)/φ_ξ(x)] · (U(tx) - U(t)) / (U(ty) - U(t))`, which tends to 1 as
/// `t → ∞`. `U` is the tail quantile function of `spec` and ξ its true index.
pub fn lemma2_ratio(spec: &DistributionSpec, t: f64, x: f64, y: f64) -> Result<f64> {
    if !(t > 1.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be finite and > 1, got {t}")));
    }
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!(
            "x and y must be positive, got x={x}, y={y}"
        )));
    }
    if x == 1.0 || y == 1.0 {
        return Err(Error::Domain("x and y must differ from 1".into()));
    }
    if !(t * x > 1.0 && t * y > 1.0) {
        return Err(Error::Domain(format!(
            "need tx > 1 and ty > 1, got tx={}, ty={}",
            t * x,
            t * y
        )));
    }
    if x == y {
        return Ok(1.0);
    }
    let xi = spec.true_xi();
    let ut = spec.tail_quantile(t)?;
    let ux = spec.tail_quantile(t * x)?;
    let uy = spec.tail_quantile(t * y)?;
    Ok(phi(xi, y)? / phi(xi, x)? * (ux - ut) / (uy - ut))
}
