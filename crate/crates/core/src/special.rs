//! Scalar special functions shared by the estimators and the limit laws.
//!
//! `phi(t, x) = ∫_1^x u^(t-1) du` is the Box-Cox primitive: `(x^t - 1)/t`,
//! and `ln x` at `t = 0`. `phi_star` is its companion `1 + t·x` (`e^x` at
//! `t = 0`), so that `phi_star(t, phi(t, x)) = x^t` for `t ≠ 0`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

/// Below this magnitude of `t`, `phi` returns `ln x` directly.
pub const PHI_LOG_THRESHOLD: f64 = 1e-12;

/// Euler-Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn phi(t: f64, x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("phi requires x > 0, got {x}")));
    }
    let ln_x = x.ln();
    if t.abs() < PHI_LOG_THRESHOLD {
        Ok(ln_x)
    } else {
        // expm1 keeps full precision while t·ln x is small
        Ok((t * ln_x).exp_m1() / t)
    }
}

pub fn phi_star(t: f64, x: f64) -> f64 {
    if t == 0.0 {
        x.exp()
    } else {
        1.0 + t * x
    }
}

pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which Γ is finite in double precision.
pub const GAMMA_MAX_ARG: f64 = 171.0;

/// Γ(x) for `0 < x <= 171` via the Lanczos approximation (g = 7, 9 terms),
/// with the reflection formula below 1/2.
pub fn gamma_function(x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= GAMMA_MAX_ARG) {
        return Err(Error::Domain(format!(
            "gamma_function supports 0 < x <= {GAMMA_MAX_ARG}, got {x}"
        )));
    }
    Ok(lanczos_gamma(x))
}

fn lanczos_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * lanczos_gamma(1.0 - x));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// Standard normal upper tail `1 - Φ(x)`, accurate far into the tail.
pub fn normal_sf(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

// Acklam's rational approximation to the inverse normal CDF.
const ACKLAM_A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const ACKLAM_B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const ACKLAM_C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const ACKLAM_D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const ACKLAM_P_LOW: f64 = 0.024_25;

/// Inverse of the standard normal CDF given both `p` and its complement
/// `q = 1 - p`, so upper-tail levels keep their precision.
///
/// Acklam's approximation (relative error ~1e-9) refined by one Newton step.
pub(crate) fn normal_quantile_pq(p: f64, q: f64) -> f64 {
    let x0 = if p < ACKLAM_P_LOW {
        acklam_tail(p)
    } else if q < ACKLAM_P_LOW {
        -acklam_tail(q)
    } else {
        let r0 = p - 0.5;
        let r = r0 * r0;
        let a = &ACKLAM_A;
        let b = &ACKLAM_B;
        (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * r0
            / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
    };
    let density = (-0.5 * x0 * x0).exp() / (2.0 * PI).sqrt();
    // residual taken on the smaller tail
    let step = if x0 <= 0.0 {
        (normal_cdf(x0) - p) / density
    } else {
        (q - normal_sf(x0)) / density
    };
    x0 - step
}

fn acklam_tail(p: f64) -> f64 {
    let c = &ACKLAM_C;
    let d = &ACKLAM_D;
    let r = (-2.0 * p.ln()).sqrt();
    (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5])
        / ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0)
}

pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "probability must lie in (0,1), got {p}"
        )));
    }
    Ok(normal_quantile_pq(p, 1.0 - p))
}
