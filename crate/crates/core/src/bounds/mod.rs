//! Closed-form spectral-efficiency expressions for pure line-of-sight ULA
//! channels with uniformly distributed angles of departure.
//!
//! All of them are built on the array correlation sum
//!
//! ```text
//! S(N_t, d) = 1 + 2 Σ_{i=1}^{N_t−1} (1 − i/N_t) J₀²(2π d i)
//! ```
//!
//! * ABS saturation: `log₂(1 + N_t² / ((K−1)² S))`, the high-SNR plateau of
//!   the per-stream SE with `K ≥ 2` users (exact form of the two-user case,
//!   a large-array approximation for more users).
//! * HBS: `(2/ln 2) · (ln(√(ρN_t) σ) + ln2/2 − κ/2)`, the Log-Rayleigh
//!   approximation of `E[log₂(1 + ρ N_t |α|²)]`.

mod bessel;

pub use bessel::{bessel_j0, SERIES_LIMIT};

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI};

use crate::array::{inner_product, steering_vector, Angle, ArrayConfig};
use crate::metrics::SnrPoint;
use crate::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Rayleigh scale of a `CN(0, 1)` gain: each quadrature has variance ½.
pub const UNIT_POWER_SIGMA: f64 = FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// Two-user ABS saturation level.
    AbsSaturationK2,
    /// ABS saturation level for more than two users.
    AbsSaturationKGt2,
    /// Log-Rayleigh approximation of the HBS per-stream SE.
    HbsApprox,
}

impl BoundKind {
    pub fn label(self) -> &'static str {
        match self {
            BoundKind::AbsSaturationK2 | BoundKind::AbsSaturationKGt2 => "AbsSaturationBound",
            BoundKind::HbsApprox => "HbsApprox",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub n_tx: usize,
    pub spacing: Option<f64>,
    pub n_users: Option<usize>,
    pub rho: Option<f64>,
    pub sigma: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    /// Bits/s/Hz per stream.
    pub value: f64,
    pub kind: BoundKind,
    pub params: BoundParams,
}

/// Kahan–Babuška (Neumaier) running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `S(N_t, d)`. Summed from the largest lag down so the small tail terms
/// are accumulated first.
pub fn correlation_sum(config: &ArrayConfig) -> f64 {
    let n = config.n_tx();
    let nf = n as f64;
    let mut acc = CompensatedSum::default();
    for i in (1..n).rev() {
        let j0 = bessel_j0(2.0 * PI * config.spacing() * i as f64);
        acc.add((1.0 - i as f64 / nf) * j0 * j0);
    }
    1.0 + 2.0 * acc.value()
}

/// `E|a(φ₁)ᴴ a(φ₂)|²` for independent angles uniform on `[0, 2π)`.
///
/// Expanding `|a(φ₁)ᴴ a(φ₂)|²` gives `(1/N_t²) Σ_{m,n} e^{j(m−n)(ζ₂−ζ₁)}`,
/// and `E[e^{j i ζ}] = J₀(2π d i)` for a uniform angle, so the expectation
/// is `S(N_t, d) / N_t`.
pub fn cross_correlation_expectation(config: &ArrayConfig) -> f64 {
    correlation_sum(config) / config.n_tx() as f64
}

/// ABS saturation level for `n_users ≥ 2`; with two users the `(K−1)²`
/// factor is one and this is the two-user expression exactly.
pub fn abs_saturation_bound(config: &ArrayConfig, n_users: usize) -> Result<BoundResult> {
    if n_users < 2 {
        return Err(Error::param(format!(
            "saturation bound needs at least two users, got {n_users}"
        )));
    }
    let nf = config.n_tx() as f64;
    let interferers = (n_users - 1) as f64;
    let s = correlation_sum(config);
    let value = (nf * nf / (interferers * interferers * s)).ln_1p() / LN_2;
    Ok(BoundResult {
        value,
        kind: if n_users == 2 {
            BoundKind::AbsSaturationK2
        } else {
            BoundKind::AbsSaturationKGt2
        },
        params: BoundParams {
            n_tx: config.n_tx(),
            spacing: Some(config.spacing()),
            n_users: Some(n_users),
            rho: None,
            sigma: None,
        },
    })
}

/// Spread of the interferer correlations seen by user `k`,
/// `½ Σ_{i≠k} Σ_{j≠k} (|a_kᴴ a_i| − |a_kᴴ a_j|)²`. It measures how far
/// `(Σ|a_kᴴ a_i|)²` is from `(K−1) Σ|a_kᴴ a_i|²`, the step that turns the
/// two-user saturation level into the `K`-user one.
pub fn gamma_error(angles: &[Angle], k: usize, config: &ArrayConfig) -> Result<f64> {
    if k >= angles.len() {
        return Err(Error::param(format!(
            "user index {k} out of range for {} users",
            angles.len()
        )));
    }
    let own = steering_vector(angles[k], config);
    let corr: Vec<f64> = angles
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, &phi)| inner_product(&own, &steering_vector(phi, config)).norm())
        .collect();
    let mut gamma = 0.0;
    for &ci in &corr {
        for &cj in &corr {
            gamma += (ci - cj) * (ci - cj);
        }
    }
    Ok(0.5 * gamma)
}

/// Mean of `ln R` for `R` Rayleigh with scale `scale`:
/// `ln(scale) + ln2/2 − κ/2`.
pub fn log_rayleigh_mean(scale: f64) -> Result<f64> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::param(format!("Rayleigh scale must be positive, got {scale}")));
    }
    Ok(scale.ln() + 0.5 * LN_2 - 0.5 * EULER_GAMMA)
}

/// Log-Rayleigh approximation of the HBS per-stream SE. `sigma` is the
/// per-quadrature standard deviation of the path gain; use
/// [`UNIT_POWER_SIGMA`] for unit-power gains.
pub fn hbs_se_approx(rho: SnrPoint, n_tx: usize, sigma: f64) -> Result<BoundResult> {
    if n_tx == 0 {
        return Err(Error::param("need at least one antenna"));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::param(format!("sigma must be positive, got {sigma}")));
    }
    let scale = (rho.linear() * n_tx as f64).sqrt() * sigma;
    let value = 2.0 / LN_2 * log_rayleigh_mean(scale)?;
    Ok(BoundResult {
        value,
        kind: BoundKind::HbsApprox,
        params: BoundParams {
            n_tx,
            spacing: None,
            n_users: None,
            rho: Some(rho.linear()),
            sigma: Some(sigma),
        },
    })
}
