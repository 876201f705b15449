//! Per-stream SINR and spectral efficiency, and their Monte Carlo average
//! over pure line-of-sight channels.
//!
//! Noise power is fixed at 1, so the per-user transmit SNR `ρ` multiplies
//! both the desired and the interfering terms:
//!
//! ```text
//! SINR_k = ρ |h_k f_k|² / (ρ Σ_{i≠k} |h_k f_i|² + 1)
//! ```

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::array::ArrayConfig;
use crate::beamforming::{abs_beamformers, hbs_beamformers};
use crate::channel::{assemble_matrix, draw_los_realization, ChannelMatrix, RngSeed};
use crate::linalg::CMatrix;
use crate::par::map_trials;
use crate::{Error, Result};

/// Redraws allowed for one trial before giving up on a singular channel.
pub const MAX_REDRAWS_PER_TRIAL: u32 = 1000;

/// Per-user transmit SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrPoint {
    linear: f64,
    db: f64,
}

impl SnrPoint {
    pub fn from_db(db: f64) -> Result<Self> {
        if !db.is_finite() {
            return Err(Error::param(format!("SNR must be finite, got {db} dB")));
        }
        Ok(Self {
            linear: 10f64.powf(db / 10.0),
            db,
        })
    }

    pub fn from_linear(linear: f64) -> Result<Self> {
        if !(linear > 0.0 && linear.is_finite()) {
            return Err(Error::param(format!("linear SNR must be positive, got {linear}")));
        }
        Ok(Self {
            linear,
            db: 10.0 * linear.log10(),
        })
    }

    pub fn linear(&self) -> f64 {
        self.linear
    }

    pub fn db(&self) -> f64 {
        self.db
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// Analog beamsteering only.
    Abs,
    /// Analog steering followed by digital zero-forcing.
    Hbs,
    /// Analog beams with the interference terms dropped.
    NoInterference,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Abs, Scheme::Hbs, Scheme::NoInterference];

    pub fn label(self) -> &'static str {
        match self {
            Scheme::Abs => "ABS",
            Scheme::Hbs => "HBS",
            Scheme::NoInterference => "NoInterference",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "abs" => Ok(Scheme::Abs),
            "hbs" | "hbf" => Ok(Scheme::Hbs),
            "nointerference" | "no-interference" | "noint" => Ok(Scheme::NoInterference),
            other => Err(Error::Config(format!("unknown scheme '{other}'"))),
        }
    }
}

/// Per-stream SE of one realization.
#[derive(Debug, Clone, PartialEq)]
pub struct SePoint {
    pub per_stream_se: Vec<f64>,
    pub scheme: Scheme,
}

/// `|h_k f_i|²` for every user `k` and beam `i`.
pub fn gain_matrix(h: &ChannelMatrix, f: &CMatrix) -> Result<Vec<Vec<f64>>> {
    let hf = h.as_matrix().matmul(f)?;
    Ok((0..hf.rows())
        .map(|k| hf.row(k).iter().map(Complex64::norm_sqr).collect())
        .collect())
}

pub fn per_stream_sinr(h: &ChannelMatrix, f: &CMatrix, k: usize, rho: SnrPoint) -> Result<f64> {
    if h.n_tx() != f.rows() {
        return Err(Error::dims(format!("{} beamformer rows", h.n_tx()), f.rows()));
    }
    if k >= h.n_users() || k >= f.cols() {
        return Err(Error::param(format!(
            "user index {k} out of range for {} users",
            h.n_users().min(f.cols())
        )));
    }
    let gain = |i: usize| -> f64 {
        h.row(k)
            .iter()
            .zip(f.column(i))
            .map(|(a, b)| a * b)
            .sum::<Complex64>()
            .norm_sqr()
    };
    let interference: f64 = (0..f.cols()).filter(|&i| i != k).map(gain).sum();
    Ok(sinr_from_gains(gain(k), interference, rho.linear))
}

fn sinr_from_gains(signal: f64, interference: f64, rho: f64) -> f64 {
    rho * signal / (rho * interference + 1.0)
}

/// `log₂(1 + SINR)`.
pub fn per_stream_se(sinr: f64) -> f64 {
    debug_assert!(sinr >= 0.0);
    sinr.ln_1p() / std::f64::consts::LN_2
}

/// Per-stream SE of every user for one channel and beamformer.
pub fn realization_se(
    h: &ChannelMatrix,
    f: &CMatrix,
    scheme: Scheme,
    rho: SnrPoint,
) -> Result<SePoint> {
    let gains = gain_matrix(h, f)?;
    Ok(SePoint {
        per_stream_se: stream_se_from_gains(&gains, scheme, rho.linear),
        scheme,
    })
}

fn stream_se_from_gains(gains: &[Vec<f64>], scheme: Scheme, rho: f64) -> Vec<f64> {
    gains
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let signal = row[k];
            let interference = match scheme {
                Scheme::NoInterference => 0.0,
                _ => row.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g).sum(),
            };
            per_stream_se(sinr_from_gains(signal, interference, rho))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub config: ArrayConfig,
    pub n_users: usize,
    pub scheme: Scheme,
    pub trials: u64,
    pub seed: RngSeed,
}

impl Scenario {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::param("need at least one trial"));
        }
        if self.n_users == 0 {
            return Err(Error::param("need at least one user"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_trials: u64,
    /// Trials redrawn because the equivalent channel was singular.
    pub n_resampled: u64,
    pub per_user_mean: Vec<f64>,
}

impl MonteCarloEstimate {
    /// More than 0.1% of trials needed a redraw.
    pub fn resampling_suspicious(&self) -> bool {
        self.n_resampled as f64 > 1e-3 * self.n_trials as f64
    }
}

struct TrialOutcome {
    /// `se[r * K + k]`: SE of user `k` at SNR point `r`.
    se: Vec<f64>,
    redraws: u32,
}

impl TrialOutcome {
    fn at(&self, r: usize, k_users: usize) -> &[f64] {
        &self.se[r * k_users..(r + 1) * k_users]
    }
}

fn run_trial(scenario: &Scenario, rhos: &[SnrPoint], trial: u64) -> Result<TrialOutcome> {
    let mut rng = scenario.seed.trial_rng(trial);
    let cfg = scenario.config;
    let mut redraws = 0;
    loop {
        let real = draw_los_realization(&mut rng, cfg, scenario.n_users)?;
        let h = assemble_matrix(&real);
        let angles = real.los_angles();
        let beams = match scenario.scheme {
            Scheme::Abs | Scheme::NoInterference => abs_beamformers(&angles, &cfg),
            Scheme::Hbs => hbs_beamformers(&h, &angles, &cfg),
        };
        let beams = match beams {
            Ok(b) => b,
            Err(Error::SingularEquivalentChannel) if redraws < MAX_REDRAWS_PER_TRIAL => {
                redraws += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let gains = gain_matrix(&h, beams.composite())?;
        let se = rhos
            .iter()
            .flat_map(|rho| stream_se_from_gains(&gains, scenario.scheme, rho.linear))
            .collect();
        return Ok(TrialOutcome { se, redraws });
    }
}

/// Monte Carlo estimate of the per-stream SE at several SNR points.
///
/// Every SNR point sees the same channel draws, and the result for one SNR
/// point does not depend on which other points are requested. Per-trial
/// values are reduced in trial order, so the estimate is bit-identical for
/// any thread count.
pub fn run_monte_carlo_grid(scenario: &Scenario, rhos: &[SnrPoint]) -> Result<Vec<MonteCarloEstimate>> {
    scenario.validate()?;
    let outcomes = map_trials(scenario.trials, |t| run_trial(scenario, rhos, t))?;
    let n_resampled: u64 = outcomes.iter().map(|o| u64::from(o.redraws)).sum();
    let k_users = scenario.n_users;
    let n_samples = scenario.trials as f64 * k_users as f64;

    Ok((0..rhos.len())
        .map(|r| {
            let mut per_user = vec![0.0; k_users];
            let mut total = 0.0;
            for o in &outcomes {
                for (acc, &v) in per_user.iter_mut().zip(o.at(r, k_users)) {
                    *acc += v;
                    total += v;
                }
            }
            let mean = total / n_samples;
            let sq_dev: f64 = outcomes
                .iter()
                .flat_map(|o| o.at(r, k_users).iter())
                .map(|&v| (v - mean) * (v - mean))
                .sum();
            let variance = if n_samples > 1.0 { sq_dev / (n_samples - 1.0) } else { 0.0 };
            MonteCarloEstimate {
                mean,
                std_error: (variance / n_samples).sqrt(),
                n_trials: scenario.trials,
                n_resampled,
                per_user_mean: per_user.iter().map(|s| s / scenario.trials as f64).collect(),
            }
        })
        .collect())
}

pub fn run_monte_carlo(scenario: &Scenario, rho: SnrPoint) -> Result<MonteCarloEstimate> {
    Ok(run_monte_carlo_grid(scenario, &[rho])?.remove(0))
}
