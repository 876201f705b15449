//! Ray-based geometric channel.
//!
//! User `k` sees `P_k` paths, each with a complex gain `α ~ CN(0, 1)` and an
//! angle of departure uniform on `[0, 2π)`. Its channel row is
//! `h_k = √(N_t / P_k) · Σ_p α_p a(φ_p)ᴴ`; with one path this is the pure
//! line-of-sight channel `√N_t · α · a(φ)ᴴ`.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::array::{steering_vector, Angle, ArrayConfig};
use crate::linalg::CMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathParams {
    pub gain: Complex64,
    pub aod: Angle,
}

/// Per-user path parameters for one Monte Carlo draw.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    users: Vec<Vec<PathParams>>,
    config: ArrayConfig,
}

impl ChannelRealization {
    pub fn new(users: Vec<Vec<PathParams>>, config: ArrayConfig) -> Result<Self> {
        if users.is_empty() {
            return Err(Error::param("realization needs at least one user"));
        }
        if let Some(k) = users.iter().position(Vec::is_empty) {
            return Err(Error::param(format!("user {k} has no paths")));
        }
        if users.iter().flatten().any(|p| !p.gain.is_finite()) {
            return Err(Error::param("path gains must be finite"));
        }
        Ok(Self { users, config })
    }

    pub fn users(&self) -> &[Vec<PathParams>] {
        &self.users
    }

    pub fn n_users(&self) -> usize {
        self.users.len()
    }

    pub fn config(&self) -> &ArrayConfig {
        &self.config
    }

    /// Angle of each user's first path. For pure-LoS draws these are the
    /// angles the analog beams are steered at.
    pub fn los_angles(&self) -> Vec<Angle> {
        self.users.iter().map(|paths| paths[0].aod).collect()
    }
}

/// Seed of the whole experiment. Trial `t` draws from ChaCha stream `t` of
/// this seed, so trials are reproducible in any order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn trial_rng(self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(trial);
        rng
    }
}

/// Circularly-symmetric complex Gaussian with unit second moment.
pub fn draw_gain<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}

/// Uniform on `[0, 2π)`.
pub fn draw_aod<R: Rng + ?Sized>(rng: &mut R) -> Angle {
    Angle::from_finite(rng.random::<f64>() * TAU)
}

pub fn draw_realization<R: Rng + ?Sized>(
    rng: &mut R,
    config: ArrayConfig,
    paths_per_user: &[usize],
) -> Result<ChannelRealization> {
    if paths_per_user.is_empty() {
        return Err(Error::param("need at least one user"));
    }
    if let Some(k) = paths_per_user.iter().position(|&p| p == 0) {
        return Err(Error::param(format!("user {k} has zero paths")));
    }
    let users = paths_per_user
        .iter()
        .map(|&p| {
            (0..p)
                .map(|_| {
                    let gain = draw_gain(rng);
                    let aod = draw_aod(rng);
                    PathParams { gain, aod }
                })
                .collect()
        })
        .collect();
    Ok(ChannelRealization { users, config })
}

/// Pure line-of-sight draw: one path per user.
pub fn draw_los_realization<R: Rng + ?Sized>(
    rng: &mut R,
    config: ArrayConfig,
    n_users: usize,
) -> Result<ChannelRealization> {
    draw_realization(rng, config, &vec![1; n_users])
}

/// `√N_t · α · a(φ)ᴴ`.
pub fn los_channel(path: &PathParams, config: &ArrayConfig) -> Vec<Complex64> {
    let scale = path.gain * (config.n_tx() as f64).sqrt();
    steering_vector(path.aod, config)
        .into_iter()
        .map(|a| scale * a.conj())
        .collect()
}

/// `√(N_t / P) · Σ_p α_p a(φ_p)ᴴ`.
pub fn multipath_channel(paths: &[PathParams], config: &ArrayConfig) -> Result<Vec<Complex64>> {
    if paths.is_empty() {
        return Err(Error::param("channel needs at least one path"));
    }
    let scale = (config.n_tx() as f64 / paths.len() as f64).sqrt();
    let mut h = vec![Complex64::new(0.0, 0.0); config.n_tx()];
    for p in paths {
        for (hm, a) in h.iter_mut().zip(steering_vector(p.aod, config)) {
            *hm += p.gain * a.conj();
        }
    }
    h.iter_mut().for_each(|v| *v *= scale);
    Ok(h)
}

/// `K × N_t` matrix whose row `k` is user `k`'s channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix(CMatrix);

impl ChannelMatrix {
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        CMatrix::from_rows(rows).map(Self)
    }

    pub fn n_users(&self) -> usize {
        self.0.rows()
    }

    pub fn n_tx(&self) -> usize {
        self.0.cols()
    }

    pub fn row(&self, k: usize) -> &[Complex64] {
        self.0.row(k)
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }
}

pub fn assemble_matrix(real: &ChannelRealization) -> ChannelMatrix {
    let rows: Vec<_> = real
        .users
        .iter()
        .map(|paths| multipath_channel(paths, &real.config).expect("validated non-empty"))
        .collect();
    ChannelMatrix(CMatrix::from_rows(&rows).expect("rows share n_tx"))
}
