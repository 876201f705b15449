//! Uniform linear array geometry.
//!
//! Element spacing is stored in wavelengths (`d / λ`), so the phase step
//! between neighbouring elements is `2π · spacing · sin φ`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Transmit ULA: element count and inter-element spacing in wavelengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayConfig {
    n_tx: usize,
    spacing: f64,
}

impl ArrayConfig {
    pub fn new(n_tx: usize, spacing: f64) -> Result<Self> {
        if n_tx == 0 {
            return Err(Error::param("array needs at least one element"));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::param(format!(
                "element spacing must be positive and finite, got {spacing}"
            )));
        }
        Ok(Self { n_tx, spacing })
    }

    /// Half-wavelength ULA.
    pub fn half_wavelength(n_tx: usize) -> Result<Self> {
        Self::new(n_tx, 0.5)
    }

    pub fn n_tx(&self) -> usize {
        self.n_tx
    }

    /// Spacing in units of wavelength.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }
}

/// Angle of departure in radians. Any finite real is accepted; only
/// `sin φ` is ever used, so no wrapping is applied.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Result<Self> {
        if radians.is_finite() {
            Ok(Self(radians))
        } else {
            Err(Error::param(format!("angle must be finite, got {radians}")))
        }
    }

    /// Caller guarantees the value is finite.
    pub(crate) fn from_finite(radians: f64) -> Self {
        debug_assert!(radians.is_finite());
        Self(radians)
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Angle {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

/// Inter-element phase step `ζ(φ) = 2π d sin φ`.
pub fn phase_progression(phi: Angle, config: &ArrayConfig) -> f64 {
    2.0 * PI * config.spacing * phi.0.sin()
}

/// Unit-norm array response `a(φ)`, element `m` equal to `e^{j m ζ(φ)} / √N`.
pub fn steering_vector(phi: Angle, config: &ArrayConfig) -> Vec<Complex64> {
    let zeta = phase_progression(phi, config);
    let scale = 1.0 / (config.n_tx as f64).sqrt();
    (0..config.n_tx)
        .map(|m| Complex64::from_polar(scale, m as f64 * zeta))
        .collect()
}

/// `xᴴ y` for equal-length complex vectors.
pub fn inner_product(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}
