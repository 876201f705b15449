//! Analog beamsteering and the hybrid (analog steering + digital
//! zero-forcing) precoder.
//!
//! Every stream gets unit transmit power: ABS columns are unit-norm steering
//! vectors, and HBS digital columns are scaled so that each composite column
//! `F_RF w_k` has unit norm.

use num_complex::Complex64;

use crate::array::{norm, steering_vector, Angle, ArrayConfig};
use crate::channel::ChannelMatrix;
use crate::linalg::CMatrix;
use crate::{Error, Result};

/// Analog beam for one user: the steering vector at its LoS angle.
pub fn abs_beamformer(phi: Angle, config: &ArrayConfig) -> Vec<Complex64> {
    steering_vector(phi, config)
}

/// `N_t × N_RF` analog stage, column `k` steered at user `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RfMatrix(CMatrix);

impl RfMatrix {
    pub fn n_tx(&self) -> usize {
        self.0.rows()
    }

    pub fn n_rf(&self) -> usize {
        self.0.cols()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }
}

pub fn build_rf_matrix(angles: &[Angle], config: &ArrayConfig) -> Result<RfMatrix> {
    if angles.is_empty() {
        return Err(Error::param("RF matrix needs at least one beam"));
    }
    let columns: Vec<_> = angles.iter().map(|&phi| abs_beamformer(phi, config)).collect();
    Ok(RfMatrix(CMatrix::from_columns(&columns)?))
}

/// `Ĥ = H F_RF`, the `K × N_RF` channel seen by the digital stage.
pub fn equivalent_channel(h: &ChannelMatrix, rf: &RfMatrix) -> Result<CMatrix> {
    h.as_matrix().matmul(rf.as_matrix())
}

/// `N_RF × K` digital precoder.
#[derive(Debug, Clone, PartialEq)]
pub struct DigitalPrecoder(CMatrix);

impl DigitalPrecoder {
    pub fn new(w: CMatrix) -> Self {
        Self(w)
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }
}

/// Zero-forcing precoder `Ĥᴴ (Ĥ Ĥᴴ)⁻¹`, unnormalized.
///
/// The Gram matrix is inverted by Gauss-Jordan elimination with partial
/// pivoting; a pivot below `1e-12` of its largest entry yields
/// [`Error::SingularEquivalentChannel`].
pub fn zf_precoder(h_hat: &CMatrix) -> Result<DigitalPrecoder> {
    if h_hat.rows() == 0 || h_hat.rows() > h_hat.cols() {
        return Err(Error::dims(
            "K <= N_RF with K >= 1",
            format!("{}x{}", h_hat.rows(), h_hat.cols()),
        ));
    }
    let h_herm = h_hat.conj_transpose();
    let gram = h_hat.matmul(&h_herm)?;
    let gram_inv = gram.inverse()?;
    Ok(DigitalPrecoder(h_herm.matmul(&gram_inv)?))
}

/// Scales column `k` of `w` by `1 / ‖F_RF w_k‖`.
pub fn vector_normalize(w: &DigitalPrecoder, rf: &RfMatrix) -> Result<DigitalPrecoder> {
    let composite = rf.as_matrix().matmul(w.as_matrix())?;
    let mut out = w.0.clone();
    for k in 0..out.cols() {
        let n = norm(&composite.column(k));
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::DegeneratePrecoder { column: k });
        }
        for r in 0..out.rows() {
            out[(r, k)] /= n;
        }
    }
    Ok(DigitalPrecoder(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamformingMode {
    Analog,
    Hybrid,
}

/// RF stage, optional digital stage and the composite `N_t × K` matrix `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamformerSet {
    rf: RfMatrix,
    digital: Option<DigitalPrecoder>,
    composite: CMatrix,
}

impl BeamformerSet {
    /// Pure ABS: the composite is the RF matrix itself.
    pub fn analog(rf: RfMatrix) -> Self {
        let composite = rf.0.clone();
        Self {
            rf,
            digital: None,
            composite,
        }
    }

    pub fn mode(&self) -> BeamformingMode {
        if self.digital.is_some() {
            BeamformingMode::Hybrid
        } else {
            BeamformingMode::Analog
        }
    }

    pub fn rf(&self) -> &RfMatrix {
        &self.rf
    }

    pub fn digital(&self) -> Option<&DigitalPrecoder> {
        self.digital.as_ref()
    }

    pub fn composite(&self) -> &CMatrix {
        &self.composite
    }
}

/// `F_HBS = F_RF W`.
pub fn hbs_composite(rf: RfMatrix, w: DigitalPrecoder) -> Result<BeamformerSet> {
    let composite = rf.as_matrix().matmul(w.as_matrix())?;
    Ok(BeamformerSet {
        rf,
        digital: Some(w),
        composite,
    })
}

/// RF steering at each user's LoS angle.
pub fn abs_beamformers(angles: &[Angle], config: &ArrayConfig) -> Result<BeamformerSet> {
    build_rf_matrix(angles, config).map(BeamformerSet::analog)
}

/// Full HBS chain: steering, equivalent channel, ZF, vector normalization.
pub fn hbs_beamformers(
    h: &ChannelMatrix,
    angles: &[Angle],
    config: &ArrayConfig,
) -> Result<BeamformerSet> {
    let rf = build_rf_matrix(angles, config)?;
    let h_hat = equivalent_channel(h, &rf)?;
    let w = zf_precoder(&h_hat)?;
    let w = vector_normalize(&w, &rf)?;
    hbs_composite(rf, w)
}
