//! Link-level simulator and closed-form spectral-efficiency bounds for
//! multi-user mmWave massive-MISO downlink beamsteering.
//!
//! The crate compares multi-user analog beamsteering (ABS), where each user
//! gets one RF beam steered at its line-of-sight angle, against hybrid
//! beamsteering (HBS), which adds a digital zero-forcing layer on top of the
//! same RF beams. Monte Carlo estimates of the per-stream spectral
//! efficiency are checked against three closed-form expressions:
//!
//! * the high-SNR saturation level of ABS with two users,
//! * its generalization to `K > 2` users,
//! * a Log-Rayleigh approximation of the HBS per-stream SE.
//!
//! Monte Carlo trials run on rayon when the `parallel` feature is enabled
//! (the default) and sequentially otherwise. Results are bit-identical in
//! both modes and for any thread count.

pub mod array;
pub mod beamforming;
pub mod bounds;
pub mod channel;
mod error;
pub mod experiment;
pub mod linalg;
pub mod metrics;
pub mod par;

pub use error::{Error, Result};
