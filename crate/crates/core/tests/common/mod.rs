//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{LN_2, TAU};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

const FRAC_BITS: u32 = 1600;

/// `Σ (−x²/4)ᵐ / (m!)²` with every term held as an integer multiple of
/// `2^-FRAC_BITS`. Terms reach `~e^x`, so 1600 fractional bits leave
/// several hundred bits of headroom at `x = 450`.
pub fn j0_exact_series(x: f64) -> f64 {
    assert!(x.is_finite() && x >= 0.0);
    if x == 0.0 {
        return 1.0;
    }
    // x = mantissa · 2^exp exactly.
    let bits = x.to_bits();
    let exp_raw = ((bits >> 52) & 0x7ff) as i64;
    let (mantissa, exp) = if exp_raw == 0 {
        (bits & ((1 << 52) - 1), -1074)
    } else {
        ((bits & ((1 << 52) - 1)) | (1 << 52), exp_raw - 1075)
    };
    // y = x² / 4 in fixed point.
    let shift = 2 * exp - 2 + FRAC_BITS as i64;
    assert!(shift >= 0);
    let y = (BigInt::from(mantissa) * BigInt::from(mantissa)) << shift as usize;

    let one = BigInt::one() << FRAC_BITS as usize;
    let mut term = one.clone();
    let mut sum = one;
    let mut m: u64 = 0;
    loop {
        m += 1;
        term = ((&term * &y) >> FRAC_BITS as usize) / BigInt::from(m * m);
        if m % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        if term.is_zero() || (m >= 200 && (m * m) as f64 > 4.0 * x * x && term.abs() < BigInt::from(1u8) << 64) {
            break;
        }
    }
    let top = &sum >> (FRAC_BITS as usize - 64);
    top.to_f64().unwrap() / 2f64.powi(64)
}

pub fn bisect_zero(mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = j0_exact_series(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let f_mid = j0_exact_series(mid);
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `|(1/N) Σ_m e^{jmΔ}|²` by direct summation.
pub fn correlation_sq(n: usize, delta: f64) -> f64 {
    let step = Complex64::from_polar(1.0, delta);
    let mut phase = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for _ in 0..n {
        acc += phase;
        phase *= step;
    }
    (acc / n as f64).norm_sqr()
}

pub fn zeta(d: f64, phi: f64) -> f64 {
    TAU * d * phi.sin()
}

/// Periodic trapezoid rule on an `m × m` grid over `[0, 2π)²`.
pub fn correlation_quadrature(n: usize, d: f64, m: usize) -> f64 {
    let z: Vec<f64> = (0..m).map(|i| zeta(d, TAU * i as f64 / m as f64)).collect();
    let mut sum = 0.0;
    for &z1 in &z {
        for &z2 in &z {
            sum += correlation_sq(n, z2 - z1);
        }
    }
    sum / (m * m) as f64
}

/// `E[log₂(1 + c X)]` for `X ~ Exp(1)`, Simpson's rule after `x = e^u`.
pub fn exact_log_exp_mean(c: f64) -> f64 {
    let (lo, hi) = (-40.0f64, 4.5f64);
    let steps = 40_000;
    let h = (hi - lo) / steps as f64;
    let f = |u: f64| {
        let x = u.exp();
        (c * x).ln_1p() / LN_2 * (-x).exp() * x
    };
    let mut sum = f(lo) + f(hi);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(lo + i as f64 * h);
    }
    sum * h / 3.0
}
