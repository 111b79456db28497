//! Subband-adaptive soft thresholding in the Haar domain.
//!
//! Each detail subband `Y` gets its own threshold `T = sigma_n^2 / sigma_x`
//! where `sigma_x = sqrt(max(E[Y^2] - sigma_n^2, 0))` estimates the clean
//! signal's spread in that band. A band whose energy does not exceed the
//! noise floor is zeroed. The approximation band is left alone.

use super::haar::{check_divisible, dwt_haar, idwt_haar};
use crate::error::{Error, Result};
use crate::image::Plane;
use crate::noise::estimate_sigma;

/// Noise level handed to the wavelet denoiser.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseLevel {
    Fixed(f64),
    /// Estimated from the input with [`estimate_sigma`].
    Auto,
}

impl NoiseLevel {
    pub fn resolve(self, plane: &Plane) -> Result<f64> {
        match self {
            NoiseLevel::Fixed(s) if s.is_finite() && s >= 0.0 => Ok(s),
            NoiseLevel::Fixed(s) => Err(Error::invalid(
                "sigma_n",
                format!("must be finite and >= 0, got {s}"),
            )),
            NoiseLevel::Auto => estimate_sigma(plane),
        }
    }
}

#[inline]
pub fn soft_threshold(x: f64, t: f64) -> f64 {
    x.signum() * (x.abs() - t).max(0.0)
}

/// Threshold for one subband, or `None` when the band should be zeroed.
pub fn subband_threshold(band: &Plane, sigma_n: f64) -> Option<f64> {
    let power = band.samples().iter().map(|v| v * v).sum::<f64>() / band.len() as f64;
    let sigma_x = (power - sigma_n * sigma_n).max(0.0).sqrt();
    (sigma_x > 0.0).then(|| sigma_n * sigma_n / sigma_x)
}

pub fn denoise_wavelet(plane: &Plane, levels: usize, sigma_n: NoiseLevel) -> Result<Plane> {
    check_divisible(plane, levels)?;
    let sigma_n = sigma_n.resolve(plane)?;
    if sigma_n == 0.0 {
        // every threshold is zero and the transform pair is an identity
        return Ok(plane.clone());
    }
    let mut pyr = dwt_haar(plane, levels)?;
    for band in pyr.details.iter_mut().flat_map(|s| s.iter_mut()) {
        *band = match subband_threshold(band, sigma_n) {
            Some(t) => band.map(|v| soft_threshold(v, t)),
            None => Plane::zeros(band.width(), band.height()),
        };
    }
    idwt_haar(&pyr)
}
