//! Greyscale denoisers.
//!
//! The same filters serve both sides of the demosaicker: they run on each
//! channel of a demosaicked image, or on each of the four CFA sub-images
//! before demosaicking.

use std::fmt;

use rayon::prelude::*;

use crate::cfa::{SubImageKind, SubImages};
use crate::error::{Error, Result};
use crate::image::Plane;

mod filters;
mod haar;
mod wavelet;

pub use filters::{
    denoise_bilateral, denoise_gaussian, denoise_median, gaussian_kernel, kernel_radius,
};
pub use haar::{dwt_haar, idwt_haar, Subbands, WaveletPyramid};
pub use wavelet::{denoise_wavelet, soft_threshold, subband_threshold, NoiseLevel};

/// Which greyscale denoiser to run, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DenoiserConfig {
    /// Pass-through.
    None,
    Gaussian {
        sigma_s: f64,
    },
    Median {
        radius: usize,
    },
    Bilateral {
        sigma_s: f64,
        sigma_r: f64,
    },
    Wavelet {
        levels: usize,
        sigma_n: NoiseLevel,
    },
}

impl DenoiserConfig {
    /// Wavelet thresholding with zero noise level: a configured but inert
    /// denoiser.
    pub fn disabled_wavelet(levels: usize) -> Self {
        DenoiserConfig::Wavelet {
            levels,
            sigma_n: NoiseLevel::Fixed(0.0),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DenoiserConfig::None => "none",
            DenoiserConfig::Gaussian { .. } => "gaussian",
            DenoiserConfig::Median { .. } => "median",
            DenoiserConfig::Bilateral { .. } => "bilateral",
            DenoiserConfig::Wavelet { .. } => "wavelet",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(
                    name,
                    format!("must be finite and > 0, got {v}"),
                ))
            }
        };
        match *self {
            DenoiserConfig::None => Ok(()),
            DenoiserConfig::Gaussian { sigma_s } => positive("sigma_s", sigma_s),
            DenoiserConfig::Median { radius } if radius >= 1 => Ok(()),
            DenoiserConfig::Median { .. } => Err(Error::invalid("radius", "must be >= 1")),
            DenoiserConfig::Bilateral { sigma_s, sigma_r } => {
                positive("sigma_s", sigma_s)?;
                positive("sigma_r", sigma_r)
            }
            DenoiserConfig::Wavelet { levels: 0, .. } => {
                Err(Error::invalid("levels", "need at least one level"))
            }
            DenoiserConfig::Wavelet {
                sigma_n: NoiseLevel::Fixed(s),
                ..
            } if !(s.is_finite() && s >= 0.0) => Err(Error::invalid(
                "sigma_n",
                format!("must be finite and >= 0, got {s}"),
            )),
            DenoiserConfig::Wavelet { .. } => Ok(()),
        }
    }

    pub fn apply(&self, plane: &Plane) -> Result<Plane> {
        match *self {
            DenoiserConfig::None => Ok(plane.clone()),
            DenoiserConfig::Gaussian { sigma_s } => denoise_gaussian(plane, sigma_s),
            DenoiserConfig::Median { radius } => denoise_median(plane, radius),
            DenoiserConfig::Bilateral { sigma_s, sigma_r } => {
                denoise_bilateral(plane, sigma_s, sigma_r)
            }
            DenoiserConfig::Wavelet { levels, sigma_n } => denoise_wavelet(plane, levels, sigma_n),
        }
    }
}

/// Compact label used in CSV output, e.g. `wavelet:levels=3:sigma_n=auto`.
impl fmt::Display for DenoiserConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DenoiserConfig::None => f.write_str("none"),
            DenoiserConfig::Gaussian { sigma_s } => write!(f, "gaussian:sigma_s={sigma_s}"),
            DenoiserConfig::Median { radius } => write!(f, "median:radius={radius}"),
            DenoiserConfig::Bilateral { sigma_s, sigma_r } => {
                write!(f, "bilateral:sigma_s={sigma_s}:sigma_r={sigma_r}")
            }
            DenoiserConfig::Wavelet { levels, sigma_n } => {
                write!(f, "wavelet:levels={levels}:sigma_n=")?;
                match sigma_n {
                    NoiseLevel::Auto => f.write_str("auto"),
                    NoiseLevel::Fixed(s) => write!(f, "{s}"),
                }
            }
        }
    }
}

/// Runs `cfg` on each sub-image on its own. `Auto` noise levels are
/// estimated per sub-image.
pub fn denoise_subimages(subs: &SubImages, cfg: &DenoiserConfig) -> Result<SubImages> {
    cfg.validate()?;
    let planes: Vec<Plane> = SubImageKind::ALL
        .par_iter()
        .map(|&kind| cfg.apply(subs.get(kind)))
        .collect::<Result<_>>()?;
    let [r, g1, g2, b]: [Plane; 4] = planes.try_into().expect("four sub-images");
    Ok(SubImages {
        r,
        g1,
        g2,
        b,
        pattern: subs.pattern,
        full_width: subs.full_width,
        full_height: subs.full_height,
    })
}
