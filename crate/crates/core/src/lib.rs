//! Single-sensor color imaging simulation.
//!
//! Ground-truth RGB images are sampled through a Bayer color filter array,
//! corrupted with per-channel Gaussian noise and then restored with one of
//! three orderings of denoising and demosaicking:
//!
//! * denoise after demosaicking, channel by channel;
//! * demosaick and denoise jointly with a bilateral kernel;
//! * denoise before demosaicking, by splitting the mosaic into four
//!   half-resolution greyscale sub-images.
//!
//! ```
//! use cfa_denoise::prelude::*;
//!
//! let truth = cfa_denoise::corpus::waves(64);
//! let cfg = PipelineConfig {
//!     pattern: CfaPattern::Gbrg,
//!     noise: NoiseSpec::uniform(0.05, 7).unwrap(),
//!     strategy: Strategy::Before,
//!     denoiser: DenoiserConfig::Wavelet { levels: 2, sigma_n: NoiseLevel::Auto },
//!     demosaicker: DemosaickerConfig::Bilinear,
//! };
//! let out = run_pipeline("waves", &truth, &cfg).unwrap();
//! assert!(out.record.cpsnr_db > 20.0);
//! ```

pub mod cfa;
pub mod cli;
pub mod corpus;
pub mod demosaic;
pub mod denoise;
mod error;
pub mod image;
pub mod imageio;
pub mod metrics;
pub mod noise;
pub mod pipeline;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::cfa::{
        decompose, mosaic_from_rgb, recompose, CfaPattern, MosaicImage, SubImages,
    };
    pub use crate::demosaic::DemosaickerConfig;
    pub use crate::denoise::{DenoiserConfig, NoiseLevel};
    pub use crate::image::{Channel, Plane, RgbImage};
    pub use crate::noise::{add_awgn, NoiseSpec};
    pub use crate::pipeline::{
        run_experiment, run_pipeline, CorpusImage, ExperimentGrid, ExperimentOptions,
        PipelineConfig, Strategy,
    };
    pub use crate::{Error, Result};
}
