//! The three orderings of denoising and demosaicking, and experiment
//! sweeps over them.
//!
//! * [`Strategy::After`]: mosaic, add noise, demosaic, then denoise each RGB
//!   channel.
//! * [`Strategy::Joint`]: mosaic, add noise, then one joint bilateral pass.
//! * [`Strategy::Before`]: mosaic, add noise, split into the four CFA
//!   sub-images, denoise each, reassemble, then demosaic.
//!
//! Metrics compare the final RGB image with the ground truth after
//! cropping [`DEFAULT_CROP`] pixels from every border.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::cfa::{decompose, mosaic_from_rgb, recompose, CfaPattern};
use crate::demosaic::DemosaickerConfig;
use crate::denoise::{denoise_subimages, DenoiserConfig};
use crate::error::{Error, Result};
use crate::image::RgbImage;
use crate::metrics::{color_metrics, ColorMetrics, DEFAULT_CROP};
use crate::noise::{add_awgn, mix64, NoiseSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    After,
    Joint,
    Before,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::After, Strategy::Joint, Strategy::Before];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::After => "after",
            Strategy::Joint => "joint",
            Strategy::Before => "before",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid("strategy", format!("unknown strategy `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    pub pattern: CfaPattern,
    pub noise: NoiseSpec,
    pub strategy: Strategy,
    pub denoiser: DenoiserConfig,
    pub demosaicker: DemosaickerConfig,
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.noise.validate()?;
        self.denoiser.validate()?;
        self.demosaicker.validate()?;
        match (self.strategy, self.demosaicker.is_joint()) {
            (Strategy::Joint, false) => Err(Error::Config(
                "the joint strategy requires the joint-bilateral demosaicker".into(),
            )),
            (Strategy::Joint, true) if self.denoiser != DenoiserConfig::None => Err(Error::Config(
                "the joint strategy has no separate denoiser; use `none`".into(),
            )),
            (Strategy::After | Strategy::Before, true) => Err(Error::Config(format!(
                "the {} strategy needs a non-joint demosaicker",
                self.strategy
            ))),
            _ => Ok(()),
        }
    }
}

/// One row of an experiment table.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub image: String,
    pub pattern: CfaPattern,
    pub strategy: Strategy,
    pub denoiser: DenoiserConfig,
    pub demosaicker: DemosaickerConfig,
    /// `[r, g, b]` noise levels.
    pub sigma: [f64; 3],
    pub seed: u64,
    pub mse: [f64; 3],
    /// `+inf` when the channel MSE is zero.
    pub psnr_db: [f64; 3],
    pub cpsnr_db: f64,
    /// Absent when timing is not recorded, which keeps output reproducible.
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub image: RgbImage,
    pub record: ExperimentRecord,
}

/// Runs one strategy end to end on a ground-truth image.
pub fn run_pipeline(
    image_id: &str,
    truth: &RgbImage,
    cfg: &PipelineConfig,
) -> Result<PipelineOutput> {
    cfg.validate()?;
    let start = Instant::now();
    let clean = mosaic_from_rgb(truth, cfg.pattern)?;
    let noisy = add_awgn(&clean, &cfg.noise)?;
    let image = match cfg.strategy {
        Strategy::After => {
            let rgb = cfg.demosaicker.apply(&noisy)?;
            rgb.try_map_channels(|p| cfg.denoiser.apply(p))?
        }
        Strategy::Joint => cfg.demosaicker.apply(&noisy)?,
        Strategy::Before => {
            let subs = denoise_subimages(&decompose(&noisy), &cfg.denoiser)?;
            cfg.demosaicker.apply(&recompose(&subs)?)?
        }
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let ColorMetrics {
        mse,
        psnr_db,
        cpsnr_db,
    } = color_metrics(truth, &image, DEFAULT_CROP)?;
    Ok(PipelineOutput {
        image,
        record: ExperimentRecord {
            image: image_id.to_owned(),
            pattern: cfg.pattern,
            strategy: cfg.strategy,
            denoiser: cfg.denoiser,
            demosaicker: cfg.demosaicker,
            sigma: cfg.noise.sigmas(),
            seed: cfg.noise.seed,
            mse,
            psnr_db,
            cpsnr_db,
            wall_ms: Some(wall_ms),
        },
    })
}

/// A named ground-truth image.
#[derive(Clone, Debug)]
pub struct CorpusImage {
    pub id: String,
    pub image: RgbImage,
}

impl CorpusImage {
    pub fn new(id: impl Into<String>, image: RgbImage) -> Self {
        CorpusImage {
            id: id.into(),
            image,
        }
    }
}

/// Parameter sweep. Grid points are enumerated noise level first, then
/// strategy, denoiser, demosaicker and finally replicate.
///
/// Combinations a strategy cannot use are skipped: `Joint` only pairs with
/// joint demosaickers and appears once per demosaicker with denoiser
/// `none`; `After` and `Before` skip joint demosaickers.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentGrid {
    pub pattern: CfaPattern,
    /// `[r, g, b]` noise levels.
    pub sigmas: Vec<[f64; 3]>,
    pub strategies: Vec<Strategy>,
    pub denoisers: Vec<DenoiserConfig>,
    pub demosaickers: Vec<DemosaickerConfig>,
    /// Independent noise realizations per noise level.
    pub replicates: usize,
    pub master_seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub index: usize,
    /// `sigma_index * replicates + replicate`; all points sharing it see the
    /// same noise field on a given image.
    pub noise_index: usize,
    pub sigma: [f64; 3],
    pub strategy: Strategy,
    pub denoiser: DenoiserConfig,
    pub demosaicker: DemosaickerConfig,
}

impl ExperimentGrid {
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for (si, &sigma) in self.sigmas.iter().enumerate() {
            for &strategy in &self.strategies {
                let denoisers: Vec<DenoiserConfig> = if strategy == Strategy::Joint {
                    vec![DenoiserConfig::None]
                } else {
                    self.denoisers.clone()
                };
                for &denoiser in &denoisers {
                    for &demosaicker in &self.demosaickers {
                        if demosaicker.is_joint() != (strategy == Strategy::Joint) {
                            continue;
                        }
                        for rep in 0..self.replicates {
                            out.push(GridPoint {
                                index: out.len(),
                                noise_index: si * self.replicates + rep,
                                sigma,
                                strategy,
                                denoiser,
                                demosaicker,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Per-run seed: `master_seed XOR mix64(fnv1a64(image_id bytes ++
/// noise_index as u64 little-endian))`, where `mix64` is the SplitMix64
/// finalizer.
pub fn derive_seed(master_seed: u64, image_id: &str, noise_index: usize) -> u64 {
    const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = FNV_OFFSET;
    for &b in image_id
        .as_bytes()
        .iter()
        .chain((noise_index as u64).to_le_bytes().iter())
    {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    master_seed ^ mix64(h)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExperimentOptions {
    /// Worker threads; `None` uses one per available processor.
    pub jobs: Option<usize>,
    /// Fill `wall_ms`. Timing varies between runs, so leave it off when the
    /// table must be reproducible byte for byte.
    pub record_timing: bool,
}

/// Runs every `(image, grid point)` pair. Records come back image-major in
/// grid order regardless of how the work was scheduled.
pub fn run_experiment(
    corpus: &[CorpusImage],
    grid: &ExperimentGrid,
    options: &ExperimentOptions,
) -> Result<Vec<ExperimentRecord>> {
    if corpus.is_empty() {
        return Err(Error::Config("experiment corpus is empty".into()));
    }
    let points = grid.points();
    if points.is_empty() {
        return Err(Error::Config(
            "experiment grid has no runnable points".into(),
        ));
    }
    let jobs: Vec<(&CorpusImage, &GridPoint)> = corpus
        .iter()
        .flat_map(|img| points.iter().map(move |p| (img, p)))
        .collect();

    let run_one = |(img, point): &(&CorpusImage, &GridPoint)| -> Result<ExperimentRecord> {
        let seed = derive_seed(grid.master_seed, &img.id, point.noise_index);
        let [sr, sg, sb] = point.sigma;
        let cfg = PipelineConfig {
            pattern: grid.pattern,
            noise: NoiseSpec::new(sr, sg, sb, seed)?,
            strategy: point.strategy,
            denoiser: point.denoiser,
            demosaicker: point.demosaicker,
        };
        let mut record = run_pipeline(&img.id, &img.image, &cfg)
            .map_err(|e| Error::GridPoint {
                image: img.id.clone(),
                index: point.index,
                source: Box::new(e),
            })?
            .record;
        if !options.record_timing {
            record.wall_ms = None;
        }
        Ok(record)
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| jobs.par_iter().map(run_one).collect())
}
