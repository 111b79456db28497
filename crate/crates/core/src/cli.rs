//! Command-line front end.
//!
//! Exit status: 0 on success, 1 for usage errors, 2 for I/O or processing
//! failures. Every failure prints exactly one diagnostic line on stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cfa::{decompose, mosaic_from_rgb, recompose, CfaPattern, MosaicImage, SubImageKind};
use crate::corpus;
use crate::demosaic::DemosaickerConfig;
use crate::denoise::{denoise_subimages, DenoiserConfig, NoiseLevel};
use crate::error::Error;
use crate::image::{Plane, RgbImage};
use crate::imageio::{decode_pnm, encode_pnm, write_csv, BitDepth, PnmImage};
use crate::noise::{add_awgn, NoiseSpec};
use crate::pipeline::{
    run_experiment, run_pipeline, CorpusImage, ExperimentGrid, ExperimentOptions, PipelineConfig,
    Strategy,
};

#[derive(Debug, Parser)]
#[command(
    name = "cfa-denoise",
    version,
    about = "Simulate a Bayer sensor and compare denoising before, after and jointly with demosaicking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample an RGB image (PPM) through the color filter array into a PGM mosaic
    Mosaic {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        cfa: PatternArgs,
    },
    /// Add per-color Gaussian noise to a PGM mosaic
    Noise {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        cfa: PatternArgs,
        #[command(flatten)]
        noise: NoiseArgs,
    },
    /// Split a PGM mosaic into r.pgm, g1.pgm, g2.pgm and b.pgm inside --out
    Decompose {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        cfa: PatternArgs,
    },
    /// Denoise a PGM or PPM (each channel), or a mosaic through its sub-images with --cfa
    Denoise {
        #[command(flatten)]
        io: IoArgs,
        /// Treat the PGM input as a mosaic and denoise its four sub-images
        #[arg(long)]
        cfa: bool,
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        denoiser: DenoiserArgs,
    },
    /// Reconstruct an RGB PPM from a PGM mosaic
    Demosaic {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        cfa: PatternArgs,
        #[command(flatten)]
        demosaicker: DemosaickerArgs,
    },
    /// Run one strategy end to end; writes the result PPM and a CSV record on stdout
    Pipeline {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::Before)]
        strategy: StrategyArg,
        #[command(flatten)]
        cfa: PatternArgs,
        #[command(flatten)]
        noise: NoiseArgs,
        #[command(flatten)]
        denoiser: DenoiserArgs,
        #[command(flatten)]
        demosaicker: DemosaickerArgs,
        /// Fill the wall_ms column (makes output vary between runs)
        #[arg(long)]
        timing: bool,
    },
    /// Sweep strategies and noise levels over a corpus; writes CSV
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
struct IoArgs {
    /// Input PNM file
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Output path
    #[arg(long = "out", value_name = "PATH")]
    output: PathBuf,
    /// Output bit depth
    #[arg(long = "depth", default_value = "8", value_parser = parse_depth)]
    bit_depth: BitDepth,
}

impl IoArgs {
    fn depth(&self) -> BitDepth {
        self.bit_depth
    }
}

fn parse_depth(s: &str) -> Result<BitDepth, String> {
    s.parse::<u32>()
        .ok()
        .and_then(BitDepth::from_bits)
        .ok_or_else(|| format!("expected 8 or 16, got `{s}`"))
}

#[derive(Debug, Args)]
struct PatternArgs {
    /// Bayer phase: rggb, grbg, gbrg or bggr (case-insensitive)
    #[arg(long, default_value = "gbrg", value_parser = parse_pattern)]
    pattern: CfaPattern,
}

fn parse_pattern(s: &str) -> Result<CfaPattern, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
struct NoiseArgs {
    /// Noise standard deviation for all three color classes
    #[arg(long)]
    sigma: Option<f64>,
    /// Noise standard deviation at red sites (overrides --sigma)
    #[arg(long)]
    sigma_r: Option<f64>,
    /// Noise standard deviation at green sites (overrides --sigma)
    #[arg(long)]
    sigma_g: Option<f64>,
    /// Noise standard deviation at blue sites (overrides --sigma)
    #[arg(long)]
    sigma_b: Option<f64>,
    /// Noise seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl NoiseArgs {
    fn spec(&self) -> Result<NoiseSpec, CliError> {
        let base = self.sigma.unwrap_or(0.0);
        NoiseSpec::new(
            self.sigma_r.unwrap_or(base),
            self.sigma_g.unwrap_or(base),
            self.sigma_b.unwrap_or(base),
            self.seed,
        )
        .map_err(CliError::usage)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DenoiserKind {
    None,
    Gaussian,
    Median,
    Bilateral,
    Wavelet,
}

#[derive(Debug, Args)]
struct DenoiserArgs {
    /// Greyscale denoiser [default: wavelet, or none for the joint strategy]
    #[arg(long, value_enum)]
    denoiser: Option<DenoiserKind>,
    /// Spatial sigma in pixels (gaussian, bilateral)
    #[arg(long, default_value_t = 1.0)]
    dn_sigma_s: f64,
    /// Window radius in pixels (median)
    #[arg(long, default_value_t = 1)]
    dn_radius: usize,
    /// Range sigma in intensity units (bilateral)
    #[arg(long, default_value_t = 0.1)]
    dn_sigma_r: f64,
    /// Decomposition levels (wavelet)
    #[arg(long, default_value_t = 3)]
    dn_levels: usize,
    /// Noise level for thresholding: a number or "auto" (wavelet)
    #[arg(long, default_value = "auto", value_parser = parse_noise_level)]
    dn_sigma_n: NoiseLevel,
}

fn parse_noise_level(s: &str) -> Result<NoiseLevel, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(NoiseLevel::Auto);
    }
    s.parse::<f64>()
        .map(NoiseLevel::Fixed)
        .map_err(|_| format!("expected a number or `auto`, got `{s}`"))
}

impl DenoiserArgs {
    fn config(&self, default: DenoiserKind) -> Result<DenoiserConfig, CliError> {
        let cfg = match self.denoiser.unwrap_or(default) {
            DenoiserKind::None => DenoiserConfig::None,
            DenoiserKind::Gaussian => DenoiserConfig::Gaussian {
                sigma_s: self.dn_sigma_s,
            },
            DenoiserKind::Median => DenoiserConfig::Median {
                radius: self.dn_radius,
            },
            DenoiserKind::Bilateral => DenoiserConfig::Bilateral {
                sigma_s: self.dn_sigma_s,
                sigma_r: self.dn_sigma_r,
            },
            DenoiserKind::Wavelet => DenoiserConfig::Wavelet {
                levels: self.dn_levels,
                sigma_n: self.dn_sigma_n,
            },
        };
        cfg.validate().map_err(CliError::usage)?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DemosaickerKind {
    Bilinear,
    Gradient,
    JointBilateral,
}

#[derive(Debug, Args)]
struct DemosaickerArgs {
    /// Demosaicker [default: bilinear, or joint-bilateral for the joint strategy]
    #[arg(long, value_enum)]
    demosaicker: Option<DemosaickerKind>,
    /// Spatial sigma in pixels (joint-bilateral)
    #[arg(long, default_value_t = 1.0)]
    jb_sigma_s: f64,
    /// Range sigma in intensity units (joint-bilateral)
    #[arg(long, default_value_t = 0.1)]
    jb_sigma_r: f64,
}

impl DemosaickerArgs {
    fn joint(&self) -> DemosaickerConfig {
        DemosaickerConfig::JointBilateral {
            sigma_s: self.jb_sigma_s,
            sigma_r: self.jb_sigma_r,
        }
    }

    fn config(&self, default: DemosaickerKind) -> Result<DemosaickerConfig, CliError> {
        let cfg = match self.demosaicker.unwrap_or(default) {
            DemosaickerKind::Bilinear => DemosaickerConfig::Bilinear,
            DemosaickerKind::Gradient => DemosaickerConfig::Gradient,
            DemosaickerKind::JointBilateral => self.joint(),
        };
        cfg.validate().map_err(CliError::usage)?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    After,
    Joint,
    Before,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::After => Strategy::After,
            StrategyArg::Joint => Strategy::Joint,
            StrategyArg::Before => Strategy::Before,
        }
    }
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// Ground-truth PPM images (repeatable); the file stem is the image id
    #[arg(long = "in", value_name = "PATH")]
    inputs: Vec<PathBuf>,
    /// Add the procedural images shapes, waves and blobs to the corpus
    #[arg(long)]
    builtin: bool,
    /// Side length of the builtin images
    #[arg(long, default_value_t = 256)]
    size: usize,
    /// Comma-separated noise levels, applied to all three color classes
    #[arg(long, value_delimiter = ',', default_value = "0.02,0.05,0.1")]
    sigmas: Vec<f64>,
    /// Comma-separated strategies
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "after,before"
    )]
    strategies: Vec<StrategyArg>,
    #[command(flatten)]
    cfa: PatternArgs,
    #[command(flatten)]
    denoiser: DenoiserArgs,
    #[command(flatten)]
    demosaicker: DemosaickerArgs,
    /// Noise realizations per noise level
    #[arg(long, default_value_t = 5)]
    seeds: usize,
    /// Master seed; each run uses a seed derived from it, the image id and the noise index
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads [default: number of processors]
    #[arg(long)]
    jobs: Option<usize>,
    /// CSV output path [default: stdout]
    #[arg(long = "out", value_name = "PATH")]
    output: Option<PathBuf>,
    /// Fill the wall_ms column (makes output vary between runs)
    #[arg(long)]
    timing: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io { path: PathBuf, message: String },
    Processing(Error),
}

impl CliError {
    fn usage(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }

    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.to_owned(),
            message: e.to_string(),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } | CliError::Processing(_) => 2,
        }
    }

    fn line(&self) -> String {
        match self {
            CliError::Usage(m) => format!("error: {m}"),
            CliError::Io { path, message } => {
                format!("error: `{}`: {message}", path.display())
            }
            CliError::Processing(e) => format!("error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Processing(e)
    }
}

fn read_pnm(path: &Path) -> Result<PnmImage, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, format!("cannot read: {e}")))?;
    decode_pnm(&bytes).map_err(|e| CliError::io(path, e))
}

fn read_gray(path: &Path) -> Result<Plane, CliError> {
    read_pnm(path)?
        .into_gray()
        .map_err(|e| CliError::io(path, e))
}

fn read_rgb(path: &Path) -> Result<RgbImage, CliError> {
    read_pnm(path)?
        .into_rgb()
        .map_err(|e| CliError::io(path, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, format!("cannot write: {e}")))
}

fn write_pnm(path: &Path, image: impl Into<PnmImage>, depth: BitDepth) -> Result<(), CliError> {
    write_file(path, &encode_pnm(&image.into(), depth))
}

fn read_mosaic(path: &Path, pattern: CfaPattern) -> Result<MosaicImage, CliError> {
    Ok(MosaicImage::new(pattern, read_gray(path)?)?)
}

fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Mosaic { io, cfa } => {
            let rgb = read_rgb(&io.input)?;
            let mosaic = mosaic_from_rgb(&rgb, cfa.pattern)?;
            write_pnm(&io.output, mosaic.into_plane(), io.depth())
        }
        Command::Noise { io, cfa, noise } => {
            let spec = noise.spec()?;
            let mosaic = read_mosaic(&io.input, cfa.pattern)?;
            let noisy = add_awgn(&mosaic, &spec)?;
            write_pnm(&io.output, noisy.into_plane(), io.depth())
        }
        Command::Decompose { io, cfa } => {
            let subs = decompose(&read_mosaic(&io.input, cfa.pattern)?);
            fs::create_dir_all(&io.output)
                .map_err(|e| CliError::io(&io.output, format!("cannot create directory: {e}")))?;
            for kind in SubImageKind::ALL {
                let path = io.output.join(format!("{}.pgm", kind.name()));
                write_pnm(&path, subs.get(kind).clone(), io.depth())?;
            }
            Ok(())
        }
        Command::Denoise {
            io,
            cfa,
            pattern,
            denoiser,
        } => {
            let cfg = denoiser.config(DenoiserKind::Wavelet)?;
            let out: PnmImage = if cfa {
                let mosaic = read_mosaic(&io.input, pattern.pattern)?;
                let subs = denoise_subimages(&decompose(&mosaic), &cfg)?;
                recompose(&subs)?.into_plane().into()
            } else {
                match read_pnm(&io.input)? {
                    PnmImage::Gray(p) => cfg.apply(&p)?.into(),
                    PnmImage::Rgb(rgb) => rgb.try_map_channels(|p| cfg.apply(p))?.into(),
                }
            };
            write_pnm(&io.output, out, io.depth())
        }
        Command::Demosaic {
            io,
            cfa,
            demosaicker,
        } => {
            let cfg = demosaicker.config(DemosaickerKind::Bilinear)?;
            let rgb = cfg.apply(&read_mosaic(&io.input, cfa.pattern)?)?;
            write_pnm(&io.output, rgb, io.depth())
        }
        Command::Pipeline {
            io,
            strategy,
            cfa,
            noise,
            denoiser,
            demosaicker,
            timing,
        } => {
            let joint = strategy == StrategyArg::Joint;
            let cfg = PipelineConfig {
                pattern: cfa.pattern,
                noise: noise.spec()?,
                strategy: strategy.into(),
                denoiser: denoiser.config(if joint {
                    DenoiserKind::None
                } else {
                    DenoiserKind::Wavelet
                })?,
                demosaicker: demosaicker.config(if joint {
                    DemosaickerKind::JointBilateral
                } else {
                    DemosaickerKind::Bilinear
                })?,
            };
            cfg.validate().map_err(CliError::usage)?;
            let truth = read_rgb(&io.input)?;
            let id = image_id(&io.input);
            let mut out = run_pipeline(&id, &truth, &cfg)?;
            if !timing {
                out.record.wall_ms = None;
            }
            write_pnm(&io.output, out.image, io.depth())?;
            stdout
                .write_all(&write_csv(&[out.record]))
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
        Command::Experiment(args) => experiment(args, stdout),
    }
}

fn image_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn experiment(args: ExperimentArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    if args.inputs.is_empty() && !args.builtin {
        return Err(CliError::Usage(
            "experiment needs at least one --in image or --builtin".into(),
        ));
    }
    if args.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let strategies: Vec<Strategy> = args.strategies.iter().map(|&s| s.into()).collect();
    let mut demosaickers = Vec::new();
    if strategies.iter().any(|&s| s != Strategy::Joint) {
        let dm = args.demosaicker.config(DemosaickerKind::Bilinear)?;
        if dm.is_joint() {
            return Err(CliError::Usage(
                "--demosaicker joint-bilateral only applies to the joint strategy".into(),
            ));
        }
        demosaickers.push(dm);
    }
    if strategies.contains(&Strategy::Joint) {
        let jb = args.demosaicker.joint();
        jb.validate().map_err(CliError::usage)?;
        demosaickers.push(jb);
    }
    let grid = ExperimentGrid {
        pattern: args.cfa.pattern,
        sigmas: args.sigmas.iter().map(|&s| [s; 3]).collect(),
        strategies,
        denoisers: vec![args.denoiser.config(DenoiserKind::Wavelet)?],
        demosaickers,
        replicates: args.seeds,
        master_seed: args.seed,
    };
    for &s in &args.sigmas {
        NoiseSpec::uniform(s, 0).map_err(CliError::usage)?;
    }

    let mut corpus = Vec::new();
    for path in &args.inputs {
        corpus.push(CorpusImage::new(image_id(path), read_rgb(path)?));
    }
    if args.builtin {
        if args.size < 2 {
            return Err(CliError::Usage("--size must be at least 2".into()));
        }
        corpus.extend(corpus::builtin_corpus(args.size));
    }
    let options = ExperimentOptions {
        jobs: args.jobs,
        record_timing: args.timing,
    };
    let records = run_experiment(&corpus, &grid, &options)?;
    let csv = write_csv(&records);
    match &args.output {
        Some(path) => write_file(path, &csv),
        None => stdout
            .write_all(&csv)
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

/// Collapses a clap diagnostic onto one line, dropping usage hints.
fn one_line(rendered: &str) -> String {
    rendered
        .lines()
        .map(str::trim)
        .take_while(|l| !l.starts_with("Usage:"))
        .filter(|l| !l.is_empty() && !l.starts_with("tip:"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(stderr, "{}", e.render());
                    1
                }
                _ => {
                    let _ = writeln!(stderr, "{}", one_line(&e.render().to_string()));
                    1
                }
            };
        }
    };
    match run(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.line());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapses_multiline_diagnostics() {
        let text = "error: the following required arguments were not provided:\n  --in <PATH>\n\nUsage: cfa-denoise mosaic --in <PATH>\n\nFor more information, try '--help'.\n";
        assert_eq!(
            one_line(text),
            "error: the following required arguments were not provided: --in <PATH>"
        );
    }

    #[test]
    fn noise_level_parser() {
        assert_eq!(parse_noise_level("AUTO").unwrap(), NoiseLevel::Auto);
        assert_eq!(parse_noise_level("0.05").unwrap(), NoiseLevel::Fixed(0.05));
        assert!(parse_noise_level("loud").is_err());
    }

    #[test]
    fn per_channel_sigma_overrides_shorthand() {
        let args = NoiseArgs {
            sigma: Some(0.1),
            sigma_r: None,
            sigma_g: Some(0.0),
            sigma_b: None,
            seed: 3,
        };
        assert_eq!(args.spec().unwrap().sigmas(), [0.1, 0.0, 0.1]);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
