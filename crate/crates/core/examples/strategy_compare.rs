// Denoise after demosaicking, jointly, or before demosaicking on the
// sub-images, all on the same noise field.

use std::error::Error;

use cfa_denoise::prelude::*;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let truth = cfa_denoise::corpus::shapes(128);
    let wavelet = DenoiserConfig::Wavelet {
        levels: 3,
        sigma_n: NoiseLevel::Auto,
    };
    let runs = [
        (
            Strategy::After,
            DenoiserConfig::None,
            DemosaickerConfig::Bilinear,
        ),
        (Strategy::After, wavelet, DemosaickerConfig::Bilinear),
        (
            Strategy::Joint,
            DenoiserConfig::None,
            DemosaickerConfig::JointBilateral {
                sigma_s: 1.0,
                sigma_r: 0.1,
            },
        ),
        (Strategy::Before, wavelet, DemosaickerConfig::Bilinear),
        (Strategy::Before, wavelet, DemosaickerConfig::Gradient),
    ];
    for sigma in [0.02, 0.1] {
        println!("sigma {sigma}");
        for (strategy, denoiser, demosaicker) in runs {
            let cfg = PipelineConfig {
                pattern: CfaPattern::Gbrg,
                noise: NoiseSpec::uniform(sigma, 11)?,
                strategy,
                denoiser,
                demosaicker,
            };
            let out = run_pipeline("shapes", &truth, &cfg)?;
            println!(
                "  {:<6} {:<30} {:<38} cpsnr {:.2} dB",
                strategy.name(),
                denoiser.to_string(),
                demosaicker.to_string(),
                out.record.cpsnr_db
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
