// Reconstruct the builtin images with each demosaicker from a clean mosaic.

use std::error::Error;

use cfa_denoise::cfa::{mosaic_from_rgb, CfaPattern};
use cfa_denoise::corpus;
use cfa_denoise::demosaic::DemosaickerConfig;
use cfa_denoise::metrics::{color_metrics, DEFAULT_CROP};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let demosaickers = [
        DemosaickerConfig::Bilinear,
        DemosaickerConfig::Gradient,
        DemosaickerConfig::JointBilateral {
            sigma_s: 1.0,
            sigma_r: 0.1,
        },
    ];
    for img in corpus::builtin_corpus(96) {
        let mosaic = mosaic_from_rgb(&img.image, CfaPattern::Gbrg)?;
        for dm in demosaickers {
            let m = color_metrics(&img.image, &dm.apply(&mosaic)?, DEFAULT_CROP)?;
            println!(
                "{:<7} {:<38} cpsnr {:6.2} dB  (r {:.2} g {:.2} b {:.2})",
                img.id, dm, m.cpsnr_db, m.psnr_db[0], m.psnr_db[1], m.psnr_db[2]
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
