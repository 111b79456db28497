// A small experiment grid over the builtin corpus, printed as CSV.

use std::error::Error;
use std::io::Write;

use cfa_denoise::imageio::write_csv;
use cfa_denoise::prelude::*;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let corpus = cfa_denoise::corpus::builtin_corpus(64);
    let grid = ExperimentGrid {
        pattern: CfaPattern::Gbrg,
        sigmas: vec![[0.05; 3], [0.1; 3]],
        strategies: vec![Strategy::After, Strategy::Joint, Strategy::Before],
        denoisers: vec![DenoiserConfig::Wavelet {
            levels: 3,
            sigma_n: NoiseLevel::Auto,
        }],
        demosaickers: vec![
            DemosaickerConfig::Bilinear,
            DemosaickerConfig::JointBilateral {
                sigma_s: 1.0,
                sigma_r: 0.1,
            },
        ],
        replicates: 2,
        master_seed: 1,
    };
    let records = run_experiment(&corpus, &grid, &ExperimentOptions::default())?;
    std::io::stdout().write_all(&write_csv(&records))?;

    for strategy in grid.strategies.iter() {
        let rows: Vec<_> = records.iter().filter(|r| r.strategy == *strategy).collect();
        let mean = rows.iter().map(|r| r.cpsnr_db).sum::<f64>() / rows.len() as f64;
        eprintln!(
            "{:<6} mean cpsnr {mean:.2} dB over {} runs",
            strategy.name(),
            rows.len()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
