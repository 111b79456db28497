// Add per-color Gaussian noise to a mosaic and estimate its level back
// from the finest Haar diagonal band.

use std::error::Error;

use cfa_denoise::cfa::{decompose, mosaic_from_rgb, CfaPattern};
use cfa_denoise::corpus;
use cfa_denoise::noise::{add_awgn, estimate_sigma, NoiseSpec};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let clean = mosaic_from_rgb(&corpus::blobs(128), CfaPattern::Gbrg)?;
    let spec = NoiseSpec::new(0.08, 0.04, 0.06, 7)?;
    let noisy = add_awgn(&clean, &spec)?;

    let (c, n) = (decompose(&clean), decompose(&noisy));
    for (name, clean_plane, noisy_plane, sigma) in [
        ("r", &c.r, &n.r, spec.sigma_r),
        ("g1", &c.g1, &n.g1, spec.sigma_g),
        ("g2", &c.g2, &n.g2, spec.sigma_g),
        ("b", &c.b, &n.b, spec.sigma_b),
    ] {
        let residual = noisy_plane.samples().iter().zip(clean_plane.samples());
        let std =
            (residual.map(|(a, b)| (a - b).powi(2)).sum::<f64>() / clean_plane.len() as f64).sqrt();
        println!(
            "{name:>2}: sigma {sigma:.3}, measured {std:.4}, estimated {:.4}",
            estimate_sigma(noisy_plane)?
        );
    }
    // same seed, same field
    assert_eq!(add_awgn(&clean, &spec)?, noisy);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
