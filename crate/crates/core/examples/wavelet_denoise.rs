// Haar pyramid, BayesShrink thresholds and a comparison of the plane
// denoisers on a noisy radial gradient.

use std::error::Error;

use cfa_denoise::corpus;
use cfa_denoise::denoise::{dwt_haar, idwt_haar, subband_threshold, DenoiserConfig, NoiseLevel};
use cfa_denoise::image::Plane;
use cfa_denoise::noise::{estimate_sigma, GaussianStream};

fn mse(a: &Plane, b: &Plane) -> f64 {
    let d = a.samples().iter().zip(b.samples());
    d.map(|(x, y)| (x - y).powi(2)).sum::<f64>() / a.len() as f64
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let clean = corpus::radial_gradient(128);
    let mut g = GaussianStream::new(42);
    let noisy = Plane::from_fn(128, 128, |r, c| clean.get(r, c) + 0.05 * g.next_normal());
    let sigma_n = estimate_sigma(&noisy)?;
    println!("estimated noise sigma {sigma_n:.4}");

    let pyramid = dwt_haar(&noisy, 3)?;
    for (level, bands) in pyramid.details.iter().enumerate() {
        let t: Vec<String> = bands
            .iter()
            .map(|b| match subband_threshold(b, sigma_n) {
                Some(t) => format!("{t:.4}"),
                None => "zeroed".into(),
            })
            .collect();
        println!("level {}: thresholds lh/hl/hh {}", level + 1, t.join(" "));
    }
    let rebuilt = idwt_haar(&pyramid)?;
    println!(
        "perfect reconstruction error {:.1e}",
        mse(&rebuilt, &noisy).sqrt()
    );

    println!("noisy mse {:.3e}", mse(&noisy, &clean));
    for cfg in [
        DenoiserConfig::Gaussian { sigma_s: 1.0 },
        DenoiserConfig::Median { radius: 1 },
        DenoiserConfig::Bilateral {
            sigma_s: 1.5,
            sigma_r: 0.1,
        },
        DenoiserConfig::Wavelet {
            levels: 3,
            sigma_n: NoiseLevel::Auto,
        },
    ] {
        println!("{cfg:<36} mse {:.3e}", mse(&cfg.apply(&noisy)?, &clean));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
