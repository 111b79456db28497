//! Procedural test images.
//!
//! These stand in for a photo corpus: smooth shading, hard anti-aliased
//! edges, oriented texture and colors whose channels are correlated the
//! way natural scenes are. Every image is a pure function of its size.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::image::{Plane, RgbImage};
use crate::noise::SplitMix64;
use crate::pipeline::CorpusImage;

pub const BUILTIN_NAMES: [&str; 3] = ["shapes", "waves", "blobs"];

fn clamp01(v: f64) -> f64 {
    v.clamp(0.02, 0.98)
}

/// Discs and boxes over a shaded background, 4x4 supersampled.
pub fn shapes(size: usize) -> RgbImage {
    let s = size as f64;
    let scene = |y: f64, x: f64| -> [f64; 3] {
        let (u, v) = (x / s, y / s);
        let mut px = [0.25 + 0.5 * u, 0.3 + 0.3 * v, 0.7 - 0.4 * u * v];
        let discs = [
            (0.30, 0.30, 0.18, [0.85, 0.25, 0.20]),
            (0.68, 0.40, 0.14, [0.20, 0.70, 0.30]),
            (0.45, 0.72, 0.20, [0.95, 0.85, 0.30]),
        ];
        for (cx, cy, r, color) in discs {
            if (u - cx).powi(2) + (v - cy).powi(2) < r * r {
                px = color;
            }
        }
        if (0.72..0.92).contains(&u) && (0.65..0.90).contains(&v) {
            px = [0.15, 0.25, 0.80];
        }
        if (0.05..0.20).contains(&u) && (0.60..0.95).contains(&v) {
            // striped box
            let stripe = ((x / 3.0).floor() as i64).rem_euclid(2) as f64;
            px = [0.3 + 0.5 * stripe, 0.3 + 0.5 * stripe, 0.35 + 0.45 * stripe];
        }
        px
    };
    RgbImage::from_fn(size, size, |row, col| {
        let mut acc = [0.0; 3];
        for sy in 0..4 {
            for sx in 0..4 {
                let p = scene(
                    row as f64 + (sy as f64 + 0.5) / 4.0,
                    col as f64 + (sx as f64 + 0.5) / 4.0,
                );
                for c in 0..3 {
                    acc[c] += p[c] / 16.0;
                }
            }
        }
        acc.map(clamp01)
    })
}

/// Oriented sinusoidal texture modulating a slowly varying tint.
pub fn waves(size: usize) -> RgbImage {
    let gratings = [(0.3f64, 22.0f64), (1.4, 15.0), (2.3, 31.0)];
    RgbImage::from_fn(size, size, |row, col| {
        let (y, x) = (row as f64, col as f64);
        let lum = 0.5
            + gratings
                .iter()
                .map(|&(theta, period)| {
                    0.12 * (2.0 * PI * (x * theta.cos() + y * theta.sin()) / period).cos()
                })
                .sum::<f64>();
        let (u, v) = (x / size as f64, y / size as f64);
        let tint = [0.8 + 0.2 * u, 0.9 - 0.1 * v, 0.7 + 0.25 * (1.0 - u) * v];
        [lum * tint[0], lum * tint[1], lum * tint[2]].map(clamp01)
    })
}

/// Overlapping colored Gaussian bumps with a fine ripple.
pub fn blobs(size: usize) -> RgbImage {
    let mut rng = SplitMix64::new(0x5eed_b10b);
    let mut uniform = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let s = size as f64;
    let bumps: Vec<(f64, f64, f64, [f64; 3])> = (0..12)
        .map(|_| {
            let (cx, cy) = (uniform() * s, uniform() * s);
            let radius = (0.05 + 0.12 * uniform()) * s;
            let base = 0.2 + 0.3 * uniform();
            let color = [
                base + 0.2 * uniform(),
                base + 0.15 * uniform(),
                base + 0.2 * uniform(),
            ];
            (cx, cy, radius, color)
        })
        .collect();
    RgbImage::from_fn(size, size, |row, col| {
        let (y, x) = (row as f64, col as f64);
        let mut px = [0.15, 0.17, 0.2];
        for &(cx, cy, r, color) in &bumps {
            let w = (-((x - cx).powi(2) + (y - cy).powi(2)) / (2.0 * r * r)).exp();
            for c in 0..3 {
                px[c] += w * color[c];
            }
        }
        let ripple = 0.04 * (2.0 * PI * (x + 0.5 * y) / 7.0).sin();
        px.map(|v| clamp01(v * 0.85 + ripple))
    })
}

/// Smooth greyscale radial gradient, bright at the center.
pub fn radial_gradient(size: usize) -> Plane {
    let c = (size as f64 - 1.0) / 2.0;
    let max_r = c * std::f64::consts::SQRT_2;
    Plane::from_fn(size, size, |row, col| {
        let r = ((row as f64 - c).powi(2) + (col as f64 - c).powi(2)).sqrt();
        0.9 - 0.7 * r / max_r
    })
}

pub fn builtin(name: &str, size: usize) -> Result<RgbImage> {
    match name {
        "shapes" => Ok(shapes(size)),
        "waves" => Ok(waves(size)),
        "blobs" => Ok(blobs(size)),
        other => Err(Error::invalid(
            "corpus",
            format!("unknown builtin image `{other}` (expected one of {BUILTIN_NAMES:?})"),
        )),
    }
}

/// All builtin images at the given size, ids `"<name>"`.
pub fn builtin_corpus(size: usize) -> Vec<CorpusImage> {
    BUILTIN_NAMES
        .iter()
        .map(|&name| CorpusImage::new(name, builtin(name, size).expect("known name")))
        .collect()
}
