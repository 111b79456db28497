//! Helpers shared by the integration tests. Oracles here are written
//! against the documented behavior, not the library's code paths.
#![allow(dead_code)]

use cfa_denoise::cfa::{CfaPattern, MosaicImage};
use cfa_denoise::image::{Channel, Plane, RgbImage};
use cfa_denoise::noise::GaussianStream;

/// PCG-style LCG, uniform in [0, 1).
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() * n as f64) as usize
    }
}

pub fn random_plane(w: usize, h: usize, rng: &mut Lcg) -> Plane {
    Plane::from_fn(w, h, |_, _| rng.next())
}

pub fn noise_plane(w: usize, h: usize, sigma: f64, seed: u64) -> Plane {
    let mut g = GaussianStream::new(seed);
    Plane::from_fn(w, h, |_, _| sigma * g.next_normal())
}

pub fn add(a: &Plane, b: &Plane) -> Plane {
    Plane::from_fn(a.width(), a.height(), |r, c| a.get(r, c) + b.get(r, c))
}

pub fn plane_mse(a: &Plane, b: &Plane) -> f64 {
    let mut s = 0.0;
    for row in 0..a.height() {
        for col in 0..a.width() {
            let d = a.get(row, col) - b.get(row, col);
            s += d * d;
        }
    }
    s / (a.width() * a.height()) as f64
}

pub fn max_abs(a: &Plane, b: &Plane) -> f64 {
    let mut m: f64 = 0.0;
    for row in 0..a.height() {
        for col in 0..a.width() {
            m = m.max((a.get(row, col) - b.get(row, col)).abs());
        }
    }
    m
}

fn tile_char(pattern: CfaPattern, row: usize, col: usize) -> u8 {
    pattern.name().as_bytes()[(row % 2) * 2 + col % 2]
}

/// Nested-loop bilinear demosaicker on an explicitly mirror-padded copy of
/// the mosaic, one hand-written case per site geometry.
pub fn bilinear_oracle(m: &MosaicImage) -> RgbImage {
    let (w, h) = (m.width(), m.height());
    // pad by one with reflection that skips the edge sample
    let mut pad = vec![vec![0.0; w + 2]; h + 2];
    for (pr, row) in pad.iter_mut().enumerate() {
        for (pc, v) in row.iter_mut().enumerate() {
            let r = match pr {
                0 => 1,
                x if x == h + 1 => h - 2,
                x => x - 1,
            };
            let c = match pc {
                0 => 1,
                x if x == w + 1 => w - 2,
                x => x - 1,
            };
            *v = m.plane().get(r, c);
        }
    }
    let at = |r: usize, c: usize, dr: isize, dc: isize| {
        pad[(r as isize + 1 + dr) as usize][(c as isize + 1 + dc) as usize]
    };
    let mut out = [vec![0.0; w * h], vec![0.0; w * h], vec![0.0; w * h]];
    let chars = b"rgb";
    for r in 0..h {
        for c in 0..w {
            let site = tile_char(m.pattern(), r, c);
            for (ch, &want) in chars.iter().enumerate() {
                let v = if site == want {
                    at(r, c, 0, 0)
                } else if want == b'g' {
                    (at(r, c, -1, 0) + at(r, c, 1, 0) + at(r, c, 0, -1) + at(r, c, 0, 1)) / 4.0
                } else if site == b'g' {
                    if tile_char(m.pattern(), r, c + 1) == want {
                        (at(r, c, 0, -1) + at(r, c, 0, 1)) / 2.0
                    } else {
                        (at(r, c, -1, 0) + at(r, c, 1, 0)) / 2.0
                    }
                } else {
                    (at(r, c, -1, -1) + at(r, c, -1, 1) + at(r, c, 1, -1) + at(r, c, 1, 1)) / 4.0
                };
                out[ch][r * w + c] = v;
            }
        }
    }
    let [r, g, b] = out;
    RgbImage::new(
        Plane::new(w, h, r).unwrap(),
        Plane::new(w, h, g).unwrap(),
        Plane::new(w, h, b).unwrap(),
    )
    .unwrap()
}

pub fn rgb_max_abs(a: &RgbImage, b: &RgbImage) -> f64 {
    Channel::ALL
        .iter()
        .map(|&c| max_abs(a.channel(c), b.channel(c)))
        .fold(0.0, f64::max)
}

/// `r = g = b = offset + slope * col`.
pub fn column_ramp(size: usize, offset: f64, slope: f64) -> RgbImage {
    RgbImage::from_fn(size, size, |_, c| [offset + slope * c as f64; 3])
}
