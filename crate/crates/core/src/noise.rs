//! Seeded sensor noise and noise-level estimation.
//!
//! The generator is fixed so that a `(mosaic, NoiseSpec)` pair produces the
//! same noisy mosaic everywhere:
//!
//! * uniforms come from SplitMix64 seeded with `NoiseSpec::seed`; a 64-bit
//!   output `x` becomes `u = 1 - (x >> 11) * 2^-53`, so `u` is in `(0, 1]`;
//! * normals come from Box-Muller on consecutive uniform pairs `(u1, u2)`:
//!   `sqrt(-2 ln u1) * cos(2 pi u2)` then `sqrt(-2 ln u1) * sin(2 pi u2)`;
//! * samples consume one normal each in row-major order, whatever their
//!   color class, and `ln`/`cos`/`sin` are evaluated with `libm`.

use crate::cfa::MosaicImage;
use crate::error::{Error, Result};
use crate::image::{Channel, Plane};

/// Median absolute deviation to standard deviation for a normal variable.
pub const MAD_TO_SIGMA: f64 = 0.6745;

/// Per-color-class noise levels in normalized intensity units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    pub sigma_r: f64,
    pub sigma_g: f64,
    pub sigma_b: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(sigma_r: f64, sigma_g: f64, sigma_b: f64, seed: u64) -> Result<Self> {
        let spec = NoiseSpec {
            sigma_r,
            sigma_g,
            sigma_b,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn uniform(sigma: f64, seed: u64) -> Result<Self> {
        NoiseSpec::new(sigma, sigma, sigma, seed)
    }

    pub fn noiseless() -> Self {
        NoiseSpec {
            sigma_r: 0.0,
            sigma_g: 0.0,
            sigma_b: 0.0,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, s) in [
            ("sigma_r", self.sigma_r),
            ("sigma_g", self.sigma_g),
            ("sigma_b", self.sigma_b),
        ] {
            if !s.is_finite() || s < 0.0 {
                return Err(Error::invalid(
                    name,
                    format!("must be finite and >= 0, got {s}"),
                ));
            }
        }
        Ok(())
    }

    pub fn sigma(&self, c: Channel) -> f64 {
        match c {
            Channel::Red => self.sigma_r,
            Channel::Green => self.sigma_g,
            Channel::Blue => self.sigma_b,
        }
    }

    pub fn sigmas(&self) -> [f64; 3] {
        [self.sigma_r, self.sigma_g, self.sigma_b]
    }
}

/// SplitMix64.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        mix64(self.state)
    }

    /// Uniform in `(0, 1]`.
    #[inline]
    pub fn next_open01(&mut self) -> f64 {
        1.0 - (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// The SplitMix64 output finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Standard normal stream via Box-Muller, both outputs used.
#[derive(Clone, Debug)]
pub struct GaussianStream {
    rng: SplitMix64,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64) -> Self {
        GaussianStream {
            rng: SplitMix64::new(seed),
            spare: None,
        }
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.rng.next_open01();
        let u2 = self.rng.next_open01();
        let radius = libm::sqrt(-2.0 * libm::log(u1));
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(radius * libm::sin(theta));
        radius * libm::cos(theta)
    }
}

/// Adds independent zero-mean Gaussian noise to every site, with the
/// standard deviation picked by the site's color. Not clipped.
pub fn add_awgn(mosaic: &MosaicImage, spec: &NoiseSpec) -> Result<MosaicImage> {
    spec.validate()?;
    let plane = mosaic.plane();
    let mut stream = GaussianStream::new(spec.seed);
    let sigmas = [spec.sigma_r, spec.sigma_g, spec.sigma_b];
    let noisy = Plane::from_fn(plane.width(), plane.height(), |row, col| {
        let z = stream.next_normal();
        let sigma = sigmas[mosaic.color_at(row, col) as usize];
        plane.get(row, col) + sigma * z
    });
    MosaicImage::new(mosaic.pattern(), noisy)
}

/// Median of a non-empty slice; reorders it. Even counts average the middle pair.
pub(crate) fn median_in_place(values: &mut [f64]) -> f64 {
    let n = values.len();
    let mid = n / 2;
    let (lower, m, _) = values.select_nth_unstable_by(mid, f64::total_cmp);
    let m = *m;
    if n % 2 == 1 {
        m
    } else {
        let below = lower.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (below + m)
    }
}

/// Robust noise level from the finest diagonal Haar band:
/// `median(|HH|) / 0.6745`.
///
/// Odd trailing rows/columns are ignored. Planes smaller than 2x2 are
/// rejected.
pub fn estimate_sigma(plane: &Plane) -> Result<f64> {
    let (w, h) = (plane.width() / 2, plane.height() / 2);
    if w == 0 || h == 0 {
        return Err(Error::invalid(
            "plane",
            format!(
                "noise estimation needs at least 2x2 samples, got {}x{}",
                plane.width(),
                plane.height()
            ),
        ));
    }
    let mut hh = Vec::with_capacity(w * h);
    for row in 0..h {
        for col in 0..w {
            let a = plane.get(2 * row, 2 * col);
            let b = plane.get(2 * row, 2 * col + 1);
            let c = plane.get(2 * row + 1, 2 * col);
            let d = plane.get(2 * row + 1, 2 * col + 1);
            hh.push((0.5 * (a - b - c + d)).abs());
        }
    }
    Ok(median_in_place(&mut hh) / MAD_TO_SIGMA)
}
