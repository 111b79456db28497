//! Spatial-domain greyscale filters. All of them mirror the plane at its
//! borders (see [`crate::image::reflect`]).

use crate::error::{Error, Result};
use crate::image::Plane;
use crate::noise::median_in_place;

/// Window radius used for a Gaussian of standard deviation `sigma`.
pub fn kernel_radius(sigma: f64) -> usize {
    (3.0 * sigma).ceil().max(1.0) as usize
}

/// Normalized 1-D Gaussian taps for offsets `-radius..=radius`.
pub fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = kernel_radius(sigma) as isize;
    let taps: Vec<f64> = (-radius..=radius)
        .map(|d| (-((d * d) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = taps.iter().sum();
    taps.into_iter().map(|t| t / sum).collect()
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::invalid(
            name,
            format!("must be finite and > 0, got {v}"),
        ));
    }
    Ok(())
}

/// Separable Gaussian blur, kernel truncated at `ceil(3 sigma)` and
/// renormalized.
pub fn denoise_gaussian(plane: &Plane, sigma_s: f64) -> Result<Plane> {
    positive("sigma_s", sigma_s)?;
    let kernel = gaussian_kernel(sigma_s);
    let radius = (kernel.len() / 2) as isize;
    let (w, h) = (plane.width(), plane.height());

    let horizontal = Plane::from_fn(w, h, |row, col| {
        kernel
            .iter()
            .enumerate()
            .map(|(i, k)| k * plane.get_reflected(row as isize, col as isize + i as isize - radius))
            .sum()
    });
    Ok(Plane::from_fn(w, h, |row, col| {
        kernel
            .iter()
            .enumerate()
            .map(|(i, k)| {
                k * horizontal.get_reflected(row as isize + i as isize - radius, col as isize)
            })
            .sum()
    }))
}

/// Median over the `(2r+1)^2` window.
pub fn denoise_median(plane: &Plane, radius: usize) -> Result<Plane> {
    if radius == 0 {
        return Err(Error::invalid("radius", "must be >= 1"));
    }
    let r = radius as isize;
    let mut window = Vec::with_capacity((2 * radius + 1).pow(2));
    Ok(Plane::from_fn(plane.width(), plane.height(), |row, col| {
        window.clear();
        for dy in -r..=r {
            for dx in -r..=r {
                window.push(plane.get_reflected(row as isize + dy, col as isize + dx));
            }
        }
        median_in_place(&mut window)
    }))
}

/// Bilateral filter over a square window of radius `ceil(3 sigma_s)`.
pub fn denoise_bilateral(plane: &Plane, sigma_s: f64, sigma_r: f64) -> Result<Plane> {
    positive("sigma_s", sigma_s)?;
    positive("sigma_r", sigma_r)?;
    let radius = kernel_radius(sigma_s) as isize;
    let side = (2 * radius + 1) as usize;
    let mut spatial = Vec::with_capacity(side * side);
    for dy in -radius..=radius {
        for dx in -radius..=radius {
            spatial.push((-((dy * dy + dx * dx) as f64) / (2.0 * sigma_s * sigma_s)).exp());
        }
    }
    let range_scale = -1.0 / (2.0 * sigma_r * sigma_r);

    Ok(Plane::from_fn(plane.width(), plane.height(), |row, col| {
        let center = plane.get(row, col);
        let (mut acc, mut norm) = (0.0, 0.0);
        let mut k = 0;
        for dy in -radius..=radius {
            for dx in -radius..=radius {
                let v = plane.get_reflected(row as isize + dy, col as isize + dx);
                let d = v - center;
                let wgt = spatial[k] * (d * d * range_scale).exp();
                acc += wgt * v;
                norm += wgt;
                k += 1;
            }
        }
        acc / norm
    }))
}
