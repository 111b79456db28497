//! Joint demosaicking and denoising with a bilateral kernel.
//!
//! Every output sample, measured or missing, is a normalized weighted mean
//! of same-color mosaic sites inside a window of radius `ceil(3 sigma_s)`.
//! The weight multiplies a spatial Gaussian by a range Gaussian evaluated on
//! a guide image, the bilinear green plane, which exists at every site
//! regardless of color. One pass therefore interpolates and smooths.

use rayon::prelude::*;

use super::bilinear::bilinear_plane;
use crate::cfa::MosaicImage;
use crate::denoise::kernel_radius;
use crate::error::{Error, Result};
use crate::image::{Channel, Plane, RgbImage};

pub fn demosaic_joint_bilateral(
    mosaic: &MosaicImage,
    sigma_s: f64,
    sigma_r: f64,
) -> Result<RgbImage> {
    for (name, v) in [("sigma_s", sigma_s), ("sigma_r", sigma_r)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::invalid(
                name,
                format!("must be finite and > 0, got {v}"),
            ));
        }
    }
    let guide = bilinear_plane(mosaic, Channel::Green);
    let plane = mosaic.plane();
    let pattern = mosaic.pattern();
    let (w, h) = (plane.width(), plane.height());
    let radius = kernel_radius(sigma_s) as isize;
    let side = (2 * radius + 1) as usize;
    let spatial: Vec<f64> = (-radius..=radius)
        .flat_map(|dy| {
            (-radius..=radius)
                .map(move |dx| (-((dy * dy + dx * dx) as f64) / (2.0 * sigma_s * sigma_s)).exp())
        })
        .collect();
    debug_assert_eq!(spatial.len(), side * side);
    let range_scale = -1.0 / (2.0 * sigma_r * sigma_r);

    let rows: Vec<[Vec<f64>; 3]> = (0..h)
        .into_par_iter()
        .map(|row| {
            let mut out = [vec![0.0; w], vec![0.0; w], vec![0.0; w]];
            for col in 0..w {
                let g0 = guide.get(row, col);
                let mut acc = [0.0f64; 3];
                let mut norm = [0.0f64; 3];
                // spatial-only fallback for when every range weight underflows
                let mut acc_s = [0.0f64; 3];
                let mut norm_s = [0.0f64; 3];
                let mut k = 0;
                for dy in -radius..=radius {
                    let r = row as isize + dy;
                    for dx in -radius..=radius {
                        let c = col as isize + dx;
                        let class = pattern
                            .color_at(r.rem_euclid(2) as usize, c.rem_euclid(2) as usize)
                            as usize;
                        let d = guide.get_reflected(r, c) - g0;
                        let v = plane.get_reflected(r, c);
                        let wgt = spatial[k] * (d * d * range_scale).exp();
                        acc[class] += wgt * v;
                        norm[class] += wgt;
                        acc_s[class] += spatial[k] * v;
                        norm_s[class] += spatial[k];
                        k += 1;
                    }
                }
                for (ch, dst) in out.iter_mut().enumerate() {
                    dst[col] = if norm[ch] > 0.0 {
                        acc[ch] / norm[ch]
                    } else {
                        acc_s[ch] / norm_s[ch]
                    };
                }
            }
            out
        })
        .collect();

    let mut channels = [
        Vec::with_capacity(w * h),
        Vec::with_capacity(w * h),
        Vec::with_capacity(w * h),
    ];
    for row in rows {
        for (dst, src) in channels.iter_mut().zip(row) {
            dst.extend(src);
        }
    }
    let [r, g, b] = channels;
    RgbImage::new(
        Plane::new(w, h, r)?,
        Plane::new(w, h, g)?,
        Plane::new(w, h, b)?,
    )
}
