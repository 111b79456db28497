//! MSE / PSNR / CPSNR on normalized intensities.

use crate::error::{Error, Result};
use crate::image::{Channel, Plane, RgbImage};

/// Border width excluded from reported metrics.
pub const DEFAULT_CROP: usize = 4;

/// Mean squared error, skipping `crop` pixels on every side.
pub fn mse(a: &Plane, b: &Plane, crop: usize) -> Result<f64> {
    a.same_dims(b)?;
    let (w, h) = (a.width(), a.height());
    if 2 * crop >= w || 2 * crop >= h {
        return Err(Error::invalid(
            "crop",
            format!("crop {crop} leaves nothing of a {w}x{h} plane"),
        ));
    }
    let mut sum = 0.0;
    for row in crop..h - crop {
        let ra = &a.samples()[row * w + crop..(row + 1) * w - crop];
        let rb = &b.samples()[row * w + crop..(row + 1) * w - crop];
        sum += ra
            .iter()
            .zip(rb)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>();
    }
    Ok(sum / ((w - 2 * crop) * (h - 2 * crop)) as f64)
}

/// `10 log10(peak^2 / mse)`; `+inf` for a perfect match.
pub fn psnr(mse_value: f64, peak: f64) -> Result<f64> {
    if mse_value.is_nan() || mse_value < 0.0 {
        return Err(Error::invalid(
            "mse",
            format!("must be >= 0, got {mse_value}"),
        ));
    }
    if mse_value == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (peak * peak / mse_value).log10())
}

/// Per-channel MSE and PSNR plus the color PSNR of the mean MSE.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ColorMetrics {
    pub mse: [f64; 3],
    pub psnr_db: [f64; 3],
    pub cpsnr_db: f64,
}

pub fn color_metrics(truth: &RgbImage, test: &RgbImage, crop: usize) -> Result<ColorMetrics> {
    truth.same_dims(test)?;
    let mut mse_c = [0.0; 3];
    let mut psnr_c = [0.0; 3];
    for (i, c) in Channel::ALL.into_iter().enumerate() {
        mse_c[i] = mse(truth.channel(c), test.channel(c), crop)?;
        psnr_c[i] = psnr(mse_c[i], 1.0)?;
    }
    let mean = mse_c.iter().sum::<f64>() / 3.0;
    Ok(ColorMetrics {
        mse: mse_c,
        psnr_db: psnr_c,
        cpsnr_db: psnr(mean, 1.0)?,
    })
}

/// Color PSNR with peak 1 and no crop.
pub fn cpsnr(truth: &RgbImage, test: &RgbImage) -> Result<f64> {
    Ok(color_metrics(truth, test, 0)?.cpsnr_db)
}
