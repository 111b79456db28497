//! Gradient-corrected linear interpolation.
//!
//! The bilinear estimate of a missing color is corrected by a scaled
//! Laplacian of the color actually measured at the site, which carries
//! the high-frequency content the missing channel is assumed to share:
//!
//! | target        | site  | correction                                   | gain |
//! |---------------|-------|----------------------------------------------|------|
//! | G             | R / B | `M - (M(±2,0) + M(0,±2)) / 4`                | 1/2  |
//! | R / B         | G     | `M - (diag + M(±2) along) / 5 + M(±2) across / 10` | 5/8  |
//! | R / B         | B / R | `M - (M(±2,0) + M(0,±2)) / 4`                | 3/4  |
//!
//! "along" is the axis on which the target color's neighbours lie. Each
//! correction sums to zero, so constants and linear ramps pass unchanged.

use super::bilinear::bilinear_at;
use crate::cfa::MosaicImage;
use crate::image::{Channel, Plane, RgbImage};

const GAIN_G_AT_RB: f64 = 0.5;
const GAIN_RB_AT_BR: f64 = 0.75;

fn correction(mosaic: &MosaicImage, channel: Channel, row: usize, col: usize) -> f64 {
    let site = mosaic.color_at(row, col);
    let plane = mosaic.plane();
    let (r, c) = (row as isize, col as isize);
    let m = |dy: isize, dx: isize| plane.get_reflected(r + dy, c + dx);
    let center = m(0, 0);
    let cross2 = m(-2, 0) + m(2, 0) + m(0, -2) + m(0, 2);

    if site == Channel::Green {
        let diag = m(-1, -1) + m(-1, 1) + m(1, -1) + m(1, 1);
        let horiz2 = m(0, -2) + m(0, 2);
        let vert2 = m(-2, 0) + m(2, 0);
        let target_is_horizontal = mosaic.color_at(row, col + 1) == channel;
        let (along, across) = if target_is_horizontal {
            (horiz2, vert2)
        } else {
            (vert2, horiz2)
        };
        // 5/8 * (M - (diag + along) / 5 + across / 10)
        (5.0 * center - diag - along + across / 2.0) / 8.0
    } else if channel == Channel::Green {
        GAIN_G_AT_RB * (center - cross2 / 4.0)
    } else {
        GAIN_RB_AT_BR * (center - cross2 / 4.0)
    }
}

fn channel_plane(mosaic: &MosaicImage, channel: Channel) -> Plane {
    Plane::from_fn(mosaic.width(), mosaic.height(), |row, col| {
        let base = bilinear_at(mosaic, channel, row, col);
        if mosaic.color_at(row, col) == channel {
            base
        } else {
            base + correction(mosaic, channel, row, col)
        }
    })
}

/// Gradient-corrected demosaicking. Output may leave `[0, 1]`.
pub fn demosaic_gradient(mosaic: &MosaicImage) -> RgbImage {
    RgbImage::new(
        channel_plane(mosaic, Channel::Red),
        channel_plane(mosaic, Channel::Green),
        channel_plane(mosaic, Channel::Blue),
    )
    .expect("channels share the mosaic's dimensions")
}
