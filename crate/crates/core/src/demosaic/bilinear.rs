use crate::cfa::MosaicImage;
use crate::image::{Channel, Plane, RgbImage};

/// Bilinear estimate of `channel` at `(row, col)`: the measured sample if
/// the site carries that color, otherwise the mean of the same-color sites
/// in the 3x3 neighbourhood.
///
/// Mirroring preserves coordinate parity, so reflected neighbours keep
/// their color class.
#[inline]
pub(super) fn bilinear_at(mosaic: &MosaicImage, channel: Channel, row: usize, col: usize) -> f64 {
    if mosaic.color_at(row, col) == channel {
        return mosaic.plane().get(row, col);
    }
    let plane = mosaic.plane();
    let pattern = mosaic.pattern();
    let (mut sum, mut n) = (0.0, 0u32);
    for dy in -1isize..=1 {
        for dx in -1isize..=1 {
            let (r, c) = (row as isize + dy, col as isize + dx);
            if pattern.color_at(r.rem_euclid(2) as usize, c.rem_euclid(2) as usize) == channel {
                sum += plane.get_reflected(r, c);
                n += 1;
            }
        }
    }
    sum / f64::from(n)
}

pub(super) fn bilinear_plane(mosaic: &MosaicImage, channel: Channel) -> Plane {
    Plane::from_fn(mosaic.width(), mosaic.height(), |row, col| {
        bilinear_at(mosaic, channel, row, col)
    })
}

/// Bilinear demosaicking.
///
/// Green at a red or blue site averages its four edge neighbours. Red or
/// blue at a green site averages the two neighbours on the row or column
/// that carries that color; red at blue (and blue at red) averages the four
/// diagonal neighbours.
pub fn demosaic_bilinear(mosaic: &MosaicImage) -> RgbImage {
    RgbImage::new(
        bilinear_plane(mosaic, Channel::Red),
        bilinear_plane(mosaic, Channel::Green),
        bilinear_plane(mosaic, Channel::Blue),
    )
    .expect("channels share the mosaic's dimensions")
}
