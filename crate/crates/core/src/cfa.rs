//! Bayer geometry, sensor sampling and sub-image decomposition.
//!
//! A Bayer mosaic stores one color per site. Every 2x2 tile holds one red,
//! one blue and two green sites, so green lives on a quincunx lattice while
//! red and blue live on rectangular lattices of half resolution.
//!
//! [`decompose`] splits a mosaic into four rectangular half-resolution
//! planes `{R, G1, G2, B}`; each one is an ordinary greyscale image that any
//! monochrome filter can process. [`recompose`] scatters them back.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::{Channel, Plane, RgbImage};

/// The 2x2 Bayer tile, named row-major from pixel `(0, 0)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CfaPattern {
    Rggb,
    Grbg,
    #[default]
    Gbrg,
    Bggr,
}

impl CfaPattern {
    pub const ALL: [CfaPattern; 4] = [
        CfaPattern::Rggb,
        CfaPattern::Grbg,
        CfaPattern::Gbrg,
        CfaPattern::Bggr,
    ];

    /// Tile entries `[[(0,0), (0,1)], [(1,0), (1,1)]]`.
    pub const fn tile(self) -> [[Channel; 2]; 2] {
        use Channel::*;
        match self {
            CfaPattern::Rggb => [[Red, Green], [Green, Blue]],
            CfaPattern::Grbg => [[Green, Red], [Blue, Green]],
            CfaPattern::Gbrg => [[Green, Blue], [Red, Green]],
            CfaPattern::Bggr => [[Blue, Green], [Green, Red]],
        }
    }

    #[inline]
    pub fn color_at(self, row: usize, col: usize) -> Channel {
        self.tile()[row & 1][col & 1]
    }

    /// Tile offset `(row, col)` of a sub-image's sites.
    pub fn offset(self, site: SubImageKind) -> (usize, usize) {
        let tile = self.tile();
        let find_in_row = |row: usize, c: Channel| {
            (0..2)
                .find(|&col| tile[row][col] == c)
                .map(|col| (row, col))
        };
        match site {
            SubImageKind::G1 => find_in_row(0, Channel::Green),
            SubImageKind::G2 => find_in_row(1, Channel::Green),
            SubImageKind::R => {
                find_in_row(0, Channel::Red).or_else(|| find_in_row(1, Channel::Red))
            }
            SubImageKind::B => {
                find_in_row(0, Channel::Blue).or_else(|| find_in_row(1, Channel::Blue))
            }
        }
        .expect("every Bayer tile holds R, B and one G per row")
    }

    pub fn name(self) -> &'static str {
        match self {
            CfaPattern::Rggb => "rggb",
            CfaPattern::Grbg => "grbg",
            CfaPattern::Gbrg => "gbrg",
            CfaPattern::Bggr => "bggr",
        }
    }
}

impl fmt::Display for CfaPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CfaPattern {
    type Err = Error;

    /// Case-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        CfaPattern::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid("pattern", format!("unknown CFA pattern `{s}`")))
    }
}

/// A single-sensor reading: one sample per site, even width and height.
#[derive(Clone, Debug, PartialEq)]
pub struct MosaicImage {
    pattern: CfaPattern,
    plane: Plane,
}

impl MosaicImage {
    pub fn new(pattern: CfaPattern, plane: Plane) -> Result<Self> {
        check_even(plane.width(), plane.height())?;
        Ok(MosaicImage { pattern, plane })
    }

    pub fn pattern(&self) -> CfaPattern {
        self.pattern
    }

    pub fn plane(&self) -> &Plane {
        &self.plane
    }

    pub fn into_plane(self) -> Plane {
        self.plane
    }

    pub fn width(&self) -> usize {
        self.plane.width()
    }

    pub fn height(&self) -> usize {
        self.plane.height()
    }

    #[inline]
    pub fn color_at(&self, row: usize, col: usize) -> Channel {
        self.pattern.color_at(row, col)
    }
}

fn check_even(width: usize, height: usize) -> Result<()> {
    if !width.is_multiple_of(2) || !height.is_multiple_of(2) {
        return Err(Error::OddDimensions { width, height });
    }
    Ok(())
}

/// Samples `rgb` through the color filter: each site keeps only the channel
/// its filter passes.
pub fn mosaic_from_rgb(rgb: &RgbImage, pattern: CfaPattern) -> Result<MosaicImage> {
    check_even(rgb.width(), rgb.height())?;
    let plane = Plane::from_fn(rgb.width(), rgb.height(), |row, col| {
        rgb.channel(pattern.color_at(row, col)).get(row, col)
    });
    MosaicImage::new(pattern, plane)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubImageKind {
    R,
    G1,
    G2,
    B,
}

impl SubImageKind {
    pub const ALL: [SubImageKind; 4] = [
        SubImageKind::R,
        SubImageKind::G1,
        SubImageKind::G2,
        SubImageKind::B,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubImageKind::R => "r",
            SubImageKind::G1 => "g1",
            SubImageKind::G2 => "g2",
            SubImageKind::B => "b",
        }
    }
}

/// The four half-resolution planes of a mosaic. `g1` holds the green sites
/// on even rows, `g2` those on odd rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SubImages {
    pub r: Plane,
    pub g1: Plane,
    pub g2: Plane,
    pub b: Plane,
    pub pattern: CfaPattern,
    pub full_width: usize,
    pub full_height: usize,
}

impl SubImages {
    pub fn get(&self, kind: SubImageKind) -> &Plane {
        match kind {
            SubImageKind::R => &self.r,
            SubImageKind::G1 => &self.g1,
            SubImageKind::G2 => &self.g2,
            SubImageKind::B => &self.b,
        }
    }

    pub fn get_mut(&mut self, kind: SubImageKind) -> &mut Plane {
        match kind {
            SubImageKind::R => &mut self.r,
            SubImageKind::G1 => &mut self.g1,
            SubImageKind::G2 => &mut self.g2,
            SubImageKind::B => &mut self.b,
        }
    }
}

pub fn decompose(mosaic: &MosaicImage) -> SubImages {
    let (w, h) = (mosaic.width() / 2, mosaic.height() / 2);
    let gather = |kind| {
        let (dr, dc) = mosaic.pattern.offset(kind);
        Plane::from_fn(w, h, |row, col| {
            mosaic.plane.get(2 * row + dr, 2 * col + dc)
        })
    };
    SubImages {
        r: gather(SubImageKind::R),
        g1: gather(SubImageKind::G1),
        g2: gather(SubImageKind::G2),
        b: gather(SubImageKind::B),
        pattern: mosaic.pattern,
        full_width: mosaic.width(),
        full_height: mosaic.height(),
    }
}

pub fn recompose(subs: &SubImages) -> Result<MosaicImage> {
    check_even(subs.full_width, subs.full_height)?;
    let (w, h) = (subs.full_width / 2, subs.full_height / 2);
    let mut samples = vec![0.0; subs.full_width * subs.full_height];
    for kind in SubImageKind::ALL {
        let plane = subs.get(kind);
        if plane.width() != w || plane.height() != h {
            return Err(Error::DimensionMismatch {
                left_w: w,
                left_h: h,
                right_w: plane.width(),
                right_h: plane.height(),
            });
        }
        let (dr, dc) = subs.pattern.offset(kind);
        for row in 0..h {
            for col in 0..w {
                samples[(2 * row + dr) * subs.full_width + 2 * col + dc] = plane.get(row, col);
            }
        }
    }
    MosaicImage::new(
        subs.pattern,
        Plane::new(subs.full_width, subs.full_height, samples)?,
    )
}
