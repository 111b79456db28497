//! Separable orthonormal 2-D Haar transform.
//!
//! For a 2x2 block `[a b; c d]` one analysis step produces
//!
//! ```text
//! LL = (a + b + c + d) / 2     HL = (a - b + c - d) / 2
//! LH = (a + b - c - d) / 2     HH = (a - b - c + d) / 2
//! ```
//!
//! `HL` is high-pass along rows (responds to vertical edges), `LH` is
//! high-pass along columns. The transform is orthonormal, so coefficient
//! energy equals sample energy.

use crate::error::{Error, Result};
use crate::image::Plane;

/// Detail subbands of one scale.
#[derive(Clone, Debug, PartialEq)]
pub struct Subbands {
    pub lh: Plane,
    pub hl: Plane,
    pub hh: Plane,
}

impl Subbands {
    pub fn iter(&self) -> impl Iterator<Item = &Plane> {
        [&self.lh, &self.hl, &self.hh].into_iter()
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = &mut Plane> {
        [&mut self.lh, &mut self.hl, &mut self.hh].into_iter()
    }
}

/// Multi-level Haar decomposition. `details[0]` is the finest scale.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveletPyramid {
    pub ll: Plane,
    pub details: Vec<Subbands>,
}

impl WaveletPyramid {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn coefficient_count(&self) -> usize {
        self.ll.len()
            + self
                .details
                .iter()
                .flat_map(Subbands::iter)
                .map(Plane::len)
                .sum::<usize>()
    }

    pub fn energy(&self) -> f64 {
        std::iter::once(&self.ll)
            .chain(self.details.iter().flat_map(Subbands::iter))
            .flat_map(|p| p.samples().iter())
            .map(|v| v * v)
            .sum()
    }
}

pub fn check_divisible(plane: &Plane, levels: usize) -> Result<()> {
    if levels == 0 {
        return Err(Error::invalid("levels", "need at least one level"));
    }
    let block = 1usize.checked_shl(levels as u32).unwrap_or(0);
    if block == 0 || !plane.width().is_multiple_of(block) || !plane.height().is_multiple_of(block) {
        return Err(Error::Indivisible {
            width: plane.width(),
            height: plane.height(),
            levels,
        });
    }
    Ok(())
}

fn analyze(plane: &Plane) -> (Plane, Subbands) {
    let (w, h) = (plane.width() / 2, plane.height() / 2);
    let mut ll = Vec::with_capacity(w * h);
    let mut lh = Vec::with_capacity(w * h);
    let mut hl = Vec::with_capacity(w * h);
    let mut hh = Vec::with_capacity(w * h);
    for row in 0..h {
        for col in 0..w {
            let a = plane.get(2 * row, 2 * col);
            let b = plane.get(2 * row, 2 * col + 1);
            let c = plane.get(2 * row + 1, 2 * col);
            let d = plane.get(2 * row + 1, 2 * col + 1);
            ll.push(0.5 * (a + b + c + d));
            hl.push(0.5 * (a - b + c - d));
            lh.push(0.5 * (a + b - c - d));
            hh.push(0.5 * (a - b - c + d));
        }
    }
    let mk = |v| Plane::new(w, h, v).expect("finite coefficients");
    (
        mk(ll),
        Subbands {
            lh: mk(lh),
            hl: mk(hl),
            hh: mk(hh),
        },
    )
}

fn synthesize(ll: &Plane, bands: &Subbands) -> Result<Plane> {
    for band in bands.iter() {
        ll.same_dims(band)?;
    }
    let (w, h) = (ll.width(), ll.height());
    let mut out = vec![0.0; 4 * w * h];
    let stride = 2 * w;
    for row in 0..h {
        for col in 0..w {
            let s = ll.get(row, col);
            let x = bands.hl.get(row, col);
            let y = bands.lh.get(row, col);
            let z = bands.hh.get(row, col);
            let top = 2 * row * stride + 2 * col;
            out[top] = 0.5 * (s + x + y + z);
            out[top + 1] = 0.5 * (s - x + y - z);
            out[top + stride] = 0.5 * (s + x - y - z);
            out[top + stride + 1] = 0.5 * (s - x - y + z);
        }
    }
    Plane::new(2 * w, 2 * h, out)
}

pub fn dwt_haar(plane: &Plane, levels: usize) -> Result<WaveletPyramid> {
    check_divisible(plane, levels)?;
    let mut details = Vec::with_capacity(levels);
    let mut ll = plane.clone();
    for _ in 0..levels {
        let (next, bands) = analyze(&ll);
        details.push(bands);
        ll = next;
    }
    Ok(WaveletPyramid { ll, details })
}

/// Inverse of [`dwt_haar`]. Fails if subband shapes are inconsistent.
pub fn idwt_haar(pyr: &WaveletPyramid) -> Result<Plane> {
    let mut ll = pyr.ll.clone();
    for bands in pyr.details.iter().rev() {
        ll = synthesize(&ll, bands)?;
    }
    Ok(ll)
}
