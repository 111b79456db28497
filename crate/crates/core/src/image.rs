//! Image containers.
//!
//! A [`Plane`] is a single channel of normalized intensities stored in
//! row-major order. Values are nominally in `[0, 1]` but intermediate
//! results (noisy mosaics, overshooting interpolants) are allowed to leave
//! that range; clamping only happens when an image is encoded.

use crate::error::{Error, Result};

/// Single-channel 2-D array of finite samples, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Plane {
    width: usize,
    height: usize,
    samples: Vec<f64>,
}

impl Plane {
    pub fn new(width: usize, height: usize, samples: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyPlane { width, height });
        }
        let expected = width * height;
        if samples.len() != expected {
            return Err(Error::SampleCount {
                width,
                height,
                expected,
                got: samples.len(),
            });
        }
        if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Plane {
            width,
            height,
            samples,
        })
    }

    /// Plane with every sample set to `value`.
    ///
    /// # Panics
    ///
    /// If either dimension is zero or `value` is not finite.
    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        Plane::new(width, height, vec![value; width * height]).expect("valid constant plane")
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Plane::filled(width, height, 0.0)
    }

    /// Builds a plane by evaluating `f(row, col)` at every site.
    ///
    /// # Panics
    ///
    /// If either dimension is zero or `f` yields a non-finite value.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut samples = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                samples.push(f(row, col));
            }
        }
        Plane::new(width, height, samples).expect("from_fn produced an invalid plane")
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    #[inline]
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.samples[row * self.width + col]
    }

    /// Sample at a possibly out-of-range position, mirrored back inside.
    #[inline]
    pub fn get_reflected(&self, row: isize, col: isize) -> f64 {
        self.get(reflect(row, self.height), reflect(col, self.width))
    }

    /// Writes a sample. The caller keeps it finite.
    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        debug_assert!(value.is_finite());
        self.samples[row * self.width + col] = value;
    }

    pub fn same_dims(&self, other: &Plane) -> Result<()> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch {
                left_w: self.width,
                left_h: self.height,
                right_w: other.width,
                right_h: other.height,
            });
        }
        Ok(())
    }

    /// Applies `f` to every sample.
    ///
    /// # Panics
    ///
    /// If `f` produces a non-finite value.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Plane {
        let samples: Vec<f64> = self.samples.iter().map(|&v| f(v)).collect();
        Plane::new(self.width, self.height, samples).expect("map produced a non-finite sample")
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }
}

/// Mirror reflection without duplicating the edge sample:
/// `-1 -> 1`, `n -> n - 2`. Repeats for offsets larger than the extent.
#[inline]
pub fn reflect(index: isize, len: usize) -> usize {
    if len == 1 {
        return 0;
    }
    let n = len as isize;
    if (0..n).contains(&index) {
        return index as usize;
    }
    let period = 2 * (n - 1);
    let m = index.rem_euclid(period);
    if m < n {
        m as usize
    } else {
        (period - m) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    Red,
    Green,
    Blue,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::Red, Channel::Green, Channel::Blue];
}

/// Three co-registered planes.
#[derive(Clone, Debug, PartialEq)]
pub struct RgbImage {
    r: Plane,
    g: Plane,
    b: Plane,
}

impl RgbImage {
    pub fn new(r: Plane, g: Plane, b: Plane) -> Result<Self> {
        r.same_dims(&g)?;
        r.same_dims(&b)?;
        Ok(RgbImage { r, g, b })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [f64; 3],
    ) -> Self {
        let mut r = Vec::with_capacity(width * height);
        let mut g = Vec::with_capacity(width * height);
        let mut b = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                let [vr, vg, vb] = f(row, col);
                r.push(vr);
                g.push(vg);
                b.push(vb);
            }
        }
        RgbImage {
            r: Plane::new(width, height, r).expect("valid red plane"),
            g: Plane::new(width, height, g).expect("valid green plane"),
            b: Plane::new(width, height, b).expect("valid blue plane"),
        }
    }

    pub fn width(&self) -> usize {
        self.r.width()
    }

    pub fn height(&self) -> usize {
        self.r.height()
    }

    pub fn channel(&self, c: Channel) -> &Plane {
        match c {
            Channel::Red => &self.r,
            Channel::Green => &self.g,
            Channel::Blue => &self.b,
        }
    }

    pub fn r(&self) -> &Plane {
        &self.r
    }

    pub fn g(&self) -> &Plane {
        &self.g
    }

    pub fn b(&self) -> &Plane {
        &self.b
    }

    pub fn into_planes(self) -> [Plane; 3] {
        [self.r, self.g, self.b]
    }

    pub fn same_dims(&self, other: &RgbImage) -> Result<()> {
        self.r.same_dims(&other.r)
    }

    /// Applies a fallible per-channel operation.
    pub fn try_map_channels(&self, f: impl Fn(&Plane) -> Result<Plane>) -> Result<RgbImage> {
        RgbImage::new(f(&self.r)?, f(&self.g)?, f(&self.b)?)
    }
}
