//! Binary Netpbm codec (P5 greyscale, P6 RGB).
//!
//! Only maxval 255 and 65535 are accepted. 16-bit rasters are big-endian.
//! Header comments (`#` to end of line) are skipped. Exactly one whitespace
//! byte separates maxval from the raster.

use thiserror::Error;

use crate::image::{Plane, RgbImage};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PnmError {
    #[error("malformed PNM header: {0}")]
    MalformedHeader(String),

    #[error("truncated raster: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("unsupported PNM magic {0:?} (only binary P5/P6 are supported)")]
    UnsupportedMagic(String),

    #[error("unsupported maxval {0} (expected 255 or 65535)")]
    UnsupportedMaxval(u32),

    #[error("expected a {expected} image, found {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BitDepth {
    #[default]
    Eight,
    Sixteen,
}

impl BitDepth {
    pub fn maxval(self) -> u32 {
        match self {
            BitDepth::Eight => 255,
            BitDepth::Sixteen => 65535,
        }
    }

    pub fn from_bits(bits: u32) -> Option<Self> {
        match bits {
            8 => Some(BitDepth::Eight),
            16 => Some(BitDepth::Sixteen),
            _ => None,
        }
    }
}

/// A decoded Netpbm image.
#[derive(Clone, Debug, PartialEq)]
pub enum PnmImage {
    Gray(Plane),
    Rgb(RgbImage),
}

impl PnmImage {
    fn kind(&self) -> &'static str {
        match self {
            PnmImage::Gray(_) => "greyscale (P5)",
            PnmImage::Rgb(_) => "RGB (P6)",
        }
    }

    pub fn into_gray(self) -> Result<Plane, PnmError> {
        match self {
            PnmImage::Gray(p) => Ok(p),
            other => Err(PnmError::WrongKind {
                expected: "greyscale (P5)",
                found: other.kind(),
            }),
        }
    }

    pub fn into_rgb(self) -> Result<RgbImage, PnmError> {
        match self {
            PnmImage::Rgb(p) => Ok(p),
            other => Err(PnmError::WrongKind {
                expected: "RGB (P6)",
                found: other.kind(),
            }),
        }
    }
}

impl From<Plane> for PnmImage {
    fn from(p: Plane) -> Self {
        PnmImage::Gray(p)
    }
}

impl From<RgbImage> for PnmImage {
    fn from(p: RgbImage) -> Self {
        PnmImage::Rgb(p)
    }
}

struct Header {
    channels: usize,
    width: usize,
    height: usize,
    maxval: u32,
    raster_start: usize,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32, PnmError> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PnmError::MalformedHeader(format!("missing {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .ok_or_else(|| PnmError::MalformedHeader(format!("{what} out of range")))
    }
}

fn parse_header(bytes: &[u8]) -> Result<Header, PnmError> {
    if bytes.len() < 2 || bytes[0] != b'P' {
        return Err(PnmError::MalformedHeader("missing 'P' magic".into()));
    }
    let channels = match bytes[1] {
        b'5' => 1,
        b'6' => 3,
        other => {
            return Err(PnmError::UnsupportedMagic(format!(
                "P{}",
                char::from(other).escape_default()
            )))
        }
    };
    let mut cur = Cursor { bytes, pos: 2 };
    if !cur
        .bytes
        .get(2)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(PnmError::MalformedHeader(
            "magic must be followed by whitespace".into(),
        ));
    }
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(PnmError::MalformedHeader(format!(
            "zero dimension {width}x{height}"
        )));
    }
    if maxval != 255 && maxval != 65535 {
        return Err(PnmError::UnsupportedMaxval(maxval));
    }
    match cur.bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => {}
        _ => {
            return Err(PnmError::MalformedHeader(
                "maxval must be followed by a single whitespace byte".into(),
            ))
        }
    }
    Ok(Header {
        channels,
        width,
        height,
        maxval,
        raster_start: cur.pos + 1,
    })
}

/// Decodes a binary PGM or PPM. Raw values map to `v / maxval`.
pub fn decode_pnm(bytes: &[u8]) -> Result<PnmImage, PnmError> {
    let header = parse_header(bytes)?;
    let bytes_per_sample = if header.maxval > 255 { 2 } else { 1 };
    let count = header.width * header.height * header.channels;
    let expected = count * bytes_per_sample;
    let raster = &bytes[header.raster_start..];
    if raster.len() < expected {
        return Err(PnmError::Truncated {
            expected,
            found: raster.len(),
        });
    }
    let scale = f64::from(header.maxval);
    let values: Vec<f64> = if bytes_per_sample == 1 {
        raster[..expected]
            .iter()
            .map(|&v| f64::from(v) / scale)
            .collect()
    } else {
        raster[..expected]
            .chunks_exact(2)
            .map(|c| f64::from(u16::from_be_bytes([c[0], c[1]])) / scale)
            .collect()
    };

    let (w, h) = (header.width, header.height);
    let plane = |v: Vec<f64>| Plane::new(w, h, v).expect("decoded samples are finite");
    if header.channels == 1 {
        return Ok(PnmImage::Gray(plane(values)));
    }
    let mut r = Vec::with_capacity(w * h);
    let mut g = Vec::with_capacity(w * h);
    let mut b = Vec::with_capacity(w * h);
    for px in values.chunks_exact(3) {
        r.push(px[0]);
        g.push(px[1]);
        b.push(px[2]);
    }
    Ok(PnmImage::Rgb(
        RgbImage::new(plane(r), plane(g), plane(b)).expect("planes share dimensions"),
    ))
}

/// Clamps to `[0, 1]` and rounds half away from zero onto `0..=maxval`.
#[inline]
pub fn quantize(value: f64, depth: BitDepth) -> u16 {
    let maxval = f64::from(depth.maxval());
    (value.clamp(0.0, 1.0) * maxval).round() as u16
}

/// Encodes a plane as P5 or an RGB image as P6.
pub fn encode_pnm(image: &PnmImage, depth: BitDepth) -> Vec<u8> {
    let (magic, width, height, channels): (&str, usize, usize, Vec<&Plane>) = match image {
        PnmImage::Gray(p) => ("P5", p.width(), p.height(), vec![p]),
        PnmImage::Rgb(rgb) => (
            "P6",
            rgb.width(),
            rgb.height(),
            vec![rgb.r(), rgb.g(), rgb.b()],
        ),
    };
    let header = format!("{magic} {width} {height} {}\n", depth.maxval());
    let bps = if depth == BitDepth::Eight { 1 } else { 2 };
    let mut out = Vec::with_capacity(header.len() + width * height * channels.len() * bps);
    out.extend_from_slice(header.as_bytes());
    for i in 0..width * height {
        for plane in &channels {
            let q = quantize(plane.samples()[i], depth);
            match depth {
                BitDepth::Eight => out.push(q as u8),
                BitDepth::Sixteen => out.extend_from_slice(&q.to_be_bytes()),
            }
        }
    }
    out
}
