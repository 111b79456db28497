//! Full-color reconstruction from a Bayer mosaic.
//!
//! Three demosaickers are provided: plain bilinear interpolation, the
//! gradient-corrected linear variant with fixed 5x5 kernels, and a joint
//! bilateral scheme that interpolates and denoises in one pass.

use std::fmt;

use crate::cfa::MosaicImage;
use crate::error::{Error, Result};
use crate::image::RgbImage;

mod bilinear;
mod gradient;
mod joint;

pub use bilinear::demosaic_bilinear;
pub use gradient::demosaic_gradient;
pub use joint::demosaic_joint_bilateral;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DemosaickerConfig {
    Bilinear,
    Gradient,
    JointBilateral { sigma_s: f64, sigma_r: f64 },
}

impl DemosaickerConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            DemosaickerConfig::Bilinear => "bilinear",
            DemosaickerConfig::Gradient => "gradient",
            DemosaickerConfig::JointBilateral { .. } => "joint-bilateral",
        }
    }

    pub fn is_joint(&self) -> bool {
        matches!(self, DemosaickerConfig::JointBilateral { .. })
    }

    pub fn validate(&self) -> Result<()> {
        if let DemosaickerConfig::JointBilateral { sigma_s, sigma_r } = *self {
            for (name, v) in [("jb_sigma_s", sigma_s), ("jb_sigma_r", sigma_r)] {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::invalid(
                        name,
                        format!("must be finite and > 0, got {v}"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, mosaic: &MosaicImage) -> Result<RgbImage> {
        match *self {
            DemosaickerConfig::Bilinear => Ok(demosaic_bilinear(mosaic)),
            DemosaickerConfig::Gradient => Ok(demosaic_gradient(mosaic)),
            DemosaickerConfig::JointBilateral { sigma_s, sigma_r } => {
                demosaic_joint_bilateral(mosaic, sigma_s, sigma_r)
            }
        }
    }
}

impl fmt::Display for DemosaickerConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DemosaickerConfig::JointBilateral { sigma_s, sigma_r } => {
                write!(f, "joint-bilateral:sigma_s={sigma_s}:sigma_r={sigma_r}")
            }
            other => f.write_str(other.kind()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfa::{mosaic_from_rgb, CfaPattern};
    use crate::image::{Channel, Plane};

    fn all_close(img: &RgbImage, value: f64, tol: f64) -> bool {
        Channel::ALL.iter().all(|&c| {
            img.channel(c)
                .samples()
                .iter()
                .all(|v| (v - value).abs() < tol)
        })
    }

    #[test]
    fn constant_mosaic_stays_constant() {
        for p in CfaPattern::ALL {
            let m = MosaicImage::new(p, Plane::filled(10, 8, 0.5)).unwrap();
            assert!(all_close(&demosaic_bilinear(&m), 0.5, 1e-12));
            assert!(all_close(&demosaic_gradient(&m), 0.5, 1e-9));
            assert!(all_close(
                &demosaic_joint_bilateral(&m, 1.0, 0.1).unwrap(),
                0.5,
                1e-9
            ));
        }
    }

    #[test]
    fn green_at_red_site_is_cross_mean() {
        // RGGB: (2,2) is a red site; its cross neighbours are green
        let mut plane = Plane::zeros(6, 6);
        plane.set(1, 2, 0.2);
        plane.set(3, 2, 0.4);
        plane.set(2, 1, 0.6);
        plane.set(2, 3, 0.8);
        let m = MosaicImage::new(CfaPattern::Rggb, plane).unwrap();
        assert_eq!(m.color_at(2, 2), Channel::Red);
        let rgb = demosaic_bilinear(&m);
        assert!((rgb.g().get(2, 2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn measured_samples_pass_through() {
        let plane = Plane::from_fn(8, 8, |r, c| ((r * 31 + c * 17) % 13) as f64 / 13.0);
        for p in CfaPattern::ALL {
            let m = MosaicImage::new(p, plane.clone()).unwrap();
            for rgb in [demosaic_bilinear(&m), demosaic_gradient(&m)] {
                for row in 0..8 {
                    for col in 0..8 {
                        let c = m.color_at(row, col);
                        assert_eq!(rgb.channel(c).get(row, col), plane.get(row, col));
                    }
                }
            }
        }
    }

    #[test]
    fn gradient_reproduces_ramps_in_interior() {
        for p in CfaPattern::ALL {
            let truth = RgbImage::from_fn(16, 16, |r, c| {
                let v = 0.1 + 0.03 * c as f64 + 0.01 * r as f64;
                [v, v, v]
            });
            let m = mosaic_from_rgb(&truth, p).unwrap();
            let rgb = demosaic_gradient(&m);
            for c in Channel::ALL {
                for row in 2..14 {
                    for col in 2..14 {
                        let d = rgb.channel(c).get(row, col) - truth.channel(c).get(row, col);
                        assert!(d.abs() < 1e-9, "{p} {c:?} ({row},{col}) {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn bilinear_stays_in_unit_range() {
        let plane = Plane::from_fn(
            12,
            12,
            |r, c| if (r * 7 + c * 3) % 5 < 2 { 0.0 } else { 1.0 },
        );
        let m = MosaicImage::new(CfaPattern::Gbrg, plane).unwrap();
        let rgb = demosaic_bilinear(&m);
        for c in Channel::ALL {
            assert!(rgb
                .channel(c)
                .samples()
                .iter()
                .all(|v| (0.0..=1.0).contains(v)));
        }
    }

    #[test]
    fn joint_rejects_bad_parameters() {
        let m = MosaicImage::new(CfaPattern::Gbrg, Plane::zeros(4, 4)).unwrap();
        assert!(demosaic_joint_bilateral(&m, 0.0, 0.1).is_err());
        assert!(DemosaickerConfig::JointBilateral {
            sigma_s: 1.0,
            sigma_r: f64::NAN
        }
        .validate()
        .is_err());
    }

    #[test]
    fn joint_survives_tiny_range_sigma() {
        let plane = Plane::from_fn(8, 8, |r, c| ((r + c) % 2) as f64);
        let m = MosaicImage::new(CfaPattern::Rggb, plane).unwrap();
        let rgb = demosaic_joint_bilateral(&m, 1.0, 1e-6).unwrap();
        for c in Channel::ALL {
            assert!(rgb.channel(c).samples().iter().all(|v| v.is_finite()));
        }
    }

    #[test]
    fn labels() {
        assert_eq!(DemosaickerConfig::Bilinear.to_string(), "bilinear");
        assert_eq!(
            DemosaickerConfig::JointBilateral {
                sigma_s: 1.0,
                sigma_r: 0.1
            }
            .to_string(),
            "joint-bilateral:sigma_s=1:sigma_r=0.1"
        );
    }
}
