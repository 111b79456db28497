// Write an image as 8- and 16-bit Netpbm and read it back.

use std::error::Error;

use cfa_denoise::corpus;
use cfa_denoise::image::Channel;
use cfa_denoise::imageio::{decode_pnm, encode_pnm, BitDepth, PnmImage};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let image = corpus::waves(64);
    for (bits, depth) in [(8, BitDepth::Eight), (16, BitDepth::Sixteen)] {
        let bytes = encode_pnm(&PnmImage::Rgb(image.clone()), depth);
        let back = decode_pnm(&bytes)?.into_rgb()?;
        let mut worst: f64 = 0.0;
        for c in Channel::ALL {
            for (x, y) in image
                .channel(c)
                .samples()
                .iter()
                .zip(back.channel(c).samples())
            {
                worst = worst.max((x - y).abs());
            }
        }
        let bound = 0.5 / depth.maxval() as f64;
        println!(
            "{bits:>2}-bit: {} bytes, max error {worst:.2e} (bound {bound:.2e})",
            bytes.len()
        );
        assert!(worst <= bound + 1e-12);
    }

    // headers may carry comments
    let gray = decode_pnm(b"P5\n# two pixels\n2 1\n255\n\x00\xff")?.into_gray()?;
    println!("commented P5 decodes to {:?}", gray.samples());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
