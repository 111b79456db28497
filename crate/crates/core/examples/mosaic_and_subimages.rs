// Sample an RGB image through each Bayer pattern, split the mosaic into
// its four half-resolution sub-images and put it back together.

use std::error::Error;

use cfa_denoise::cfa::{decompose, mosaic_from_rgb, recompose, CfaPattern, SubImageKind};
use cfa_denoise::corpus;
use cfa_denoise::image::Channel;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let image = corpus::shapes(64);
    for pattern in CfaPattern::ALL {
        let mosaic = mosaic_from_rgb(&image, pattern)?;
        let mut census = [0; 3];
        for row in 0..mosaic.height() {
            for col in 0..mosaic.width() {
                census[mosaic.color_at(row, col) as usize] += 1;
            }
        }
        let subs = decompose(&mosaic);
        let means: Vec<String> = SubImageKind::ALL
            .iter()
            .map(|&k| format!("{}={:.3}", k.name(), subs.get(k).mean()))
            .collect();
        assert_eq!(recompose(&subs)?, mosaic);
        println!(
            "{pattern}: R/G/B sites {census:?}, sub-images {}x{}, means {}",
            subs.r.width(),
            subs.r.height(),
            means.join(" ")
        );
    }
    let tile = CfaPattern::default().tile();
    println!("default tile: {:?} / {:?}", tile[0], tile[1]);
    assert_eq!(tile[0][0], Channel::Green);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
