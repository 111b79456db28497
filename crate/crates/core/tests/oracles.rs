mod common;

use cfa_denoise::cfa::{decompose, mosaic_from_rgb, CfaPattern, MosaicImage};
use cfa_denoise::corpus;
use cfa_denoise::demosaic::{
    demosaic_bilinear, demosaic_gradient, demosaic_joint_bilateral, DemosaickerConfig,
};
use cfa_denoise::denoise::{denoise_bilateral, denoise_subimages, DenoiserConfig, NoiseLevel};
use cfa_denoise::image::{Channel, Plane, RgbImage};
use cfa_denoise::imageio::{decode_pnm, write_csv, CSV_HEADER};
use cfa_denoise::metrics::{cpsnr, mse};
use cfa_denoise::noise::{add_awgn, estimate_sigma, NoiseSpec};
use cfa_denoise::pipeline::{
    run_experiment, run_pipeline, CorpusImage, ExperimentGrid, ExperimentOptions, PipelineConfig,
    Strategy,
};
use common::*;

fn mirror(i: isize, n: usize) -> usize {
    let n = n as isize;
    let mut i = i;
    while i < 0 || i >= n {
        if i < 0 {
            i = -i;
        }
        if i >= n {
            i = 2 * (n - 1) - i;
        }
    }
    i as usize
}

fn config(
    strategy: Strategy,
    sigma: f64,
    seed: u64,
    denoiser: DenoiserConfig,
    dm: DemosaickerConfig,
) -> PipelineConfig {
    PipelineConfig {
        pattern: CfaPattern::Gbrg,
        noise: NoiseSpec::uniform(sigma, seed).unwrap(),
        strategy,
        denoiser,
        demosaicker: dm,
    }
}

const AUTO_WAVELET: DenoiserConfig = DenoiserConfig::Wavelet {
    levels: 3,
    sigma_n: NoiseLevel::Auto,
};

// --- image I/O ---

#[test]
fn sixteen_bit_decode_agrees_with_image_crate() {
    let mut rng = Lcg(16);
    let (w, h) = (7usize, 5usize);
    let words: Vec<u16> = (0..w * h * 3)
        .map(|_| (rng.next() * 65536.0) as u16)
        .collect();
    let mut bytes = format!("P6\n# sixteen\n{w} {h}\n65535\n").into_bytes();
    for v in &words {
        bytes.extend(v.to_be_bytes());
    }
    let ours = decode_pnm(&bytes).unwrap().into_rgb().unwrap();
    let theirs = image::load_from_memory_with_format(&bytes, image::ImageFormat::Pnm)
        .unwrap()
        .to_rgb16();
    for row in 0..h {
        for col in 0..w {
            let px = theirs.get_pixel(col as u32, row as u32);
            for c in Channel::ALL {
                let v = ours.channel(c).get(row, col);
                assert_eq!((v * 65535.0).round() as u16, px[c as usize]);
            }
        }
    }
}

// --- noise ---

#[test]
fn noise_classes_get_their_own_sigma() {
    let clean = MosaicImage::new(CfaPattern::Rggb, Plane::filled(256, 256, 0.5)).unwrap();
    let spec = NoiseSpec::new(0.02, 0.05, 0.1, 77).unwrap();
    let noisy = add_awgn(&clean, &spec).unwrap();
    let mut sums = [(0.0f64, 0usize); 3];
    for row in 0..256 {
        for col in 0..256 {
            let d = noisy.plane().get(row, col) - 0.5;
            let e = &mut sums[clean.color_at(row, col) as usize];
            e.0 += d * d;
            e.1 += 1;
        }
    }
    for (c, want) in [0.02, 0.05, 0.1].into_iter().enumerate() {
        let std = (sums[c].0 / sums[c].1 as f64).sqrt();
        assert!((std - want).abs() < want * 0.05, "class {c}: {std}");
    }
    assert_eq!(add_awgn(&clean, &spec).unwrap(), noisy);
}

#[test]
fn sigma_estimate_on_pure_noise() {
    for seed in 0..10 {
        let est = estimate_sigma(&noise_plane(512, 512, 0.1, seed)).unwrap();
        assert!((0.09..=0.11).contains(&est), "seed {seed}: {est}");
    }
}

#[test]
fn sigma_estimate_ignores_smooth_signal() {
    for seed in 0..10 {
        let p = add(
            &corpus::radial_gradient(256),
            &noise_plane(256, 256, 0.05, 100 + seed),
        );
        let est = estimate_sigma(&p).unwrap();
        assert!((0.04..=0.06).contains(&est), "seed {seed}: {est}");
    }
}

// --- denoisers ---

fn bilateral_oracle(p: &Plane, sigma_s: f64, sigma_r: f64) -> Plane {
    let radius = (3.0 * sigma_s).ceil().max(1.0) as isize;
    Plane::from_fn(p.width(), p.height(), |row, col| {
        let centre = p.get(row, col);
        let (mut acc, mut norm) = (0.0, 0.0);
        for dy in -radius..=radius {
            for dx in -radius..=radius {
                let v = p.get(
                    mirror(row as isize + dy, p.height()),
                    mirror(col as isize + dx, p.width()),
                );
                let wgt = (-((dy * dy + dx * dx) as f64) / (2.0 * sigma_s * sigma_s)).exp()
                    * (-(v - centre).powi(2) / (2.0 * sigma_r * sigma_r)).exp();
                acc += wgt * v;
                norm += wgt;
            }
        }
        acc / norm
    })
}

#[test]
fn bilateral_matches_brute_force() {
    let mut rng = Lcg(5);
    let p = random_plane(17, 12, &mut rng);
    let ours = denoise_bilateral(&p, 1.3, 0.2).unwrap();
    assert!(max_abs(&ours, &bilateral_oracle(&p, 1.3, 0.2)) < 1e-12);
}

#[test]
fn bilateral_keeps_step_edge() {
    let step = Plane::from_fn(32, 32, |_, c| if c < 16 { 0.2 } else { 0.8 });
    let out = denoise_bilateral(&step, 2.0, 0.05).unwrap();
    assert!(max_abs(&out, &step) < 1e-6);
}

#[test]
fn constant_planes_pass_through() {
    let p = Plane::filled(32, 32, 0.37);
    for cfg in [
        DenoiserConfig::None,
        DenoiserConfig::Gaussian { sigma_s: 2.0 },
        DenoiserConfig::Median { radius: 2 },
        DenoiserConfig::Bilateral {
            sigma_s: 1.5,
            sigma_r: 0.1,
        },
        AUTO_WAVELET,
        DenoiserConfig::Wavelet {
            levels: 2,
            sigma_n: NoiseLevel::Fixed(0.1),
        },
    ] {
        assert!(max_abs(&cfg.apply(&p).unwrap(), &p) < 1e-12, "{cfg}");
    }
}

#[test]
fn spatial_denoisers_commute_with_translation() {
    let mut rng = Lcg(9);
    let big = random_plane(64, 64, &mut rng);
    let (dy, dx) = (3usize, 5usize);
    let shifted = Plane::from_fn(56, 56, |r, c| big.get(r + dy, c + dx));
    for cfg in [
        DenoiserConfig::Gaussian { sigma_s: 1.0 },
        DenoiserConfig::Median { radius: 2 },
        DenoiserConfig::Bilateral {
            sigma_s: 1.5,
            sigma_r: 0.1,
        },
    ] {
        let a = cfg.apply(&big).unwrap();
        let b = cfg.apply(&shifted).unwrap();
        let margin = 6;
        for r in margin..56 - margin {
            for c in margin..56 - margin {
                assert!(
                    (a.get(r + dy, c + dx) - b.get(r, c)).abs() < 1e-12,
                    "{cfg} at {r},{c}"
                );
            }
        }
    }
}

#[test]
fn subimage_denoising_lowers_every_plane_error() {
    let truth = corpus::waves(128);
    let clean = mosaic_from_rgb(&truth, CfaPattern::Gbrg).unwrap();
    let noisy = add_awgn(&clean, &NoiseSpec::uniform(0.05, 4).unwrap()).unwrap();
    let (cs, ns) = (decompose(&clean), decompose(&noisy));
    let ds = denoise_subimages(&ns, &AUTO_WAVELET).unwrap();
    for kind in cfa_denoise::cfa::SubImageKind::ALL {
        let before = plane_mse(ns.get(kind), cs.get(kind));
        let after = plane_mse(ds.get(kind), cs.get(kind));
        assert!(after < before, "{}: {after} >= {before}", kind.name());
    }
}

// --- demosaickers ---

fn joint_spatial_oracle(m: &MosaicImage, sigma_s: f64) -> RgbImage {
    let radius = (3.0 * sigma_s).ceil().max(1.0) as isize;
    let (w, h) = (m.width(), m.height());
    let mut out = [Plane::zeros(w, h), Plane::zeros(w, h), Plane::zeros(w, h)];
    for row in 0..h {
        for col in 0..w {
            let mut acc = [0.0; 3];
            let mut norm = [0.0; 3];
            for dy in -radius..=radius {
                for dx in -radius..=radius {
                    let (r, c) = (mirror(row as isize + dy, h), mirror(col as isize + dx, w));
                    let class = m.color_at(r, c) as usize;
                    let wgt = (-((dy * dy + dx * dx) as f64) / (2.0 * sigma_s * sigma_s)).exp();
                    acc[class] += wgt * m.plane().get(r, c);
                    norm[class] += wgt;
                }
            }
            for ch in 0..3 {
                out[ch].set(row, col, acc[ch] / norm[ch]);
            }
        }
    }
    let [r, g, b] = out;
    RgbImage::new(r, g, b).unwrap()
}

#[test]
fn joint_bilateral_with_flat_range_is_spatial_mean() {
    let mut rng = Lcg(21);
    for pattern in CfaPattern::ALL {
        let m = MosaicImage::new(pattern, random_plane(20, 14, &mut rng)).unwrap();
        let ours = demosaic_joint_bilateral(&m, 1.0, 1e4).unwrap();
        assert!(
            rgb_max_abs(&ours, &joint_spatial_oracle(&m, 1.0)) < 1e-6,
            "{pattern}"
        );
    }
}

#[test]
fn joint_bilateral_sharpens_edges_over_bilinear() {
    let truth = RgbImage::from_fn(64, 64, |_, c| {
        if c < 32 {
            [0.2, 0.25, 0.3]
        } else {
            [0.8, 0.75, 0.7]
        }
    });
    let m = mosaic_from_rgb(&truth, CfaPattern::Gbrg).unwrap();
    let band = |img: &RgbImage| {
        let mut s = 0.0;
        for c in Channel::ALL {
            for row in 4..60 {
                for col in 29..35 {
                    s += (img.channel(c).get(row, col) - truth.channel(c).get(row, col)).powi(2);
                }
            }
        }
        s
    };
    let joint = band(&demosaic_joint_bilateral(&m, 1.0, 0.1).unwrap());
    let bilinear = band(&demosaic_bilinear(&m));
    assert!(joint < bilinear, "joint {joint} vs bilinear {bilinear}");
}

#[test]
fn gradient_beats_bilinear_on_corpus() {
    for img in corpus::builtin_corpus(256) {
        let m = mosaic_from_rgb(&img.image, CfaPattern::Gbrg).unwrap();
        let g = cpsnr(&img.image, &demosaic_gradient(&m)).unwrap();
        let b = cpsnr(&img.image, &demosaic_bilinear(&m)).unwrap();
        assert!(g > b, "{}: gradient {g} vs bilinear {b}", img.id);
    }
}

#[test]
fn bilinear_green_is_most_faithful() {
    for img in corpus::builtin_corpus(128) {
        let m = mosaic_from_rgb(&img.image, CfaPattern::Gbrg).unwrap();
        let out = demosaic_bilinear(&m);
        let e = |c| mse(img.image.channel(c), out.channel(c), 4).unwrap();
        let (r, g, b) = (e(Channel::Red), e(Channel::Green), e(Channel::Blue));
        assert!(g < r && g < b, "{}: r {r} g {g} b {b}", img.id);
    }
}

// --- metrics ---

#[test]
fn metrics_match_naive_formulas() {
    let mut rng = Lcg(33);
    let a = RgbImage::from_fn(20, 16, |_, _| [rng.next(), rng.next(), rng.next()]);
    let b = RgbImage::from_fn(20, 16, |_, _| [rng.next(), rng.next(), rng.next()]);
    let mut per = [0.0; 3];
    for c in Channel::ALL {
        let mut s = 0.0;
        for row in 4..12 {
            for col in 4..16 {
                s += (a.channel(c).get(row, col) - b.channel(c).get(row, col)).powi(2);
            }
        }
        let naive = s / 96.0;
        assert!((mse(a.channel(c), b.channel(c), 4).unwrap() - naive).abs() < 1e-15);
        per[c as usize] = plane_mse(a.channel(c), b.channel(c));
    }
    let naive_cpsnr = 10.0 * (1.0 / (per.iter().sum::<f64>() / 3.0)).log10();
    assert!((cpsnr(&a, &b).unwrap() - naive_cpsnr).abs() < 1e-10);
    assert_eq!(cpsnr(&a, &a).unwrap(), f64::INFINITY);
}

// --- pipeline and experiments ---

#[test]
fn noiseless_ramp_is_exact_with_gradient() {
    let ramp = column_ramp(64, 0.125, 1.0 / 128.0);
    for strategy in [Strategy::After, Strategy::Before] {
        let cfg = config(
            strategy,
            0.0,
            0,
            DenoiserConfig::None,
            DemosaickerConfig::Gradient,
        );
        let rec = run_pipeline("ramp", &ramp, &cfg).unwrap().record;
        assert_eq!(rec.cpsnr_db, f64::INFINITY, "{strategy}");
        assert_eq!(rec.psnr_db, [f64::INFINITY; 3]);
    }
}

#[test]
fn before_beats_undenoised_baseline() {
    let img = corpus::shapes(128);
    let run = |dn| {
        let cfg = config(Strategy::Before, 0.1, 12, dn, DemosaickerConfig::Bilinear);
        run_pipeline("shapes", &img, &cfg).unwrap().record.cpsnr_db
    };
    let (denoised, baseline) = (run(AUTO_WAVELET), run(DenoiserConfig::None));
    assert!(denoised > baseline, "{denoised} vs {baseline}");
}

fn grid(sigmas: &[f64], strategies: Vec<Strategy>, replicates: usize) -> ExperimentGrid {
    ExperimentGrid {
        pattern: CfaPattern::Gbrg,
        sigmas: sigmas.iter().map(|&s| [s; 3]).collect(),
        strategies,
        denoisers: vec![AUTO_WAVELET],
        demosaickers: vec![
            DemosaickerConfig::Bilinear,
            DemosaickerConfig::JointBilateral {
                sigma_s: 1.0,
                sigma_r: 0.1,
            },
        ],
        replicates,
        master_seed: 8,
    }
}

#[test]
fn experiment_cardinality() {
    let one = vec![CorpusImage::new("w", corpus::waves(32))];
    let recs = run_experiment(
        &one,
        &grid(&[0.05], vec![Strategy::Before], 1),
        &ExperimentOptions::default(),
    )
    .unwrap();
    assert_eq!(recs.len(), 1);

    let two = vec![
        CorpusImage::new("w", corpus::waves(32)),
        CorpusImage::new("b", corpus::blobs(32)),
    ];
    let g = grid(&[0.02, 0.05, 0.1], Strategy::ALL.to_vec(), 1);
    let recs = run_experiment(&two, &g, &ExperimentOptions::default()).unwrap();
    assert_eq!(recs.len(), 18);
    assert!(recs[..9].iter().all(|r| r.image == "w"));
    for r in &recs {
        assert_eq!(r.strategy == Strategy::Joint, r.demosaicker.is_joint());
        if r.strategy == Strategy::Joint {
            assert_eq!(r.denoiser, DenoiserConfig::None);
        }
        assert!(r.wall_ms.is_none());
    }
}

#[test]
fn experiment_is_deterministic_across_thread_counts() {
    let corpus = vec![CorpusImage::new("s", corpus::shapes(32))];
    let g = grid(&[0.03, 0.08], Strategy::ALL.to_vec(), 3);
    let serial = run_experiment(
        &corpus,
        &g,
        &ExperimentOptions {
            jobs: Some(1),
            record_timing: false,
        },
    )
    .unwrap();
    let parallel = run_experiment(
        &corpus,
        &g,
        &ExperimentOptions {
            jobs: Some(4),
            record_timing: false,
        },
    )
    .unwrap();
    assert_eq!(write_csv(&serial), write_csv(&parallel));
    // strategies at one sigma and replicate share a noise field
    let seeds: Vec<u64> = serial
        .iter()
        .filter(|r| r.sigma[0] == 0.03)
        .map(|r| r.seed)
        .collect();
    assert_eq!(seeds.len(), 9);
    assert_eq!(seeds[0], seeds[3]);
    assert_eq!(seeds[0], seeds[6]);
    assert_ne!(seeds[0], seeds[1]);
}

#[test]
fn csv_shape_and_round_trip() {
    assert_eq!(write_csv(&[]), format!("{CSV_HEADER}\n").into_bytes());
    let corpus = vec![CorpusImage::new("w", corpus::waves(32))];
    let recs = run_experiment(
        &corpus,
        &grid(&[0.05], vec![Strategy::After, Strategy::Joint], 2),
        &ExperimentOptions::default(),
    )
    .unwrap();
    let text = String::from_utf8(write_csv(&recs)).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + recs.len());
    for (line, rec) in lines[1..].iter().zip(&recs) {
        assert_eq!(line.matches(',').count(), 16);
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[0], rec.image);
        assert_eq!(f[2], rec.strategy.name());
        assert_eq!(f[8].parse::<u64>().unwrap(), rec.seed);
        let cp: f64 = f[15].parse().unwrap();
        assert!((cp - rec.cpsnr_db).abs() <= rec.cpsnr_db.abs() * 1e-5);
    }
}
