//! CSV emission for experiment records.

use std::fmt::Write as _;

use crate::pipeline::ExperimentRecord;

pub const CSV_HEADER: &str = "image,pattern,strategy,denoiser,demosaicker,sigma_r,sigma_g,sigma_b,seed,mse_r,mse_g,mse_b,psnr_r_db,psnr_g_db,psnr_b_db,cpsnr_db,wall_ms";

/// Renders a float with 6 significant digits.
///
/// Fixed notation is used for decimal exponents in `-4..=5`, scientific
/// otherwise. Infinite values print as `inf`.
pub fn format_sig6(value: f64) -> String {
    if value.is_infinite() {
        return if value > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if value == 0.0 {
        return "0.00000".into();
    }
    let sci = format!("{value:.5e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("rust scientific format always carries an exponent");
    if (-4..=5).contains(&exp) {
        format!("{value:.*}", (5 - exp) as usize)
    } else {
        sci
    }
}

fn field(out: &mut String, text: &str) {
    if text.contains([',', '"', '\n']) {
        out.push('"');
        out.push_str(&text.replace('"', "\"\""));
        out.push('"');
    } else {
        out.push_str(text);
    }
}

/// Serializes records under [`CSV_HEADER`], one line per record, in order.
pub fn write_csv(rows: &[ExperimentRecord]) -> Vec<u8> {
    let mut out = String::with_capacity(CSV_HEADER.len() + 1 + rows.len() * 160);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for rec in rows {
        field(&mut out, &rec.image);
        out.push(',');
        field(&mut out, rec.pattern.name());
        out.push(',');
        field(&mut out, rec.strategy.name());
        out.push(',');
        field(&mut out, &rec.denoiser.to_string());
        out.push(',');
        field(&mut out, &rec.demosaicker.to_string());
        for s in rec.sigma {
            write!(out, ",{}", format_sig6(s)).unwrap();
        }
        write!(out, ",{}", rec.seed).unwrap();
        for v in rec.mse.iter().chain(&rec.psnr_db) {
            write!(out, ",{}", format_sig6(*v)).unwrap();
        }
        write!(out, ",{}", format_sig6(rec.cpsnr_db)).unwrap();
        out.push(',');
        if let Some(ms) = rec.wall_ms {
            out.push_str(&format_sig6(ms));
        }
        out.push('\n');
    }
    out.into_bytes()
}
