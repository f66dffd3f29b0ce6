//! MSE/PSNR and the seeded method comparison behind `bench`.

use std::fmt;
use std::io::Write;

use crate::bitstream::seeded_bits;
use crate::error::{Result, StegoError};
use crate::hybrid::hybrid_capacity;
use crate::image::GrayImage;
use crate::method::{capacity, embed, CodecOptions, Method};

/// Peak value of an 8-bit signal.
pub const MAX_SIGNAL: f64 = 255.0;

/// Peak signal-to-noise ratio in decibels; identical images are `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Psnr {
    Finite(f64),
    Infinite,
}

impl Psnr {
    pub fn from_mse(mse: f64) -> Self {
        if mse == 0.0 {
            Psnr::Infinite
        } else {
            Psnr::Finite(10.0 * (MAX_SIGNAL * MAX_SIGNAL / mse).log10())
        }
    }

    /// Decibels, with `f64::INFINITY` for identical images.
    pub fn db(&self) -> f64 {
        match *self {
            Psnr::Finite(db) => db,
            Psnr::Infinite => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Psnr::Finite(_))
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Finite(db) => write!(f, "{db:.4}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    pub psnr: Psnr,
}

fn check_dims(original: &GrayImage, stego: &GrayImage) -> Result<()> {
    if original.dimensions() != stego.dimensions() {
        return Err(StegoError::DimensionMismatch {
            left: original.dimensions(),
            right: stego.dimensions(),
        });
    }
    Ok(())
}

/// Sum of squared pixel differences, exact.
pub fn squared_error(original: &GrayImage, stego: &GrayImage) -> Result<u64> {
    check_dims(original, stego)?;
    Ok(original
        .pixels()
        .iter()
        .zip(stego.pixels())
        .map(|(&a, &b)| u64::from(a.abs_diff(b)).pow(2))
        .sum())
}

/// Mean squared error. Empty images have an error of zero.
pub fn mse(original: &GrayImage, stego: &GrayImage) -> Result<f64> {
    let sum = squared_error(original, stego)?;
    let n = original.pixel_count();
    Ok(if n == 0 { 0.0 } else { sum as f64 / n as f64 })
}

pub fn psnr(original: &GrayImage, stego: &GrayImage) -> Result<Psnr> {
    mse(original, stego).map(Psnr::from_mse)
}

pub fn quality(original: &GrayImage, stego: &GrayImage) -> Result<QualityReport> {
    let mse = mse(original, stego)?;
    Ok(QualityReport {
        mse,
        psnr: Psnr::from_mse(mse),
    })
}

/// One line of the capacity/quality comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub image: String,
    pub method: Method,
    pub capacity_bits: usize,
    pub psnr: Psnr,
    pub seed: u64,
}

/// Embeds a seeded random stream that fills each method's capacity and
/// measures the result. Deterministic for a fixed seed.
///
/// The hybrid stream starts with the same bits as the capacity dry run, so
/// the PVD phase leaves the same parities and the stream fits exactly.
pub fn comparison_report(
    image: &str,
    cover: &GrayImage,
    methods: &[Method],
    seed: u64,
    opts: &CodecOptions,
) -> Result<Vec<ComparisonRow>> {
    methods
        .iter()
        .map(|&method| {
            let capacity_bits = match method {
                Method::Hybrid => hybrid_capacity(cover, &opts.table, seed).total(),
                _ => capacity(method, cover, opts, seed),
            };
            let mut payload = seeded_bits(seed, capacity_bits);
            let (stego, _) = embed(method, cover, &mut payload, opts)?;
            Ok(ComparisonRow {
                image: image.to_owned(),
                method,
                capacity_bits,
                psnr: psnr(cover, &stego)?,
                seed,
            })
        })
        .collect()
}

/// CSV with columns `image,method,capacity_bits,psnr_db,seed`.
pub fn write_csv<W: Write>(rows: &[ComparisonRow], writer: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(["image", "method", "capacity_bits", "psnr_db", "seed"])?;
    for row in rows {
        out.write_record([
            row.image.clone(),
            row.method.to_string(),
            row.capacity_bits.to_string(),
            row.psnr.to_string(),
            row.seed.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Fixed-width table for terminals.
pub fn format_table(rows: &[ComparisonRow]) -> String {
    let mut out = format!(
        "{:<16} {:<8} {:>14} {:>10}\n",
        "image", "method", "capacity_bits", "psnr_db"
    );
    for row in rows {
        out.push_str(&format!(
            "{:<16} {:<8} {:>14} {:>10}\n",
            row.image,
            row.method,
            row.capacity_bits,
            row.psnr.to_string()
        ));
    }
    out
}
