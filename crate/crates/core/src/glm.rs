//! Gray-level modification: the parity of each selected pixel carries one
//! bit (even = 0, odd = 1).
//!
//! Embedding first forces every selected pixel even (odd values drop by one),
//! then adds one where the bit is 1. No pixel moves by more than one level
//! and nothing can leave `[0, 255]`.

use std::fmt;
use std::str::FromStr;

use crate::bitstream::{unframe_payload, BitString};
use crate::error::{Result, StegoError};
use crate::image::GrayImage;
use crate::metrics::psnr;
use crate::report::EmbedReport;

/// Which pixels carry bits. Shared by embedder and extractor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PixelSelector {
    #[default]
    All,
    /// Row-major indices `i` with `i % stride == offset`.
    Strided { stride: usize, offset: usize },
}

impl PixelSelector {
    pub fn strided(stride: usize, offset: usize) -> Result<Self> {
        if stride == 0 || offset >= stride {
            return Err(StegoError::InvalidSelector(format!(
                "stride {stride} with offset {offset}"
            )));
        }
        Ok(Self::Strided { stride, offset })
    }

    pub fn indices(&self, pixel_count: usize) -> impl Iterator<Item = usize> {
        let (start, step) = match *self {
            Self::All => (0, 1),
            Self::Strided { stride, offset } => (offset, stride),
        };
        (start..pixel_count).step_by(step)
    }

    pub fn count(&self, pixel_count: usize) -> usize {
        match *self {
            Self::All => pixel_count,
            Self::Strided { stride, offset } => pixel_count.saturating_sub(offset).div_ceil(stride),
        }
    }
}

/// `all` or `stride:K:OFF`.
impl FromStr for PixelSelector {
    type Err = StegoError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(Self::All);
        }
        let bad = || StegoError::InvalidSelector(s.to_owned());
        let mut parts = s.split(':');
        match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("stride"), Some(k), Some(off), None) => Self::strided(
                k.parse().map_err(|_| bad())?,
                off.parse().map_err(|_| bad())?,
            ),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for PixelSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::All => f.write_str("all"),
            Self::Strided { stride, offset } => write!(f, "stride:{stride}:{offset}"),
        }
    }
}

pub fn select_pixels(img: &GrayImage, sel: PixelSelector) -> Vec<usize> {
    sel.indices(img.pixel_count()).collect()
}

pub fn glm_capacity(img: &GrayImage, sel: PixelSelector) -> usize {
    sel.count(img.pixel_count())
}

/// Maps one bit onto a gray level.
pub fn map_bit(pixel: u8, bit: bool) -> u8 {
    (pixel & !1) | u8::from(bit)
}

pub fn glm_embed(
    cover: &GrayImage,
    payload: &mut BitString,
    sel: PixelSelector,
) -> Result<(GrayImage, EmbedReport)> {
    let capacity = glm_capacity(cover, sel);
    if payload.remaining() > capacity {
        return Err(StegoError::CapacityExceeded {
            capacity,
            requested: payload.remaining(),
        });
    }
    let start = payload.cursor();
    let mut stego = cover.clone();
    let pixels = stego.pixels_mut();
    for i in sel.indices(pixels.len()) {
        // past the payload the selected pixels are left even
        pixels[i] = map_bit(pixels[i], payload.read_bit());
    }
    let report = EmbedReport {
        glm_bits: payload.cursor() - start,
        pairs_total: cover.pair_count(),
        psnr_db: Some(psnr(cover, &stego)?),
        ..EmbedReport::default()
    };
    Ok((stego, report))
}

pub fn glm_extract_bits(stego: &GrayImage, sel: PixelSelector) -> BitString {
    let pixels = stego.pixels();
    sel.indices(pixels.len())
        .map(|i| pixels[i] & 1 == 1)
        .collect()
}

pub fn glm_extract(stego: &GrayImage, sel: PixelSelector) -> Result<Vec<u8>> {
    unframe_payload(&glm_extract_bits(stego, sel))
}
