use std::fmt;
use std::str::FromStr;

use crate::bitstream::{unframe_payload, BitString};
use crate::error::{Result, StegoError};
use crate::glm::{glm_capacity, glm_embed, glm_extract_bits, PixelSelector};
use crate::hybrid::{hybrid_capacity, hybrid_embed, hybrid_extract_bits};
use crate::image::GrayImage;
use crate::pvd::{pvd_capacity, pvd_embed, pvd_extract_bits, RangeTable};
use crate::report::EmbedReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Pvd,
    Glm,
    Hybrid,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Pvd, Method::Glm, Method::Hybrid];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Pvd => "pvd",
            Method::Glm => "glm",
            Method::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = StegoError;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| StegoError::UnknownMethod(s.to_owned()))
    }
}

/// Settings the embedder and extractor must agree on. `table` is used by
/// PVD and hybrid, `selector` by GLM.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CodecOptions {
    pub table: RangeTable,
    pub selector: PixelSelector,
}

pub fn embed(
    method: Method,
    cover: &GrayImage,
    payload: &mut BitString,
    opts: &CodecOptions,
) -> Result<(GrayImage, EmbedReport)> {
    match method {
        Method::Pvd => pvd_embed(cover, payload, &opts.table),
        Method::Glm => glm_embed(cover, payload, opts.selector),
        Method::Hybrid => hybrid_embed(cover, payload, &opts.table),
    }
}

pub fn extract_bits(method: Method, stego: &GrayImage, opts: &CodecOptions) -> BitString {
    match method {
        Method::Pvd => pvd_extract_bits(stego, &opts.table),
        Method::Glm => glm_extract_bits(stego, opts.selector),
        Method::Hybrid => hybrid_extract_bits(stego, &opts.table),
    }
}

pub fn extract(method: Method, stego: &GrayImage, opts: &CodecOptions) -> Result<Vec<u8>> {
    unframe_payload(&extract_bits(method, stego, opts))
}

/// Capacity in bits. For the hybrid method this is the dry-run estimate
/// seeded with `seed`; the other methods ignore the seed.
pub fn capacity(method: Method, cover: &GrayImage, opts: &CodecOptions, seed: u64) -> usize {
    match method {
        Method::Pvd => pvd_capacity(cover, &opts.table),
        Method::Glm => glm_capacity(cover, opts.selector),
        Method::Hybrid => hybrid_capacity(cover, &opts.table, seed).total(),
    }
}
