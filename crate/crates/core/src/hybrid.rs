//! PVD followed by a pair-parity GLM phase.
//!
//! After the PVD phase every pair is normalized to a non-negative difference
//! and then marked:
//!
//! * both even: kept;
//! * both odd: both lowered by one (the difference is unchanged);
//! * mixed parity: swapped, so the stored difference is negative. These
//!   pairs are *abandoned* and carry no GLM bits.
//!
//! Both-even pairs with a strictly positive difference then carry two GLM
//! bits, one per pixel parity. Pairs whose difference is zero are left alone:
//! setting the first pixel odd would make the difference negative and the
//! receiver would mistake the pair for an abandoned one.
//!
//! The receiver reads the parities of every pair with positive difference,
//! forces those pairs even again and runs PVD extraction on the result. The
//! logical stream is the PVD bits followed by the GLM bits.

use crate::bitstream::{seeded_bits, unframe_payload, BitString};
use crate::error::{Result, StegoError};
use crate::glm::map_bit;
use crate::image::{GrayImage, PixelPair};
use crate::metrics::psnr;
use crate::pvd::{embed_in_place, pvd_capacity, pvd_extract_bits, RangeTable};
use crate::report::EmbedReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// Both even with positive difference; carries two bits.
    GlmEligible,
    /// Mixed parity; stored with a negative difference.
    Abandoned,
    /// Both even with zero difference; carries nothing.
    ZeroDiff,
}

/// Swaps the pair when its difference is negative.
pub fn normalize(pair: PixelPair) -> PixelPair {
    if pair.diff() < 0 {
        pair.swapped()
    } else {
        pair
    }
}

/// Parity marking of a normalized pair.
pub fn mark(pair: PixelPair) -> (PixelPair, PairClass) {
    let (a, b) = (pair.first, pair.second);
    let out = match (a % 2, b % 2) {
        (0, 0) => pair,
        (1, 1) => PixelPair {
            first: a - 1,
            second: b - 1,
            ..pair
        },
        _ => return (pair.swapped(), PairClass::Abandoned),
    };
    let class = if out.diff() > 0 {
        PairClass::GlmEligible
    } else {
        PairClass::ZeroDiff
    };
    (out, class)
}

/// Maps the next two payload bits onto an eligible pair, first bit on the
/// first pixel.
pub fn glm_map(pair: PixelPair, payload: &mut BitString) -> PixelPair {
    let first = map_bit(pair.first, payload.read_bit());
    let second = map_bit(pair.second, payload.read_bit());
    PixelPair {
        first,
        second,
        ..pair
    }
}

/// Normalizes, marks and maps every pair of `img` in place.
pub fn phase_two(img: &mut GrayImage, payload: &mut BitString) -> Vec<PairClass> {
    (0..img.pair_count())
        .map(|k| {
            let (marked, class) = mark(normalize(img.pair(k)));
            let out = if class == PairClass::GlmEligible {
                glm_map(marked, payload)
            } else {
                marked
            };
            img.set_pair(k, out);
            class
        })
        .collect()
}

/// Number of GLM slots phase two would offer on a PVD-stage image.
pub fn glm_slots(pvd_stage: &GrayImage) -> usize {
    2 * pvd_stage
        .pairs()
        .filter(|&p| mark(normalize(p)).1 == PairClass::GlmEligible)
        .count()
}

/// Intermediate images of one hybrid embedding.
#[derive(Debug, Clone)]
pub struct HybridTrace {
    /// Output of the PVD phase.
    pub pvd_stage: GrayImage,
    /// After normalizing and marking, before GLM mapping.
    pub marked: GrayImage,
    pub classes: Vec<PairClass>,
}

pub fn hybrid_embed_traced(
    cover: &GrayImage,
    payload: &mut BitString,
    table: &RangeTable,
) -> Result<(GrayImage, EmbedReport, HybridTrace)> {
    let requested = payload.remaining();
    let pvd_cap = pvd_capacity(cover, table);
    if requested > pvd_cap + 2 * cover.pair_count() {
        return Err(StegoError::CapacityExceeded {
            capacity: pvd_cap + 2 * cover.pair_count(),
            requested,
        });
    }
    let start = payload.cursor();

    let mut pvd_stage = cover.clone();
    let (pvd_bits, skipped) = embed_in_place(&mut pvd_stage, payload, table);

    // eligibility depends on the parities the PVD phase produced
    let capacity = pvd_cap + glm_slots(&pvd_stage);
    if requested > capacity {
        payload.seek(start);
        return Err(StegoError::CapacityExceeded {
            capacity,
            requested,
        });
    }

    let mut marked = pvd_stage.clone();
    let mut no_bits = BitString::new();
    let classes = phase_two(&mut marked, &mut no_bits);
    // a zero payload leaves eligible pairs even, so `marked` is exactly the
    // state the receiver restores

    let mut stego = pvd_stage.clone();
    let glm_start = payload.cursor();
    phase_two(&mut stego, payload);
    let glm_bits = payload.cursor() - glm_start;

    let count = |c: PairClass| classes.iter().filter(|&&x| x == c).count();
    let report = EmbedReport {
        pvd_bits,
        glm_bits,
        pairs_total: cover.pair_count(),
        pairs_skipped_pvd: skipped,
        pairs_abandoned: count(PairClass::Abandoned),
        pairs_zero_diff: count(PairClass::ZeroDiff),
        pairs_glm: count(PairClass::GlmEligible),
        psnr_db: Some(psnr(cover, &stego)?),
    };
    debug_assert_eq!(report.total_bits(), payload.cursor() - start);
    let trace = HybridTrace {
        pvd_stage,
        marked,
        classes,
    };
    Ok((stego, report, trace))
}

/// Embeds the unread part of `payload` (normally a framed payload).
pub fn hybrid_embed(
    cover: &GrayImage,
    payload: &mut BitString,
    table: &RangeTable,
) -> Result<(GrayImage, EmbedReport)> {
    hybrid_embed_traced(cover, payload, table).map(|(stego, report, _)| (stego, report))
}

/// First extraction stage: reads the parities of every pair with positive
/// difference and forces those pairs even. Other pairs are untouched.
pub fn restore_glm_stage(stego: &GrayImage) -> (GrayImage, BitString) {
    let mut restored = stego.clone();
    let mut bits = BitString::new();
    for k in 0..restored.pair_count() {
        let pair = restored.pair(k);
        if pair.diff() > 0 {
            bits.push(pair.first & 1 == 1);
            bits.push(pair.second & 1 == 1);
            restored.set_pair(
                k,
                PixelPair {
                    first: pair.first & !1,
                    second: pair.second & !1,
                    ..pair
                },
            );
        }
    }
    (restored, bits)
}

/// The logical stream: PVD bits of the restored image, then GLM bits.
pub fn hybrid_extract_bits(stego: &GrayImage, table: &RangeTable) -> BitString {
    let (restored, glm_bits) = restore_glm_stage(stego);
    let mut stream = pvd_extract_bits(&restored, table);
    stream.append(&glm_bits);
    stream
}

pub fn hybrid_extract(stego: &GrayImage, table: &RangeTable) -> Result<Vec<u8>> {
    unframe_payload(&hybrid_extract_bits(stego, table))
}

/// Hybrid capacity from a dry run. The GLM share depends on the parities left
/// by the PVD phase, so it is measured with a seeded random stream that fills
/// the PVD capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityEstimate {
    pub pvd_bits: usize,
    pub glm_bits: usize,
    pub seed: u64,
}

impl CapacityEstimate {
    pub fn total(&self) -> usize {
        self.pvd_bits + self.glm_bits
    }
}

pub fn hybrid_capacity(cover: &GrayImage, table: &RangeTable, seed: u64) -> CapacityEstimate {
    let pvd_bits = pvd_capacity(cover, table);
    let mut stage = cover.clone();
    embed_in_place(&mut stage, &mut seeded_bits(seed, pvd_bits), table);
    CapacityEstimate {
        pvd_bits,
        glm_bits: glm_slots(&stage),
        seed,
    }
}
