//! Pixel-value differencing.
//!
//! Each pair's absolute difference selects a range `[l, u]` whose width is
//! a power of two; `log2(width)` payload bits `b` replace the difference by
//! `l + b` (sign kept). Extraction reads `|d'| - l`.
//!
//! # Boundary rule
//!
//! A pair is only used when every difference of its range can be placed
//! around it without leaving `[0, 255]`. The decision must come out the same
//! on the cover and on the stego pair, and must also survive the hybrid
//! codec's pair swaps and joint decrement of odd–odd pairs. It is therefore
//! evaluated on a canonical form: odd–odd pairs are lowered by one each and
//! the pair is ordered `(min, max)`. With `s` the canonical sum and `u` the
//! upper bound of the range of the difference, the pair is usable iff
//!
//! ```text
//! u - 1 <= s <= 511 - u
//! ```
//!
//! For any range this window admits, for every difference `t` of the range,
//! a pixel-valid pair whose canonical sum is again inside the window. The
//! embedder starts from the symmetric adjustment
//! `(g0 - ceil(m/2), g1 + floor(m/2))`, `m = d' - d`, and, only near the
//! boundary, slides the pair by the smallest offset that keeps it usable.

use std::fmt;
use std::str::FromStr;

use crate::bitstream::{unframe_payload, BitString};
use crate::error::{Result, StegoError};
use crate::image::{GrayImage, PixelPair};
use crate::metrics::psnr;
use crate::report::EmbedReport;

/// A class of absolute differences `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lower: u8,
    pub upper: u8,
}

impl Range {
    pub const fn new(lower: u8, upper: u8) -> Self {
        Self { lower, upper }
    }

    pub fn width(&self) -> u32 {
        u32::from(self.upper) - u32::from(self.lower) + 1
    }

    /// Payload bits carried by a pair in this range.
    pub fn bits(&self) -> u32 {
        self.width().ilog2()
    }

    pub fn contains(&self, d: u8) -> bool {
        (self.lower..=self.upper).contains(&d)
    }
}

/// Ordered partition of `[0, 255]` into power-of-two wide ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeTable {
    ranges: Vec<Range>,
    lookup: [u8; 256],
}

impl RangeTable {
    pub fn new(mut ranges: Vec<Range>) -> Result<Self> {
        ranges.sort_by_key(|r| r.lower);
        let mut next = 0u32;
        for r in &ranges {
            if r.lower > r.upper {
                return Err(StegoError::InvalidRangeTable(format!(
                    "range [{}, {}] is empty",
                    r.lower, r.upper
                )));
            }
            if u32::from(r.lower) != next {
                return Err(StegoError::InvalidRangeTable(format!(
                    "expected a range starting at {next}, found [{}, {}]",
                    r.lower, r.upper
                )));
            }
            if !r.width().is_power_of_two() {
                return Err(StegoError::InvalidRangeTable(format!(
                    "width of [{}, {}] is not a power of two",
                    r.lower, r.upper
                )));
            }
            next = u32::from(r.upper) + 1;
        }
        if next != 256 {
            return Err(StegoError::InvalidRangeTable(format!(
                "ranges stop at {} instead of 255",
                next.saturating_sub(1)
            )));
        }
        let mut lookup = [0u8; 256];
        for (k, r) in ranges.iter().enumerate() {
            for d in r.lower..=r.upper {
                lookup[usize::from(d)] = k as u8;
            }
        }
        Ok(Self { ranges, lookup })
    }

    /// `[0,7] [8,15] [16,31] [32,63] [64,127] [128,255]`.
    pub fn wu_tsai() -> Self {
        Self::new(vec![
            Range::new(0, 7),
            Range::new(8, 15),
            Range::new(16, 31),
            Range::new(32, 63),
            Range::new(64, 127),
            Range::new(128, 255),
        ])
        .expect("default table is a valid partition")
    }

    pub fn ranges(&self) -> &[Range] {
        &self.ranges
    }

    pub fn range_for(&self, abs_diff: u8) -> &Range {
        &self.ranges[usize::from(self.lookup[usize::from(abs_diff)])]
    }
}

impl Default for RangeTable {
    fn default() -> Self {
        Self::wu_tsai()
    }
}

/// One `lower upper` pair per line; blank lines and `#` comments ignored.
impl FromStr for RangeTable {
    type Err = StegoError;

    fn from_str(text: &str) -> Result<Self> {
        let mut ranges = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || StegoError::InvalidRangeTable(format!("line {}: {line:?}", no + 1));
            let mut fields = line.split_whitespace().map(str::parse::<u8>);
            let (Some(Ok(lower)), Some(Ok(upper)), None) =
                (fields.next(), fields.next(), fields.next())
            else {
                return Err(bad());
            };
            ranges.push(Range::new(lower, upper));
        }
        Self::new(ranges)
    }
}

impl fmt::Display for RangeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.ranges {
            writeln!(f, "{} {}", r.lower, r.upper)?;
        }
        Ok(())
    }
}

/// Result of running [`embed_pair`] on one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairOutcome {
    pub new_pair: PixelPair,
    pub bits_consumed: u32,
    pub skipped: bool,
}

/// True when the pair must not carry PVD data. See the module docs.
pub fn skip_test(pair: PixelPair, table: &RangeTable) -> bool {
    let (mut a, mut b) = (i32::from(pair.first), i32::from(pair.second));
    if a & 1 == 1 && b & 1 == 1 {
        a -= 1;
        b -= 1;
    }
    let sum = a + b;
    let upper = i32::from(table.range_for(pair.abs_diff()).upper);
    !(upper - 1 <= sum && sum <= 511 - upper)
}

/// Places `value` into a usable pair. Returns `None` for skipped pairs.
///
/// # Panics
///
/// If `value` does not fit the pair's range.
pub fn embed_value(pair: PixelPair, value: u32, table: &RangeTable) -> Option<PixelPair> {
    if skip_test(pair, table) {
        return None;
    }
    let range = table.range_for(pair.abs_diff());
    assert!(value < range.width(), "value {value} exceeds range width");
    let d = pair.diff();
    let target = i32::from(range.lower) + value as i32;
    let new_diff = if d >= 0 { target } else { -target };
    let m = new_diff - d;
    let g0 = i32::from(pair.first) - m.div_euclid(2) - m.rem_euclid(2);
    let g1 = i32::from(pair.second) + m.div_euclid(2);

    let place = |shift: i32| {
        let (a, b) = (g0 + shift, g1 + shift);
        if !(0..=255).contains(&a) || !(0..=255).contains(&b) {
            return None;
        }
        let candidate = PixelPair {
            first: a as u8,
            second: b as u8,
            index: pair.index,
        };
        (!skip_test(candidate, table)).then_some(candidate)
    };
    let placed = (0..=255)
        .flat_map(|step| [-step, step])
        .find_map(place)
        .expect("a usable placement exists for every difference of the range");
    Some(placed)
}

/// Embeds the next chunk of `payload` into `pair`.
pub fn embed_pair(pair: PixelPair, payload: &mut BitString, table: &RangeTable) -> PairOutcome {
    if skip_test(pair, table) {
        return PairOutcome {
            new_pair: pair,
            bits_consumed: 0,
            skipped: true,
        };
    }
    let n = table.range_for(pair.abs_diff()).bits();
    let value = payload.read_chunk(n);
    PairOutcome {
        new_pair: embed_value(pair, value, table).expect("pair passed the skip test"),
        bits_consumed: n,
        skipped: false,
    }
}

/// The value carried by a usable pair, with its width in bits.
pub fn extract_value(pair: PixelPair, table: &RangeTable) -> Option<(u32, u32)> {
    if skip_test(pair, table) {
        return None;
    }
    let d = pair.abs_diff();
    let range = table.range_for(d);
    Some((u32::from(d - range.lower), range.bits()))
}

/// Bits carried by `pair`, or `None` when it is skipped.
pub fn extract_pair(pair: PixelPair, table: &RangeTable) -> Option<BitString> {
    extract_value(pair, table).map(|(value, n)| {
        let mut bits = BitString::new();
        bits.write_chunk(value, n).expect("value fits its range");
        bits
    })
}

pub fn pvd_capacity(cover: &GrayImage, table: &RangeTable) -> usize {
    cover
        .pairs()
        .filter(|&p| !skip_test(p, table))
        .map(|p| table.range_for(p.abs_diff()).bits() as usize)
        .sum()
}

/// Embeds into `img` in place until `payload` runs out. Returns
/// `(payload bits consumed, skipped pairs)`. Skipped pairs are counted over
/// the whole image.
pub(crate) fn embed_in_place(
    img: &mut GrayImage,
    payload: &mut BitString,
    table: &RangeTable,
) -> (usize, usize) {
    let start = payload.cursor();
    let mut skipped = 0;
    for k in 0..img.pair_count() {
        let pair = img.pair(k);
        if skip_test(pair, table) {
            skipped += 1;
            continue;
        }
        if payload.remaining() == 0 {
            continue;
        }
        let outcome = embed_pair(pair, payload, table);
        img.set_pair(k, outcome.new_pair);
    }
    (payload.cursor() - start, skipped)
}

/// Embeds the unread part of `payload` (normally a framed payload).
pub fn pvd_embed(
    cover: &GrayImage,
    payload: &mut BitString,
    table: &RangeTable,
) -> Result<(GrayImage, EmbedReport)> {
    let capacity = pvd_capacity(cover, table);
    if payload.remaining() > capacity {
        return Err(StegoError::CapacityExceeded {
            capacity,
            requested: payload.remaining(),
        });
    }
    let mut stego = cover.clone();
    let (pvd_bits, skipped) = embed_in_place(&mut stego, payload, table);
    let report = EmbedReport {
        pvd_bits,
        pairs_total: cover.pair_count(),
        pairs_skipped_pvd: skipped,
        psnr_db: Some(psnr(cover, &stego)?),
        ..EmbedReport::default()
    };
    Ok((stego, report))
}

/// Concatenated bits of every usable pair, in traversal order.
pub fn pvd_extract_bits(stego: &GrayImage, table: &RangeTable) -> BitString {
    let mut bits = BitString::new();
    for pair in stego.pairs() {
        if let Some((value, n)) = extract_value(pair, table) {
            bits.write_chunk(value, n).expect("value fits its range");
        }
    }
    bits
}

pub fn pvd_extract(stego: &GrayImage, table: &RangeTable) -> Result<Vec<u8>> {
    unframe_payload(&pvd_extract_bits(stego, table))
}
