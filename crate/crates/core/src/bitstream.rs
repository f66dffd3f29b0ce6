//! Ordered bit sequences with a read cursor.
//!
//! Bits are most-significant-first, both inside chunks and inside bytes.
//! A logical payload is framed with a 32-bit big-endian header holding the
//! payload length in bits. Reads past the end of the sequence yield zero
//! bits, so the embedders can always fill a whole chunk; the header keeps the
//! padding invisible to the receiver.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, StegoError};

/// Width of the length header prepended by [`frame_payload`].
pub const HEADER_BITS: usize = 32;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitString {
    bits: Vec<bool>,
    cursor: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            bits: Vec::with_capacity(bits),
            cursor: 0,
        }
    }

    /// Unpacks bytes MSB-first.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut out = Self::with_capacity(bytes.len() * 8);
        for &byte in bytes {
            out.write_chunk(u32::from(byte), 8)
                .expect("a byte always fits in 8 bits");
        }
        out
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// Unread bits left before the cursor reaches the end.
    pub fn remaining(&self) -> usize {
        self.bits.len() - self.cursor
    }

    pub fn rewind(&mut self) {
        self.cursor = 0;
    }

    /// Moves the cursor to `pos`, clamped to the length.
    pub fn seek(&mut self, pos: usize) {
        self.cursor = pos.min(self.bits.len());
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn append(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    /// Truncates to the first `len` bits, clamping the cursor.
    pub fn truncate(&mut self, len: usize) {
        self.bits.truncate(len);
        self.cursor = self.cursor.min(self.bits.len());
    }

    /// Next bit, or `false` once the sequence is exhausted.
    pub fn read_bit(&mut self) -> bool {
        let bit = self.bits.get(self.cursor).copied().unwrap_or(false);
        self.cursor = (self.cursor + 1).min(self.bits.len());
        bit
    }

    /// Reads `n` bits as an unsigned integer, MSB-first. Missing low-order
    /// bits past the end count as zeros. `n = 0` reads nothing and yields 0.
    pub fn read_chunk(&mut self, n: u32) -> u32 {
        assert!(n <= 32, "chunk width {n} exceeds 32 bits");
        (0..n).fold(0u32, |acc, _| (acc << 1) | u32::from(self.read_bit()))
    }

    /// Appends the `n`-bit big-endian representation of `value`.
    pub fn write_chunk(&mut self, value: u32, n: u32) -> Result<()> {
        if n > 32 || (n < 32 && u64::from(value) >= 1u64 << n) {
            return Err(StegoError::ValueTooWide { value, bits: n });
        }
        self.bits
            .extend((0..n).rev().map(|i| (value >> i) & 1 == 1));
        Ok(())
    }

    /// Packs all bits into bytes, zero-filling the final partial byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        pack(&self.bits)
    }
}

fn pack(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)))
        })
        .collect()
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
            cursor: 0,
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Parses a string of `0`/`1` characters, ignoring ASCII whitespace.
impl FromStr for BitString {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_ascii_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid bit character {other:?}")),
            })
            .collect()
    }
}

/// `n` uniformly random bits from a ChaCha8 stream seeded with `seed`.
/// Prefixes agree across lengths for the same seed.
pub fn seeded_bits(seed: u64, n: usize) -> BitString {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random::<bool>()).collect()
}

/// Prepends the 32-bit bit-count header to `raw`.
pub fn frame_payload(raw: &[u8]) -> Result<BitString> {
    let bit_len = raw
        .len()
        .checked_mul(8)
        .and_then(|n| u32::try_from(n).ok())
        .ok_or(StegoError::PayloadTooLarge(raw.len()))?;
    let mut out = BitString::with_capacity(HEADER_BITS + raw.len() * 8);
    out.write_chunk(bit_len, HEADER_BITS as u32)?;
    out.append(&BitString::from_bytes(raw));
    Ok(out)
}

/// Inverse of [`frame_payload`]. Reads from the start of `stream`; bits past
/// the declared length are ignored.
pub fn unframe_payload(stream: &BitString) -> Result<Vec<u8>> {
    let bits = stream.as_slice();
    if bits.len() < HEADER_BITS {
        return Err(StegoError::MissingHeader {
            available: bits.len(),
        });
    }
    let declared = bits[..HEADER_BITS]
        .iter()
        .fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
    let available = bits.len() - HEADER_BITS;
    if declared > available {
        return Err(StegoError::TruncatedPayload {
            declared,
            available,
        });
    }
    Ok(pack(&bits[HEADER_BITS..HEADER_BITS + declared]))
}
