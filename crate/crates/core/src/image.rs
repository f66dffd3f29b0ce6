//! 8-bit grayscale rasters, pair traversal and the binary PGM/PPM codecs.
//!
//! Pixels are traversed row-major, left to right. Pair `k` is pixels
//! `2k` and `2k + 1` of that flattened vector; with an odd pixel count the
//! last pixel belongs to no pair and is never touched by the pair codecs.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Result, StegoError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

/// Two consecutive gray levels in traversal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelPair {
    pub first: u8,
    pub second: u8,
    pub index: usize,
}

impl PixelPair {
    pub fn new(first: u8, second: u8) -> Self {
        Self {
            first,
            second,
            index: 0,
        }
    }

    /// Signed difference `second - first`.
    pub fn diff(&self) -> i32 {
        i32::from(self.second) - i32::from(self.first)
    }

    pub fn abs_diff(&self) -> u8 {
        self.first.abs_diff(self.second)
    }

    pub fn swapped(self) -> Self {
        Self {
            first: self.second,
            second: self.first,
            ..self
        }
    }

    pub fn values(&self) -> (u8, u8) {
        (self.first, self.second)
    }
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        let expected = width * height;
        if pixels.len() != expected {
            return Err(StegoError::PixelCountMismatch {
                expected,
                actual: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        Self {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn pair_count(&self) -> usize {
        self.pixels.len() / 2
    }

    pub fn pair(&self, k: usize) -> PixelPair {
        PixelPair {
            first: self.pixels[2 * k],
            second: self.pixels[2 * k + 1],
            index: k,
        }
    }

    pub fn set_pair(&mut self, k: usize, pair: PixelPair) {
        self.pixels[2 * k] = pair.first;
        self.pixels[2 * k + 1] = pair.second;
    }

    /// All complete pairs in traversal order.
    pub fn pairs(&self) -> impl DoubleEndedIterator<Item = PixelPair> + ExactSizeIterator + '_ {
        (0..self.pair_count()).map(move |k| self.pair(k))
    }
}

/// Collects [`GrayImage::pairs`] into a vector.
pub fn pair_traversal(img: &GrayImage) -> Vec<PixelPair> {
    img.pairs().collect()
}

/// BT.601 luma: `round(0.299 r + 0.587 g + 0.114 b)`.
pub fn luminance_convert(rgb: &[[u8; 3]], width: usize, height: usize) -> Result<GrayImage> {
    let pixels = rgb
        .iter()
        .map(|&[r, g, b]| {
            let y = 0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b);
            y.round().clamp(0.0, 255.0) as u8
        })
        .collect();
    GrayImage::new(width, height, pixels)
}

struct Header {
    width: usize,
    height: usize,
    data_offset: usize,
}

fn parse_header(bytes: &[u8], magic: &[u8; 2]) -> Result<Header> {
    if bytes.len() < 2 || &bytes[..2] != magic {
        return Err(StegoError::MalformedHeader(format!(
            "expected magic {:?}",
            String::from_utf8_lossy(magic)
        )));
    }
    let mut pos = 2;
    let mut fields = [0u32; 3];
    for (i, field) in fields.iter_mut().enumerate() {
        // whitespace and comments before each field
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(StegoError::MalformedHeader(format!(
                "missing header field {}",
                ["width", "height", "maxval"][i]
            )));
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| StegoError::MalformedHeader("header field out of range".into()))?;
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => {
            return Err(StegoError::MalformedHeader(
                "missing whitespace after maxval".into(),
            ))
        }
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(StegoError::UnsupportedDepth(maxval));
    }
    Ok(Header {
        width: width as usize,
        height: height as usize,
        data_offset: pos,
    })
}

fn raster<'a>(bytes: &'a [u8], header: &Header, channels: usize) -> Result<&'a [u8]> {
    let expected = header.width * header.height * channels;
    let data = &bytes[header.data_offset..];
    if data.len() < expected {
        return Err(StegoError::TruncatedPixels {
            expected,
            actual: data.len(),
        });
    }
    Ok(&data[..expected])
}

/// Decodes a binary PGM (`P5`, maxval 255).
pub fn decode_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let header = parse_header(bytes, b"P5")?;
    let data = raster(bytes, &header, 1)?;
    GrayImage::new(header.width, header.height, data.to_vec())
}

pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}

pub fn load_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    decode_pgm(&fs::read(path)?)
}

pub fn save_pgm(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(&encode_pgm(img))?;
    Ok(())
}

/// Decodes a binary PPM (`P6`, maxval 255) into RGB triples.
pub fn decode_ppm(bytes: &[u8]) -> Result<(usize, usize, Vec<[u8; 3]>)> {
    let header = parse_header(bytes, b"P6")?;
    let data = raster(bytes, &header, 3)?;
    let rgb = data.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
    Ok((header.width, header.height, rgb))
}

/// Loads a binary PPM and converts it to gray with [`luminance_convert`].
pub fn load_ppm_as_gray(path: impl AsRef<Path>) -> Result<GrayImage> {
    let (width, height, rgb) = decode_ppm(&fs::read(path)?)?;
    luminance_convert(&rgb, width, height)
}
