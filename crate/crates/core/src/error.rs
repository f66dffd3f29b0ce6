use std::io;

use thiserror::Error;

/// Errors produced by the codecs, the image model and the metrics.
#[derive(Debug, Error)]
pub enum StegoError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("malformed image header: {0}")]
    MalformedHeader(String),

    #[error("unsupported bit depth: maxval {0} (only 255 is supported)")]
    UnsupportedDepth(u32),

    #[error("truncated pixel data: expected {expected} bytes, found {actual}")]
    TruncatedPixels { expected: usize, actual: usize },

    #[error("pixel count mismatch: expected {expected}, found {actual}")]
    PixelCountMismatch { expected: usize, actual: usize },

    #[error("payload of {requested} bits exceeds capacity of {capacity} bits")]
    CapacityExceeded { capacity: usize, requested: usize },

    #[error("payload of {0} bytes is too large to frame")]
    PayloadTooLarge(usize),

    #[error("missing payload header: {available} bits available, 32 required")]
    MissingHeader { available: usize },

    #[error("truncated payload: header declares {declared} bits, only {available} available")]
    TruncatedPayload { declared: usize, available: usize },

    #[error("value {value} does not fit in {bits} bits")]
    ValueTooWide { value: u32, bits: u32 },

    #[error("image dimensions differ: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid range table: {0}")]
    InvalidRangeTable(String),

    #[error("invalid pixel selector: {0}")]
    InvalidSelector(String),

    #[error("unknown method: {0}")]
    UnknownMethod(String),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, StegoError>;
