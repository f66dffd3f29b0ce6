//! Grayscale image steganography with three codecs:
//!
//! * [`pvd`]: pixel-value differencing, variable-width chunks in the
//!   difference of each pixel pair;
//! * [`glm`]: gray-level modification, one bit per selected pixel parity;
//! * [`hybrid`]: PVD followed by a pair-parity GLM phase over the PVD output.
//!
//! Payloads travel as [`BitString`]s framed with a 32-bit length header, so
//! every codec round-trips arbitrary bytes. [`metrics`] measures MSE/PSNR and
//! produces the seeded method comparison used by the `bench` command.

pub mod bitstream;
pub mod error;
pub mod glm;
pub mod hybrid;
pub mod image;
pub mod method;
pub mod metrics;
pub mod pvd;
pub mod report;

pub use bitstream::{frame_payload, seeded_bits, unframe_payload, BitString};
pub use error::{Result, StegoError};
pub use glm::{glm_capacity, glm_embed, glm_extract, PixelSelector};
pub use hybrid::{hybrid_capacity, hybrid_embed, hybrid_extract, CapacityEstimate, PairClass};
pub use image::{load_pgm, save_pgm, GrayImage, PixelPair};
pub use method::{CodecOptions, Method};
pub use metrics::{comparison_report, mse, psnr, ComparisonRow, Psnr, QualityReport};
pub use pvd::{pvd_capacity, pvd_embed, pvd_extract, Range, RangeTable};
pub use report::EmbedReport;
