//! Shared fixtures for the codec benchmarks.

use pairstego::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Smooth gradient with mild seeded noise, close to the statistics of a
/// natural photograph as far as pair differences go.
pub fn natural_like(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GrayImage::from_fn(width, height, |x, y| {
        let base = 60.0 + 0.2 * x as f64 + 0.15 * y as f64;
        let noise: f64 = rng.random_range(-6.0..6.0);
        (base + noise).clamp(0.0, 255.0) as u8
    })
}
