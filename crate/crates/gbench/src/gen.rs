//! Deterministic synthetic data generators.

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` values uniform in [0, 2^max_bits).
pub fn gen_uniform(n: usize, max_bits: u32, seed: u64) -> Result<Vec<u32>> {
    if !(1..=32).contains(&max_bits) {
        bail!("max_bits must be in 1..=32, got {}", max_bits);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = if max_bits == 32 { u32::MAX } else { (1u32 << max_bits) - 1 };
    Ok((0..n).map(|_| rng.r#gen::<u32>() & mask).collect())
}

/// `n` i.i.d. geometric gaps with success probability `density`; values >= 1.
/// Models the d-gaps of docids Bernoulli-sampled at the given density.
pub fn gen_docid_gaps(n: usize, density: f64, seed: u64) -> Result<Vec<u32>> {
    if !(density > 0.0 && density < 1.0) {
        bail!("density must be in (0,1), got {}", density);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log1m = (1.0 - density).ln();
    Ok((0..n)
        .map(|_| {
            // Inverse-CDF sampling; clamp keeps the tail inside u32.
            let u: f64 = rng.r#gen::<f64>();
            let gap = 1.0 + ((1.0 - u).ln() / log1m).floor();
            gap.min(u32::MAX as f64) as u32
        })
        .collect())
}
