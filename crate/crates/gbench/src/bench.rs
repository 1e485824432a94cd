//! Throughput and ratio measurement on in-memory buffers.

use crate::names::NamedCodec;
use anyhow::{bail, ensure, Result};
use group_codec::{decode_block_with, encode_block, Kernel};
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub codec: String,
    pub variant: u8,
    pub kernel: String,
    pub dataset: String,
    pub n: usize,
    pub encoded_bytes: usize,
    pub bits_per_int: f64,
    pub encode_mis: f64,
    pub decode_mis: f64,
    pub runs: usize,
    pub encode_mis_mean: f64,
    pub decode_mis_mean: f64,
}

fn kernel_name(kernel: Kernel) -> &'static str {
    match kernel {
        Kernel::Scalar => "scalar",
        Kernel::Vectorized => "vector",
        Kernel::Auto => "auto",
    }
}

fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(|a, b| a.total_cmp(b));
    let m = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[m]
    } else {
        (samples[m - 1] + samples[m]) / 2.0
    }
}

fn mis(n: usize, seconds: f64) -> f64 {
    n as f64 / seconds / 1e6
}

/// Encode once for size, then time encode and decode over `runs` warm
/// repetitions; every decode is verified against the input.
pub fn run_benchmark(
    codec: NamedCodec,
    kernel: Kernel,
    dataset: &str,
    data: &[u32],
    runs: usize,
) -> Result<BenchRow> {
    ensure!(!data.is_empty(), "dataset is empty");
    ensure!(runs >= 3, "runs must be >= 3, got {}", runs);
    let block = encode_block(codec.codec, codec.variant, kernel, false, data)?;

    let mut encode_secs = Vec::with_capacity(runs);
    for _ in 0..runs {
        let t = Instant::now();
        let b = encode_block(codec.codec, codec.variant, kernel, false, data)?;
        encode_secs.push(t.elapsed().as_secs_f64());
        ensure!(b == block, "encode is not deterministic");
    }
    let mut decode_secs = Vec::with_capacity(runs);
    for _ in 0..runs {
        let t = Instant::now();
        let decoded = decode_block_with(&block, kernel)?;
        decode_secs.push(t.elapsed().as_secs_f64());
        if decoded != data {
            bail!(
                "decode mismatch for {} on {}: measurement invalid",
                codec.name(),
                dataset
            );
        }
    }

    let n = data.len();
    let enc_mean = mis(n, encode_secs.iter().sum::<f64>() / runs as f64);
    let dec_mean = mis(n, decode_secs.iter().sum::<f64>() / runs as f64);
    Ok(BenchRow {
        codec: codec.name(),
        variant: codec.variant,
        kernel: kernel_name(kernel).into(),
        dataset: dataset.into(),
        n,
        encoded_bytes: block.len(),
        bits_per_int: 8.0 * block.len() as f64 / n as f64,
        encode_mis: mis(n, median(&mut encode_secs)),
        decode_mis: mis(n, median(&mut decode_secs)),
        runs,
        encode_mis_mean: enc_mean,
        decode_mis_mean: dec_mean,
    })
}
