//! Round-trip verification across every codec variant and both kernels.

use crate::gen::{gen_docid_gaps, gen_uniform};
use crate::names::{all_codecs, NamedCodec};
use group_codec::{decode_block_with, encode_block, Kernel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Failure {
    pub codec: String,
    pub case_seed: u64,
    pub len: usize,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub cases: usize,
    pub variants: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

/// One deterministic case per (seed, index): mixes uniform, geometric-gap,
/// and adversarial shapes. Index 0 is always the empty sequence.
fn make_case(seed: u64, index: usize) -> Vec<u32> {
    if index == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let len = rng.gen_range(0..=10_000);
    match index % 5 {
        0 => vec![0u32; len],
        1 => vec![u32::MAX; len],
        2 => {
            let mut v = vec![0u32; len];
            if len > 0 {
                let at = rng.gen_range(0..len);
                v[at] = u32::MAX;
            }
            v
        }
        3 => gen_docid_gaps(len, 0.05, rng.r#gen()).unwrap(),
        _ => gen_uniform(len, rng.gen_range(1..=32), rng.r#gen()).unwrap(),
    }
}

fn check_case(codec: NamedCodec, data: &[u32], case_seed: u64) -> Result<(), Failure> {
    let fail = |detail: String| Failure {
        codec: codec.name(),
        case_seed,
        len: data.len(),
        detail,
    };
    let scalar = encode_block(codec.codec, codec.variant, Kernel::Scalar, false, data)
        .map_err(|e| fail(format!("scalar encode: {}", e)))?;
    let vector = encode_block(codec.codec, codec.variant, Kernel::Vectorized, false, data)
        .map_err(|e| fail(format!("vector encode: {}", e)))?;
    if scalar != vector {
        return Err(fail("scalar and vectorized encodings differ".into()));
    }
    for kernel in [Kernel::Scalar, Kernel::Vectorized] {
        let decoded = decode_block_with(&scalar, kernel)
            .map_err(|e| fail(format!("{:?} decode: {}", kernel, e)))?;
        if decoded != data {
            return Err(fail(format!("{:?} decode output differs", kernel)));
        }
    }
    Ok(())
}

pub fn verify_roundtrip(codecs: &[NamedCodec], cases: usize, seed: u64) -> VerifyReport {
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for index in 0..cases {
        let data = make_case(seed, index);
        for &codec in codecs {
            checks += 1;
            if let Err(f) = check_case(codec, &data, seed ^ index as u64) {
                failures.push(f);
            }
        }
    }
    VerifyReport { cases, variants: codecs.len(), checks, failures }
}

pub fn verify_all(cases: usize, seed: u64) -> VerifyReport {
    verify_roundtrip(&all_codecs(), cases, seed)
}
