//! Cross-codec block properties: round-trip, kernel byte-equality, header
//! integrity, and truncation robustness.

use group_codec::{
    decode_block_with, encode_block, BlockHeader, CodecId, Kernel, SchemeConfig,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_variants() -> Vec<(CodecId, u8)> {
    let mut v = vec![
        (CodecId::VarByte, 0),
        (CodecId::GroupSimple, 0),
        (CodecId::GroupAfor, 0),
        (CodecId::GroupPfd, 0),
    ];
    for cfg in SchemeConfig::all() {
        v.push((CodecId::GroupScheme, cfg.variant_byte()));
    }
    v
}

fn check_roundtrip(codec: CodecId, variant: u8, data: &[u32]) {
    let scalar = encode_block(codec, variant, Kernel::Scalar, false, data).unwrap();
    let vector = encode_block(codec, variant, Kernel::Vectorized, false, data).unwrap();
    assert_eq!(scalar, vector, "kernel byte-equality for {:?}/{}", codec, variant);
    for kernel in [Kernel::Scalar, Kernel::Vectorized] {
        assert_eq!(
            decode_block_with(&scalar, kernel).unwrap(),
            data,
            "round-trip for {:?}/{} via {:?}",
            codec,
            variant,
            kernel
        );
    }
    // Control padding beyond the logical control area is zero.
    let header = BlockHeader::parse(&scalar).unwrap();
    assert_eq!(header.data_offset % 16, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_sequences_roundtrip(
        seed in any::<u64>(),
        len in 0usize..2000,
        bits in 1u32..=32,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mask = if bits == 32 { u32::MAX } else { (1u32 << bits) - 1 };
        let data: Vec<u32> = (0..len).map(|_| rng.r#gen::<u32>() & mask).collect();
        for (codec, variant) in all_variants() {
            check_roundtrip(codec, variant, &data);
        }
    }
}

#[test]
fn adversarial_sequences_roundtrip() {
    let spike = {
        let mut v = vec![0u32; 999];
        v[500] = u32::MAX;
        v
    };
    let cases: Vec<Vec<u32>> = vec![
        vec![],
        vec![0],
        vec![u32::MAX],
        vec![0; 1000],
        vec![u32::MAX; 1000],
        spike,
        (0..137u32).collect(),
    ];
    for data in &cases {
        for (codec, variant) in all_variants() {
            check_roundtrip(codec, variant, data);
        }
    }
}

#[test]
fn truncation_at_every_boundary_errors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let data: Vec<u32> = (0..600).map(|_| rng.r#gen::<u32>() >> (rng.gen_range(0..32))).collect();
    for (codec, variant) in all_variants() {
        let block = encode_block(codec, variant, Kernel::Scalar, false, &data).unwrap();
        for cut in 0..block.len() {
            let r = decode_block_with(&block[..cut], Kernel::Scalar);
            assert!(r.is_err(), "{:?}/{} decoded a {}-byte prefix of {}", codec, variant, cut, block.len());
        }
    }
}

#[test]
fn control_padding_is_zero() {
    // 20 quads of Group-Simple control = 3 nibble bytes, padded to 16.
    let data: Vec<u32> = (0..80u32).map(|i| i % 4).collect();
    let block = encode_block(CodecId::GroupSimple, 0, Kernel::Scalar, false, &data).unwrap();
    let header = BlockHeader::parse(&block).unwrap();
    let control = &block[16..header.data_offset as usize];
    assert!(control.len() >= 2);
    assert!(control[2..].iter().all(|&b| b == 0));
}

#[test]
fn delta_roundtrip_random_increasing() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut docids: Vec<u32> = Vec::with_capacity(3000);
    let mut cur = 0u32;
    for _ in 0..3000 {
        cur += rng.gen_range(1..=200);
        docids.push(cur);
    }
    for (codec, variant) in all_variants() {
        let block = encode_block(codec, variant, Kernel::Auto, true, &docids).unwrap();
        assert!(BlockHeader::parse(&block).unwrap().delta);
        assert_eq!(decode_block_with(&block, Kernel::Auto).unwrap(), docids);
    }
}
