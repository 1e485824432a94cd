//! Acceptance gate: one test per criterion, each emitting one PASS/FAIL
//! line (visible with `--nocapture`). Oracles here are independent
//! transcriptions of the definitions, not calls back into the library code
//! under test.

use gbench::gen::{gen_docid_gaps, gen_uniform};
use gbench::names::all_codecs;
use group_codec::bitcore::{effective_bit_width, pseudo_quad_max_array, quad_max_array};
use group_codec::gframe::{afor_partition, pfd_choose_width};
use group_codec::gscheme::{decode_control_packed, encode_control, SchemeConfig};
use group_codec::gsim::select_patterns;
use group_codec::{
    decode_block_with, encode_block, BlockHeader, CodecId, Kernel, LdKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn report(name: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("{}: {} — {}", verdict, name, detail);
    assert!(ok, "{}: {}", name, detail);
}

/// Deterministic sequence with a randomized shape, used by the round-trip
/// and kernel-equivalence corpora.
fn corpus_case(seed: u64, index: usize) -> Vec<u32> {
    if index == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add((index as u64).wrapping_mul(0x9e3779b97f4a7c15)));
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

const CORPUS_CASES: usize = 1000;

#[test]
fn round_trip_suite() {
    let start = Instant::now();
    let codecs = all_codecs();
    let mut failures = 0usize;
    for index in 0..CORPUS_CASES {
        let data = corpus_case(0xC0FFEE, index);
        for c in &codecs {
            for kernel in [Kernel::Scalar, Kernel::Vectorized] {
                let block = encode_block(c.codec, c.variant, kernel, false, &data).unwrap();
                if decode_block_with(&block, kernel).unwrap() != data {
                    failures += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        "round-trip suite",
        failures == 0 && secs < 120.0,
        &format!(
            "{} variants x 2 kernels x {} cases, {} failures, {:.1}s (budget 120s)",
            codecs.len(),
            CORPUS_CASES,
            failures,
            secs
        ),
    );
}

#[test]
fn kernel_equivalence() {
    let codecs = all_codecs();
    let mut mismatches = 0usize;
    for index in 0..CORPUS_CASES {
        let data = corpus_case(0xBEEF, index);
        for c in &codecs {
            let scalar = encode_block(c.codec, c.variant, Kernel::Scalar, false, &data).unwrap();
            let vector =
                encode_block(c.codec, c.variant, Kernel::Vectorized, false, &data).unwrap();
            if scalar != vector {
                mismatches += 1;
                continue;
            }
            if decode_block_with(&scalar, Kernel::Scalar).unwrap()
                != decode_block_with(&scalar, Kernel::Vectorized).unwrap()
            {
                mismatches += 1;
            }
        }
    }
    report(
        "kernel equivalence",
        mismatches == 0,
        &format!("{} cases x {} variants, {} mismatches", CORPUS_CASES, codecs.len(), mismatches),
    );
}

/// Independent transcription of the greedy selector scan: for each run,
/// take the first (NUM, BW) row whose width bound covers either NUM quads
/// or everything that remains.
fn greedy_oracle(max_arr: &[u32]) -> Vec<u8> {
    const NUM: [usize; 10] = [32, 16, 10, 8, 6, 5, 4, 3, 2, 1];
    const BW: [u32; 10] = [1, 2, 3, 4, 5, 6, 8, 10, 16, 32];
    let mut out = Vec::new();
    let mut j = 0usize;
    while j < max_arr.len() {
        let remaining = max_arr.len() - j;
        let mut chosen = 9usize;
        for s in 0..10 {
            let l = NUM[s];
            let mask: u64 = (1u64 << BW[s]) - 1;
            let mut pos = 0usize;
            while pos < remaining.min(l) && u64::from(max_arr[j + pos]) <= mask {
                pos += 1;
            }
            if pos == remaining || pos == l {
                chosen = s;
                break;
            }
        }
        out.push(chosen as u8);
        j += NUM[chosen].min(remaining);
    }
    out
}

fn random_max_array(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<u32> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let w = rng.gen_range(1..=32u32);
            let top = if w == 32 { u32::MAX } else { (1u32 << w) - 1 };
            rng.gen_range(0..=top)
        })
        .collect()
}

#[test]
fn greedy_selector_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    let mut mismatches = 0usize;
    for _ in 0..100_000 {
        let max_arr = random_max_array(&mut rng, 80);
        if select_patterns(&max_arr) != greedy_oracle(&max_arr) {
            mismatches += 1;
        }
    }
    let worked = select_patterns(&[1; 32]) == vec![0]
        && select_patterns(&[63; 5]) == vec![5]
        && select_patterns(&[1, 1, 1, 70]) == vec![6];
    report(
        "greedy selector oracle",
        mismatches == 0 && worked,
        &format!("10^5 arrays, {} mismatches; worked examples {}", mismatches, worked),
    );
}

#[test]
fn pseudo_quad_max_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut mismatches = 0usize;
    for _ in 0..100_000 {
        let quads = rng.gen_range(0..=32usize);
        let data: Vec<u32> = (0..quads * 4)
            .map(|_| {
                let w = rng.gen_range(1..=32u32);
                let top = if w == 32 { u32::MAX } else { (1u32 << w) - 1 };
                rng.gen_range(0..=top)
            })
            .collect();
        let true_max = quad_max_array(&data).unwrap();
        let pseudo = pseudo_quad_max_array(&data).unwrap();
        if select_patterns(&true_max) != select_patterns(&pseudo) {
            mismatches += 1;
        }
    }
    report(
        "pseudo quad max equivalence",
        mismatches == 0,
        &format!("10^5 inputs, {} selector mismatches", mismatches),
    );
}

/// Naive MSB-first bit reader over a byte slice.
struct NaiveBits<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> NaiveBits<'a> {
    fn next(&mut self) -> Option<bool> {
        let byte = *self.bytes.get(self.pos / 8)?;
        let bit = byte & (1 << (7 - (self.pos % 8) as u32)) != 0;
        self.pos += 1;
        Some(bit)
    }
}

/// Naive unary decode of a full stream: returns the complete LDs found (a
/// trailing ones-run with no terminating zero is dropped), or Err at the
/// first LD exceeding `max`. `byte_confined` stops runs at byte borders.
fn naive_unary(bytes: &[u8], max: u32, byte_confined: bool) -> Result<Vec<u32>, usize> {
    let mut r = NaiveBits { bytes, pos: 0 };
    let mut out = Vec::new();
    let mut ones = 0u32;
    while let Some(bit) = r.next() {
        if bit {
            ones += 1;
        } else {
            let ld = ones + 1;
            if ld > max {
                return Err(out.len());
            }
            out.push(ld);
            ones = 0;
        }
        if byte_confined && r.pos % 8 == 0 {
            ones = 0; // anything unterminated at a byte border is padding
        }
    }
    Ok(out)
}

/// Naive binary-field extraction for every stored-LD layout.
fn naive_binary(bytes: &[u8], cfg: SchemeConfig) -> Vec<u32> {
    let mut out = Vec::new();
    match cfg.cg() {
        1 => {
            for unit in bytes.chunks_exact(2) {
                let v = u16::from_le_bytes([unit[0], unit[1]]);
                for i in 0..3 {
                    out.push(u32::from((v >> (5 * i)) & 0x1f));
                }
            }
        }
        2 => {
            for &b in bytes {
                out.push(u32::from(b & 0x0f));
                out.push(u32::from(b >> 4));
            }
        }
        4 => {
            for &b in bytes {
                out.push(u32::from(b & 0x07));
                out.push(u32::from((b >> 3) & 0x07));
            }
        }
        _ => {
            for &b in bytes {
                for i in 0..4 {
                    out.push(u32::from((b >> (2 * i)) & 0x03));
                }
            }
        }
    }
    out
}

/// Prefix whose unary decode ends in exactly `carry` unterminated ones,
/// preceded by width-1 LDs.
fn carry_prefix(carry: u32) -> Vec<u8> {
    let mut bytes = vec![(1u8 << (carry % 8)) - 1];
    bytes.extend(std::iter::repeat_n(0xFF, (carry / 8) as usize));
    bytes
}

#[test]
fn length_descriptor_decode_oracle() {
    let mut checked = 0usize;
    let mut mismatches = 0usize;

    // Complete unary: every byte value after every possible carry-in 0..31.
    for cfg in SchemeConfig::all().into_iter().filter(|c| c.kind() == LdKind::CompleteUnary) {
        let max = 32 / cfg.cg();
        for carry in 0..32u32 {
            let prefix = carry_prefix(carry);
            for b in 0..=255u8 {
                let mut stream = prefix.clone();
                stream.push(b);
                checked += 1;
                match naive_unary(&stream, max, false) {
                    Ok(lds) => {
                        if decode_control_packed(&stream, lds.len(), cfg).as_deref() != Ok(&lds[..]) {
                            mismatches += 1;
                        }
                        // Asking for one more must fail, never fabricate.
                        if decode_control_packed(&stream, lds.len() + 1, cfg).is_ok() {
                            mismatches += 1;
                        }
                    }
                    Err(valid) => {
                        if decode_control_packed(&stream, valid + 1, cfg).is_ok() {
                            mismatches += 1;
                        }
                    }
                }
            }
        }
    }

    // Incomplete unary: exhaustive over all two-byte streams.
    for cfg in SchemeConfig::all().into_iter().filter(|c| c.kind() == LdKind::IncompleteUnary) {
        let max = 32 / cfg.cg();
        for v in 0..=0xFFFFu16 {
            let stream = v.to_be_bytes();
            checked += 1;
            match naive_unary(&stream, max, true) {
                Ok(lds) => {
                    if decode_control_packed(&stream, lds.len(), cfg).as_deref() != Ok(&lds[..]) {
                        mismatches += 1;
                    }
                    if decode_control_packed(&stream, lds.len() + 1, cfg).is_ok() {
                        mismatches += 1;
                    }
                }
                Err(valid) => {
                    if decode_control_packed(&stream, valid + 1, cfg).is_ok() {
                        mismatches += 1;
                    }
                }
            }
        }
    }

    // Binary: exhaustive over every alignment unit.
    for cfg in SchemeConfig::all().into_iter().filter(|c| c.kind() == LdKind::Binary) {
        if cfg.cg() == 1 {
            for v in 0..=0xFFFFu16 {
                let stream = v.to_le_bytes();
                let lds: Vec<u32> =
                    naive_binary(&stream, cfg).into_iter().take(3).collect();
                checked += 1;
                if decode_control_packed(&stream, 3, cfg).as_deref() != Ok(&lds[..]) {
                    mismatches += 1;
                }
            }
        } else {
            let per_byte = if cfg.cg() == 8 { 4 } else { 2 };
            for b in 0..=255u8 {
                let stream = [b];
                let lds: Vec<u32> =
                    naive_binary(&stream, cfg).into_iter().take(per_byte).collect();
                checked += 1;
                if decode_control_packed(&stream, per_byte, cfg).as_deref() != Ok(&lds[..]) {
                    mismatches += 1;
                }
            }
        }
        // Encode side: fields round-trip through the packed layout.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let top = (1u32 << (5 - cfg.cg().trailing_zeros())) - 1;
            let lds: Vec<u32> =
                (0..rng.gen_range(0..50)).map(|_| rng.gen_range(0..=top)).collect();
            let control = encode_control(&lds, cfg);
            checked += 1;
            if naive_binary(&control, cfg)[..lds.len()] != lds[..] {
                mismatches += 1;
            }
        }
    }

    report(
        "length-descriptor decode oracle",
        mismatches == 0,
        &format!("{} exhaustive cases, {} mismatches", checked, mismatches),
    );
}

/// Exhaustive tiling oracle: minimum cost over every way to tile `len`
/// padded quads with frames of 8, 16, or 32.
fn tiling_oracle(widths: &[u32]) -> u64 {
    fn best(widths: &[u32], i: usize) -> u64 {
        if i == widths.len() {
            return 0;
        }
        let mut m = u64::MAX;
        for fl in [8usize, 16, 32] {
            if i + fl > widths.len() {
                continue;
            }
            let bw = *widths[i..i + fl].iter().max().unwrap() as u64;
            let cost = 8 + 128 * (fl as u64 * bw).div_ceil(32);
            m = m.min(cost + best(widths, i + fl));
        }
        m
    }
    best(widths, 0)
}

#[test]
fn adaptive_frame_partition_optimality() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut mismatches = 0usize;
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=24usize);
        let maxes: Vec<u32> = (0..len)
            .map(|_| {
                let w = rng.gen_range(1..=32u32);
                if w == 32 { u32::MAX } else { (1u32 << w) - 1 }
            })
            .collect();
        // Oracle works on the zero-padded width profile.
        let padded = len.div_ceil(8) * 8;
        let mut widths: Vec<u32> = maxes.iter().map(|&m| effective_bit_width(m)).collect();
        widths.resize(padded, 1);
        let (frames, cost) = afor_partition(&maxes);
        let tiles: usize = frames.iter().map(|f| f.len_quads).sum();
        if cost != tiling_oracle(&widths) || tiles != padded {
            mismatches += 1;
        }
    }
    report(
        "adaptive frame partition optimality",
        mismatches == 0,
        &format!("10^4 profiles of length <= 24, {} non-optimal", mismatches),
    );
}

#[test]
fn patched_frame_width_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let mut mismatches = 0usize;
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=32usize);
        let maxes: Vec<u32> = (0..len)
            .map(|_| {
                let w = rng.gen_range(1..=32u32);
                let top = if w == 32 { u32::MAX } else { (1u32 << w) - 1 };
                rng.gen_range(0..=top)
            })
            .collect();
        let zeta = rng.gen_range(0.01..0.5);
        let (b, exceptions) = pfd_choose_width(&maxes, zeta);

        // Linear-scan oracle over b = 1..32.
        let widths: Vec<u32> = maxes.iter().map(|&m| effective_bit_width(m)).collect();
        let oracle_b = (1..=32u32)
            .find(|&cand| {
                widths.iter().filter(|&&w| w > cand).count() as f64 / len as f64 <= zeta
            })
            .unwrap();
        let oracle_exc: Vec<usize> =
            (0..len).filter(|&i| widths[i] > oracle_b).collect();

        let ratio = exceptions.len() as f64 / len as f64;
        if b != oracle_b || exceptions != oracle_exc || ratio > zeta {
            mismatches += 1;
        }
    }

    // Two-value quad: with b = 8, 70000 (17 bits) and 300 (9 bits) are both
    // individually flagged.
    let mut data = vec![200u32; 126];
    data.insert(40, 70_000);
    data.insert(41, 300);
    let block = encode_block(CodecId::GroupPfd, 0, Kernel::Scalar, false, &data).unwrap();
    let control = &block[16..];
    let example_ok = control[0] == 8
        && control[1] == 3
        && u16::from_le_bytes([control[2], control[3]]) == 2
        && control[4] == 40
        && control[5] == 41
        && decode_block_with(&block, Kernel::Scalar).unwrap() == data;

    report(
        "patched-frame width rule",
        mismatches == 0 && example_ok,
        &format!("10^4 frames, {} oracle mismatches; two-value-quad example {}", mismatches, example_ok),
    );
}

#[test]
fn analytic_size_checks() {
    // 12800 ones: 100 selector-0 runs -> 50 control bytes padded to 64,
    // 100 data vectors; total 16 + 64 + 1600 bytes.
    let ones = vec![1u32; 12_800];
    let block = encode_block(CodecId::GroupSimple, 0, Kernel::Scalar, false, &ones).unwrap();
    let bits_per_int = 8.0 * block.len() as f64 / ones.len() as f64;
    let gsim_ok = (bits_per_int - 1.04).abs() <= 0.02;

    // Per-frame patched-frame size: 32 + count*(8+w) + 128*b bits, exact.
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut pfd_ok = true;
    for _ in 0..200 {
        let frames = rng.gen_range(1..=4usize);
        let data: Vec<u32> = (0..frames * 128)
            .map(|_| {
                if rng.gen_bool(0.05) {
                    rng.r#gen::<u32>()
                } else {
                    rng.gen_range(0..64)
                }
            })
            .collect();
        let block = encode_block(CodecId::GroupPfd, 0, Kernel::Scalar, false, &data).unwrap();
        let header = BlockHeader::parse(&block).unwrap();
        let mut control = &block[16..header.data_offset as usize];
        let mut expected_bits = 0u64;
        for _ in 0..frames {
            let b = u64::from(control[0]);
            let w = match control[1] {
                0 => 0u64,
                1 => 8,
                2 => 16,
                _ => 32,
            };
            let count = u64::from(u16::from_le_bytes([control[2], control[3]]));
            expected_bits += 32 + count * (8 + w) + 128 * b;
            control = &control[(4 + count + count * w / 8) as usize..];
        }
        // Logical bytes exclude the control padding: consumed control
        // records plus the whole data area.
        let logical_bytes =
            (header.data_offset as usize - 16 - control.len()) + (block.len() - header.data_offset as usize);
        if expected_bits != 8 * logical_bytes as u64 {
            pfd_ok = false;
        }
    }

    report(
        "analytic size checks",
        gsim_ok && pfd_ok,
        &format!("12800 ones -> {:.4} bits/int (1.04±0.02); per-frame size formula exact: {}", bits_per_int, pfd_ok),
    );
}

#[test]
fn compression_ratio_trend_across_cg() {
    let data = gen_docid_gaps(1 << 20, 0.05, 2024).unwrap();
    let bits = |cg: u32, kind: LdKind| -> f64 {
        let cfg = SchemeConfig::new(cg, kind).unwrap();
        let block =
            encode_block(CodecId::GroupScheme, cfg.variant_byte(), Kernel::Auto, false, &data)
                .unwrap();
        8.0 * block.len() as f64 / data.len() as f64
    };
    let chains: Vec<(&str, Vec<f64>)> = vec![
        ("binary", [1, 2, 4, 8].iter().map(|&cg| bits(cg, LdKind::Binary)).collect()),
        ("complete-unary", [1, 2, 4, 8].iter().map(|&cg| bits(cg, LdKind::CompleteUnary)).collect()),
        ("incomplete-unary", [4, 8].iter().map(|&cg| bits(cg, LdKind::IncompleteUnary)).collect()),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (name, chain) in &chains {
        let monotone = chain.windows(2).all(|w| w[1] >= w[0]);
        ok &= monotone;
        detail.push_str(&format!(
            "{} {:?} non-decreasing={}; ",
            name,
            chain.iter().map(|b| (b * 1e4).round() / 1e4).collect::<Vec<_>>(),
            monotone
        ));
    }
    report("compression-ratio trend across CG", ok, detail.trim_end());
}

#[test]
fn vectorized_decode_throughput() {
    let start = Instant::now();
    let data = gen_uniform(1 << 24, 8, 55).unwrap();
    let mut detail = String::new();
    let mut ok = true;
    let mut warn = false;
    let gsc8iu = SchemeConfig::new(8, LdKind::IncompleteUnary).unwrap().variant_byte();
    for (name, codec, variant) in [
        ("gsim", CodecId::GroupSimple, 0u8),
        ("gsc-8-iu", CodecId::GroupScheme, gsc8iu),
    ] {
        let block = encode_block(codec, variant, Kernel::Scalar, false, &data).unwrap();
        let time_decode = |kernel: Kernel| -> f64 {
            let mut secs = [0f64; 5];
            for s in secs.iter_mut() {
                let t = Instant::now();
                let out = decode_block_with(&block, kernel).unwrap();
                *s = t.elapsed().as_secs_f64();
                assert_eq!(out.len(), data.len());
            }
            secs.sort_by(|a, b| a.total_cmp(b));
            secs[2]
        };
        let scalar = time_decode(Kernel::Scalar);
        let vector = time_decode(Kernel::Vectorized);
        let ratio = scalar / vector;
        detail.push_str(&format!("{} vector/scalar = {:.2}x; ", name, ratio));
        if ratio < 0.8 {
            ok = false;
        } else if ratio < 1.0 {
            warn = true;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    if warn {
        detail.push_str("WARNING: below 1.0x but above the 0.8x floor; ");
    }
    detail.push_str(&format!("{:.1}s (budget 60s)", secs));
    report("vectorized decode throughput", ok, &detail);
}
