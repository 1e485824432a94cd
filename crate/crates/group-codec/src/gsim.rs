//! Group-Simple codec: 4-bit selectors over 128-bit vectors. Each selector
//! picks a (NUM, BW) pair; one vector holds 4*NUM integers, NUM per 32-bit
//! component, packed LSB-first at positions [i*BW, (i+1)*BW). NUM*BW <= 32,
//! so values never split across vectors.

use crate::bitcore::{pad_to_quads, pseudo_quad_max_array, width_mask, Vector128};
use crate::error::{CodecError, Result};
use crate::kernel::ResolvedKernel;

/// NUM column of the selector table, indexed by SEL.
pub const SELECTOR_NUM: [usize; 10] = [32, 16, 10, 8, 6, 5, 4, 3, 2, 1];
/// BW column of the selector table, indexed by SEL.
pub const SELECTOR_BW: [u32; 10] = [1, 2, 3, 4, 5, 6, 8, 10, 16, 32];

/// (NUM, BW) pair for a selector.
pub fn selector_lookup(sel: u8) -> Result<(usize, u32)> {
    if sel > 9 {
        return Err(CodecError::Malformed(format!("selector {} out of range", sel)));
    }
    Ok((SELECTOR_NUM[sel as usize], SELECTOR_BW[sel as usize]))
}

/// Greedy pattern selection over the quad max array. For each run, the
/// smallest selector whose scan reaches `pos = NUM` or the end of the array
/// wins; the run consumes `pos` entries.
pub fn select_patterns(max_arr: &[u32]) -> Vec<u8> {
    let mut selectors = Vec::new();
    let mut j = 0usize;
    let mut l = max_arr.len();
    while l > 0 {
        let mut chosen = 9u8;
        let mut taken = 1usize;
        for sel in 0..10usize {
            let num = SELECTOR_NUM[sel];
            let mask = width_mask(SELECTOR_BW[sel]);
            let mut pos = 0usize;
            while pos < num.min(l) && max_arr[j + pos] <= mask {
                pos += 1;
            }
            if pos == num || pos == l {
                chosen = sel as u8;
                taken = pos;
                break;
            }
        }
        l -= taken;
        j += taken;
        selectors.push(chosen);
    }
    selectors
}

/// Encode to (control area, data area) payload bytes.
pub fn encode(data: &[u32], kernel: ResolvedKernel) -> Result<(Vec<u8>, Vec<u8>)> {
    if data.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let padded = pad_to_quads(data);
    let maxes = pseudo_quad_max_array(&padded)?;
    let selectors = select_patterns(&maxes);

    // Two selectors per control byte, low nibble first; odd tail high nibble
    // stays zero.
    let mut control = vec![0u8; selectors.len().div_ceil(2)];
    for (i, &sel) in selectors.iter().enumerate() {
        control[i / 2] |= sel << ((i % 2) * 4);
    }

    let total_quads = maxes.len();
    let mut data_area = Vec::with_capacity(selectors.len() * Vector128::BYTES);
    let mut j = 0usize;
    for &sel in &selectors {
        let (num, bw) = selector_lookup(sel)?;
        let take = num.min(total_quads - j);
        let quads = &padded[4 * j..4 * (j + take)];
        let vector = match kernel {
            ResolvedKernel::Scalar => encode_run_scalar(quads, take, bw),
            ResolvedKernel::Vectorized => encode_run_vectorized(quads, take, sel),
        };
        data_area.extend_from_slice(&vector.to_le_bytes());
        j += take;
    }
    Ok((control, data_area))
}

fn encode_run_scalar(quads: &[u32], take: usize, bw: u32) -> Vector128 {
    let mut comp = [0u32; 4];
    for i in 0..take {
        for k in 0..4 {
            debug_assert!(quads[4 * i + k] <= width_mask(bw));
            comp[k] |= quads[4 * i + k] << (i as u32 * bw);
        }
    }
    Vector128(comp)
}

/// Decode exactly `n` integers from the payload areas.
pub fn decode(control: &[u8], data: &[u8], n: usize, kernel: ResolvedKernel) -> Result<Vec<u32>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let vectors = crate::bitcore::bytes_to_vectors(data)?;
    let total_quads = n.div_ceil(4);
    let mut out = vec![0u32; total_quads * 4];
    let mut j = 0usize;
    let mut nibble_idx = 0usize;
    let mut vec_idx = 0usize;
    while j < total_quads {
        let byte = *control.get(nibble_idx / 2).ok_or(CodecError::Truncated {
            needed: nibble_idx / 2 + 1,
            available: control.len(),
        })?;
        let sel = (byte >> ((nibble_idx % 2) * 4)) & 0x0f;
        nibble_idx += 1;
        let (num, bw) = selector_lookup(sel)?;
        let take = num.min(total_quads - j);
        let vector = vectors.get(vec_idx).ok_or(CodecError::Truncated {
            needed: vec_idx + 1,
            available: vectors.len(),
        })?;
        vec_idx += 1;
        match kernel {
            ResolvedKernel::Scalar => decode_run_scalar(vector, &mut out[4 * j..], take, bw),
            ResolvedKernel::Vectorized => {
                decode_run_vectorized(vector, &mut out[4 * j..], take, sel)
            }
        }
        j += take;
    }
    out.truncate(n);
    Ok(out)
}

fn decode_run_scalar(vector: &Vector128, out: &mut [u32], take: usize, bw: u32) {
    let mask = width_mask(bw);
    for i in 0..take {
        for k in 0..4 {
            out[4 * i + k] = (vector.0[k] >> (i as u32 * bw)) & mask;
        }
    }
}

#[cfg(target_arch = "x86_64")]
mod x86 {
    use super::*;
    use std::arch::x86_64::*;

    #[inline]
    fn run_encode<const NUM: usize, const BW: i32>(quads: &[u32], take: usize) -> Vector128 {
        unsafe {
            let mut acc = _mm_setzero_si128();
            // Reverse order so a constant left shift per step lands quad i at
            // bit position i*BW.
            for i in (0..take).rev() {
                let q = _mm_loadu_si128(quads.as_ptr().add(4 * i) as *const __m128i);
                acc = _mm_or_si128(_mm_slli_epi32::<BW>(acc), q);
            }
            let mut out = Vector128([0; 4]);
            _mm_storeu_si128(out.0.as_mut_ptr() as *mut __m128i, acc);
            out
        }
    }

    #[inline]
    fn run_decode<const NUM: usize, const BW: i32>(vector: &Vector128, out: &mut [u32], take: usize) {
        unsafe {
            let mut v = _mm_loadu_si128(vector.0.as_ptr() as *const __m128i);
            let mask = _mm_set1_epi32(width_mask(BW as u32) as i32);
            if take == NUM {
                for i in 0..NUM {
                    let lanes = _mm_and_si128(v, mask);
                    _mm_storeu_si128(out.as_mut_ptr().add(4 * i) as *mut __m128i, lanes);
                    v = _mm_srli_epi32::<BW>(v);
                }
            } else {
                for i in 0..take {
                    let lanes = _mm_and_si128(v, mask);
                    _mm_storeu_si128(out.as_mut_ptr().add(4 * i) as *mut __m128i, lanes);
                    v = _mm_srli_epi32::<BW>(v);
                }
            }
        }
    }

    // 10-way dispatch with one specialized body per selector.
    pub(super) fn encode_run(quads: &[u32], take: usize, sel: u8) -> Vector128 {
        match sel {
            0 => run_encode::<32, 1>(quads, take),
            1 => run_encode::<16, 2>(quads, take),
            2 => run_encode::<10, 3>(quads, take),
            3 => run_encode::<8, 4>(quads, take),
            4 => run_encode::<6, 5>(quads, take),
            5 => run_encode::<5, 6>(quads, take),
            6 => run_encode::<4, 8>(quads, take),
            7 => run_encode::<3, 10>(quads, take),
            8 => run_encode::<2, 16>(quads, take),
            _ => run_encode::<1, 32>(quads, take),
        }
    }

    pub(super) fn decode_run(vector: &Vector128, out: &mut [u32], take: usize, sel: u8) {
        match sel {
            0 => run_decode::<32, 1>(vector, out, take),
            1 => run_decode::<16, 2>(vector, out, take),
            2 => run_decode::<10, 3>(vector, out, take),
            3 => run_decode::<8, 4>(vector, out, take),
            4 => run_decode::<6, 5>(vector, out, take),
            5 => run_decode::<5, 6>(vector, out, take),
            6 => run_decode::<4, 8>(vector, out, take),
            7 => run_decode::<3, 10>(vector, out, take),
            8 => run_decode::<2, 16>(vector, out, take),
            _ => run_decode::<1, 32>(vector, out, take),
        }
    }
}

#[cfg(target_arch = "x86_64")]
fn encode_run_vectorized(quads: &[u32], take: usize, sel: u8) -> Vector128 {
    x86::encode_run(quads, take, sel)
}

#[cfg(target_arch = "x86_64")]
fn decode_run_vectorized(vector: &Vector128, out: &mut [u32], take: usize, sel: u8) {
    x86::decode_run(vector, out, take, sel)
}

#[cfg(not(target_arch = "x86_64"))]
fn encode_run_vectorized(quads: &[u32], take: usize, sel: u8) -> Vector128 {
    encode_run_scalar(quads, take, SELECTOR_BW[sel as usize])
}

#[cfg(not(target_arch = "x86_64"))]
fn decode_run_vectorized(vector: &Vector128, out: &mut [u32], take: usize, sel: u8) {
    decode_run_scalar(vector, out, take, SELECTOR_BW[sel as usize])
}
