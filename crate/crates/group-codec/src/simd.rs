//! SSE2 variants of the 4-way vertical pack/unpack primitives. Same layout,
//! byte-identical output; the four 32-bit components move through one XMM
//! register instead of four scalar words.

#![cfg(target_arch = "x86_64")]

use std::arch::x86_64::*;

use crate::bitcore::{width_mask, Vector128};
use crate::error::{CodecError, Result};

#[inline]
fn shift_count(bits: u32) -> __m128i {
    unsafe { _mm_cvtsi32_si128(bits as i32) }
}

#[inline]
fn load_quad(lanes: &[u32; 4]) -> __m128i {
    unsafe { _mm_loadu_si128(lanes.as_ptr() as *const __m128i) }
}

#[inline]
fn store_vector(v: __m128i) -> Vector128 {
    let mut out = Vector128([0; 4]);
    unsafe { _mm_storeu_si128(out.0.as_mut_ptr() as *mut __m128i, v) };
    out
}

/// SSE2 counterpart of [`crate::bitcore::VerticalPacker`].
pub struct SimdPacker {
    vectors: Vec<Vector128>,
    cur: __m128i,
    offset: u32,
}

impl SimdPacker {
    pub fn new() -> Self {
        SimdPacker {
            vectors: Vec::new(),
            cur: unsafe { _mm_setzero_si128() },
            offset: 0,
        }
    }

    #[inline]
    fn flush(&mut self) {
        self.vectors.push(store_vector(self.cur));
        self.cur = unsafe { _mm_setzero_si128() };
    }

    /// Append one quadruple at width `bw`. Lanes must already fit in `bw`
    /// bits; codec callers guarantee this by construction.
    #[inline]
    pub fn push_quad(&mut self, lanes: &[u32; 4], bw: u32) {
        debug_assert!(lanes.iter().all(|&l| u64::from(l) < (1u64 << bw)));
        let q = load_quad(lanes);
        unsafe {
            if self.offset + bw <= 32 {
                self.cur = _mm_or_si128(self.cur, _mm_sll_epi32(q, shift_count(self.offset)));
                self.offset += bw;
                if self.offset == 32 {
                    self.flush();
                    self.offset = 0;
                }
            } else {
                let low_bits = bw - (32 - self.offset);
                let high = _mm_srl_epi32(q, shift_count(low_bits));
                self.cur = _mm_or_si128(self.cur, _mm_sll_epi32(high, shift_count(self.offset)));
                self.flush();
                self.cur = _mm_and_si128(q, _mm_set1_epi32(width_mask(low_bits) as i32));
                self.offset = low_bits;
            }
        }
    }

    pub fn finish(mut self) -> Vec<Vector128> {
        if self.offset > 0 {
            self.flush();
        }
        self.vectors
    }
}

impl Default for SimdPacker {
    fn default() -> Self {
        Self::new()
    }
}

/// SSE2 counterpart of [`crate::bitcore::VerticalUnpacker`].
pub struct SimdUnpacker<'a> {
    vectors: &'a [Vector128],
    idx: usize,
    offset: u32,
}

impl<'a> SimdUnpacker<'a> {
    pub fn new(vectors: &'a [Vector128]) -> Self {
        SimdUnpacker { vectors, idx: 0, offset: 0 }
    }

    #[inline]
    fn vector(&self, idx: usize) -> Result<__m128i> {
        match self.vectors.get(idx) {
            Some(v) => Ok(load_quad(&v.0)),
            None => Err(CodecError::Truncated {
                needed: idx + 1,
                available: self.vectors.len(),
            }),
        }
    }

    /// Read one quadruple at width `bw`, writing the four lanes to `out`.
    #[inline]
    pub fn next_quad(&mut self, bw: u32, out: &mut [u32; 4]) -> Result<()> {
        unsafe {
            let lanes = if self.offset + bw <= 32 {
                let v = self.vector(self.idx)?;
                let mask = _mm_set1_epi32(width_mask(bw) as i32);
                let lanes = _mm_and_si128(_mm_srl_epi32(v, shift_count(self.offset)), mask);
                self.offset += bw;
                if self.offset == 32 {
                    self.idx += 1;
                    self.offset = 0;
                }
                lanes
            } else {
                let low_bits = bw - (32 - self.offset);
                let hi = self.vector(self.idx)?;
                let lo = self.vector(self.idx + 1)?;
                let high = _mm_srl_epi32(hi, shift_count(self.offset));
                let low = _mm_and_si128(lo, _mm_set1_epi32(width_mask(low_bits) as i32));
                let lanes = _mm_or_si128(_mm_sll_epi32(high, shift_count(low_bits)), low);
                self.idx += 1;
                self.offset = low_bits;
                lanes
            };
            _mm_storeu_si128(out.as_mut_ptr() as *mut __m128i, lanes);
        }
        Ok(())
    }
}
