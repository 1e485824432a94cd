//! Bit-level primitives shared by all codecs: effective bit width, quadruple
//! maxima, the d-gap transform, and 4-way vertical pack/unpack of quadruples
//! into 128-bit vectors.
//!
//! Layout rules (fixed for every codec built on top of this module):
//! lane `k` of a quadruple lives only in 32-bit component `k`; within a
//! component bits are consumed LSB-first; all four lanes share one running bit
//! offset. When only `r < bw` bits remain in the current component, the high
//! `r` bits of the value fill the top of the current component and the low
//! `bw - r` bits start the next vector's same component, so the decoder
//! rebuilds `value = (high << (bw - r)) | low`.

use crate::error::{CodecError, Result};

/// A 128-bit vector as four 32-bit components. Component 0 is serialized
/// first, each as a little-endian word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[repr(C, align(16))]
pub struct Vector128(pub [u32; 4]);

impl Vector128 {
    pub const BYTES: usize = 16;

    pub fn to_le_bytes(self) -> [u8; 16] {
        let mut out = [0u8; 16];
        for (k, c) in self.0.iter().enumerate() {
            out[4 * k..4 * k + 4].copy_from_slice(&c.to_le_bytes());
        }
        out
    }

    pub fn from_le_bytes(bytes: &[u8; 16]) -> Self {
        let mut c = [0u32; 4];
        for k in 0..4 {
            c[k] = u32::from_le_bytes(bytes[4 * k..4 * k + 4].try_into().unwrap());
        }
        Vector128(c)
    }
}

/// Serialize a vector stream as contiguous little-endian bytes.
pub fn vectors_to_bytes(vectors: &[Vector128]) -> Vec<u8> {
    let mut out = Vec::with_capacity(vectors.len() * 16);
    for v in vectors {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

/// Parse whole 16-byte vectors. Trailing bytes that do not form a whole
/// vector are a truncation.
pub fn bytes_to_vectors(bytes: &[u8]) -> Result<Vec<Vector128>> {
    if !bytes.len().is_multiple_of(16) {
        return Err(CodecError::Truncated {
            needed: (bytes.len() / 16 + 1) * 16,
            available: bytes.len(),
        });
    }
    Ok(bytes
        .chunks_exact(16)
        .map(|c| Vector128::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

/// Minimum number of bits to represent `x` in binary, clamped to 1 for zero.
#[inline]
pub fn effective_bit_width(x: u32) -> u32 {
    (32 - x.leading_zeros()).max(1)
}

/// All-ones mask of `bw` bits, `bw` in 1..=32.
#[inline]
pub fn width_mask(bw: u32) -> u32 {
    debug_assert!((1..=32).contains(&bw));
    if bw == 32 {
        u32::MAX
    } else {
        (1u32 << bw) - 1
    }
}

fn require_quad_aligned(len: usize) -> Result<()> {
    if !len.is_multiple_of(4) {
        Err(CodecError::NotQuadAligned(len))
    } else {
        Ok(())
    }
}

/// Per-quadruple maxima. Input length must be a multiple of 4.
pub fn quad_max_array(input: &[u32]) -> Result<Vec<u32>> {
    require_quad_aligned(input.len())?;
    Ok(input
        .chunks_exact(4)
        .map(|q| q.iter().copied().max().unwrap())
        .collect())
}

/// OR-based pseudo maxima: not the true maximum, but always the same
/// effective bit width.
pub fn pseudo_quad_max_array(input: &[u32]) -> Result<Vec<u32>> {
    require_quad_aligned(input.len())?;
    Ok(input
        .chunks_exact(4)
        .map(|q| q[0] | q[1] | q[2] | q[3])
        .collect())
}

/// Zero-pad a sequence up to the next multiple of 4.
pub fn pad_to_quads(input: &[u32]) -> Vec<u32> {
    let mut v = input.to_vec();
    let rem = v.len() % 4;
    if rem != 0 {
        v.resize(v.len() + 4 - rem, 0);
    }
    v
}

/// d-gap transform: `out[0] = in[0]`, `out[i] = in[i] - in[i-1]`.
/// Input must be strictly increasing.
pub fn delta_encode(docids: &[u32]) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(docids.len());
    let mut prev = None;
    for (i, &d) in docids.iter().enumerate() {
        match prev {
            None => out.push(d),
            Some(p) => {
                if d <= p {
                    return Err(CodecError::NotIncreasing { index: i });
                }
                out.push(d - p);
            }
        }
        prev = Some(d);
    }
    Ok(out)
}

/// Inverse of [`delta_encode`]: running prefix sums, checked against 32-bit
/// overflow.
pub fn delta_decode(gaps: &[u32]) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(gaps.len());
    let mut acc: u32 = 0;
    for (i, &g) in gaps.iter().enumerate() {
        if i == 0 {
            acc = g;
        } else {
            acc = acc
                .checked_add(g)
                .ok_or(CodecError::Overflow { index: i })?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Incremental 4-way vertical bit packer. Quadruples may use different bit
/// widths; all four lanes share one running offset and values split across
/// vector boundaries high-bits-first.
#[derive(Debug, Clone)]
pub struct VerticalPacker {
    vectors: Vec<Vector128>,
    cur: [u32; 4],
    offset: u32,
}

impl Default for VerticalPacker {
    fn default() -> Self {
        Self::new()
    }
}

impl VerticalPacker {
    pub fn new() -> Self {
        VerticalPacker { vectors: Vec::new(), cur: [0; 4], offset: 0 }
    }

    fn flush(&mut self) {
        self.vectors.push(Vector128(self.cur));
        self.cur = [0; 4];
    }

    /// Append one quadruple at width `bw` (1..=32). Every lane must fit.
    pub fn push_quad(&mut self, lanes: [u32; 4], bw: u32) -> Result<()> {
        debug_assert!((1..=32).contains(&bw));
        let mask = width_mask(bw);
        for &lane in &lanes {
            if lane > mask {
                return Err(CodecError::LaneTooWide { value: lane, bit_width: bw });
            }
        }
        if self.offset + bw <= 32 {
            for k in 0..4 {
                self.cur[k] |= lanes[k] << self.offset;
            }
            self.offset += bw;
            if self.offset == 32 {
                self.flush();
                self.offset = 0;
            }
        } else {
            // Split: high r bits top off the current component, low bw-r bits
            // start the next vector.
            let r = 32 - self.offset;
            let low_bits = bw - r;
            for k in 0..4 {
                self.cur[k] |= (lanes[k] >> low_bits) << self.offset;
            }
            self.flush();
            for k in 0..4 {
                self.cur[k] = lanes[k] & width_mask(low_bits);
            }
            self.offset = low_bits;
        }
        Ok(())
    }

    /// Total bits consumed per component so far.
    pub fn bit_position(&self) -> usize {
        self.vectors.len() * 32 + self.offset as usize
    }

    /// Finish the stream, zero-padding the final partial vector.
    pub fn finish(mut self) -> Vec<Vector128> {
        if self.offset > 0 {
            self.flush();
        }
        self.vectors
    }
}

/// Streaming inverse of [`VerticalPacker`].
#[derive(Debug, Clone)]
pub struct VerticalUnpacker<'a> {
    vectors: &'a [Vector128],
    idx: usize,
    offset: u32,
}

impl<'a> VerticalUnpacker<'a> {
    pub fn new(vectors: &'a [Vector128]) -> Self {
        VerticalUnpacker { vectors, idx: 0, offset: 0 }
    }

    fn vector(&self, idx: usize) -> Result<&Vector128> {
        self.vectors.get(idx).ok_or(CodecError::Truncated {
            needed: idx + 1,
            available: self.vectors.len(),
        })
    }

    /// Read one quadruple at width `bw`.
    pub fn next_quad(&mut self, bw: u32) -> Result<[u32; 4]> {
        debug_assert!((1..=32).contains(&bw));
        let mut lanes = [0u32; 4];
        if self.offset + bw <= 32 {
            let v = self.vector(self.idx)?;
            let mask = width_mask(bw);
            for k in 0..4 {
                lanes[k] = (v.0[k] >> self.offset) & mask;
            }
            self.offset += bw;
            if self.offset == 32 {
                self.idx += 1;
                self.offset = 0;
            }
        } else {
            let r = 32 - self.offset;
            let low_bits = bw - r;
            let hi = *self.vector(self.idx)?;
            let lo = *self.vector(self.idx + 1)?;
            for k in 0..4 {
                let high = hi.0[k] >> self.offset;
                let low = lo.0[k] & width_mask(low_bits);
                lanes[k] = (high << low_bits) | low;
            }
            self.idx += 1;
            self.offset = low_bits;
        }
        Ok(lanes)
    }

    /// Number of whole vectors consumed (a partially read vector counts).
    pub fn vectors_consumed(&self) -> usize {
        if self.offset > 0 {
            self.idx + 1
        } else {
            self.idx
        }
    }
}

/// Pack `quads` at a single width `bw` into a fresh vector stream.
pub fn pack_vertical(quads: &[[u32; 4]], bw: u32) -> Result<Vec<Vector128>> {
    let mut packer = VerticalPacker::new();
    for &q in quads {
        packer.push_quad(q, bw)?;
    }
    Ok(packer.finish())
}

/// Inverse of [`pack_vertical`] for the same `(bw, count)`.
pub fn unpack_vertical(stream: &[Vector128], bw: u32, count: usize) -> Result<Vec<[u32; 4]>> {
    let needed = (count * bw as usize).div_ceil(32);
    if stream.len() < needed {
        return Err(CodecError::Truncated { needed, available: stream.len() });
    }
    let mut unpacker = VerticalUnpacker::new(stream);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(unpacker.next_quad(bw)?);
    }
    Ok(out)
}
