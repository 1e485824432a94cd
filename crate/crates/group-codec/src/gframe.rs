//! Frame-based codecs.
//!
//! Group-AFOR partitions the quad max array into frames of 8, 16 or 32
//! quadruples by dynamic programming, each packed at the frame's maximum
//! effective width. Group-PFD uses fixed 32-quad (128-integer) frames with
//! a width chosen so the exception ratio stays under a threshold; wider
//! integers are stored out-of-band and patched back in at decode.

use crate::bitcore::{
    bytes_to_vectors, effective_bit_width, pad_to_quads, pseudo_quad_max_array, vectors_to_bytes,
    width_mask, Vector128, VerticalPacker, VerticalUnpacker,
};
use crate::error::{CodecError, Result};
use crate::kernel::ResolvedKernel;

/// Frame lengths available to Group-AFOR, in quadruples.
pub const AFOR_FRAME_LENS: [usize; 3] = [8, 16, 32];

/// Group-PFD frame length in integers (32 quadruples).
pub const PFD_FRAME_INTS: usize = 128;
const PFD_FRAME_QUADS: usize = PFD_FRAME_INTS / 4;

/// One AFOR frame: a run of quadruples sharing a bit width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frame {
    pub len_quads: usize,
    pub bw: u32,
}

/// Cost in bits of one frame: 8 header bits plus whole 128-bit vectors.
fn frame_cost_bits(len_quads: usize, bw: u32) -> u64 {
    8 + 128 * (len_quads as u64 * u64::from(bw)).div_ceil(32)
}

/// Optimal tiling of the quad max array into {8,16,32}-quad frames,
/// minimizing total header+data bits. A tail shorter than 8 quads is
/// treated as zero-padded to complete the final frame. Returns the frames
/// and the minimal cost in bits.
pub fn afor_partition(max_arr: &[u32]) -> (Vec<Frame>, u64) {
    if max_arr.is_empty() {
        return (Vec::new(), 0);
    }
    let len = max_arr.len().div_ceil(8) * 8;
    let width_at = |i: usize| -> u32 {
        if i < max_arr.len() {
            effective_bit_width(max_arr[i])
        } else {
            1 // zero padding
        }
    };

    // cost[i]: minimal bits to encode entries i..len; choice[i]: frame length
    // taken at i.
    let mut cost = vec![u64::MAX; len + 1];
    let mut choice = vec![0usize; len];
    cost[len] = 0;
    for i in (0..len).rev() {
        let mut running_max = 0u32;
        let mut scanned = 0usize;
        for &fl in &AFOR_FRAME_LENS {
            if i + fl > len || cost[i + fl] == u64::MAX {
                break;
            }
            while scanned < fl {
                running_max = running_max.max(width_at(i + scanned));
                scanned += 1;
            }
            let c = frame_cost_bits(fl, running_max) + cost[i + fl];
            if c < cost[i] {
                cost[i] = c;
                choice[i] = fl;
            }
        }
    }

    let mut frames = Vec::new();
    let mut i = 0usize;
    while i < len {
        let fl = choice[i];
        let bw = (i..i + fl).map(width_at).max().unwrap();
        frames.push(Frame { len_quads: fl, bw });
        i += fl;
    }
    (frames, cost[0])
}

/// Encode to (control area, data area) payload bytes.
pub fn afor_encode(data: &[u32], kernel: ResolvedKernel) -> Result<(Vec<u8>, Vec<u8>)> {
    if data.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut padded = pad_to_quads(data);
    let mut maxes = pseudo_quad_max_array(&padded)?;
    let full = maxes.len().div_ceil(8) * 8;
    maxes.resize(full, 0);
    padded.resize(full * 4, 0);

    let (frames, _) = afor_partition(&maxes);
    let mut control = Vec::with_capacity(frames.len());
    let mut data_area = Vec::new();
    let mut q = 0usize;
    for f in &frames {
        let len_code = match f.len_quads {
            8 => 0u8,
            16 => 1,
            _ => 2,
        };
        control.push(len_code | (((f.bw - 1) as u8) << 2));
        let quads = &padded[4 * q..4 * (q + f.len_quads)];
        let vectors = pack_frame(quads, f.bw, kernel);
        data_area.extend_from_slice(&vectors_to_bytes(&vectors));
        q += f.len_quads;
    }
    Ok((control, data_area))
}

fn pack_frame(quads: &[u32], bw: u32, kernel: ResolvedKernel) -> Vec<Vector128> {
    #[cfg(target_arch = "x86_64")]
    if kernel == ResolvedKernel::Vectorized {
        let mut packer = crate::simd::SimdPacker::new();
        for quad in quads.chunks_exact(4) {
            packer.push_quad(quad.try_into().unwrap(), bw);
        }
        return packer.finish();
    }
    let _ = kernel;
    let mut packer = VerticalPacker::new();
    for quad in quads.chunks_exact(4) {
        packer
            .push_quad([quad[0], quad[1], quad[2], quad[3]], bw)
            .expect("frame width covers its quadruples");
    }
    packer.finish()
}

fn unpack_frame(
    vectors: &[Vector128],
    quads: usize,
    bw: u32,
    kernel: ResolvedKernel,
    out: &mut Vec<u32>,
) -> Result<()> {
    let needed = (quads * bw as usize).div_ceil(32);
    if vectors.len() < needed {
        return Err(CodecError::Truncated { needed, available: vectors.len() });
    }
    #[cfg(target_arch = "x86_64")]
    if kernel == ResolvedKernel::Vectorized {
        let mut unpacker = crate::simd::SimdUnpacker::new(vectors);
        let mut lanes = [0u32; 4];
        for _ in 0..quads {
            unpacker.next_quad(bw, &mut lanes)?;
            out.extend_from_slice(&lanes);
        }
        return Ok(());
    }
    let _ = kernel;
    let mut unpacker = VerticalUnpacker::new(vectors);
    for _ in 0..quads {
        out.extend_from_slice(&unpacker.next_quad(bw)?);
    }
    Ok(())
}

/// Decode exactly `n` integers from the payload areas.
pub fn afor_decode(control: &[u8], data: &[u8], n: usize, kernel: ResolvedKernel) -> Result<Vec<u32>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let vectors = bytes_to_vectors(data)?;
    let total_quads = n.div_ceil(4).div_ceil(8) * 8;
    let mut out = Vec::with_capacity(total_quads * 4);
    let mut q = 0usize;
    let mut vec_pos = 0usize;
    let mut header_idx = 0usize;
    while q < total_quads {
        let byte = *control.get(header_idx).ok_or(CodecError::Truncated {
            needed: header_idx + 1,
            available: control.len(),
        })?;
        header_idx += 1;
        if byte & 0x80 != 0 {
            return Err(CodecError::Malformed(format!(
                "frame header reserved bit set: {:#04x}",
                byte
            )));
        }
        let len_quads = match byte & 0x03 {
            0 => 8,
            1 => 16,
            2 => 32,
            _ => {
                return Err(CodecError::Malformed("frame length code 3".into()));
            }
        };
        let bw = u32::from((byte >> 2) & 0x1f) + 1;
        if q + len_quads > total_quads {
            return Err(CodecError::Malformed(format!(
                "frame of {} quads overshoots {} total",
                len_quads, total_quads
            )));
        }
        let used = (len_quads * bw as usize).div_ceil(32);
        unpack_frame(&vectors[vec_pos.min(vectors.len())..], len_quads, bw, kernel, &mut out)?;
        vec_pos += used;
        q += len_quads;
    }
    out.truncate(n);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Group-PFD
// ---------------------------------------------------------------------------

/// Exception-ratio threshold for Group-PFD width selection.
#[derive(Debug, Clone, Copy)]
pub struct PfdParams {
    pub zeta: f64,
}

impl Default for PfdParams {
    fn default() -> Self {
        PfdParams { zeta: 0.1 }
    }
}

impl PfdParams {
    fn validate(&self) -> Result<()> {
        if !(self.zeta > 0.0 && self.zeta < 1.0) {
            return Err(CodecError::InvalidParameter(format!(
                "zeta must be in (0,1), got {}",
                self.zeta
            )));
        }
        Ok(())
    }
}

/// Smallest width `b` such that the fraction of quad-max entries wider than
/// `b` is at most `zeta`; also returns the indices of the offending quads.
pub fn pfd_choose_width(frame_maxes: &[u32], zeta: f64) -> (u32, Vec<usize>) {
    let widths: Vec<u32> = frame_maxes.iter().map(|&m| effective_bit_width(m)).collect();
    let len = widths.len().max(1);
    for b in 1..=32u32 {
        let over: Vec<usize> = widths
            .iter()
            .enumerate()
            .filter(|&(_, &w)| w > b)
            .map(|(i, _)| i)
            .collect();
        if over.len() as f64 / len as f64 <= zeta {
            return (b, over);
        }
    }
    unreachable!("b = 32 admits no exceptions")
}

fn exception_width_code(max_value: u32) -> (u32, u8) {
    let w = effective_bit_width(max_value);
    if w <= 8 {
        (8, 1)
    } else if w <= 16 {
        (16, 2)
    } else {
        (32, 3)
    }
}

/// Encode to (control area, data area) payload bytes.
pub fn pfd_encode(data: &[u32], params: PfdParams, kernel: ResolvedKernel) -> Result<(Vec<u8>, Vec<u8>)> {
    params.validate()?;
    if data.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let padded = pad_to_quads(data);
    let maxes = pseudo_quad_max_array(&padded)?;
    let mut control = Vec::new();
    let mut data_area = Vec::new();
    for (frame_idx, frame_maxes) in maxes.chunks(PFD_FRAME_QUADS).enumerate() {
        let frame_start = frame_idx * PFD_FRAME_INTS;
        let frame_ints = &padded[frame_start..(frame_start + 4 * frame_maxes.len())];
        let (b, exc_quads) = pfd_choose_width(frame_maxes, params.zeta);

        // Each integer of a flagged quad is tested individually.
        let mut positions: Vec<u8> = Vec::new();
        let mut values: Vec<u32> = Vec::new();
        for &q in &exc_quads {
            for k in 0..4 {
                let idx = 4 * q + k;
                let v = frame_ints[idx];
                if effective_bit_width(v) > b {
                    positions.push(idx as u8);
                    values.push(v);
                }
            }
        }
        let (w, w_code) = if values.is_empty() {
            (0u32, 0u8)
        } else {
            exception_width_code(*values.iter().max().unwrap())
        };

        control.push(b as u8);
        control.push(w_code);
        control.extend_from_slice(&(positions.len() as u16).to_le_bytes());
        control.extend_from_slice(&positions);
        for &v in &values {
            control.extend_from_slice(&v.to_le_bytes()[..(w / 8) as usize]);
        }

        // Every slot, exceptions included, stores its low b bits.
        let mask = width_mask(b);
        let masked: Vec<u32> = frame_ints.iter().map(|&v| v & mask).collect();
        let vectors = pack_frame(&masked, b, kernel);
        data_area.extend_from_slice(&vectors_to_bytes(&vectors));
    }
    Ok((control, data_area))
}

/// Decode exactly `n` integers from the payload areas.
pub fn pfd_decode(control: &[u8], data: &[u8], n: usize, kernel: ResolvedKernel) -> Result<Vec<u32>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let vectors = bytes_to_vectors(data)?;
    let total_quads = n.div_ceil(4);
    let mut out = Vec::with_capacity(total_quads * 4);
    let mut pos = 0usize; // control cursor
    let mut vec_pos = 0usize;
    let mut q = 0usize;
    while q < total_quads {
        let frame_quads = PFD_FRAME_QUADS.min(total_quads - q);
        let header = control.get(pos..pos + 4).ok_or(CodecError::Truncated {
            needed: pos + 4,
            available: control.len(),
        })?;
        pos += 4;
        let b = u32::from(header[0]);
        if !(1..=32).contains(&b) {
            return Err(CodecError::Malformed(format!("frame bit width {}", b)));
        }
        let w_code = header[1];
        let count = usize::from(u16::from_le_bytes([header[2], header[3]]));
        let w_bytes = match w_code {
            0 if count == 0 => 0usize,
            0 => {
                return Err(CodecError::Malformed(
                    "exception width code 0 with nonzero count".into(),
                ));
            }
            1 => 1,
            2 => 2,
            3 => 4,
            other => {
                return Err(CodecError::Malformed(format!("exception width code {}", other)));
            }
        };
        let positions = control.get(pos..pos + count).ok_or(CodecError::Truncated {
            needed: pos + count,
            available: control.len(),
        })?;
        pos += count;
        let mut values = Vec::with_capacity(count);
        for _ in 0..count {
            let raw = control.get(pos..pos + w_bytes).ok_or(CodecError::Truncated {
                needed: pos + w_bytes,
                available: control.len(),
            })?;
            pos += w_bytes;
            let mut le = [0u8; 4];
            le[..w_bytes].copy_from_slice(raw);
            values.push(u32::from_le_bytes(le));
        }
        let frame_capacity = frame_quads * 4;
        for i in 0..count {
            let p = usize::from(positions[i]);
            if p >= frame_capacity {
                return Err(CodecError::Malformed(format!(
                    "exception position {} outside frame of {} integers",
                    p, frame_capacity
                )));
            }
            if i > 0 && positions[i] <= positions[i - 1] {
                return Err(CodecError::Malformed(
                    "exception positions not strictly increasing".into(),
                ));
            }
        }

        let frame_base = out.len();
        unpack_frame(&vectors[vec_pos.min(vectors.len())..], frame_quads, b, kernel, &mut out)?;
        vec_pos += (frame_quads * b as usize).div_ceil(32);
        for (i, &p) in positions.iter().enumerate() {
            out[frame_base + usize::from(p)] = values[i];
        }
        q += frame_quads;
    }
    out.truncate(n);
    Ok(out)
}
