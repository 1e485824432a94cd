//! Variable Byte baseline codec. Each integer is emitted as 7-bit groups,
//! least-significant group first; MSB=1 marks the *last* byte of an integer,
//! MSB=0 means continuation.

use crate::error::{CodecError, Result};

/// At most 5 bytes encode a u32 (ceil(32/7)).
const MAX_BYTES_PER_INT: usize = 5;

pub fn varbyte_encode(data: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(data.len());
    for &x in data {
        let mut v = x;
        loop {
            let group = (v & 0x7f) as u8;
            v >>= 7;
            if v == 0 {
                out.push(group | 0x80);
                break;
            }
            out.push(group);
        }
    }
    out
}

/// Decode exactly `n` integers from `bytes`.
pub fn varbyte_decode(bytes: &[u8], n: usize) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(n);
    let mut pos = 0usize;
    for _ in 0..n {
        let mut value: u32 = 0;
        let mut shift = 0u32;
        let start = pos;
        loop {
            if pos - start >= MAX_BYTES_PER_INT {
                return Err(CodecError::Malformed(format!(
                    "no terminating byte within {} bytes at offset {}",
                    MAX_BYTES_PER_INT, start
                )));
            }
            let byte = *bytes.get(pos).ok_or(CodecError::Truncated {
                needed: pos + 1,
                available: bytes.len(),
            })?;
            pos += 1;
            value |= u32::from(byte & 0x7f) << shift;
            shift += 7;
            if byte & 0x80 != 0 {
                break;
            }
        }
        out.push(value);
    }
    Ok(out)
}

/// Exact encoded length of one integer, in bytes.
pub fn varbyte_len(x: u32) -> usize {
    crate::bitcore::effective_bit_width(x).div_ceil(7) as usize
}
