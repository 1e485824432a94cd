//! Posting store: one encoded block per list, with short lists (< 64
//! integers) always stored as VarByte regardless of the requested codec.
//! Store file layout: [u32 list_count] then per list [u32 block_len][block],
//! all little-endian.

use anyhow::{bail, Context, Result};
use group_codec::{decode_block_with, encode_block, CodecId, Kernel};

pub const SHORT_LIST_THRESHOLD: usize = 64;

/// Codec choice actually applied to a list.
pub fn effective_codec(codec: CodecId, variant: u8, len: usize) -> (CodecId, u8) {
    if len < SHORT_LIST_THRESHOLD {
        (CodecId::VarByte, 0)
    } else {
        (codec, variant)
    }
}

pub fn encode_store(
    lists: &[Vec<u32>],
    codec: CodecId,
    variant: u8,
    kernel: Kernel,
) -> Result<Vec<u8>> {
    if u32::try_from(lists.len()).is_err() {
        bail!("too many lists: {}", lists.len());
    }
    let mut out = Vec::new();
    out.extend_from_slice(&(lists.len() as u32).to_le_bytes());
    for list in lists {
        let (c, v) = effective_codec(codec, variant, list.len());
        let block = encode_block(c, v, kernel, false, list)?;
        out.extend_from_slice(&(block.len() as u32).to_le_bytes());
        out.extend_from_slice(&block);
    }
    Ok(out)
}

pub fn decode_store(bytes: &[u8], kernel: Kernel) -> Result<Vec<Vec<u32>>> {
    let count = u32::from_le_bytes(
        bytes.get(0..4).context("truncated store: missing list count")?.try_into().unwrap(),
    ) as usize;
    let mut lists = Vec::with_capacity(count);
    let mut pos = 4usize;
    for i in 0..count {
        let len = u32::from_le_bytes(
            bytes
                .get(pos..pos + 4)
                .with_context(|| format!("truncated store: missing length of block {}", i))?
                .try_into()
                .unwrap(),
        ) as usize;
        pos += 4;
        let block = bytes
            .get(pos..pos + len)
            .with_context(|| format!("truncated store: block {} overruns file", i))?;
        pos += len;
        lists.push(decode_block_with(block, kernel).with_context(|| format!("block {}", i))?);
    }
    if pos != bytes.len() {
        bail!("trailing garbage after {} blocks", count);
    }
    Ok(lists)
}
