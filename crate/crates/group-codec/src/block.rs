//! The EncodedBlock container: a 16-byte header, a codec-specific control
//! area zero-padded to a 16-byte boundary, and a data area of whole 128-bit
//! vectors (VarByte: a raw byte stream).

use crate::bitcore::{delta_decode, delta_encode};
use crate::error::{CodecError, Result};
use crate::gframe::PfdParams;
use crate::gscheme::SchemeConfig;
use crate::kernel::{select_kernel, Kernel, ResolvedKernel};
use crate::{gframe, gscheme, gsim, varbyte};

pub const MAGIC: [u8; 4] = *b"GCM1";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 16;
const FLAG_DELTA: u8 = 0x01;

/// Stable codec identifiers; unknown ids are rejected on decode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum CodecId {
    VarByte = 1,
    GroupSimple = 2,
    GroupScheme = 3,
    GroupAfor = 4,
    GroupPfd = 5,
}

impl CodecId {
    pub fn from_u8(id: u8) -> Result<Self> {
        match id {
            1 => Ok(CodecId::VarByte),
            2 => Ok(CodecId::GroupSimple),
            3 => Ok(CodecId::GroupScheme),
            4 => Ok(CodecId::GroupAfor),
            5 => Ok(CodecId::GroupPfd),
            _ => Err(CodecError::UnknownCodec(id)),
        }
    }
}

/// Reject variants a codec does not define. Group-Scheme variants carry the
/// configuration code; every other codec only defines variant 0.
fn validate_variant(codec: CodecId, variant: u8) -> Result<()> {
    match codec {
        CodecId::GroupScheme => SchemeConfig::from_variant(variant).map(|_| ()),
        _ if variant == 0 => Ok(()),
        _ => Err(CodecError::UnknownVariant { codec: codec as u8, variant }),
    }
}

/// Parsed 16-byte block header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockHeader {
    pub codec: CodecId,
    pub variant: u8,
    pub delta: bool,
    pub n: u32,
    pub data_offset: u32,
}

impl BlockHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5] = self.codec as u8;
        out[6] = if self.delta { FLAG_DELTA } else { 0 };
        out[7] = self.variant;
        out[8..12].copy_from_slice(&self.n.to_le_bytes());
        out[12..16].copy_from_slice(&self.data_offset.to_le_bytes());
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(CodecError::Truncated { needed: HEADER_LEN, available: bytes.len() });
        }
        if bytes[0..4] != MAGIC {
            return Err(CodecError::BadMagic([bytes[0], bytes[1], bytes[2], bytes[3]]));
        }
        if bytes[4] != VERSION {
            return Err(CodecError::UnsupportedVersion(bytes[4]));
        }
        let codec = CodecId::from_u8(bytes[5])?;
        let flags = bytes[6];
        if flags & !FLAG_DELTA != 0 {
            return Err(CodecError::Malformed(format!("reserved flag bits set: {:#04x}", flags)));
        }
        let variant = bytes[7];
        validate_variant(codec, variant)?;
        let n = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
        let data_offset = u32::from_le_bytes(bytes[12..16].try_into().unwrap());
        if data_offset < HEADER_LEN as u32 || data_offset % 16 != 0 {
            return Err(CodecError::Malformed(format!("bad data_offset {}", data_offset)));
        }
        Ok(BlockHeader { codec, variant, delta: flags & FLAG_DELTA != 0, n, data_offset })
    }
}

fn encode_payload(
    codec: CodecId,
    variant: u8,
    data: &[u32],
    kernel: ResolvedKernel,
) -> Result<(Vec<u8>, Vec<u8>)> {
    match codec {
        CodecId::VarByte => Ok((Vec::new(), varbyte::varbyte_encode(data))),
        CodecId::GroupSimple => gsim::encode(data, kernel),
        CodecId::GroupScheme => gscheme::encode(data, SchemeConfig::from_variant(variant)?, kernel),
        CodecId::GroupAfor => gframe::afor_encode(data, kernel),
        CodecId::GroupPfd => gframe::pfd_encode(data, PfdParams::default(), kernel),
    }
}

fn decode_payload(
    header: &BlockHeader,
    control: &[u8],
    data: &[u8],
    kernel: ResolvedKernel,
) -> Result<Vec<u32>> {
    let n = header.n as usize;
    match header.codec {
        CodecId::VarByte => varbyte::varbyte_decode(data, n),
        CodecId::GroupSimple => gsim::decode(control, data, n, kernel),
        CodecId::GroupScheme => {
            gscheme::decode(control, data, n, SchemeConfig::from_variant(header.variant)?, kernel)
        }
        CodecId::GroupAfor => gframe::afor_decode(control, data, n, kernel),
        CodecId::GroupPfd => gframe::pfd_decode(control, data, n, kernel),
    }
}

/// Encode `data` into a self-describing block.
pub fn encode_block(
    codec: CodecId,
    variant: u8,
    kernel: Kernel,
    apply_delta: bool,
    data: &[u32],
) -> Result<Vec<u8>> {
    validate_variant(codec, variant)?;
    let kernel = select_kernel(kernel)?;
    if u32::try_from(data.len()).is_err() {
        return Err(CodecError::InvalidParameter(format!(
            "sequence of {} integers exceeds the block capacity",
            data.len()
        )));
    }
    let transformed;
    let payload_input = if apply_delta {
        transformed = delta_encode(data)?;
        &transformed[..]
    } else {
        data
    };
    let (control, data_area) = encode_payload(codec, variant, payload_input, kernel)?;

    let data_offset = HEADER_LEN + control.len().div_ceil(16) * 16;
    let header = BlockHeader {
        codec,
        variant,
        delta: apply_delta,
        n: data.len() as u32,
        data_offset: data_offset as u32,
    };
    let mut out = Vec::with_capacity(data_offset + data_area.len());
    out.extend_from_slice(&header.to_bytes());
    out.extend_from_slice(&control);
    out.resize(data_offset, 0);
    out.extend_from_slice(&data_area);
    Ok(out)
}

/// Decode a block with an explicit kernel preference.
pub fn decode_block_with(bytes: &[u8], kernel: Kernel) -> Result<Vec<u32>> {
    let header = BlockHeader::parse(bytes)?;
    let kernel = select_kernel(kernel)?;
    let data_offset = header.data_offset as usize;
    if bytes.len() < data_offset {
        return Err(CodecError::Truncated { needed: data_offset, available: bytes.len() });
    }
    let control = &bytes[HEADER_LEN..data_offset];
    let data = &bytes[data_offset..];
    let decoded = decode_payload(&header, control, data, kernel)?;
    if header.delta {
        delta_decode(&decoded)
    } else {
        Ok(decoded)
    }
}

/// Decode a block, auto-selecting the kernel.
pub fn decode_block(bytes: &[u8]) -> Result<Vec<u32>> {
    decode_block_with(bytes, Kernel::Auto)
}
