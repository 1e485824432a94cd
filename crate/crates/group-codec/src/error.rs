use std::fmt;

/// Errors produced by the codecs and the block container.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodecError {
    /// Block does not start with the `GCM1` magic.
    BadMagic([u8; 4]),
    /// Container version this build does not understand.
    UnsupportedVersion(u8),
    /// Codec id not in the registry.
    UnknownCodec(u8),
    /// Variant byte invalid for the named codec.
    UnknownVariant { codec: u8, variant: u8 },
    /// Stream ends before the decoder has what it needs.
    Truncated { needed: usize, available: usize },
    /// Structurally invalid payload (bad selector, LD out of range, ...).
    Malformed(String),
    /// Input length is not a multiple of four where a primitive requires it.
    NotQuadAligned(usize),
    /// Delta encoding requires strictly increasing input.
    NotIncreasing { index: usize },
    /// A prefix sum overflowed 32 bits while undoing the delta transform.
    Overflow { index: usize },
    /// A lane value does not fit in the requested bit width.
    LaneTooWide { value: u32, bit_width: u32 },
    /// Vectorized kernel requested on a host without 128-bit integer SIMD.
    KernelUnavailable,
    /// Caller-supplied parameter out of range.
    InvalidParameter(String),
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::BadMagic(m) => write!(f, "bad block magic {:02x?}", m),
            CodecError::UnsupportedVersion(v) => write!(f, "unsupported block version {}", v),
            CodecError::UnknownCodec(id) => write!(f, "unknown codec id {}", id),
            CodecError::UnknownVariant { codec, variant } => {
                write!(f, "unknown variant {} for codec id {}", variant, codec)
            }
            CodecError::Truncated { needed, available } => {
                write!(f, "truncated block: need {} bytes/units, have {}", needed, available)
            }
            CodecError::Malformed(msg) => write!(f, "malformed block: {}", msg),
            CodecError::NotQuadAligned(n) => {
                write!(f, "input length {} is not a multiple of 4", n)
            }
            CodecError::NotIncreasing { index } => {
                write!(f, "input is not strictly increasing at index {}", index)
            }
            CodecError::Overflow { index } => {
                write!(f, "prefix sum overflows 32 bits at index {}", index)
            }
            CodecError::LaneTooWide { value, bit_width } => {
                write!(f, "value {} does not fit in {} bits", value, bit_width)
            }
            CodecError::KernelUnavailable => {
                write!(f, "vectorized kernel is not available on this host")
            }
            CodecError::InvalidParameter(msg) => write!(f, "invalid parameter: {}", msg),
        }
    }
}

impl std::error::Error for CodecError {}

pub type Result<T> = std::result::Result<T, CodecError>;
