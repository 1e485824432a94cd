//! SIMD-oriented group codecs for 32-bit integer sequences.
//!
//! Four codec families share a 4-way vertical bit layout: lane `k` of each
//! quadruple occupies 32-bit component `k` of consecutive 128-bit vectors,
//! filled least-significant bit first. Values crossing a vector boundary
//! store their high bits at the top of the current component and the rest
//! at the bottom of the next. Every codec has a scalar and a vectorized
//! kernel producing byte-identical streams, wrapped in a self-describing
//! block container ([`encode_block`] / [`decode_block`]).

pub mod bitcore;
pub mod block;
pub mod error;
pub mod gframe;
pub mod gscheme;
pub mod gsim;
pub mod kernel;
pub mod varbyte;

#[cfg(target_arch = "x86_64")]
pub mod simd;

pub use block::{decode_block, decode_block_with, encode_block, BlockHeader, CodecId};
pub use error::{CodecError, Result};
pub use gframe::PfdParams;
pub use gscheme::{LdKind, SchemeConfig};
pub use kernel::{select_kernel, simd128_available, Kernel, ResolvedKernel};
