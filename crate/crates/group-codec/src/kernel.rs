//! Kernel selection: every codec has a scalar path and a vectorized path
//! required to be byte-identical in effect.

use crate::error::{CodecError, Result};

/// Caller preference for an execution path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Scalar,
    Vectorized,
    Auto,
}

/// The path actually taken after resolving [`Kernel::Auto`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolvedKernel {
    Scalar,
    Vectorized,
}

/// True when the host provides 128-bit data-parallel integer operations.
pub fn simd128_available() -> bool {
    // SSE2 is part of the x86_64 baseline.
    cfg!(target_arch = "x86_64")
}

/// Resolve a kernel preference. `Auto` picks the vectorized path when the
/// platform supports it; an explicit `Vectorized` request on an incapable
/// host is an error.
pub fn select_kernel(preference: Kernel) -> Result<ResolvedKernel> {
    match preference {
        Kernel::Scalar => Ok(ResolvedKernel::Scalar),
        Kernel::Vectorized => {
            if simd128_available() {
                Ok(ResolvedKernel::Vectorized)
            } else {
                Err(CodecError::KernelUnavailable)
            }
        }
        Kernel::Auto => {
            if simd128_available() {
                Ok(ResolvedKernel::Vectorized)
            } else {
                Ok(ResolvedKernel::Scalar)
            }
        }
    }
}
