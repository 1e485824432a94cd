//! Group-Scheme codec family: per-quadruple bit widths expressed as length
//! descriptors (LDs) over a compression granularity CG in {1,2,4,8} bits.
//! LDs are stored binary (fixed-width aligned fields), complete unary
//! (runs cross bytes), or incomplete unary (byte-confined, ones-padded).
//! Control decoding is packed: a byte (16-bit unit for CG=1 binary) at a
//! time through lookup tables.

use std::sync::OnceLock;

use crate::bitcore::{
    bytes_to_vectors, effective_bit_width, pad_to_quads, vectors_to_bytes, VerticalPacker,
    VerticalUnpacker,
};
use crate::error::{CodecError, Result};
use crate::kernel::ResolvedKernel;

/// How length descriptors are stored in the control area.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LdKind {
    Binary,
    CompleteUnary,
    IncompleteUnary,
}

/// A concrete Group-Scheme variant: granularity x descriptor kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchemeConfig {
    cg: u32,
    kind: LdKind,
}

impl SchemeConfig {
    /// Incomplete unary needs every LD to fit a byte, so CG must be 4 or 8.
    pub fn new(cg: u32, kind: LdKind) -> Result<Self> {
        if !matches!(cg, 1 | 2 | 4 | 8) {
            return Err(CodecError::InvalidParameter(format!(
                "compression granularity {} not in {{1,2,4,8}}",
                cg
            )));
        }
        if kind == LdKind::IncompleteUnary && cg < 4 {
            return Err(CodecError::InvalidParameter(format!(
                "incomplete unary requires CG 4 or 8, got {}",
                cg
            )));
        }
        Ok(SchemeConfig { cg, kind })
    }

    pub fn cg(&self) -> u32 {
        self.cg
    }

    pub fn kind(&self) -> LdKind {
        self.kind
    }

    /// All ten valid configurations.
    pub fn all() -> Vec<SchemeConfig> {
        let mut v = Vec::new();
        for cg in [1u32, 2, 4, 8] {
            v.push(SchemeConfig { cg, kind: LdKind::Binary });
            v.push(SchemeConfig { cg, kind: LdKind::CompleteUnary });
        }
        for cg in [4u32, 8] {
            v.push(SchemeConfig { cg, kind: LdKind::IncompleteUnary });
        }
        v
    }

    /// Header variant byte: bits 0-1 = log2(CG), bits 2-3 = kind.
    pub fn variant_byte(&self) -> u8 {
        let kind = match self.kind {
            LdKind::Binary => 0u8,
            LdKind::CompleteUnary => 1,
            LdKind::IncompleteUnary => 2,
        };
        (self.cg.trailing_zeros() as u8) | (kind << 2)
    }

    pub fn from_variant(variant: u8) -> Result<Self> {
        if variant & 0xf0 != 0 {
            return Err(CodecError::UnknownVariant { codec: 3, variant });
        }
        let cg = 1u32 << (variant & 0x03);
        let kind = match (variant >> 2) & 0x03 {
            0 => LdKind::Binary,
            1 => LdKind::CompleteUnary,
            2 => LdKind::IncompleteUnary,
            _ => return Err(CodecError::UnknownVariant { codec: 3, variant }),
        };
        SchemeConfig::new(cg, kind).map_err(|_| CodecError::UnknownVariant { codec: 3, variant })
    }

    /// Largest unary LD value / number of CG units in 32 bits.
    pub fn max_units(&self) -> u32 {
        32 / self.cg
    }

    /// Fixed field width of a binary LD: 5 - log2(CG).
    pub fn binary_field_bits(&self) -> u32 {
        5 - self.cg.trailing_zeros()
    }

    /// Short name like `gsc-8-iu`.
    pub fn name(&self) -> String {
        let kind = match self.kind {
            LdKind::Binary => "b",
            LdKind::CompleteUnary => "cu",
            LdKind::IncompleteUnary => "iu",
        };
        format!("gsc-{}-{}", self.cg, kind)
    }
}

/// Stored LD for a quad max: `ceil(width/CG)` units for unary kinds,
/// one less for binary.
pub fn ld_value(quadmax: u32, cfg: SchemeConfig) -> u32 {
    let units = effective_bit_width(quadmax).div_ceil(cfg.cg);
    match cfg.kind {
        LdKind::Binary => units - 1,
        _ => units,
    }
}

/// Bit width implied by a stored LD.
pub fn bw_from_ld(ld: u32, cfg: SchemeConfig) -> Result<u32> {
    let units = match cfg.kind {
        LdKind::Binary => ld + 1,
        _ => ld,
    };
    if units == 0 || units > cfg.max_units() {
        return Err(CodecError::Malformed(format!(
            "length descriptor {} out of range for CG {}",
            ld, cfg.cg
        )));
    }
    Ok(units * cfg.cg)
}

// ---------------------------------------------------------------------------
// Control area encoding
// ---------------------------------------------------------------------------

/// Encode stored LD values into control bytes for `cfg`.
pub fn encode_control(lds: &[u32], cfg: SchemeConfig) -> Vec<u8> {
    match cfg.kind {
        LdKind::Binary => encode_control_binary(lds, cfg.cg),
        LdKind::CompleteUnary => encode_control_cu(lds),
        LdKind::IncompleteUnary => encode_control_iu(lds),
    }
}

fn encode_control_binary(lds: &[u32], cg: u32) -> Vec<u8> {
    let mut out = Vec::new();
    match cg {
        // Three 5-bit fields per 16-bit little-endian unit, low fields first.
        1 => {
            for chunk in lds.chunks(3) {
                let mut unit = 0u16;
                for (i, &ld) in chunk.iter().enumerate() {
                    unit |= (ld as u16) << (5 * i);
                }
                out.extend_from_slice(&unit.to_le_bytes());
            }
        }
        2 => {
            for chunk in lds.chunks(2) {
                let mut byte = 0u8;
                for (i, &ld) in chunk.iter().enumerate() {
                    byte |= (ld as u8) << (4 * i);
                }
                out.push(byte);
            }
        }
        4 => {
            for chunk in lds.chunks(2) {
                let mut byte = 0u8;
                for (i, &ld) in chunk.iter().enumerate() {
                    byte |= (ld as u8) << (3 * i);
                }
                out.push(byte);
            }
        }
        _ => {
            for chunk in lds.chunks(4) {
                let mut byte = 0u8;
                for (i, &ld) in chunk.iter().enumerate() {
                    byte |= (ld as u8) << (2 * i);
                }
                out.push(byte);
            }
        }
    }
    out
}

/// MSB-first bit writer for unary codes.
struct BitWriter {
    out: Vec<u8>,
    cur: u8,
    filled: u32,
}

impl BitWriter {
    fn new() -> Self {
        BitWriter { out: Vec::new(), cur: 0, filled: 0 }
    }

    fn push_bit(&mut self, bit: bool) {
        if bit {
            self.cur |= 1 << (7 - self.filled);
        }
        self.filled += 1;
        if self.filled == 8 {
            self.out.push(self.cur);
            self.cur = 0;
            self.filled = 0;
        }
    }

    fn bits_left_in_byte(&self) -> u32 {
        8 - self.filled
    }

    fn finish(mut self) -> Vec<u8> {
        if self.filled > 0 {
            self.out.push(self.cur);
        }
        self.out
    }
}

/// Unary code of v: (v-1) ones then a zero, crossing bytes freely.
fn encode_control_cu(lds: &[u32]) -> Vec<u8> {
    let mut w = BitWriter::new();
    for &ld in lds {
        for _ in 1..ld {
            w.push_bit(true);
        }
        w.push_bit(false);
    }
    w.finish()
}

/// Same unary code, but an LD never crosses a byte; leftover bits of a byte
/// are filled with ones. Unambiguous because every real LD ends in a zero.
fn encode_control_iu(lds: &[u32]) -> Vec<u8> {
    let mut w = BitWriter::new();
    for &ld in lds {
        if w.bits_left_in_byte() < ld {
            while w.filled != 0 {
                w.push_bit(true);
            }
        }
        for _ in 1..ld {
            w.push_bit(true);
        }
        w.push_bit(false);
    }
    w.finish()
}

// ---------------------------------------------------------------------------
// Packed control decoding via lookup tables
// ---------------------------------------------------------------------------

/// Decoded shape of one 8-bit unary control pattern: the complete LDs it
/// terminates (first one still missing any carry from the previous byte)
/// and the length of the trailing ones run without an ending zero.
#[derive(Debug, Clone, Copy)]
pub struct UnaryByteEntry {
    pub lds: [u8; 8],
    pub count: u8,
    pub trailing_ones: u8,
}

fn unary_entry(byte: u8) -> UnaryByteEntry {
    let mut e = UnaryByteEntry { lds: [0; 8], count: 0, trailing_ones: 0 };
    let mut run = 0u8;
    for i in (0..8).rev() {
        if byte >> i & 1 == 1 {
            run += 1;
        } else {
            e.lds[e.count as usize] = run + 1;
            e.count += 1;
            run = 0;
        }
    }
    e.trailing_ones = run;
    e
}

fn unary_table() -> &'static [UnaryByteEntry; 256] {
    static TABLE: OnceLock<[UnaryByteEntry; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [UnaryByteEntry { lds: [0; 8], count: 0, trailing_ones: 0 }; 256];
        for (b, slot) in t.iter_mut().enumerate() {
            *slot = unary_entry(b as u8);
        }
        t
    })
}

/// 2^15-entry table for CG=1 binary: three 5-bit fields per 16-bit unit.
fn binary1_table() -> &'static Vec<[u8; 3]> {
    static TABLE: OnceLock<Vec<[u8; 3]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..1usize << 15)
            .map(|v| [(v & 31) as u8, (v >> 5 & 31) as u8, (v >> 10 & 31) as u8])
            .collect()
    })
}

fn binary_byte_table(cg: u32) -> &'static [[u8; 4]; 256] {
    static T2: OnceLock<[[u8; 4]; 256]> = OnceLock::new();
    static T4: OnceLock<[[u8; 4]; 256]> = OnceLock::new();
    static T8: OnceLock<[[u8; 4]; 256]> = OnceLock::new();
    let build = |cg: u32| {
        let mut t = [[0u8; 4]; 256];
        for (b, slot) in t.iter_mut().enumerate() {
            let b = b as u8;
            *slot = match cg {
                2 => [b & 15, b >> 4, 0, 0],
                4 => [b & 7, b >> 3 & 7, 0, 0],
                _ => [b & 3, b >> 2 & 3, b >> 4 & 3, b >> 6],
            };
        }
        t
    };
    match cg {
        2 => T2.get_or_init(|| build(2)),
        4 => T4.get_or_init(|| build(4)),
        _ => T8.get_or_init(|| build(8)),
    }
}

/// Decode `expected` stored LD values from the control area using the packed
/// lookup-table technique. Equals a naive bit-by-bit decode.
pub fn decode_control_packed(control: &[u8], expected: usize, cfg: SchemeConfig) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(expected);
    match cfg.kind {
        LdKind::Binary => decode_control_binary(control, expected, cfg, &mut out)?,
        LdKind::CompleteUnary => decode_control_cu(control, expected, cfg, &mut out)?,
        LdKind::IncompleteUnary => decode_control_iu(control, expected, cfg, &mut out)?,
    }
    Ok(out)
}

fn decode_control_binary(
    control: &[u8],
    expected: usize,
    cfg: SchemeConfig,
    out: &mut Vec<u32>,
) -> Result<()> {
    match cfg.cg {
        1 => {
            let table = binary1_table();
            let units_needed = expected.div_ceil(3);
            if control.len() < units_needed * 2 {
                return Err(CodecError::Truncated {
                    needed: units_needed * 2,
                    available: control.len(),
                });
            }
            for unit in control.chunks_exact(2).take(units_needed) {
                let v = u16::from_le_bytes([unit[0], unit[1]]) & 0x7fff;
                for &ld in &table[v as usize] {
                    if out.len() < expected {
                        out.push(u32::from(ld));
                    }
                }
            }
        }
        cg => {
            let per_byte = if cg == 8 { 4 } else { 2 };
            let table = binary_byte_table(cg);
            let bytes_needed = expected.div_ceil(per_byte);
            if control.len() < bytes_needed {
                return Err(CodecError::Truncated {
                    needed: bytes_needed,
                    available: control.len(),
                });
            }
            for &byte in control.iter().take(bytes_needed) {
                for &ld in table[byte as usize].iter().take(per_byte) {
                    if out.len() < expected {
                        out.push(u32::from(ld));
                    }
                }
            }
        }
    }
    Ok(())
}

fn decode_control_cu(
    control: &[u8],
    expected: usize,
    cfg: SchemeConfig,
    out: &mut Vec<u32>,
) -> Result<()> {
    let table = unary_table();
    let max = cfg.max_units();
    let mut carry = 0u32;
    for &byte in control {
        if out.len() >= expected {
            break;
        }
        let e = &table[byte as usize];
        if e.count == 0 {
            carry += 8;
        } else {
            for (i, &ld) in e.lds[..e.count as usize].iter().enumerate() {
                if out.len() >= expected {
                    break;
                }
                let ld = if i == 0 { carry + u32::from(ld) } else { u32::from(ld) };
                if ld > max {
                    return Err(CodecError::Malformed(format!(
                        "unary LD {} exceeds {} units (CG {})",
                        ld, max, cfg.cg
                    )));
                }
                out.push(ld);
            }
            carry = u32::from(e.trailing_ones);
        }
        if carry >= max && out.len() < expected {
            return Err(CodecError::Malformed(format!(
                "unary run of {} ones exceeds {} units (CG {})",
                carry, max, cfg.cg
            )));
        }
    }
    if out.len() < expected {
        return Err(CodecError::Truncated { needed: expected, available: out.len() });
    }
    Ok(())
}

fn decode_control_iu(
    control: &[u8],
    expected: usize,
    cfg: SchemeConfig,
    out: &mut Vec<u32>,
) -> Result<()> {
    let table = unary_table();
    let max = cfg.max_units();
    for &byte in control {
        if out.len() >= expected {
            break;
        }
        let e = &table[byte as usize];
        for &ld in &e.lds[..e.count as usize] {
            if out.len() >= expected {
                break;
            }
            let ld = u32::from(ld);
            if ld > max {
                return Err(CodecError::Malformed(format!(
                    "unary LD {} exceeds {} units (CG {})",
                    ld, max, cfg.cg
                )));
            }
            out.push(ld);
        }
        // Trailing ones are byte padding; a real LD always ends in a zero.
    }
    if out.len() < expected {
        return Err(CodecError::Truncated { needed: expected, available: out.len() });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Codec entry points
// ---------------------------------------------------------------------------

/// Encode to (control area, data area) payload bytes.
pub fn encode(data: &[u32], cfg: SchemeConfig, kernel: ResolvedKernel) -> Result<(Vec<u8>, Vec<u8>)> {
    if data.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let padded = pad_to_quads(data);
    let mut lds = Vec::with_capacity(padded.len() / 4);
    let mut widths = Vec::with_capacity(padded.len() / 4);
    for quad in padded.chunks_exact(4) {
        let pseudo_max = quad[0] | quad[1] | quad[2] | quad[3];
        let ld = ld_value(pseudo_max, cfg);
        lds.push(ld);
        widths.push(bw_from_ld(ld, cfg).expect("ld_value output is in range"));
    }
    let control = encode_control(&lds, cfg);
    let vectors = match kernel {
        ResolvedKernel::Scalar => {
            let mut packer = VerticalPacker::new();
            for (quad, &bw) in padded.chunks_exact(4).zip(&widths) {
                packer.push_quad([quad[0], quad[1], quad[2], quad[3]], bw)?;
            }
            packer.finish()
        }
        ResolvedKernel::Vectorized => pack_vectorized(&padded, &widths),
    };
    Ok((control, vectors_to_bytes(&vectors)))
}

#[cfg(target_arch = "x86_64")]
fn pack_vectorized(padded: &[u32], widths: &[u32]) -> Vec<crate::bitcore::Vector128> {
    let mut packer = crate::simd::SimdPacker::new();
    for (quad, &bw) in padded.chunks_exact(4).zip(widths) {
        packer.push_quad(quad.try_into().unwrap(), bw);
    }
    packer.finish()
}

#[cfg(not(target_arch = "x86_64"))]
fn pack_vectorized(padded: &[u32], widths: &[u32]) -> Vec<crate::bitcore::Vector128> {
    let mut packer = VerticalPacker::new();
    for (quad, &bw) in padded.chunks_exact(4).zip(widths) {
        packer
            .push_quad([quad[0], quad[1], quad[2], quad[3]], bw)
            .expect("widths cover the lanes");
    }
    packer.finish()
}

/// Decode exactly `n` integers from the payload areas.
pub fn decode(
    control: &[u8],
    data: &[u8],
    n: usize,
    cfg: SchemeConfig,
    kernel: ResolvedKernel,
) -> Result<Vec<u32>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let expected = n.div_ceil(4);
    let lds = decode_control_packed(control, expected, cfg)?;
    let mut widths = Vec::with_capacity(expected);
    for &ld in &lds {
        widths.push(bw_from_ld(ld, cfg)?);
    }
    let vectors = bytes_to_vectors(data)?;
    let total_bits: usize = widths.iter().map(|&bw| bw as usize).sum();
    let needed = total_bits.div_ceil(32);
    if vectors.len() < needed {
        return Err(CodecError::Truncated { needed, available: vectors.len() });
    }
    let mut out = vec![0u32; expected * 4];
    match kernel {
        ResolvedKernel::Scalar => {
            let mut unpacker = VerticalUnpacker::new(&vectors);
            for (i, &bw) in widths.iter().enumerate() {
                let lanes = unpacker.next_quad(bw)?;
                out[4 * i..4 * i + 4].copy_from_slice(&lanes);
            }
        }
        ResolvedKernel::Vectorized => unpack_vectorized(&vectors, &widths, &mut out)?,
    }
    out.truncate(n);
    Ok(out)
}

#[cfg(target_arch = "x86_64")]
fn unpack_vectorized(
    vectors: &[crate::bitcore::Vector128],
    widths: &[u32],
    out: &mut [u32],
) -> Result<()> {
    let mut unpacker = crate::simd::SimdUnpacker::new(vectors);
    for (i, &bw) in widths.iter().enumerate() {
        let lanes: &mut [u32; 4] = (&mut out[4 * i..4 * i + 4]).try_into().unwrap();
        unpacker.next_quad(bw, lanes)?;
    }
    Ok(())
}

#[cfg(not(target_arch = "x86_64"))]
fn unpack_vectorized(
    vectors: &[crate::bitcore::Vector128],
    widths: &[u32],
    out: &mut [u32],
) -> Result<()> {
    let mut unpacker = VerticalUnpacker::new(vectors);
    for (i, &bw) in widths.iter().enumerate() {
        let lanes = unpacker.next_quad(bw)?;
        out[4 * i..4 * i + 4].copy_from_slice(&lanes);
    }
    Ok(())
}
