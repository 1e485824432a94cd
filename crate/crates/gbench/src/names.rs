//! Codec name registry shared by the CLI subcommands.

use anyhow::{bail, Result};
use group_codec::{CodecId, SchemeConfig};

/// A (codec, variant) pair with a stable display name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NamedCodec {
    pub codec: CodecId,
    pub variant: u8,
}

impl NamedCodec {
    pub fn name(&self) -> String {
        match self.codec {
            CodecId::VarByte => "varbyte".into(),
            CodecId::GroupSimple => "gsim".into(),
            CodecId::GroupScheme => SchemeConfig::from_variant(self.variant).unwrap().name(),
            CodecId::GroupAfor => "gafor".into(),
            CodecId::GroupPfd => "gpfd".into(),
        }
    }
}

/// All 14 codec variants: varbyte, gsim, ten gsc configs, gafor, gpfd.
pub fn all_codecs() -> Vec<NamedCodec> {
    let mut v = vec![
        NamedCodec { codec: CodecId::VarByte, variant: 0 },
        NamedCodec { codec: CodecId::GroupSimple, variant: 0 },
    ];
    for cfg in SchemeConfig::all() {
        v.push(NamedCodec { codec: CodecId::GroupScheme, variant: cfg.variant_byte() });
    }
    v.push(NamedCodec { codec: CodecId::GroupAfor, variant: 0 });
    v.push(NamedCodec { codec: CodecId::GroupPfd, variant: 0 });
    v
}

/// Resolve a codec name; `all` expands to every variant.
pub fn parse_codecs(name: &str) -> Result<Vec<NamedCodec>> {
    if name == "all" {
        return Ok(all_codecs());
    }
    for c in all_codecs() {
        if c.name() == name {
            return Ok(vec![c]);
        }
    }
    let known: Vec<String> = all_codecs().iter().map(|c| c.name()).collect();
    bail!("unknown codec {:?}; known: all, {}", name, known.join(", "));
}
