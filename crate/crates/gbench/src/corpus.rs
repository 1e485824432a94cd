//! Posting-list corpus I/O.
//!
//! TEXT: one list per line, ASCII decimal, space-separated.
//! BINARY: repeated records of [u32 count][count x u32 value], little-endian.

use anyhow::{bail, Context, Result};
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    Text,
    Binary,
}

pub fn load_corpus(path: &Path, format: CorpusFormat) -> Result<Vec<Vec<u32>>> {
    match format {
        CorpusFormat::Text => load_text(path),
        CorpusFormat::Binary => load_binary(path),
    }
}

pub fn save_corpus(path: &Path, format: CorpusFormat, lists: &[Vec<u32>]) -> Result<()> {
    match format {
        CorpusFormat::Text => save_text(path, lists),
        CorpusFormat::Binary => save_binary(path, lists),
    }
}

fn load_text(path: &Path) -> Result<Vec<Vec<u32>>> {
    let file = std::fs::File::open(path).with_context(|| format!("open {}", path.display()))?;
    let mut lists = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let mut list = Vec::new();
        for token in line.split_whitespace() {
            let v: u32 = token
                .parse()
                .with_context(|| format!("{}:{}: bad integer {:?}", path.display(), lineno + 1, token))?;
            list.push(v);
        }
        lists.push(list);
    }
    Ok(lists)
}

fn save_text(path: &Path, lists: &[Vec<u32>]) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    for list in lists {
        let line: Vec<String> = list.iter().map(|v| v.to_string()).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

fn load_binary(path: &Path) -> Result<Vec<Vec<u32>>> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .with_context(|| format!("open {}", path.display()))?
        .read_to_end(&mut bytes)?;
    let mut lists = Vec::new();
    let mut pos = 0usize;
    while pos < bytes.len() {
        if pos + 4 > bytes.len() {
            bail!("{}: truncated count at offset {}", path.display(), pos);
        }
        let count = u32::from_le_bytes(bytes[pos..pos + 4].try_into().unwrap()) as usize;
        pos += 4;
        let end = pos
            .checked_add(count * 4)
            .filter(|&e| e <= bytes.len())
            .with_context(|| format!("{}: record of {} values overruns file at offset {}", path.display(), count, pos))?;
        let list = bytes[pos..end]
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        lists.push(list);
        pos = end;
    }
    Ok(lists)
}

fn save_binary(path: &Path, lists: &[Vec<u32>]) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    for list in lists {
        w.write_all(&(list.len() as u32).to_le_bytes())?;
        for &v in list {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    Ok(())
}
