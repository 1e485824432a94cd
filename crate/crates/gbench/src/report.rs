//! Report emission: CSV (fixed column set) and markdown.

use crate::bench::BenchRow;
use anyhow::Result;
use std::io::Write;

pub const CSV_HEADER: &str =
    "codec,variant,kernel,dataset,n,encoded_bytes,bits_per_int,encode_mis,decode_mis,runs";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

pub fn emit_report(rows: &[BenchRow], format: ReportFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        ReportFormat::Csv => emit_csv(rows, out),
        ReportFormat::Markdown => emit_markdown(rows, out),
    }
}

fn emit_csv(rows: &[BenchRow], out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{}", CSV_HEADER)?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{:.3},{:.3},{}",
            r.codec, r.variant, r.kernel, r.dataset, r.n, r.encoded_bytes, r.bits_per_int,
            r.encode_mis, r.decode_mis, r.runs
        )?;
    }
    Ok(())
}

fn emit_markdown(rows: &[BenchRow], out: &mut dyn Write) -> Result<()> {
    writeln!(
        out,
        "| codec | variant | kernel | dataset | n | encoded_bytes | bits_per_int | encode_mis | decode_mis | runs |"
    )?;
    writeln!(out, "|---|---|---|---|---|---|---|---|---|---|")?;
    for r in rows {
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {:.4} | {:.3} | {:.3} | {} |",
            r.codec, r.variant, r.kernel, r.dataset, r.n, r.encoded_bytes, r.bits_per_int,
            r.encode_mis, r.decode_mis, r.runs
        )?;
    }
    writeln!(out)?;
    writeln!(
        out,
        "mis = 10^6 integers/second, median of the runs (means: {}).",
        rows.iter()
            .map(|r| format!("{} enc {:.1}/dec {:.1}", r.codec, r.encode_mis_mean, r.decode_mis_mean))
            .collect::<Vec<_>>()
            .join(", ")
    )?;
    Ok(())
}
