//! CLI harness: bench, verify, encode, decode.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gbench::bench::{run_benchmark, BenchRow};
use gbench::corpus::{load_corpus, save_corpus, CorpusFormat};
use gbench::gen::{gen_docid_gaps, gen_uniform};
use gbench::names::parse_codecs;
use gbench::report::{emit_report, ReportFormat};
use gbench::store::{decode_store, encode_store};
use gbench::verify::verify_all;
use group_codec::Kernel;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gbench", about = "Group codec benchmark and verification harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Scalar,
    Vector,
    Auto,
}

impl From<KernelArg> for Kernel {
    fn from(k: KernelArg) -> Kernel {
        match k {
            KernelArg::Scalar => Kernel::Scalar,
            KernelArg::Vector => Kernel::Vectorized,
            KernelArg::Auto => Kernel::Auto,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusFormatArg {
    Text,
    Binary,
}

impl From<CorpusFormatArg> for CorpusFormat {
    fn from(f: CorpusFormatArg) -> CorpusFormat {
        match f {
            CorpusFormatArg::Text => CorpusFormat::Text,
            CorpusFormatArg::Binary => CorpusFormat::Binary,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Measure ratio and throughput on a generated dataset.
    Bench {
        /// Codec name or `all`.
        #[arg(long)]
        codec: String,
        #[arg(long, value_enum, default_value = "auto")]
        kernel: KernelArg,
        /// Generator spec: `uniform:bits=B` or `gaps:density=D`.
        #[arg(long)]
        r#gen: String,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Round-trip every codec variant on both kernels.
    Verify {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Encode a corpus file into a posting store.
    Encode {
        #[arg(long)]
        codec: String,
        /// Explicit variant byte, overriding the one implied by the name.
        #[arg(long)]
        variant: Option<u8>,
        #[arg(long, value_name = "PATH")]
        r#in: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Corpus representation of the `--in` file.
        #[arg(long, value_enum, default_value = "text")]
        input_format: CorpusFormatArg,
        #[arg(long, value_enum, default_value = "auto")]
        kernel: KernelArg,
    },
    /// Decode a posting store back into a corpus file.
    Decode {
        #[arg(long, value_name = "PATH")]
        r#in: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Corpus representation of the `--out` file.
        #[arg(long, value_enum, default_value = "text")]
        input_format: CorpusFormatArg,
        #[arg(long, value_enum, default_value = "auto")]
        kernel: KernelArg,
    },
}

fn generate(spec: &str, n: usize, seed: u64) -> Result<Vec<u32>> {
    let (kind, params) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "uniform" => {
            let bits = params
                .strip_prefix("bits=")
                .with_context(|| format!("expected uniform:bits=B, got {:?}", spec))?
                .parse::<u32>()?;
            gen_uniform(n, bits, seed)
        }
        "gaps" => {
            let density = params
                .strip_prefix("density=")
                .with_context(|| format!("expected gaps:density=D, got {:?}", spec))?
                .parse::<f64>()?;
            gen_docid_gaps(n, density, seed)
        }
        _ => bail!("unknown generator {:?}; expected uniform:bits=B or gaps:density=D", spec),
    }
}

fn cmd_bench(
    codec: &str,
    kernel: Kernel,
    gen_spec: &str,
    n: usize,
    runs: usize,
    seed: u64,
    format: FormatArg,
    out: Option<&PathBuf>,
) -> Result<()> {
    let codecs = parse_codecs(codec)?;
    let data = generate(gen_spec, n, seed)?;
    let mut rows: Vec<BenchRow> = Vec::new();
    for c in codecs {
        rows.push(run_benchmark(c, kernel, gen_spec, &data, runs)?);
    }
    let format = match format {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Md => ReportFormat::Markdown,
    };
    match out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .with_context(|| format!("create {}", path.display()))?;
            emit_report(&rows, format, &mut file)?;
        }
        None => emit_report(&rows, format, &mut std::io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_verify(cases: usize, seed: u64) -> Result<bool> {
    let report = verify_all(cases, seed);
    println!(
        "verify: {} variants x 2 kernels x {} cases = {} checks",
        report.variants, report.cases, report.checks
    );
    for f in &report.failures {
        println!(
            "FAIL codec={} seed={} len={}: {}",
            f.codec, f.case_seed, f.len, f.detail
        );
    }
    if report.failures.is_empty() {
        println!("all checks passed");
        Ok(true)
    } else {
        println!("{} failures", report.failures.len());
        Ok(false)
    }
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Bench { codec, kernel, r#gen, n, runs, seed, format, out } => {
            cmd_bench(&codec, kernel.into(), &r#gen, n, runs, seed, format, out.as_ref())?;
            Ok(true)
        }
        Command::Verify { cases, seed } => cmd_verify(cases, seed),
        Command::Encode { codec, variant, r#in, out, input_format, kernel } => {
            let codecs = parse_codecs(&codec)?;
            if codecs.len() != 1 {
                bail!("encode needs one codec, not {:?}", codec);
            }
            let named = codecs[0];
            let variant = variant.unwrap_or(named.variant);
            let lists = load_corpus(&r#in, input_format.into())?;
            let store = encode_store(&lists, named.codec, variant, kernel.into())?;
            std::fs::write(&out, store).with_context(|| format!("write {}", out.display()))?;
            Ok(true)
        }
        Command::Decode { r#in, out, input_format, kernel } => {
            let bytes =
                std::fs::read(&r#in).with_context(|| format!("read {}", r#in.display()))?;
            let lists = decode_store(&bytes, kernel.into())?;
            save_corpus(&out, input_format.into(), &lists)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
