//! `decmul` — generate decimal multiplication test vectors, benchmark the
//! execution modes under the deterministic cycle model, verify results
//! against the exact oracle, and work with custom-instruction words.

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use decmul_core::accel::CostTable;
use decmul_core::decnum::{FormatName, RoundingMode};
use decmul_core::harness::{
    emit_report, generate_vectors, read_vectors, run_benchmark, verify, write_vectors, Category,
    GeneratorConfig, ReportFormat,
};
use decmul_core::pipelines::Mode;
use decmul_core::rocc::{funct_name, Funct, RoccInstruction, DEFAULT_CUSTOM_OPCODE};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "decmul", version, about)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Generate a category-driven test-vector file.
    Gen(GenArgs),
    /// Run vectors under the selected modes and write a report.
    Run(RunArgs),
    /// Check pipeline results against the exact oracle.
    Verify(VerifyArgs),
    /// Encode or decode 32-bit custom-instruction words.
    #[command(subcommand)]
    Rocc(RoccCommand),
}

#[derive(Args)]
struct GenArgs {
    /// Interchange format: d64 or d128.
    #[arg(long, default_value = "d64")]
    format: String,
    /// Number of vectors to produce.
    #[arg(long)]
    count: u64,
    /// Generator seed; the same seed reproduces the same file.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated categories
    /// (normal,rounding,overflow,underflow,clamping,special).
    #[arg(long, value_delimiter = ',')]
    categories: Vec<String>,
    /// Output vector file (one JSON document per line).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Vector file produced by `gen` (or compatible).
    #[arg(long)]
    vectors: PathBuf,
    /// Comma-separated modes (software,method1,dummy).
    #[arg(long, value_delimiter = ',', default_value = "software,method1,dummy")]
    modes: Vec<String>,
    /// Cost-table overrides (flat JSON key/value file).
    #[arg(long)]
    costs: Option<PathBuf>,
    /// Repetitions per calculation; cycle figures scale linearly.
    #[arg(long, default_value_t = 1)]
    reps: u64,
    /// Report output path.
    #[arg(long)]
    report: PathBuf,
    /// Emit JSON (with per-vector records) instead of CSV.
    #[arg(long)]
    json: bool,
    /// Rounding mode for the multiplications.
    #[arg(long, default_value = "ties-even")]
    rounding: String,
    /// Clock for the optional time proxy in JSON reports (cycles/Hz).
    #[arg(long)]
    clock_hz: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Vector file to verify.
    #[arg(long)]
    vectors: PathBuf,
    /// Rounding mode for the multiplications.
    #[arg(long, default_value = "ties-even")]
    rounding: String,
}

#[derive(Subcommand)]
enum RoccCommand {
    /// Build an instruction word from fields and print its 8 hex chars.
    Encode(RoccEncodeArgs),
    /// Decode an 8-hex-char word into a field listing.
    Decode(RoccDecodeArgs),
}

#[derive(Args)]
struct RoccEncodeArgs {
    /// Function name (WR, RD, LD, ACCUM, DEC_ADD, CLR_ALL, DEC_CNV,
    /// DEC_MUL, DEC_ACCUM) or a raw 7-bit code.
    #[arg(long)]
    funct: String,
    #[arg(long, default_value_t = 0)]
    rs1: u8,
    #[arg(long, default_value_t = 0)]
    rs2: u8,
    #[arg(long, default_value_t = 0)]
    rd: u8,
    #[arg(long)]
    xd: bool,
    #[arg(long)]
    xs1: bool,
    #[arg(long)]
    xs2: bool,
    /// Custom opcode (7 bits).
    #[arg(long, default_value_t = DEFAULT_CUSTOM_OPCODE)]
    opcode: u8,
}

#[derive(Args)]
struct RoccDecodeArgs {
    /// The 8-hex-char instruction word, with or without 0x.
    word: String,
    /// Custom opcode the word must carry (7 bits).
    #[arg(long, default_value_t = DEFAULT_CUSTOM_OPCODE)]
    opcode: u8,
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        CliCommand::Gen(args) => cmd_gen(args),
        CliCommand::Run(args) => cmd_run(args),
        CliCommand::Verify(args) => cmd_verify(args),
        CliCommand::Rocc(RoccCommand::Encode(args)) => cmd_rocc_encode(args),
        CliCommand::Rocc(RoccCommand::Decode(args)) => cmd_rocc_decode(args),
    }
}

fn parse_rounding(s: &str) -> anyhow::Result<RoundingMode> {
    s.parse::<RoundingMode>().map_err(|e| anyhow::anyhow!("{e}"))
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<()> {
    let format: FormatName = args.format.parse().map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut cfg = GeneratorConfig::new(format, args.count, args.seed);
    if !args.categories.is_empty() {
        cfg.categories = args
            .categories
            .iter()
            .map(|c| c.parse::<Category>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| anyhow::anyhow!("{e}"))?;
    }
    let vectors = generate_vectors(&cfg)?;
    write_vectors(&args.out, &vectors)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {} vectors to {}", vectors.len(), args.out.display());
    Ok(())
}

fn load_costs(path: &Option<PathBuf>) -> anyhow::Result<CostTable> {
    match path {
        None => Ok(CostTable::default()),
        Some(path) => {
            let body = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Ok(CostTable::from_json(&body)?)
        }
    }
}

fn cmd_run(args: RunArgs) -> anyhow::Result<()> {
    let vectors = read_vectors(&args.vectors)?;
    let modes = args
        .modes
        .iter()
        .map(|m| m.parse::<Mode>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let costs = load_costs(&args.costs)?;
    let rounding = parse_rounding(&args.rounding)?;

    let result = run_benchmark(&vectors, &modes, &costs, args.reps, rounding)?;
    let format = if args.json { ReportFormat::Json } else { ReportFormat::Csv };
    let records = args.json.then_some(result.records.as_slice());
    emit_report(&result.rows, records, format, args.clock_hz, &args.report)?;

    for row in &result.rows {
        let speedup = row
            .speedup_f64()
            .map(|s| format!("{s:.2}x"))
            .unwrap_or_else(|| "-".to_string());
        println!(
            "{:<8} count={} avg_sw={:.1} avg_hw={:.1} avg_total={:.1} speedup={}",
            row.mode,
            row.count,
            row.avg_sw(),
            row.avg_hw(),
            row.avg_total(),
            speedup
        );
    }

    let errors: Vec<_> = result.records.iter().filter(|r| r.error.is_some()).collect();
    if !errors.is_empty() {
        for record in errors.iter().take(10) {
            eprintln!(
                "vector {} [{}] {}: {}",
                record.id,
                record.category,
                record.mode,
                record.error.as_deref().unwrap_or("")
            );
        }
        bail!("{} vector runs failed", errors.len());
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<()> {
    let vectors = read_vectors(&args.vectors)?;
    let rounding = parse_rounding(&args.rounding)?;
    let mismatches = verify(&vectors, rounding)?;
    if mismatches.is_empty() {
        println!("{} vectors verified, 0 mismatches", vectors.len());
        Ok(())
    } else {
        for mismatch in &mismatches {
            eprintln!("{mismatch}");
        }
        bail!("{} mismatches", mismatches.len());
    }
}

fn parse_funct(s: &str) -> anyhow::Result<u8> {
    if let Ok(funct) = s.parse::<Funct>() {
        return Ok(funct.code());
    }
    if let Some(body) = s.strip_prefix("0b") {
        return Ok(u8::from_str_radix(body, 2)?);
    }
    Ok(s.parse::<u8>()?)
}

fn cmd_rocc_encode(args: RoccEncodeArgs) -> anyhow::Result<()> {
    let instr = RoccInstruction {
        funct7: parse_funct(&args.funct)?,
        rs2: args.rs2,
        rs1: args.rs1,
        xd: args.xd,
        xs1: args.xs1,
        xs2: args.xs2,
        rd: args.rd,
        opcode: args.opcode,
    };
    println!("{:08X}", instr.encode()?);
    Ok(())
}

fn cmd_rocc_decode(args: RoccDecodeArgs) -> anyhow::Result<()> {
    let body = args.word.trim_start_matches("0x").trim_start_matches("0X");
    if body.len() != 8 {
        bail!("instruction word must be 8 hex chars, got {:?}", args.word);
    }
    let word = u32::from_str_radix(body, 16).context("parsing instruction word")?;
    let instr = RoccInstruction::decode(word, args.opcode)?;
    let funct = funct_name(instr.funct7);
    println!("word   {:08X}", word);
    match &funct {
        Ok(f) => println!("funct7 {:07b} ({} — {})", instr.funct7, f.name(), f.description()),
        Err(_) => println!("funct7 {:07b} (unknown function)", instr.funct7),
    }
    println!("rs2    {}", instr.rs2);
    println!("rs1    {}", instr.rs1);
    println!("xd     {}", instr.xd as u8);
    println!("xs1    {}", instr.xs1 as u8);
    println!("xs2    {}", instr.xs2 as u8);
    println!("rd     {}", instr.rd);
    println!("opcode {:07b}", instr.opcode);
    funct.map(drop)?;
    Ok(())
}
