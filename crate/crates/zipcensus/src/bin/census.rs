use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;
use zipcensus::census::{CocharSpec, Family};
use zipcensus::{run_census, CensusConfig, OutputFormat};

/// Classification census for the zip strata of a classical group.
///
/// Exit codes: 0 clean, 1 symbolic/oracle mismatch, 2 invalid configuration.
#[derive(Parser)]
#[command(name = "census")]
struct Args {
    /// Group family: gl, sp, or gu
    #[arg(long)]
    family: String,
    /// Rank n (GL_n, Sp_2n, GU_n)
    #[arg(long)]
    rank: usize,
    /// Cocharacter: block signature like "2,2" (for sp over the full 2n
    /// coordinates, mirror-symmetric), or an explicit type like "I={s1,s3}"
    #[arg(long)]
    cochar: String,
    /// Field size (a prime power)
    #[arg(long)]
    q: u64,
    /// Verify each stratum against the brute-force matrix oracle
    #[arg(long)]
    oracle: bool,
    /// Output format: table, json, or dot
    #[arg(long, default_value = "table")]
    format: String,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let invalid = |msg: String| {
        eprintln!("census: {msg}");
        ExitCode::from(2)
    };
    let family = match args.family.as_str() {
        "gl" => Family::Gl,
        "sp" => Family::Sp,
        "gu" => Family::Gu,
        other => return invalid(format!("unknown family '{other}' (expected gl, sp, or gu)")),
    };
    let format = match args.format.as_str() {
        "table" => OutputFormat::Table,
        "json" => OutputFormat::Json,
        "dot" => OutputFormat::Dot,
        other => return invalid(format!("unknown format '{other}' (expected table, json, or dot)")),
    };
    let cochar = match CocharSpec::parse(&args.cochar) {
        Ok(c) => c,
        Err(e) => return invalid(e.to_string()),
    };
    let cfg = CensusConfig {
        family,
        rank: args.rank,
        cochar,
        q: args.q,
        oracle: args.oracle,
        format,
    };
    let report = match run_census(&cfg) {
        Ok(r) => r,
        Err(e) => return invalid(e.to_string()),
    };
    let text = report.render(format);
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return invalid(format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    if report.failed() {
        eprintln!(
            "census: {} stratum/strata disagree with the oracle",
            report.mismatches()
        );
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
