use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use rarebit::measure::MeasureParams;
use rarebit::IntPolynomial;
use rarebit_cli::cache::Cache;
use rarebit_cli::checkpoints::parse_checkpoints;
use rarebit_cli::report::Format;
use rarebit_cli::reproduce::{self, ReproduceArgs, DEFAULT_MAX_BUDGET};
use rarebit_cli::{
    cmd_generate, cmd_measure, cmd_recheck, cmd_verify, cmd_witness, descriptor_from_flags, describe_witness, exit_code,
    CheckFailed,
};

const MEASURE_HELP: &str = "\
Measures and their CSV columns:
  moc        N,M,i,j                   maximum order complexity; (i,j) witness positions
  expansion  N,E,status                status is value, zero-prefix or exceeded>D
  corr2      N,C2,M,d1,d2              correlation of order 2 with the maximizing window and lags
  subword    N,k,p                     number of distinct length-k factors
  blocks     N,k,distinct,max_deviation   one row per block length 1..=k

Exit codes: 0 pass, 1 check failed, 2 usage error, 3 internal verification failure.";

#[derive(Parser)]
#[command(name = "rarebit", version, about = "Pseudorandomness measures of automatic sequences and their polynomial subsequences", after_help = MEASURE_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a sequence prefix to an .rbsq file.
    Generate {
        /// tm, rs, pattern or general; may carry key=value fields.
        generator: String,
        /// Pattern length for `pattern`.
        #[arg(long)]
        k: Option<usize>,
        /// Digit base q for `general`.
        #[arg(long)]
        base: Option<u32>,
        /// Modulus m for `general`.
        #[arg(long = "mod")]
        modulus: Option<u32>,
        /// Pattern digits, most significant first, for `general`.
        #[arg(long)]
        pattern: Option<String>,
        /// Rarefying polynomial, coefficients low to high (e.g. 0,0,1).
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(short = 'n', long = "len")]
        n: usize,
        #[arg(short, long)]
        out: PathBuf,
        /// Skip the cache in $RAREBIT_CACHE or the per-user cache directory.
        #[arg(long)]
        no_cache: bool,
    },
    /// Compute a measure at checkpoints of a sequence file.
    Measure {
        file: PathBuf,
        #[arg(long, default_value = "moc")]
        measure: String,
        /// Comma list or pow2:A..B; defaults to the file length.
        #[arg(long)]
        checkpoints: Option<String>,
        /// Degree bound for expansion complexity.
        #[arg(long, default_value_t = 30)]
        dmax: usize,
        /// Block length for subword and blocks.
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value = "suffix-automaton")]
        engine: String,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an annihilator (one `i,j` exponent pair per line) against a file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        annihilator: PathBuf,
        #[arg(long)]
        len: Option<usize>,
    },
    /// Construct a witness for a monic polynomial and optionally certify a bound.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Issue a bound certificate at this N and compare with the measured M.
        #[arg(long)]
        certify: Option<usize>,
    },
    /// Re-verify a certificate file.
    Recheck { certificate: PathBuf },
    /// Desk-scale checks of the four lower bounds on M(S, N).
    Reproduce {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        theorem: u8,
        /// Largest N.
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_BUDGET)]
        max_budget: usize,
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => rarebit_cli::seqfile::write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { generator, k, base, modulus, pattern, poly, n, out, no_cache } => {
            let g = descriptor_from_flags(&generator, k, base, modulus, pattern.as_deref(), poly.as_deref())?;
            let cache = if no_cache { None } else { Some(Cache::from_env()?) };
            let o = cmd_generate(&g, n, &out, cache.as_ref())?;
            println!(
                "wrote {} ({g}, {} symbols, sha256 {}, cache {})",
                out.display(),
                o.len,
                o.sha256,
                if o.cache_hit { "hit" } else if no_cache { "off" } else { "miss" }
            );
        }
        Command::Measure { file, measure, checkpoints, dmax, k, engine, format, out } => {
            let checkpoints = checkpoints.as_deref().map(parse_checkpoints).transpose()?;
            let params = MeasureParams { max_degree: dmax, block_len: k, engine };
            let report = cmd_measure(&file, &measure, checkpoints, &params)?;
            emit(&report.render(format), out.as_ref())?;
        }
        Command::Verify { file, annihilator, len } => {
            let ok = cmd_verify(&file, &annihilator, len)?;
            println!("annihilates: {ok}");
            if !ok {
                return Err(CheckFailed("polynomial does not annihilate the prefix".into()).into());
            }
        }
        Command::Witness { poly, k, certify } => {
            let poly: IntPolynomial = poly.parse()?;
            let o = cmd_witness(&poly, k, certify)?;
            println!("normalization-shift: {}", o.normalization_shift);
            print!("{}", describe_witness(&o.witness));
            if let Some((cert, m)) = o.certificate {
                println!();
                print!("{}", cert.to_text());
                println!("measured-M: {m}");
            }
        }
        Command::Recheck { certificate } => {
            let cert = cmd_recheck(&certificate)?;
            println!("certificate ok: M(S, {}) >= {}", cert.n, cert.bound);
        }
        Command::Reproduce { theorem, budget, k, poly, max_budget, format, out } => {
            let poly = poly.map(|p| p.parse::<IntPolynomial>()).transpose()?;
            let report = reproduce::run(&ReproduceArgs { theorem, budget, k, poly, max_budget })?;
            emit(&report.render(format), out.as_ref())?;
            if report.passed == Some(false) {
                return Err(CheckFailed(format!("theorem {theorem}: some checkpoints fail")).into());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
