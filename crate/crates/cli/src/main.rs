use clap::{Args, Parser, Subcommand};
use partition_fptas::{Epsilon, SolverConfig};
use partition_fptas_cli::bench::{self, Sweep};
use partition_fptas_cli::commands::{
    parse_constant, run_oracle, run_selftest, run_solve, Limits, SolveOptions,
};
use partition_fptas_cli::input::read_source;
use partition_fptas_cli::report::Format;
use partition_fptas_cli::{exit, CliError, Result};
use std::path::PathBuf;
use std::time::Duration;

/// Deterministic (1 - ε)-approximation for Partition.
#[derive(Debug, Parser)]
#[command(name = "pfptas", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Approximate the best split of the input multiset.
    Solve(SolveArgs),
    /// Exact optimum by dynamic programming or enumeration.
    Oracle(OracleArgs),
    /// Time the solver over generated instances and print CSV.
    Bench(BenchArgs),
    /// Check the solver against the exact optimum on random instances.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct Io {
    /// Instance file; `-` or absent reads stdin.
    #[arg(long, short, env = "PFPTAS_INPUT")]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, short, env = "PFPTAS_OUTPUT")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json", env = "PFPTAS_FORMAT")]
    format: Format,
    /// Comma-separated `key=value` limits: precision, oracle-sum, n.
    #[arg(long, default_value = "", env = "PFPTAS_LIMITS")]
    limits: String,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    io: Io,
    /// `1/E`, `p/q` or a decimal; rounded down to the form `1/E`.
    #[arg(long, short, default_value = "1/10", env = "PFPTAS_EPSILON")]
    epsilon: String,
    #[arg(long, default_value_t = 1, env = "PFPTAS_THREADS")]
    threads: usize,
    /// Constant of the early-termination threshold.
    #[arg(long, default_value = "1", env = "PFPTAS_CONSTANT_C")]
    constant_c: String,
    /// Include wall time per stage. Reports are no longer reproducible.
    #[arg(long, env = "PFPTAS_TIMINGS")]
    timings: bool,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    io: Io,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Instance sizes, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000")]
    n: Vec<usize>,
    /// Values of `E = 1/ε`, comma-separated.
    #[arg(long = "e", value_delimiter = ',', default_value = "10,100")]
    e: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    min_value: u64,
    #[arg(long, default_value_t = 1_000_000)]
    max_value: u64,
    #[arg(long, default_value_t = 0, env = "PFPTAS_SEED")]
    seed: u64,
    /// Skip larger `E` at an `n` once one run exceeds this many seconds.
    #[arg(long)]
    budget_secs: Option<f64>,
    #[arg(long, default_value_t = 1, env = "PFPTAS_THREADS")]
    threads: usize,
    #[arg(long, default_value = "1", env = "PFPTAS_CONSTANT_C")]
    constant_c: String,
    #[arg(long, default_value = "", env = "PFPTAS_LIMITS")]
    limits: String,
    #[arg(long, short, env = "PFPTAS_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 200)]
    cases: usize,
    #[arg(long, default_value_t = 0, env = "PFPTAS_SEED")]
    seed: u64,
    #[arg(long, default_value_t = 1, env = "PFPTAS_THREADS")]
    threads: usize,
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Other(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve(a) => {
            let opts = SolveOptions {
                epsilon: Epsilon::parse(&a.epsilon).map_err(|e| CliError::Input(e.to_string()))?,
                threshold: parse_constant(&a.constant_c)?,
                limits: Limits::parse(&a.io.limits)?,
                threads: a.threads,
                timings: a.timings,
            };
            let bytes = read_source(a.io.input.as_deref())?;
            let report = run_solve(&bytes, &opts)?;
            emit(a.io.output.as_ref(), &report.render(a.io.format))?;
        }
        Command::Oracle(a) => {
            let limits = Limits::parse(&a.io.limits)?;
            let bytes = read_source(a.io.input.as_deref())?;
            let report = run_oracle(&bytes, &limits)?;
            emit(a.io.output.as_ref(), &report.render(a.io.format))?;
        }
        Command::Bench(a) => {
            if a.min_value == 0 || a.min_value > a.max_value {
                return Err(CliError::Input("need 1 <= min-value <= max-value".into()));
            }
            let limits = Limits::parse(&a.limits)?;
            let config = SolverConfig {
                threshold: parse_constant(&a.constant_c)?,
                max_internal_precision: limits.precision,
                threads: Some(a.threads.max(1)),
            };
            let sweep = Sweep {
                ns: a.n,
                es: a.e,
                lo: a.min_value,
                hi: a.max_value,
                seed: a.seed,
                budget: a.budget_secs.map(Duration::from_secs_f64),
            };
            let rows = bench::run(&sweep, &config)?;
            emit(a.output.as_ref(), &bench::to_csv(&rows))?;
        }
        Command::Selftest(a) => {
            let summary = run_selftest(a.cases, a.seed, a.threads)?;
            for f in &summary.failures {
                eprintln!("{f}");
            }
            println!(
                "selftest: {} cases, {} failures",
                summary.cases,
                summary.failures.len()
            );
            if !summary.failures.is_empty() {
                return Ok(exit::FAILURE);
            }
        }
    }
    Ok(exit::OK)
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("pfptas: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
