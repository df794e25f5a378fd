use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use evimg::{FdVect, FinMet, FinPoset, FinSet, Rat};

mod commands;
mod document;
mod instance;
mod report;

use commands::{Options, Suite};
use document::{Category, Diagnostic, InputDocument, Source};
use instance::Instance;
use report::Report;

const DEFAULT_SEED: u64 = 20_240_601;

/// Eventual images of endomorphisms of finite sets, finite-dimensional
/// rational vector spaces, finite metric spaces and finite posets.
#[derive(Parser)]
#[command(name = "evimg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Seed for randomized suites.
    #[arg(long, global = true, env = "EVIMG_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Largest subobject lattice the coalgebra oracle will enumerate.
    #[arg(long, global = true, default_value_t = 1 << 12)]
    oracle_guard: u128,

    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the eventual image with both algorithms and all extras.
    Analyze { path: PathBuf },
    /// Run property suites and oracles.
    Verify {
        path: PathBuf,
        /// Comma-separated suites to run.
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = Suite::all())]
        suites: Vec<Suite>,
        /// Size bound for the universal-property oracle; 0 skips it.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Replace the eventual idempotent by a wrong one before checking.
        #[arg(long, hide = true)]
        inject_wrong_idempotent: bool,
    },
    /// Compare two endomorphisms: shift equivalence, eventual equivalence
    /// and conjugacy invariants.
    Compare { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pretty,
    Machine,
}

fn dispatch<C: Instance>(command: &Command, src: &Source, doc: InputDocument, cli: &Cli) -> Result<Report, Diagnostic> {
    match command {
        Command::Analyze { .. } => commands::analyze::<C>(src, doc),
        Command::Verify { suites, k, inject_wrong_idempotent, .. } => {
            let opts = Options {
                seed: cli.seed,
                oracle_guard: cli.oracle_guard,
                suites: suites.clone(),
                k: *k,
                inject_wrong_idempotent: *inject_wrong_idempotent,
            };
            commands::verify::<C>(src, doc, &opts)
        }
        Command::Compare { .. } => commands::compare::<C>(src, doc),
    }
}

fn run(cli: &Cli) -> Result<Report, String> {
    let path = match &cli.command {
        Command::Analyze { path } | Command::Verify { path, .. } | Command::Compare { path } => path,
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let src = Source::new(text);
    let start = Instant::now();
    let located = |d: Diagnostic| format!("{}: {d}", path.display());
    let doc = src.parse().map_err(located)?;
    let mut report = match doc.category {
        Category::Finset => dispatch::<FinSet>(&cli.command, &src, doc, cli),
        Category::Fdvect => dispatch::<FdVect<Rat>>(&cli.command, &src, doc, cli),
        Category::Finmet => dispatch::<FinMet<Rat>>(&cli.command, &src, doc, cli),
        Category::Finposet => dispatch::<FinPoset>(&cli.command, &src, doc, cli),
    }
    .map_err(located)?;
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Pretty => report.pretty(),
                Format::Machine => report.machine(),
            };
            print!("{text}");
            if report.failed() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
