mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krasner_core::{EqualityMode, Error, SupportPolicy, WitnessPredicate};

#[derive(Parser, Debug)]
#[command(
    name = "krasner",
    version,
    about = "Check and explore finite Krasner F^(m,n)-hyperrings"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Override the document's equality mode.
    #[arg(long, global = true)]
    pub mode: Option<EqualityMode>,
    /// Cap on tuple evaluations for axiom checks.
    #[arg(long, global = true, default_value_t = krasner_core::axioms::DEFAULT_TUPLE_BUDGET)]
    pub budget: u128,
    /// Largest carrier for ideal enumeration.
    #[arg(long, global = true, default_value_t = 16)]
    pub max_ideal_carrier: usize,
    /// Write the machine-readable report to a file, or `-` for standard output.
    #[arg(long, global = true)]
    pub json: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Powers,
    Primes,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CorpusArg {
    Lifts,
    Standard,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every axiom.
    Validate { file: PathBuf },
    /// List all F-hyperideals.
    Ideals { file: PathBuf },
    /// Per-ideal prime / maximal / primary / radical table.
    Classify {
        file: PathBuf,
        /// Allow the whole carrier to count as prime and primary.
        #[arg(long)]
        literal_definitions: bool,
    },
    /// F-radical of an ideal.
    Radical {
        file: PathBuf,
        /// Comma-separated element labels.
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Quotient by an ideal.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        /// Write the quotient structure document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Direct product of two structures.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a map between two structures.
    HomCheck {
        source: PathBuf,
        target: PathBuf,
        /// `a:b` pairs separated by commas, one per source element.
        #[arg(long)]
        map: String,
    },
    /// Lift a finite commutative ring.
    Lift {
        /// Lift Z_k.
        #[arg(long, conflicts_with = "ring")]
        modulus: Option<usize>,
        /// JSON file with `labels`, `add` and `mul` tables.
        #[arg(long)]
        ring: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        t1: String,
        #[arg(long, default_value = "1/3")]
        t2: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate small structures exhaustively.
    Search {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Comma-separated grades.
        #[arg(long, default_value = "1/1")]
        grid: String,
        #[arg(long, default_value = "singleton-only")]
        policy: SupportPolicy,
        /// Maximum support skeletons examined.
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
        /// Write each structure found into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// First structure/ideal pair satisfying a predicate.
    Witness {
        predicate: WitnessPredicate,
        /// Search these documents, in order, instead of a built-in corpus.
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = CorpusArg::Lifts)]
        corpus: CorpusArg,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Consistency(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = match commands::run(&cli.command, &cli.global) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("krasner: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    report.timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
    match cli.global.json.as_deref() {
        Some("-") => print!("{}", report.to_json()),
        Some(path) => {
            if let Err(e) = std::fs::write(path, report.to_json()) {
                eprintln!("krasner: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
            print!("{}", report.render());
        }
        None => print!("{}", report.render()),
    }
    if report.all_hold() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
