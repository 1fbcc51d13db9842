//! `eulerdie`: number tables, identity checks, involution traces and
//! poset/complex pipelines.

mod corpus;
mod output;
mod run;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "eulerdie", version, about = "Exact Eulerian-number tables and involution checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Report wall-clock time for verifications.
    #[arg(long, global = true)]
    pub timing: bool,

    /// Largest permutation length enumerated directly.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_n: usize,

    /// Largest number of objects a single enumeration may visit.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    pub max_items: u64,

    /// Largest n accepted for the barycentric complexes.
    #[arg(long, global = true, default_value_t = 7)]
    pub max_delta_n: usize,

    /// Write the fixture posets and complexes into DIR.
    #[arg(long, value_name = "DIR")]
    pub seed_corpus: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a triangle of exact values.
    Numbers {
        #[arg(value_enum)]
        kind: TableArg,
        n_max: usize,
    },
    /// Check an identity or an involution over a range of parameters.
    Verify(verify::VerifyArgs),
    /// Poset pipelines.
    Poset {
        #[arg(value_enum)]
        action: PosetAction,
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Reject covers implied by transitivity.
        #[arg(long)]
        strict: bool,
    },
    /// Simplicial complex pipelines. Use FILE or --n for the barycentric complexes.
    Complex {
        #[arg(value_enum)]
        action: ComplexAction,
        file: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        /// With --n: subdivide the boundary of the simplex instead.
        #[arg(long)]
        boundary: bool,
        /// Interval partition JSON.
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// Apply a toggle to one element given in text form.
    Trace {
        #[arg(value_enum)]
        involution: TraceArg,
        input: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    Eulerian,
    Stirling,
    Binomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PosetAction {
    Linext,
    PEulerian,
    Omega,
    HasseDot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComplexAction {
    Fvector,
    Hvector,
    Partition,
    VerifyPartition,
    Barycentric,
    Delta,
    Facedot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TraceArg {
    Iota1,
    Iota2,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
