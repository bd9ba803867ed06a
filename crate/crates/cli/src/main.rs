use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "vc-compress",
    version,
    about = "Finite VC combinatorics: teaching sets, compressible concepts, rounded averages, hypes and honest definitions"
)]
pub struct Cli {
    /// Emit JSON instead of a human-readable table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for random generators and report suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Exit with status 4 when a bounded search is exhausted.
    #[arg(long, global = true)]
    pub strict: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Family {
    FullCube,
    Singletons,
    Thresholds,
    Intervals,
    UnionsOfIntervals,
    HalfplanesOnGrid,
    OrderRelation,
    RandomFiltered,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    pub family: Family,
    /// Ground size.
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    /// Maximum number of intervals per concept.
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    #[arg(long, default_value_t = 3)]
    pub width: usize,
    #[arg(long, default_value_t = 3)]
    pub height: usize,
    /// Target number of concepts for random classes.
    #[arg(long, default_value_t = 16)]
    pub concepts: usize,
    #[arg(long, default_value_t = 2)]
    pub max_vc: usize,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Majority threshold as `p/q` in [1/2, 1).
    #[arg(long, default_value = "1/2")]
    pub alpha: String,
    /// Largest number of components to try.
    #[arg(long, default_value_t = 5)]
    pub nmax: usize,
    /// Teaching-dimension bound for components (default: kc(vc)).
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum HypeVerb {
    Check,
    Family,
    Decompose,
    Cover,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a class (`.ssys`) or relation (`.brel`).
    Gen(GenArgs),
    /// VC dimension and a largest shattered set.
    Vc { file: PathBuf },
    /// The dual class.
    Dual { file: PathBuf },
    /// Minimum teaching sets, for one concept or all of them.
    Teach {
        file: PathBuf,
        #[arg(long)]
        concept: Option<String>,
    },
    /// Recursive teaching sequence.
    Rtd { file: PathBuf },
    /// A kc(vc)-compressible concept with its certificate.
    Compress { file: PathBuf },
    /// Extend a partial labeling (`0`, `1`, `-`) to a compressible concept.
    Extend {
        file: PathBuf,
        #[arg(long)]
        partial: String,
        /// Teaching-set budget of the partial labeling (default: its minimum).
        #[arg(long)]
        l: Option<usize>,
    },
    /// Rounded-average decomposition of a member into compressible members.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// (p,q)-property and a minimum transversal.
    Pq {
        file: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// k-hype operations.
    Hype {
        verb: HypeVerb,
        file: PathBuf,
        /// The labeling Γ (ignored by `family`).
        gamma: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Honest definitions for every column of a relation.
    Udtfs {
        file: PathBuf,
        /// Parameter set A as comma-separated row indices (default: all rows).
        #[arg(long = "A")]
        a: Option<String>,
        #[arg(long, default_value = "1/2")]
        alpha: String,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Run a named sweep and emit JSON.
    Report {
        #[arg(long, default_value = "bounds")]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => match commands::emit(&cli, &out.text) {
            Ok(()) => {
                if cli.strict && out.exhausted {
                    ExitCode::from(4)
                } else {
                    ExitCode::SUCCESS
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
