//! `projfrechet`: distances, guarding sets, packedness, generators and the
//! Monte Carlo harness from the command line.
//!
//! Exit codes: 0 on success, 2 for usage or input errors, 3 when a result
//! fails its own validator.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use projfrechet::DistanceKind;

#[derive(Parser)]
#[command(
    name = "projfrechet",
    version,
    about = "Fréchet and DTW distortion under random projection"
)]
struct Cli {
    /// Layout of tabular output on stdout.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two curve files.
    Dist(DistArgs),
    /// Distortion of a pair under given or sampled directions.
    Project(ProjectArgs),
    /// Guarding set of a pair or of a distance matrix.
    Guard(GuardArgs),
    /// Packedness estimate of one curve.
    Cpack(CpackArgs),
    /// Write a generated family to files.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run the distortion protocols over a corpus.
    Mc(McArgs),
}

#[derive(Args)]
pub struct DistArgs {
    pub p: PathBuf,
    pub q: PathBuf,
    #[arg(long, default_value = "frechet")]
    pub kind: DistanceKind,
    /// Writes the optimal traversal as `i,j,distance` (1-based).
    #[arg(long)]
    pub witness: Option<PathBuf>,
}

#[derive(Args)]
pub struct ProjectArgs {
    pub p: PathBuf,
    pub q: PathBuf,
    #[arg(long, default_value = "frechet")]
    pub kind: DistanceKind,
    /// Comma-separated direction; normalised before use.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["seed", "samples"])]
    pub direction: Option<Vec<f64>>,
    #[arg(long, required_unless_present = "direction")]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Args)]
pub struct GuardArgs {
    #[arg(required_unless_present = "matrix", conflicts_with = "matrix")]
    pub p: Option<PathBuf>,
    #[arg(required_unless_present = "matrix")]
    pub q: Option<PathBuf>,
    /// Distance matrix file instead of two curves.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    /// Reference distance; the traversal value of the matrix by default.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Runs the trimming pipeline and emits the 4-guarding set.
    #[arg(long, conflicts_with_all = ["matrix", "theta", "delta"])]
    pub trim: bool,
    /// Member CSV path; the sidecar goes next to it with a `.json` extension.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CpackArgs {
    pub file: PathBuf,
    /// Sample points per edge tried as ball centres.
    #[arg(long, default_value_t = projfrechet::packing::DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// Estimates at or above this are flagged as not c-packed.
    #[arg(long, default_value_t = 3.0)]
    pub packed_threshold: f64,
}

#[derive(Subcommand)]
pub enum GenCommand {
    /// Straight segment P against a two-segment Q.
    Wedge {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Stars with k and k+1 rays.
    Star {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        hats: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Distance matrix with the fork pattern.
    Fork {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random walks with unit steps, plus a manifest listing them.
    Walk {
        #[arg(long)]
        t: usize,
        /// Upper end of a uniform complexity range starting at `t`.
        #[arg(long)]
        t_max: Option<usize>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
pub struct McArgs {
    /// Manifest file (`id path` lines) or a directory of curve files.
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Number of sampled pairs.
    #[arg(long, default_value_t = 504)]
    pub pairs: usize,
    /// Directions per pair.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Ambient dimension; taken from the first curve by default.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value = "frechet")]
    pub kind: DistanceKind,
    #[arg(long, value_delimiter = ',')]
    pub prefix: Vec<usize>,
    /// Adds random windows of the prefix lengths.
    #[arg(long, requires = "prefix")]
    pub subcurve: bool,
    #[arg(long, value_delimiter = ',')]
    pub gamma: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub buckets: Vec<usize>,
    /// Keeps curves with complexity in `lo,hi`.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub filter: Option<Vec<usize>>,
    #[arg(long)]
    pub workers: Option<usize>,
}

/// A result that failed its own validator.
#[derive(Debug)]
pub struct Invariant(pub String);

impl std::fmt::Display for Invariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invariant violated: {}", self.0)
    }
}

impl std::error::Error for Invariant {}

/// The error chain joined by `: `, skipping causes already quoted by the
/// message above them.
fn describe(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !out.ends_with(&msg) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&msg);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Dist(a) => commands::dist(a, cli.format),
        Command::Project(a) => commands::project(a, cli.format),
        Command::Guard(a) => commands::guard(a, cli.format),
        Command::Cpack(a) => commands::cpack(a, cli.format),
        Command::Gen(g) => commands::gen(g, cli.format),
        Command::Mc(a) => commands::mc(a, cli.format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            if e.downcast_ref::<Invariant>().is_some() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
