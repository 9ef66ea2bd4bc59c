mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "symdyn", version, about = "Language, Rauzy graph and loop-itinerary reports for minimal subshifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Complexity, growth, regular bispecial condition and periodicity.
    Analyze(AnalyzeArgs),
    /// Rauzy graph and special Rauzy graph of one length.
    Rauzy(RauzyArgs),
    /// Special Rauzy graph evolution across bispecial lengths.
    Evolve(EvolveArgs),
    /// Exit words of a word with a given step.
    Exitwords(ExitArgs),
    /// Block densities and the special-word density floor.
    Density(DensityArgs),
    /// Validate an abstract graph, optionally searching for loop colorings.
    Abstract(AbstractArgs),
    /// Check an itinerary and build its Xi graph.
    Xi(XiArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Horizon H: longest factor length the language oracle knows.
    #[arg(long, default_value_t = 40)]
    pub horizon: usize,
    /// Directory for report files; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
}

#[derive(Args, Debug, Clone, Serialize)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Substitution spec (JSON: alphabet, rules, seed).
    #[arg(long)]
    pub substitution: Option<PathBuf>,
    /// Interval exchange spec (JSON: d, lambda, pi, z).
    #[arg(long)]
    pub iet: Option<PathBuf>,
    /// Sequence file: `alphabet: a,b` then symbols.
    #[arg(long)]
    pub seq: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SourceArgs {
    #[command(flatten)]
    pub source: Source,
    /// Prefix length generated from a substitution or IET.
    #[arg(long, default_value_t = 100_000)]
    pub length: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: SourceArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct RauzyArgs {
    #[command(flatten)]
    pub input: SourceArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub input: SourceArgs,
    /// Range `A..B` or `A..=B` of lengths n' reached by the RBS events.
    #[arg(long)]
    pub n: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct ExitArgs {
    #[command(flatten)]
    pub input: SourceArgs,
    /// The word w, in the input's symbols.
    #[arg(long)]
    pub w: String,
    /// Step q.
    #[arg(long)]
    pub q: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Args, Debug, Serialize)]
pub struct DensityArgs {
    #[command(flatten)]
    pub input: SourceArgs,
    /// Check the density floor over special words of length n.
    #[arg(long)]
    pub special: bool,
    #[arg(long)]
    pub n: Option<usize>,
    /// A single word whose block density is estimated.
    #[arg(long)]
    pub w: Option<String>,
    #[arg(long, value_enum, default_value_t = SideArg::Both)]
    pub side: SideArg,
    /// Growth constant K; read from the growth profile when absent.
    #[arg(long)]
    pub k: Option<usize>,
    /// Threshold for `--w`; defaults to 1/(4K).
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub theta_tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct AbstractArgs {
    /// JSON with `graph` and optional `coloring`, `loops` and `colors`.
    #[arg(long)]
    pub graph: PathBuf,
    /// Search for this many disjoint colored loops.
    #[arg(long)]
    pub search: Option<usize>,
    /// Longest loop tried by the search.
    #[arg(long)]
    pub max_len: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct XiArgs {
    /// Itinerary JSON.
    #[arg(long)]
    pub itinerary: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

/// Exit status for an error: 2 for horizon problems, 1 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    let horizon = err.chain().any(|e| e.downcast_ref::<symdyn::Error>().is_some_and(symdyn::Error::is_horizon));
    if horizon {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
