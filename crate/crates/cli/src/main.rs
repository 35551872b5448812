mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use berge_core::error::Error as CoreError;

#[derive(Parser, Debug)]
#[command(
    name = "btl",
    version,
    about = "Berge paths, extremal constructions and connected Turán numbers"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output file; standard output when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker count forwarded to the search modules.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    /// Node budget for searches.
    #[arg(long, env = "BTL_BUDGET_NODES", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    /// Wall-clock budget in seconds (connected Turán search only).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub time_limit: Option<u64>,
    /// Accepted for reproducible scripts; every algorithm here is
    /// deterministic.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Hg,
}

#[derive(Args, Debug, Clone)]
pub struct Construction {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: usize,
    /// Block size; repeat for several blocks.
    #[arg(long = "b")]
    pub bs: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub r: usize,
    /// Accept `a < r - 1` and `n >= a + Σb`.
    #[arg(long)]
    pub permissive: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedClass {
    Core,
    CorePlus,
    CoreBlock,
    Pendant,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    MinSet,
    MaxDeficit,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build H(n, a, b1..bt) as a `.hg` file with a JSON partition header.
    Construct {
        #[command(flatten)]
        params: Construction,
        /// Extra hyperedge for the plus variant (no blocks allowed).
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        extra: Option<Vec<usize>>,
        /// Where the JSON header goes; defaults to the output path with a
        /// `.json` extension, or standard error.
        #[arg(long)]
        header: Option<PathBuf>,
    },
    /// Hyperedge count of a `.hg` file, or of a construction with its
    /// closed form.
    Count {
        #[arg(long, conflicts_with_all = ["n", "a", "bs"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "a")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        a: Option<usize>,
        #[arg(long = "b")]
        bs: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long)]
        permissive: bool,
    },
    /// Longest Berge path with a witness.
    LongestPath {
        #[arg(long)]
        input: PathBuf,
    },
    /// Longest Berge cycle with a witness.
    LongestCycle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        min_len: usize,
    },
    /// Whether the hypergraph has no Berge path of length k.
    CheckFree {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Membership in a stability target class with a certificate.
    Embed {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        a: usize,
        #[arg(long = "b")]
        bs: Vec<usize>,
        #[arg(long, value_enum, default_value_t = EmbedClass::Core)]
        class: EmbedClass,
    },
    /// Greedy removal of sets violating the set degree condition.
    Kernelize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Order::MinSet)]
        order: Order,
    },
    /// Exhaustive connected Turán number for small n.
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long)]
        k: usize,
        /// Frontier file for resuming an interrupted search.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Start from zero instead of the best construction.
        #[arg(long)]
        no_seed_construction: bool,
    },
    /// Exhaustive check of the longest cycle structure statements.
    AuditLemma1 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        min_len: usize,
    },
    /// Classify every extremal candidate above the stability threshold.
    VerifyStability {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long)]
        k: usize,
        /// Entries kept in the report; all are counted and digested.
        #[arg(long, default_value_t = 2000)]
        max_entries: usize,
    },
    /// Re-check a witness or certificate against a `.hg` file; exit 0 iff
    /// it holds.
    Verify {
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        hypergraph: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse { .. } => CliError::Io(e.to_string()),
            CoreError::BudgetExhausted(_) => CliError::Budget(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.global, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("btl: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
