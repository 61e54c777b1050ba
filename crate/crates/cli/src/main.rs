//! `thetadelta`: evaluate operator expressions, run identity checks,
//! enumerate decorated Dyck paths and manage the on-disk caches.

mod commands;
mod config;
mod fail;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{parse_mode, Overrides, CACHE_ENV};
use fail::Failure;

#[derive(Parser, Debug)]
#[command(name = "thetadelta", version, about = "Exact Macdonald eigenoperators, decorated Dyck paths and identity checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// key=value configuration file; flags override it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Largest symmetric-function degree any computation may touch [default: 8]
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Coefficient arithmetic: exact or evaluated
    #[arg(long, global = true, value_parser = parse_mode)]
    pub mode: Option<thetadelta::coeffring::Mode>,
    /// Cache directory [env: THETADELTA_CACHE_DIR]
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for parallel checks
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for evaluation points and random inputs [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Machine-readable output
    #[arg(long, global = true)]
    pub json: bool,
    /// Report wall-clock times in verification reports
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    S,
    E,
    H,
    P,
    M,
    /// Modified Macdonald basis
    Htilde,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Quick,
    Full,
    Extended,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    List,
    Clear,
    Prewarm,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an operator expression and print it in a basis
    Expand {
        #[arg(long, value_enum, default_value = "s")]
        basis: BasisArg,
        /// Expression such as "Theta(e[1]) . nabla . C[2,1]"
        expr: String,
    },
    /// Run identity checks and print one JSON report per line
    Verify {
        #[arg(long, value_enum, conflicts_with = "check")]
        suite: Option<SuiteArg>,
        /// Check id, see --list
        #[arg(long)]
        check: Option<String>,
        /// Check parameter as key=value; values are JSON or plain text
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// List the registered checks
        #[arg(long, conflicts_with_all = ["suite", "check"])]
        list: bool,
    },
    /// Stream decorated labelled Dyck paths as CSV rows
    Enumerate {
        /// Path size
        #[arg(short = 'n')]
        n: usize,
        /// Number of decorated rises
        #[arg(short = 'k', default_value_t = 0)]
        k: usize,
        /// Keep only paths with this diagonal composition, e.g. 2,1
        #[arg(long)]
        dcomp: Option<String>,
        /// Largest label; 0 gives unlabelled paths [default: n]
        #[arg(long)]
        labels: Option<u32>,
    },
    /// List, clear or fill the H~ and M* caches
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
        /// Largest degree to prewarm [default: min(max-degree, 6)]
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Time representative computations of each module
    Bench {
        /// Problem size
        #[arg(long, default_value_t = 5)]
        degree: usize,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = cli.global;
    let flags = Overrides {
        max_degree: g.max_degree,
        mode: g.mode,
        cache_dir: g.cache_dir,
        threads: g.threads,
        seed: g.seed,
        json: g.json,
        timings: g.timings,
    };
    let settings = config::resolve(g.config.as_deref(), flags, std::env::var(CACHE_ENV).ok())?;
    if let Some(n) = settings.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("--threads: {e}")))?;
    }
    commands::dispatch(&settings, cli.command)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code() as u8)
        }
    }
}
