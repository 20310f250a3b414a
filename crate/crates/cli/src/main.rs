//! `momentope`: generate, verify and query moment polytope inequalities.

mod commands;
mod config;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "momentope", version, about = "Facet inequalities of moment polytopes of T*K^s (x V)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// ressayre or infinitesimal.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Drop inequalities an LP finds redundant (heuristic, floating point).
    #[arg(long)]
    prune_lp: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate the inequality list.
    Gen(#[command(flatten)] Common),
    /// Monte Carlo validation and facet tightness of a generated polytope.
    Verify {
        #[command(flatten)]
        common: Common,
        polytope: PathBuf,
    },
    /// Exact membership of a point.
    Check {
        #[command(flatten)]
        common: Common,
        polytope: PathBuf,
        point: PathBuf,
    },
    /// List the admissible elements.
    Admissible(#[command(flatten)] Common),
    /// Schubert classes and point coefficients on a flag variety.
    SchubertQuery {
        #[command(flatten)]
        common: Common,
        /// Group such as `su(3)`; defaults to the configured one.
        #[arg(long)]
        group: Option<String>,
        /// Comma-separated coordinates of gamma.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// Weyl group elements in one-line notation from 1, e.g. `2,1,3`. Repeatable.
        #[arg(long = "w")]
        w: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(c) => commands::generate(&c),
        Command::Verify { common, polytope } => commands::verify(&common, &polytope),
        Command::Check { common, polytope, point } => commands::check(&common, &polytope, &point),
        Command::Admissible(c) => commands::admissible(&c),
        Command::SchubertQuery { common, group, gamma, w } => {
            commands::schubert_query(&common, group.as_deref(), &gamma, &w)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("momentope: {e}");
            e.exit_code()
        }
    }
}
