//! The `xeno` command line: plane construction and validation, solving,
//! strategy verification, record replay and the play service.
//!
//! Exit status is 0 on success, 1 when a validation or verification fails
//! (or an input cannot be read), and 2 on a usage error.

mod commands;
mod report;

use std::net::SocketAddr;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::{execute, load_game, load_plane};
pub use report::{PlaneBuildReport, ReplayReport, Report, SolveReport, ValidateReport, VerifyReport};

#[derive(Debug, Parser)]
#[command(name = "xeno", version, about = "Tic-tac-toe on finite affine planes")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or validate an affine plane.
    #[command(subcommand)]
    Plane(PlaneCommand),
    /// Solve a game from the empty board or a recorded position.
    Solve(SolveArgs),
    /// Check the first-player strategy against every second-player reply.
    VerifyStrategy(VerifyArgs),
    /// Replay a record and print the outcome.
    Replay(ReplayArgs),
    /// Run the HTTP play service.
    Serve(ServeArgs),
}

#[derive(Debug, Subcommand)]
pub enum PlaneCommand {
    /// Print a plane in the text format (JSON under `--format json`).
    Build {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Construction::Mols)]
        from: Construction,
    },
    /// Check the affine plane axioms. PLANE is `pi2`, `pi3`, `pi4` or a file.
    Validate { plane: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// Resolve the transversal design of a set of MOLS by its last square.
    Mols,
    /// Lines y = mx + b over the integers mod a prime.
    Field,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// `pi2`, `pi3`, `pi4`, `ttt` (the classic 3x3 board) or a plane file.
    #[arg(long, default_value = "pi4")]
    pub plane: String,
    /// Reduce positions by the plane's symmetry group.
    #[arg(long, conflicts_with = "no_symmetry")]
    pub symmetry: bool,
    /// Plain search (the default).
    #[arg(long)]
    pub no_symmetry: bool,
    /// Play on the projective completion. No running time is promised.
    #[arg(long)]
    pub stretch: bool,
    /// Start from the position at the end of a record file.
    #[arg(long)]
    pub from: Option<PathBuf>,
    /// Occupied points up to which positions are reduced by symmetry.
    #[arg(long, default_value_t = 6)]
    pub symmetry_depth: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `pi4` or a plane file of order 4.
    #[arg(long, default_value = "pi4")]
    pub plane: String,
    /// Randomly rename the points before verifying.
    #[arg(long)]
    pub relabel_seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub file: PathBuf,
    #[arg(long, default_value = "pi4")]
    pub plane: String,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = xeno_service::BIND_ENV, default_value = xeno_service::DEFAULT_BIND)]
    pub bind: SocketAddr,
    /// Maximum number of live sessions.
    #[arg(long, default_value_t = xeno_service::DEFAULT_CAPACITY)]
    pub capacity: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Design(#[from] xeno_core::designs::DesignError),
    #[error(transparent)]
    Game(#[from] xeno_core::game::GameError),
    #[error(transparent)]
    Record(#[from] xeno_core::game::RecordError),
    #[error(transparent)]
    Solver(#[from] xeno_core::solver::SolverError),
    #[error(transparent)]
    Strategy(#[from] xeno_core::strategy::StrategyError),
    #[error("{0}")]
    Usage(String),
}
