//! `fano-forge`: verification runs over the toric toolkit.

pub mod commands;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fano_forge_core::polyring::{EliminationOrder, GbOptions, DEFAULT_BUDGET};

pub use report::{Assertion, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Lex,
    Block,
}

impl From<Order> for EliminationOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Lex => EliminationOrder::Lex,
            Order::Block => EliminationOrder::Block,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fano-forge", version, about = "Exact toric-geometry verification runs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Elimination order for discriminants.
    #[arg(long, global = true, value_enum, default_value = "block")]
    pub order: Order,
    /// Truncation order for formal lifts.
    #[arg(long, global = true, default_value_t = 6)]
    pub k: usize,
    /// Coordinate bound for Hilbert basis searches.
    #[arg(long, global = true)]
    pub hilbert_bound: Option<i64>,
    /// Cap on Gröbner reduction steps.
    #[arg(long, global = true, env = "FANO_FORGE_BUDGET")]
    pub budget: Option<u64>,
    /// Include wall-clock timings (makes the report non-deterministic).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polytope invariants, K-polystability and face-fan singularities (or a fan's singularities).
    Analyze { path: PathBuf },
    /// Lattice automorphisms and their action on the smoothing parameters.
    Aut { path: PathBuf },
    /// Toric morphism, Cox pullbacks, image equation and chart embeddings.
    Embed { matrix: PathBuf, source: PathBuf, target: PathBuf },
    /// Chart families, smoothing-parameter map and discriminants of a family.
    Deform { path: PathBuf },
    /// Discriminant of a hypersurface family by elimination.
    Discriminant {
        path: PathBuf,
        /// Fiber variables, comma separated (overrides the file).
        #[arg(long, value_delimiter = ',')]
        fiber: Option<Vec<String>>,
        /// Base parameters, comma separated (overrides the file).
        #[arg(long, value_delimiter = ',')]
        base: Option<Vec<String>>,
    },
    /// Complete-intersection presentation from a scaffolding.
    Laurent { path: PathBuf },
    /// Formal coordinate change absorbing the quadratic corrections.
    Hensel,
}

/// Flags shared by the commands.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub order: EliminationOrder,
    pub k: usize,
    pub hilbert_bound: Option<i64>,
    pub gb: GbOptions,
}

impl Cli {
    pub fn settings(&self) -> Settings {
        Settings {
            order: self.order.into(),
            k: self.k,
            hilbert_bound: self.hilbert_bound,
            gb: GbOptions { budget: self.budget.unwrap_or(DEFAULT_BUDGET) },
        }
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<RunReport> {
    let s = cli.settings();
    let run = match &cli.command {
        Command::Analyze { path } => commands::analyze(path, s)?,
        Command::Aut { path } => commands::aut(path, s)?,
        Command::Embed { matrix, source, target } => commands::embed(matrix, source, target, s)?,
        Command::Deform { path } => commands::deform(path, s)?,
        Command::Discriminant { path, fiber, base } => commands::discriminant(path, fiber.as_deref(), base.as_deref(), s)?,
        Command::Laurent { path } => commands::laurent(path, s)?,
        Command::Hensel => commands::hensel(s)?,
    };
    Ok(run.finish(cli.timings))
}
