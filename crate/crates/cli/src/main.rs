//! Command-line front end: generate instances, pack them, verify results,
//! solve small instances exactly, evaluate coverage bounds, and render SVG
//! figures.
//!
//! Exit codes: 0 on success, 1 when validation or verification fails, 2 on
//! usage errors.

mod commands;
mod files;
mod render;

use clap::{Parser, Subcommand, ValueEnum};
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

/// A failure the user can act on: bad input, infeasible parameters, or a
/// verification that did not pass.
#[derive(Debug)]
pub struct Failure(pub String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failure {}

impl From<anchoredpack::Error> for Failure {
    fn from(e: anchoredpack::Error) -> Self {
        Failure(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "anchoredpack", version, about = "Anchored rectangle packings in the unit square", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a point-set instance file
    #[command(subcommand)]
    Generate(GenerateKind),
    /// Pack an instance and write the resulting rectangles
    Pack {
        /// Packing algorithm
        #[arg(long, value_enum)]
        algo: PackAlgo,
        /// Instance file to pack
        #[arg(long = "in")]
        input: PathBuf,
        /// Result file to write
        #[arg(long)]
        out: PathBuf,
        /// Processing order for the greedy packer
        #[arg(long, value_enum, default_value = "sweep")]
        order: OrderChoice,
    },
    /// Check a result file against its instance
    Verify {
        /// Instance file
        #[arg(long = "in")]
        input: PathBuf,
        /// Result file to check
        #[arg(long)]
        result: PathBuf,
    },
    /// Solve a small instance exactly and print the coverage sandwich
    Optimal {
        /// Instance file
        #[arg(long = "in")]
        input: PathBuf,
        /// Largest instance the exact solver accepts
        #[arg(long = "max-n")]
        max_n: Option<usize>,
        /// Result file for the optimal packing
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate or optimize the coverage lower bounds
    Bounds {
        #[arg(long, value_enum)]
        mode: BoundsMode,
        /// Tile area-to-rectangle ratio threshold (simple mode)
        #[arg(long, required_if_eq("mode", "simple"))]
        beta: Option<f64>,
        /// Charge aspect parameter in (0, 1)
        #[arg(
            long,
            required_if_eq("mode", "simple"),
            required_if_eq("mode", "integrated")
        )]
        lambda: Option<f64>,
        /// Lower integration limit for the threshold (integrated mode)
        #[arg(long, required_if_eq("mode", "integrated"))]
        beta0: Option<f64>,
    },
    /// Draw an instance and its packing as an SVG figure
    Render {
        /// Instance file
        #[arg(long = "in")]
        input: PathBuf,
        /// Result file with the rectangles to draw
        #[arg(long)]
        result: PathBuf,
        /// SVG file to write
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Equally spaced points on the main diagonal
    Diagonal {
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Grid points of a permutation, given as comma-separated values
    Permutation {
        /// Permutation of 0..n with first value 0, e.g. 0,3,1,2
        perm: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// The origin plus seeded random points
    Random {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// A reveal sequence that keeps greedy coverage below epsilon
    Adversary {
        /// Coverage target in (0, 1), exact (e.g. 0.5 or 1/2)
        epsilon: String,
        /// Cap on the number of staircases in the construction
        #[arg(long = "max-staircases")]
        max_staircases: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Corners of a staircase hugging a hyperbola, plus the origin
    Hyperbola {
        /// Area-to-rectangle ratio the staircase certifies, exact
        beta: String,
        /// Number of steps
        m: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Add companions below and left of every interior point
    Densify {
        /// Instance file to densify
        #[arg(long = "in")]
        input: PathBuf,
        /// Companion offset, exact (e.g. 1/1000)
        #[arg(long)]
        eps: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PackAlgo {
    Tile,
    Greedy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderChoice {
    /// Decreasing x + y, ties toward larger x, origin last
    Sweep,
    /// The order embedded in the instance file
    File,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundsMode {
    Simple,
    Integrated,
    Optimize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(1)
        }
    }
}
