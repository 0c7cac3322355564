//! Command-line surface for the twocover toolkit.
//!
//! Exit codes: 0 verified/success, 1 verification deviation, 2 usage or
//! parse error. JSON goes to standard output (or `--out`); human-readable
//! prose goes to standard error and `--quiet` suppresses it.

mod commands;
mod dot;
mod paper_verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "twocover", version, about = "Verification toolkit for combinatorial 2-complexes and their coverings")]
pub(crate) struct Cli {
    /// Suppress human-readable prose on stderr (never the JSON)
    #[arg(long, global = true)]
    pub(crate) quiet: bool,
    /// Write the JSON output to a file instead of standard output
    #[arg(long, global = true)]
    pub(crate) out: Option<PathBuf>,
    #[command(subcommand)]
    pub(crate) command: Command,
}

#[derive(Subcommand)]
pub(crate) enum Command {
    /// Emit a catalog object as JSON
    Build {
        #[command(subcommand)]
        target: BuildTarget,
    },
    /// Check the covering conditions of a cellular map file
    VerifyCover {
        /// Map file; its source/target may embed complexes or reference paths
        #[arg(long)]
        map: PathBuf,
    },
    /// Present the fundamental group of a connected complex
    Pi1 {
        #[arg(long)]
        complex: PathBuf,
        /// Comma-separated spanning-tree edge names (defaults to a BFS tree)
        #[arg(long)]
        spanning_tree: Option<String>,
    },
    /// Greedily simplify a presentation, emitting the move log
    Simplify {
        #[arg(long)]
        presentation: PathBuf,
    },
    /// Present the kernel of a homomorphism onto Z/k
    Rs {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        modulus: usize,
        /// Generator residues as gen:residue, repeatable
        #[arg(long = "image")]
        images: Vec<String>,
        #[arg(long)]
        designated: String,
    },
    /// Search for a finite common cover of two complexes
    SearchCommonCover {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_a: usize,
        #[arg(long, default_value_t = 3)]
        max_b: usize,
    },
    /// Re-emit a complex or map file as canonical JSON or DOT
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
    },
    /// Run the whole verification pipeline and write a structured report
    PaperVerify(PaperVerifyArgs),
}

#[derive(Subcommand)]
pub(crate) enum BuildTarget {
    /// The two-cell complex K
    #[command(alias = "K")]
    K,
    /// The four-cell complex L
    #[command(alias = "L")]
    L,
    /// The one-cell Baumslag-Solitar complex BS(n, m)
    Bs { n: u32, m: u32 },
    /// Canonical labeled tree ball of the given radius
    Tree { r: usize },
    /// Height-truncated product complex over the radius-r tree
    Ball {
        r: usize,
        #[arg(allow_hyphen_values = true)]
        i_min: i64,
        #[arg(allow_hyphen_values = true)]
        i_max: i64,
    },
    /// Covering map from a ball onto K, interior populated
    MapK {
        r: usize,
        #[arg(allow_hyphen_values = true)]
        i_min: i64,
        #[arg(allow_hyphen_values = true)]
        i_max: i64,
        #[arg(long, value_enum, default_value_t = RuleArg::Corrected)]
        rule: RuleArg,
    },
    /// Covering map from a ball onto L, interior populated
    MapL {
        r: usize,
        #[arg(allow_hyphen_values = true)]
        i_min: i64,
        #[arg(allow_hyphen_values = true)]
        i_max: i64,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub(crate) enum RuleArg {
    Corrected,
    Literal,
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum ExportFormat {
    Json,
    Dot,
}

#[derive(Args)]
pub(crate) struct PaperVerifyArgs {
    #[arg(long, default_value_t = 2)]
    tree_radius: usize,
    #[arg(long, default_value_t = -8, allow_hyphen_values = true)]
    min_height: i64,
    #[arg(long, default_value_t = 8, allow_hyphen_values = true)]
    max_height: i64,
    /// Edge-rule variant filling the pass-expected slot of the K covering
    #[arg(long, value_enum, default_value_t = RuleArg::Corrected)]
    k_rule: RuleArg,
    #[arg(long, default_value_t = 3)]
    max_sheets_a: usize,
    #[arg(long, default_value_t = 3)]
    max_sheets_b: usize,
    #[arg(long, default_value_t = 4)]
    cert_max_factors: usize,
    #[arg(long, default_value_t = 6)]
    cert_max_conjugator_len: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

