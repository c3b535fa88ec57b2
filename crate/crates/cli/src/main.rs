//! `skewmate`: generalized skew-spectral analysis of oriented graphs.
//!
//! Exit codes: 0 success, 1 a property check failed, 2 bad input.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "skewmate", version, about, propagate_version = true)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Emit JSON instead of a table; records are one object per line.
    #[arg(long, global = true)]
    structured: bool,
    /// Worker threads for parallel phases.
    #[arg(long, global = true, value_name = "K", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Write output here instead of stdout. For `census`, the record file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Walk determinant, F_n membership, mate bound, SNF and WDGSS verdict.
    Analyze {
        /// Graph file (text or compact) or a literal compact code.
        graph: String,
    },
    /// All generalized cospectral mate classes, by exhaustive search (n <= 6).
    Mates { graph: String },
    /// The rational orthogonal Q with Qᵀ S(D) Q = S(C), its level and audits.
    Qmat { d: String, c: String },
    /// Isomorphism test with a witness permutation.
    Iso { a: String, b: String },
    /// Canonical compact form.
    Canon { graph: String },
    /// Exhaustive census of every oriented graph on n vertices.
    Census(CensusArgs),
    /// Recompute both reference examples and compare with expected values.
    #[command(name = "verify-paper")]
    VerifyReference,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Vertex count, 1 to 6.
    #[arg(long = "n", value_name = "COUNT")]
    n: usize,
    /// Number of enumeration shards.
    #[arg(long, default_value_t = 1, value_name = "S")]
    shards: usize,
    /// Run only this shard's enumeration; merges once every shard is done.
    /// Requires --out.
    #[arg(long, value_name = "I")]
    shard: Option<usize>,
    /// Continue from existing checkpoints. Requires --out.
    #[arg(long)]
    resume: bool,
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
    ExitCode::from(commands::run(cli.global, cli.command))
}
