//! `perfpoly` command-line front end.
//!
//! Every subcommand prints human-readable text by default and a single JSON
//! document with `--json`. Failures are reported on stderr as
//! `{"error": {"kind": ..., "message": ...}}`; malformed input exits with
//! status 2 and a failed verification with status 1.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use perfpoly_core::search::Limits;
use serde_json::json;

pub use commands::Failure;

#[derive(Debug, Parser)]
#[command(name = "perfpoly", version, about = "Splitting perfect polynomials over F_{p^2}")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// TOML file with `degree_bound` and/or `candidate_budget`.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide perfection of a root pattern and classify it.
    Check {
        #[arg(long)]
        p: u64,
        /// Spec as a JSON file path or an inline JSON array of {gamma, N, n}.
        spec: String,
    },
    /// Compute σ of a split polynomial, factor by factor and expanded.
    Sigma {
        #[arg(long)]
        p: u64,
        /// Split polynomial as a JSON file path or inline [{gamma, exp}].
        poly: String,
    },
    /// Build the exponent system S for (p, N) and report ranks and kernel.
    Matrix {
        #[arg(long)]
        p: u64,
        #[arg(long = "N", value_name = "N")]
        order: u64,
        /// Print S only, as a plain integer grid.
        #[arg(long)]
        grid: bool,
    },
    /// Enumerate and classify every perfect pattern with n(γ) ≤ n_max.
    Search(SearchArgs),
    /// Run the rank checks over every N | p² − 1 for the given primes.
    VerifyTheorem {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long = "n-max", default_value_t = 0)]
    pub n_max: u32,
    /// Restrict every root to this order N.
    #[arg(long = "uniform-n", value_name = "N")]
    pub uniform_order: Option<u64>,
    /// Worker threads [default: available cores].
    #[arg(long)]
    pub parallelism: Option<usize>,
    /// Write the JSON report to this file.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Exit 1 unless bucket "other" is empty.
    #[arg(long)]
    pub expect_classified: bool,
    /// Disable the necessary-condition screens.
    #[arg(long)]
    pub no_prune: bool,
}

fn load_limits(path: Option<&Path>) -> Result<Limits, Failure> {
    let Some(path) = path else {
        return Ok(Limits::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::usage("config", format!("{}: {e}", path.display())))
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => return report(err, &Failure::usage("usage", e.to_string().trim_end())),
    };
    let result = load_limits(cli.global.config.as_deref())
        .and_then(|limits| commands::dispatch(&cli.command, cli.global.json, limits, out));
    match result {
        Ok(()) => 0,
        Err(failure) => report(err, &failure),
    }
}

fn report(err: &mut dyn Write, failure: &Failure) -> u8 {
    let body = json!({ "error": { "kind": failure.kind, "message": failure.message } });
    let _ = writeln!(err, "{body}");
    failure.code
}
