use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ctd_cli::commands::{cmd_check, cmd_demo, cmd_derive, cmd_query, cmd_search, Ctx};

#[derive(Parser)]
#[command(
    name = "ctd",
    version,
    about = "Finite-model checker for contrary-to-duty obligation semantics"
)]
struct Cli {
    /// Emit machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampled searches
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for search sweeps
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check obligation conditions (and F axioms) on a model file
    Check {
        /// Model file (JSON)
        file: PathBuf,
        /// Comma list from: sub, referee, I-d, I-e, 5a, 5b, 5c, 5d, 5e
        #[arg(long)]
        conditions: Option<String>,
        /// Quantify 5(a) over the impossible context too
        #[arg(long)]
        include_empty_context: bool,
        /// Write the model back in canonical form, then continue
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Evaluate a conditional obligation O(B|A) against a model file
    Query {
        /// Model file (JSON)
        file: PathBuf,
        /// Query of the form O(<formula>|<formula>)
        query: String,
    },
    /// Replay the conflict derivation for a mutually generic pair
    Derive {
        /// Model file; --a/--b are then formulas over its valuation
        #[arg(long)]
        file: Option<PathBuf>,
        /// Universe size; --a/--b are then comma lists of world indices
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Also run the full closure and report its fact count
        #[arg(long)]
        closure: bool,
    },
    /// Verification sweeps and counterexample miners
    Search {
        /// theorem2 | theorem3 | 5abc | conflict | counterexample
        kind: String,
        /// Counterexample target: 5d-under-cap | 5e-under-sup
        target: Option<String>,
        /// Universe size
        #[arg(long)]
        n: usize,
        /// Scan the whole sub-respecting space (sizes up to 3)
        #[arg(long)]
        exhaustive: bool,
        /// Sample count for non-exhaustive sweeps (default 100000)
        #[arg(long)]
        samples: Option<u64>,
        /// Construction for 5abc: sup | cap
        #[arg(long)]
        construction: Option<String>,
    },
    /// Bundled demonstrations: pd | conflict
    Demo {
        which: String,
        /// Write the demo's model file (pd only)
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        json: cli.json,
        seed: cli.seed,
        threads: cli.threads,
    };
    let result = match &cli.command {
        Command::Check {
            file,
            conditions,
            include_empty_context,
            dump,
        } => cmd_check(
            ctx,
            file,
            conditions.as_deref(),
            *include_empty_context,
            dump.as_deref(),
        ),
        Command::Query { file, query } => cmd_query(ctx, file, query),
        Command::Derive {
            file,
            n,
            a,
            b,
            closure,
        } => cmd_derive(ctx, file.as_deref(), *n, a, b, *closure),
        Command::Search {
            kind,
            target,
            n,
            exhaustive,
            samples,
            construction,
        } => cmd_search(
            ctx,
            kind,
            target.as_deref(),
            *n,
            *exhaustive,
            *samples,
            construction.as_deref(),
        ),
        Command::Demo { which, dump } => cmd_demo(ctx, which, dump.as_deref()),
    };
    match result {
        Ok((stdout, code)) => {
            print!("{}", stdout);
            ExitCode::from(code as u8)
        }
        Err(failure) => {
            eprintln!("error: {}", failure);
            ExitCode::from(2)
        }
    }
}
