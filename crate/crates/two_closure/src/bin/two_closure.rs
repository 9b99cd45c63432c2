use std::path::PathBuf;
use std::process::exit;
use std::time::Instant;

use clap::{Parser, Subcommand};

use two_closure::harness::{
    attach_meta, closure_command, orbitals_command, render_text, reps_command,
    structure_command, t2c_command, verify_command, Engine, OutputFormat, RunOptions,
    RunOutput,
};
use two_closure::Result;

/// Two-closures of finite permutation groups: compute them, enumerate
/// faithful representations, and verify structural predictions.
#[derive(Parser)]
#[command(name = "two-closure", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest representation degree to consider (reps, t2c) or closure
    /// degree cap (closure, verify).
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Closure engine: brute, backtrack, or both (cross-check).
    #[arg(long, global = true, default_value = "backtrack")]
    engine: String,
    /// Output format: json or text.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Write the orbital coloring as a DOT digraph to this file.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Result cache file (JSON lines); overrides TWO_CLOSURE_CACHE.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Node budget for the backtrack search.
    #[arg(long, global = true)]
    node_budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the 2-closure of a group given by a spec.
    Closure { spec: String },
    /// List the orbits on ordered pairs: rank, class sizes, representatives.
    Orbitals { spec: String },
    /// Structural report and the classification-based prediction.
    Structure { spec: String },
    /// Enumerate faithful permutation representations up to a degree bound.
    Reps { spec: String },
    /// Search the faithful representations for one that is not 2-closed.
    T2c { spec: String },
    /// Run a named verification suite over a catalog of groups or actions.
    Verify {
        suite: String,
        /// Catalog file (JSON lines); defaults to the built-in one.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

fn run(cli: &Cli, opts: &RunOptions) -> Result<RunOutput> {
    match &cli.command {
        Command::Closure { spec } => closure_command(spec, opts),
        Command::Orbitals { spec } => orbitals_command(spec, opts),
        Command::Structure { spec } => structure_command(spec, opts),
        Command::Reps { spec } => reps_command(spec, opts),
        Command::T2c { spec } => t2c_command(spec, opts),
        Command::Verify { suite, catalog } => {
            verify_command(suite, catalog.as_deref(), opts)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.exit_code() == 0 {
                print!("{e}");
                exit(0);
            }
            eprint!("{e}");
            exit(4);
        }
    };
    let parsed = cli.engine.parse::<Engine>().and_then(|engine| {
        let format = cli.format.parse::<OutputFormat>()?;
        Ok((engine, format))
    });
    let (engine, format) = match parsed {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            exit(e.exit_code());
        }
    };
    let opts = RunOptions {
        max_degree: cli.max_degree,
        engine,
        dot: cli.dot.clone(),
        cache: cli.cache.clone(),
        node_budget: cli.node_budget,
    };
    let started = Instant::now();
    match run(&cli, &opts) {
        Ok(out) => {
            let payload =
                attach_meta(out.payload, started.elapsed().as_millis(), out.cache_status);
            match format {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&payload).unwrap())
                }
                OutputFormat::Text => print!("{}", render_text(&payload)),
            }
            exit(if out.verification_failed { 2 } else { 0 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit(e.exit_code());
        }
    }
}
