use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use nlbc::{run, CliError, RunConfig, RunOptions};

/// Spectra and evolution for -u'' under non-local moment constraints.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Optional task name; must match the task in the config.
    task: Option<String>,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the eigenvalue scan.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Seed for randomized test data (overrides the config).
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(args: &Args) -> Result<(), CliError> {
    let cfg = RunConfig::load(&args.config)?;
    if let Some(t) = &args.task {
        if t != cfg.task.name() {
            return Err(CliError::Config(format!("task `{t}` does not match config task `{}`", cfg.task.name())));
        }
    }
    let base = args.config.parent().map(PathBuf::from).unwrap_or_default();
    let out = args
        .out
        .clone()
        .or_else(|| cfg.output.clone().map(|o| base.join(o)))
        .unwrap_or_else(|| PathBuf::from("out"));
    let opts = RunOptions {
        out,
        threads: args.threads.max(1),
        seed: args.seed.or(cfg.seed).unwrap_or(0),
        base,
    };
    let outcome = run(&cfg, &opts)?;
    println!("{}: wrote {}", cfg.task.name(), opts.out.display());
    for line in &outcome.summary {
        println!("  {line}");
    }
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
