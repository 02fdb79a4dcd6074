use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use warpconv_cli::output::{emit_report, Format};
use warpconv_cli::{run_config, RunConfig, RunError, Suite};

/// Runs the warped-convolution check suites and writes their reports.
#[derive(Debug, Parser)]
#[command(name = "warpconv", version)]
struct Args {
    /// TOML configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite to run (repeatable).
    #[arg(long, value_enum)]
    suite: Vec<Suite>,
    #[arg(long)]
    seed: Option<u64>,
    /// Deformation parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    kappa: Vec<f64>,
    /// Spacetime dimension of the Fock model.
    #[arg(long)]
    dim: Option<usize>,
    /// Output directory; JSON and text go to stdout without it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Record per-check wall-clock times (breaks byte-identical output).
    #[arg(long)]
    timings: bool,
}

fn configure(args: &Args) -> Result<RunConfig, RunError> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if !args.suite.is_empty() {
        cfg.suites = args.suite.clone();
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if !args.kappa.is_empty() {
        cfg.kappa = args.kappa.clone();
    }
    if let Some(d) = args.dim {
        cfg.d = d;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(args: &Args) -> Result<bool, RunError> {
    let cfg = configure(args)?;
    let output = run_config(&cfg, args.timings)?;
    emit_report(&output, args.format, args.out.as_deref())?;
    for r in output.failures() {
        eprintln!("FAIL {} residual {:.3e} tol {:.1e}", r.check_id, r.residual, r.tol);
    }
    Ok(output.all_pass())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
