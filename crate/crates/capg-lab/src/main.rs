//! Command-line front end.
//!
//! Exit codes: 0 when the run succeeds (and, for `verify`, every check
//! passes), 1 when verification checks fail, 2 for configuration problems
//! including unreadable configs and unwritable outputs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use capg_lab::config::{EstimatorChoice, Experiment, ExperimentConfig};
use capg_lab::verify::Corruption;
use capg_lab::{bandit, mdp, variance, verify, LabError};

/// Routes tail-clamp warnings from the numerics to stderr.
struct StderrLogger;

impl log::Log for StderrLogger {
    fn enabled(&self, metadata: &log::Metadata) -> bool {
        metadata.level() <= log::Level::Warn
    }

    fn log(&self, record: &log::Record) {
        if self.enabled(record.metadata()) {
            eprintln!("[{}] {}", record.level(), record.args());
        }
    }

    fn flush(&self) {}
}

static LOGGER: StderrLogger = StderrLogger;

#[derive(Parser)]
#[command(
    name = "capg-lab",
    about = "Experiments and verification for clipped-action policy gradients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fixed-policy gradient mean/std grid over (mean, variance) cells.
    Variance(RunArgs),
    /// Bandit training curves, one run per (seed, estimator).
    Bandit(RunArgs),
    /// Integrator MDP training curves, one run per (seed, estimator).
    Mdp(RunArgs),
    /// Statistical verification suite; exit 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to a `key = value` config file.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path, overriding the config's output_path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Single seed, overriding the config's seed list.
    #[arg(long)]
    seed: Option<u64>,
    /// Estimators to run, overriding the config: pg, capg, or both.
    #[arg(long, value_parser = parse_estimator)]
    estimator: Option<EstimatorChoice>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Deliberately corrupt the clipped score (upper-sign or no-pooling) to
    /// demonstrate the suite detects broken tail handling.
    #[arg(long, value_parser = parse_fault)]
    inject_fault: Option<CliFault>,
}

#[derive(Clone, Copy)]
enum CliFault {
    UpperSign,
    NoPooling,
}

fn parse_estimator(s: &str) -> Result<EstimatorChoice, String> {
    EstimatorChoice::parse(s).ok_or_else(|| format!("expected pg, capg, or both, got `{s}`"))
}

fn parse_fault(s: &str) -> Result<CliFault, String> {
    match s {
        "upper-sign" => Ok(CliFault::UpperSign),
        "no-pooling" => Ok(CliFault::NoPooling),
        _ => Err(format!("expected upper-sign or no-pooling, got `{s}`")),
    }
}

fn main() -> ExitCode {
    if log::set_logger(&LOGGER).is_ok() {
        log::set_max_level(log::LevelFilter::Warn);
    }
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether the run counts as fully successful.
fn run(cli: Cli) -> Result<bool, LabError> {
    let (experiment, args, fault) = match &cli.command {
        Command::Variance(a) => (Experiment::Variance, a, None),
        Command::Bandit(a) => (Experiment::Bandit, a, None),
        Command::Mdp(a) => (Experiment::Mdp, a, None),
        Command::Verify(v) => (Experiment::Verify, &v.run, v.inject_fault),
    };

    let mut cfg = ExperimentConfig::from_file(&args.config)?;
    if let Some(declared) = cfg.experiment {
        if declared != experiment {
            return Err(LabError::Config(format!(
                "config declares experiment = {declared} but the {experiment} subcommand was invoked"
            )));
        }
    }
    if let Some(out) = &args.out {
        cfg.output_path = out.display().to_string();
    }
    if let Some(seed) = args.seed {
        cfg.seeds = vec![seed];
    }
    if let Some(choice) = args.estimator {
        cfg.estimator = choice;
    }
    cfg.validate()?;
    let out_path = cfg.effective_output(experiment);

    if experiment == Experiment::Verify {
        let corruption = match fault {
            None => Corruption::None,
            Some(CliFault::UpperSign) => Corruption::FlipUpperSign,
            Some(CliFault::NoPooling) => Corruption::DropTailPooling,
        };
        let report = verify::run_verification(&cfg, corruption)?;
        report.to_table().write_to(&out_path)?;
        let failed = report.failed_names();
        println!(
            "wrote {} ({} checks, {} failed)",
            out_path.display(),
            report.rows.len(),
            failed.len()
        );
        if !failed.is_empty() {
            eprintln!("failed checks: {}", failed.join(", "));
        }
        return Ok(report.all_passed());
    }

    let table = match experiment {
        Experiment::Variance => variance::run_variance_grid(&cfg)?,
        Experiment::Bandit => bandit::run_bandit_training(&cfg)?,
        Experiment::Mdp => mdp::run_mdp_training(&cfg)?,
        Experiment::Verify => unreachable!("handled above"),
    };
    table.write_to(&out_path)?;
    println!("wrote {} ({} rows)", out_path.display(), table.row_count());
    Ok(true)
}
