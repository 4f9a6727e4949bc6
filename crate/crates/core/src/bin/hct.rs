use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hct_core::harness::sweep::{parse_grid, sweep, write_sweep};
use hct_core::harness::verify::{verify, Suite, VerifyOptions};
use hct_core::harness::{csv, run_experiment, Algorithm, EnvKind, ExperimentConfig, Preset};
use hct_core::Error;

#[derive(Parser)]
#[command(name = "hct", version, about = "HCT bandit experiments on the garland benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded replicas and write the aggregated CSV.
    Run(RunArgs),
    /// Run a property-check suite.
    Verify(VerifyArgs),
    /// Sweep a parameter grid and report final regret per grid point.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, default_value = "hct-iid")]
    algo: Algorithm,
    #[arg(long, default_value = "garland-iid")]
    env: EnvKind,
    #[arg(long, default_value_t = 100_000)]
    horizon: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [0u64])]
    seeds: Vec<u64>,
    /// `theory` or `tuned`; explicit flags below override it.
    #[arg(long, default_value = "tuned")]
    preset: Preset,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    nu1: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Mixing constant, or `auto` to estimate it from the environment.
    #[arg(long)]
    gamma: Option<String>,
    /// Confidence multiplier, replacing the variant default.
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    bound_scale: Option<f64>,
}

impl ExperimentArgs {
    fn config(&self) -> Result<ExperimentConfig, Error> {
        let seeds = self.seeds.clone();
        let mut cfg = ExperimentConfig::new(self.algo, self.env, self.horizon, seeds).with_preset(self.preset);
        if let Some(v) = self.rho {
            cfg.geometry.rho = v;
        }
        if let Some(v) = self.nu1 {
            cfg.geometry.nu1 = v;
            cfg.geometry.nu2 = cfg.geometry.nu2.min(v);
        }
        if let Some(v) = self.delta {
            cfg.delta = v;
        }
        if let Some(v) = self.c {
            cfg.c = Some(v);
        }
        if let Some(v) = self.bound_scale {
            cfg.bound_scale = v;
        }
        match self.gamma.as_deref() {
            None => {}
            Some("auto") => cfg = cfg.with_estimated_gamma(),
            Some(g) => {
                let g = g.parse().map_err(|_| Error::Config(format!("bad gamma '{g}'")))?;
                cfg.gamma_mix = Some(g);
            }
        }
        Ok(cfg)
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    experiment: ExperimentArgs,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// One row per step instead of log-spaced checkpoints.
    #[arg(long)]
    full_series: bool,
    /// Fill the wall-time column (otherwise `nan`, keeping output reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: Suite,
    #[arg(long, default_value_t = 100_000)]
    horizon: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [0u64, 1, 2, 3, 4])]
    seeds: Vec<u64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    experiment: ExperimentArgs,
    /// For example `rho=0.5,0.7,bound-scale=0.5,1`; may be repeated.
    #[arg(long, required = true)]
    grid: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Error(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Error(Error::Io(e))
    }
}

fn output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display())))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run(args) => {
            let mut cfg = args.experiment.config()?;
            cfg.full_series = args.full_series;
            cfg.timing = args.timing;
            cfg.out = args.out.clone();
            let out = run_experiment(&cfg)?;
            if args.out.is_none() {
                let mut w = output(None)?;
                csv::write_rows(&mut w, &out.rows)?;
                w.flush()?;
            }
        }
        Command::Verify(args) => {
            let opts = VerifyOptions { horizon: args.horizon, seeds: args.seeds, ..VerifyOptions::default() };
            let report = verify(args.suite, &opts)?;
            println!("{report}");
            if !report.passed() {
                return Err(Failure::Verify);
            }
        }
        Command::Sweep(args) => {
            let base = args.experiment.config()?;
            let axes = parse_grid(&args.grid)?;
            let points = sweep(&base, &axes)?;
            let mut w = output(args.out.as_ref())?;
            write_sweep(&mut w, &points)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(3),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
