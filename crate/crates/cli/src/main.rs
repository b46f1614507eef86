use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use icr_dmt::config::{RunConfig, Sampling, SnrGrid, DEFAULT_ORACLE_SAMPLES, DEFAULT_ORACLE_STEP};
use icr_dmt::output::{self, SlopeSummary};
use icr_dmt::{exit, parallel, pool, CliError, Result};
use icr_dmt_core::sim::{closed_form, estimate_diversity};
use icr_dmt_core::Error as CoreError;

#[derive(Parser)]
#[command(version, about = "DMT toolkit for the interference channel with a relay")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form DMT curves
    #[command(subcommand)]
    Dmt(DmtCommand),
    /// Cross-check closed forms against lattice minimization
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Monte Carlo outage estimation
    #[command(subcommand)]
    Sim(SimCommand),
}

#[derive(Subcommand)]
enum DmtCommand {
    /// Print every scheme's DMT with its components and optimality flags
    Eval(Params),
    /// Write the DMT of every scheme over r1 = r2 = r as CSV
    Sweep(Params),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Compare closed forms and lattice minima on random tuples
    Verify(Params),
}

#[derive(Subcommand)]
enum SimCommand {
    /// Write estimated outage probabilities over the SNR grid as CSV
    Outage(Params),
    /// Also fit the diversity slope and compare it with the closed form
    Slope(SlopeParams),
}

/// Flags shared by every command. Each one overrides the same key of
/// `--config`.
#[derive(Args, Default)]
struct Params {
    /// JSON run configuration
    #[arg(long)]
    config: Option<PathBuf>,
    /// cf, df, af-fd or af-hd
    #[arg(long)]
    scheme: Option<String>,
    /// Figure preset (fig2a ... fig4d) supplying alpha, beta, gamma
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    r1: Option<f64>,
    #[arg(long)]
    r2: Option<f64>,
    /// Sets both r1 and r2
    #[arg(long, conflicts_with_all = ["r1", "r2"])]
    r: Option<f64>,
    /// Spacing of the r grid for `dmt sweep`
    #[arg(long)]
    r_step: Option<f64>,
    /// start:stop:step in dB (inclusive) or a comma list
    #[arg(long)]
    snr_grid: Option<String>,
    /// Trials per SNR point
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// How AF exponents are drawn
    #[arg(long, value_enum)]
    sampling: Option<SamplingArg>,
    /// Minimum outage events for a point to enter the slope fit
    #[arg(long)]
    event_floor: Option<u64>,
    /// Random tuples for `oracle verify`
    #[arg(long)]
    samples: Option<usize>,
    /// Lattice step for `oracle verify`
    #[arg(long)]
    step: Option<f64>,
    /// Worker threads [default: $ICR_DMT_THREADS, else one per core]
    #[arg(long)]
    threads: Option<usize>,
    /// Output file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SlopeParams {
    #[command(flatten)]
    params: Params,
    /// Where to write the one-row slope summary [default: stdout]
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SamplingArg {
    Fading,
    Direct,
}

impl Params {
    fn resolve(self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            scheme: self.scheme,
            preset: self.preset,
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            r1: self.r1.or(self.r),
            r2: self.r2.or(self.r),
            r_step: self.r_step,
            snr_grid_db: self.snr_grid.map(SnrGrid::Range),
            trials: self.trials,
            seed: self.seed,
            sampling: self.sampling.map(|s| match s {
                SamplingArg::Fading => Sampling::Fading,
                SamplingArg::Direct => Sampling::Direct,
            }),
            event_floor: self.event_floor,
            samples: self.samples,
            step: self.step,
            threads: self.threads,
            out: self.out,
        };
        Ok(file.overlay(flags))
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn dmt_eval(cfg: RunConfig) -> Result<i32> {
    let report = output::eval_report(cfg.gains()?, cfg.exponents()?);
    write!(sink(cfg.out.as_deref())?, "{report}").map_err(|source| CliError::Io {
        path: "output".into(),
        source,
    })?;
    Ok(exit::SUCCESS)
}

fn dmt_sweep(cfg: RunConfig) -> Result<i32> {
    let e = cfg.exponents()?;
    let rows = output::dmt_sweep(e, cfg.r_step()?);
    if e.gamma != 1.0 {
        eprintln!("note: gamma = {} so the AF columns are left empty", e.gamma);
    }
    output::write_sweep(sink(cfg.out.as_deref())?, &rows)?;
    Ok(exit::SUCCESS)
}

fn oracle_verify(cfg: RunConfig) -> Result<i32> {
    let samples = cfg.samples.unwrap_or(DEFAULT_ORACLE_SAMPLES);
    let step = cfg.step.unwrap_or(DEFAULT_ORACLE_STEP);
    let pool = pool(cfg.threads)?;
    let rows = parallel::verify_samples(&pool, samples, step, cfg.seed.unwrap_or(0))?;
    output::write_verify(sink(cfg.out.as_deref())?, &rows)?;
    let worst = rows.iter().map(|r| r.comparison.deviation()).fold(0.0, f64::max);
    let failed = rows.iter().filter(|r| !r.comparison.passes()).count();
    eprintln!(
        "{} comparisons over {samples} tuples at step {step}: max deviation {}, {failed} beyond tolerance",
        rows.len(),
        output::num(worst)
    );
    Ok(if failed == 0 {
        exit::SUCCESS
    } else {
        exit::VERIFICATION_FAILED
    })
}

fn sim_outage(cfg: RunConfig) -> Result<i32> {
    let sweep = cfg.sweep_config()?;
    let pool = pool(cfg.threads)?;
    let points = parallel::run_sweep(&pool, &sweep, |_| {})?;
    output::write_outage(sink(cfg.out.as_deref())?, &sweep, &points)?;
    Ok(exit::SUCCESS)
}

fn sim_slope(cfg: RunConfig, summary: Option<PathBuf>) -> Result<i32> {
    let sweep = cfg.sweep_config()?;
    let d_closed = closed_form(sweep.scheme, sweep.gains, sweep.exponents)?.value();
    let pool = pool(cfg.threads)?;
    let points = parallel::run_sweep(&pool, &sweep, |p| {
        eprintln!("{} dB: {} / {} in outage", output::num(p.snr_db), p.events, p.trials)
    })?;
    if let Some(out) = cfg.out.as_deref() {
        output::write_outage(sink(Some(out))?, &sweep, &points)?;
    }
    let estimate = estimate_diversity(&points, cfg.event_floor())?;
    let s = SlopeSummary {
        estimate,
        closed_form: d_closed,
    };
    output::write_slope(sink(summary.as_deref())?, &sweep, &s)?;
    Ok(if s.passes() {
        exit::SUCCESS
    } else {
        exit::VERIFICATION_FAILED
    })
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Dmt(DmtCommand::Eval(p)) => dmt_eval(p.resolve()?),
        Command::Dmt(DmtCommand::Sweep(p)) => dmt_sweep(p.resolve()?),
        Command::Oracle(OracleCommand::Verify(p)) => oracle_verify(p.resolve()?),
        Command::Sim(SimCommand::Outage(p)) => sim_outage(p.resolve()?),
        Command::Sim(SimCommand::Slope(s)) => sim_slope(s.params.resolve()?, s.summary),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(CoreError::InsufficientData { .. }) = e {
                eprintln!(
                    "hint: raise --trials, drop the highest SNR points, or pick a configuration \
                     with lower diversity; outage must be observed at least --event-floor times \
                     at two or more SNR points"
                );
            }
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
