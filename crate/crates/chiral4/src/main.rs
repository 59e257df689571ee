use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use chiral4::config::load_config;
use chiral4::params::{make_default_params, SchemeParams};
use chiral4::reproduce::run_all;
use chiral4::sweep::{
    evaluate_point, row_to_json, rows_to_csv, rows_to_json, run_sweep, write_output_atomic, Mode,
    SpectrumRow, SweepSpec,
};

/// Steady-state linear response and refractive index of a driven four-level
/// atom, swept over the probe detuning.
#[derive(Parser)]
#[command(name = "chiral4", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sweep the probe detuning and emit a spectrum table
    Sweep(SweepArgs),
    /// Evaluate a single detuning and print one JSON record
    Point(PointArgs),
    /// Run the built-in verification battery and report each check
    Reproduce,
}

#[derive(Args)]
struct ParamArgs {
    /// Parameter file, one `key = value` per line
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Override the density prefactor
    #[arg(long, value_name = "F")]
    eta: Option<f64>,
    /// Override the magnetic coupling ratio
    #[arg(long, value_name = "F")]
    kappa: Option<f64>,
    /// Override the lower drive Rabi frequency, in units of gamma
    #[arg(long, value_name = "F")]
    omega13: Option<f64>,
    /// Override the upper drive Rabi frequency, in units of gamma
    #[arg(long, value_name = "F")]
    omega42: Option<f64>,
    /// Override the ground-coherence decay rate, in units of gamma
    #[arg(long, value_name = "F")]
    gamma2: Option<f64>,
}

impl ParamArgs {
    /// Precedence: flag over config file over built-in defaults. Frequency
    /// overrides are given in units of gamma and scaled against the gamma of
    /// the resolved base parameters.
    fn resolve(&self) -> anyhow::Result<SchemeParams> {
        let mut p = match &self.config {
            Some(path) => {
                load_config(path).with_context(|| format!("loading {}", path.display()))?
            }
            None => make_default_params(),
        };
        if let Some(v) = self.eta {
            p.eta = v;
        }
        if let Some(v) = self.kappa {
            p.kappa = v;
        }
        if let Some(v) = self.omega13 {
            p.omega13 = v * p.gamma;
        }
        if let Some(v) = self.omega42 {
            p.omega42 = v * p.gamma;
        }
        if let Some(v) = self.gamma2 {
            p.gamma2 = v * p.gamma;
        }
        p.validate()?;
        Ok(p)
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Exact,
    Weak,
    Nonchiral,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Weak => Mode::Weak,
            ModeArg::Nonchiral => Mode::Nonchiral,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// Lower edge of the detuning window, in units of gamma
    #[arg(long, default_value_t = -20.0, allow_negative_numbers = true)]
    delta_min: f64,
    /// Upper edge of the detuning window, in units of gamma
    #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
    delta_max: f64,
    /// Number of grid points (endpoints included)
    #[arg(long, default_value_t = 2001)]
    points: usize,
    /// Response treatment for the rows
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Output file (written atomically); stdout when omitted
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct PointArgs {
    /// Probe detuning, in units of gamma
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    /// Response treatment
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    #[command(flatten)]
    params: ParamArgs,
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().cmd {
        Cmd::Sweep(args) => cmd_sweep(args),
        Cmd::Point(args) => cmd_point(args),
        Cmd::Reproduce => cmd_reproduce(),
    }
}

fn cmd_sweep(args: SweepArgs) -> anyhow::Result<()> {
    let spec = SweepSpec {
        delta_min: args.delta_min,
        delta_max: args.delta_max,
        num_points: args.points,
        mode: args.mode.into(),
        params: args.params.resolve()?,
    };
    let rows = run_sweep(&spec)?;
    let content = match args.format {
        FormatArg::Csv => rows_to_csv(&rows),
        FormatArg::Json => rows_to_json(&rows),
    };
    match &args.out {
        Some(path) => write_output_atomic(path, &content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_point(args: PointArgs) -> anyhow::Result<()> {
    let p = args.params.resolve()?;
    let data = evaluate_point(&p, args.delta, args.mode.into())?;
    let row = SpectrumRow {
        delta: args.delta,
        result: Ok(data),
    };
    println!("{}", serde_json::to_string_pretty(&row_to_json(&row))?);
    Ok(())
}

fn cmd_reproduce() -> anyhow::Result<()> {
    let reports = run_all();
    let mut all_pass = true;
    for report in &reports {
        println!("{report}");
        all_pass &= report.pass;
    }
    if !all_pass {
        std::process::exit(1);
    }
    Ok(())
}
