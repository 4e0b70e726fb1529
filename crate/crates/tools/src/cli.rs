//! Command-line parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pulsecorr_core::scenarios::{builtin_names, expand_sweep, find_scenario, SweepSpec};

use crate::config::{ConfigError, InitialSelection, RunConfig};
use crate::run::{execute, Job, RunError};
use crate::summary::QdScale;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "pulsecorr",
    version,
    about = "Quantum correlations of a pulse-driven, dissipative qubit pair"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one scenario from both (or the configured) initial states.
    Run {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Simulate every built-in figure scenario.
    AllFigures {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the built-in scenario names.
    List,
    /// Vary one parameter of a base scenario.
    Sweep {
        #[command(flatten)]
        source: SourceArgs,
        /// Parameter to vary, e.g. gamma_amp or epsilon.
        #[arg(long)]
        axis: String,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true, allow_negative_numbers = true)]
        values: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Built-in scenario name (see `list`).
    #[arg(long)]
    scenario: Option<String>,
    /// Flat JSON parameter file.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QdScaleArg {
    Raw,
    Doubled,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output directory, created if missing.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Override the integration step.
    #[arg(long)]
    dt: Option<f64>,
    /// Override the recording stride.
    #[arg(long)]
    stride: Option<usize>,
    /// Scale of the discord figures in the summary file.
    #[arg(long, value_enum, default_value = "raw")]
    qd_scale: QdScaleArg,
    /// Skip the exact entropic uncertainty (written as NaN).
    #[arg(long)]
    no_exact_eur: bool,
    /// Worker threads for multi-scenario runs (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

/// Where a run's parameters come from.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioSource {
    Builtin(String),
    Config(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRequest {
    pub scenario: ScenarioSource,
    pub output_dir: PathBuf,
    pub dt_override: Option<f64>,
    pub stride_override: Option<usize>,
    pub emit_exact_eur: bool,
    pub qd_display_scale: QdScale,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Invocation {
    Run(RunRequest),
    AllFigures(RunRequest),
    List,
    Sweep {
        request: RunRequest,
        axis: String,
        values: Vec<f64>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Run(#[from] RunError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => EXIT_USAGE,
            CliError::Run(e) => e.exit_code(),
        }
    }
}

impl OutputArgs {
    fn request(self, scenario: ScenarioSource) -> RunRequest {
        RunRequest {
            scenario,
            output_dir: self.out,
            dt_override: self.dt,
            stride_override: self.stride,
            emit_exact_eur: !self.no_exact_eur,
            qd_display_scale: match self.qd_scale {
                QdScaleArg::Raw => QdScale::Raw,
                QdScaleArg::Doubled => QdScale::Doubled,
            },
            jobs: self.jobs,
        }
    }
}

impl SourceArgs {
    fn source(self) -> ScenarioSource {
        match (self.scenario, self.config) {
            (Some(name), _) => ScenarioSource::Builtin(name),
            (None, Some(path)) => ScenarioSource::Config(path),
            (None, None) => unreachable!("clap enforces the source group"),
        }
    }
}

/// Parses `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<Invocation, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    Ok(match cli.command {
        Command::Run { source, output } => Invocation::Run(output.request(source.source())),
        Command::AllFigures { output } => {
            Invocation::AllFigures(output.request(ScenarioSource::Builtin(String::new())))
        }
        Command::List => Invocation::List,
        Command::Sweep {
            source,
            axis,
            values,
            output,
        } => Invocation::Sweep {
            request: output.request(source.source()),
            axis,
            values,
        },
    })
}

fn unknown_scenario(name: &str) -> CliError {
    let valid: Vec<_> = builtin_names().collect();
    CliError::Usage(format!(
        "unknown scenario `{name}`; valid names: {}",
        valid.join(", ")
    ))
}

/// Resolves the request's parameter source and applies the overrides.
pub fn resolve(req: &RunRequest) -> Result<Job, CliError> {
    let (mut scenario, selection) = match &req.scenario {
        ScenarioSource::Builtin(name) => (
            find_scenario(name).ok_or_else(|| unknown_scenario(name))?,
            InitialSelection::Both,
        ),
        ScenarioSource::Config(path) => {
            let cfg = RunConfig::load(path)?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "config".to_owned());
            (cfg.to_scenario(&name), cfg.initial_state)
        }
    };
    apply_overrides(&mut scenario.sim, req)?;
    Ok(Job {
        scenario,
        selection,
    })
}

fn apply_overrides(
    sim: &mut pulsecorr_core::SimulationConfig,
    req: &RunRequest,
) -> Result<(), CliError> {
    if let Some(dt) = req.dt_override {
        sim.dt = dt;
    }
    if let Some(stride) = req.stride_override {
        sim.sample_stride = stride;
    }
    sim.validate()
        .map_err(|e| CliError::Usage(format!("invalid step settings: {e}")))
}

fn jobs_for(inv: &Invocation) -> Result<Vec<Job>, CliError> {
    match inv {
        Invocation::Run(req) => Ok(vec![resolve(req)?]),
        Invocation::AllFigures(req) => builtin_names()
            .map(|name| {
                resolve(&RunRequest {
                    scenario: ScenarioSource::Builtin(name.to_owned()),
                    ..req.clone()
                })
            })
            .collect(),
        Invocation::Sweep {
            request,
            axis,
            values,
        } => {
            let base = resolve(request)?;
            let spec = SweepSpec {
                base: base.scenario,
                axis: axis.clone(),
                values: values.clone(),
            };
            let scenarios = expand_sweep(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
            if scenarios.is_empty() {
                return Err(CliError::Usage("sweep needs at least one value".to_owned()));
            }
            scenarios
                .into_iter()
                .map(|scenario| {
                    RunConfig::from_scenario(&scenario, base.selection)
                        .validate()
                        .map_err(|e| CliError::Usage(format!("{}: {e}", scenario.name)))?;
                    Ok(Job {
                        scenario,
                        selection: base.selection,
                    })
                })
                .collect()
        }
        Invocation::List => Ok(Vec::new()),
    }
}

/// Runs an already parsed invocation, writing progress lines to `out`.
pub fn dispatch(inv: &Invocation, out: &mut dyn Write) -> Result<(), CliError> {
    let req = match inv {
        Invocation::List => {
            for name in builtin_names() {
                writeln!(out, "{name}").ok();
            }
            return Ok(());
        }
        Invocation::Run(r) | Invocation::AllFigures(r) => r,
        Invocation::Sweep { request, .. } => request,
    };
    let jobs = jobs_for(inv)?;
    let written = execute(&jobs, req)?;
    for path in written {
        writeln!(out, "{}", path.display()).ok();
    }
    Ok(())
}

/// Full entry point; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match parse_args(argv) {
        Ok(inv) => inv,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = std::io::stdout();
    match dispatch(&inv, &mut stdout.lock()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
