//! Simulating resolved jobs and writing their files.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use pulsecorr_core::measures::MeasureOptions;
use pulsecorr_core::scenarios::{FigureScenario, MeasuredRun, ScenarioError};
use pulsecorr_core::InitialStateKind;
use rayon::prelude::*;
use thiserror::Error;

use crate::cli::{RunRequest, EXIT_FAILURE, EXIT_IO};
use crate::config::InitialSelection;
use crate::csv::{write_trajectory_csv, CsvError};
use crate::summary::ScenarioSummary;

/// A fully resolved scenario and the initial states to evolve.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub scenario: FigureScenario,
    pub selection: InitialSelection,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("output directory {path} is not writable: {source}")]
    OutputDir {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Csv(#[from] CsvError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Simulation(#[from] ScenarioError),
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::OutputDir { .. } | RunError::Csv(_) | RunError::Io { .. } => EXIT_IO,
            RunError::Simulation(_) | RunError::Pool(_) => EXIT_FAILURE,
        }
    }
}

pub fn csv_path(dir: &Path, scenario: &str, initial: InitialStateKind) -> PathBuf {
    dir.join(format!("{scenario}_{}.csv", initial.label()))
}

pub fn summary_path(dir: &Path, scenario: &str) -> PathBuf {
    dir.join(format!("{scenario}_summary.json"))
}

/// Creates `dir` and checks that files can be written into it.
pub fn prepare_output_dir(dir: &Path) -> Result<(), RunError> {
    let err = |source| RunError::OutputDir {
        path: dir.display().to_string(),
        source,
    };
    fs::create_dir_all(dir).map_err(err)?;
    let probe = dir.join(".pulsecorr-write-probe");
    fs::write(&probe, b"").map_err(err)?;
    fs::remove_file(&probe).map_err(err)
}

/// Simulates every (job, initial state) pair in parallel.
pub fn simulate(jobs: &[Job], opts: MeasureOptions) -> Result<Vec<Vec<MeasuredRun>>, RunError> {
    let tasks: Vec<(usize, InitialStateKind)> = jobs
        .iter()
        .enumerate()
        .flat_map(|(i, j)| j.selection.kinds().iter().map(move |&k| (i, k)))
        .collect();
    let results: Vec<(usize, MeasuredRun)> = tasks
        .par_iter()
        .map(|&(i, kind)| jobs[i].scenario.run_initial(kind, opts).map(|r| (i, r)))
        .collect::<Result<_, _>>()?;
    let mut grouped: Vec<Vec<MeasuredRun>> = vec![Vec::new(); jobs.len()];
    for (i, run) in results {
        grouped[i].push(run);
    }
    Ok(grouped)
}

/// Writes the CSVs and the summary of one job; returns the written paths.
pub fn write_outputs(
    dir: &Path,
    job: &Job,
    runs: &[MeasuredRun],
    req: &RunRequest,
) -> Result<Vec<PathBuf>, RunError> {
    let name = &job.scenario.name;
    let mut written = Vec::with_capacity(runs.len() + 1);
    for run in runs {
        let path = csv_path(dir, name, run.initial);
        write_trajectory_csv(&run.samples, &path)?;
        written.push(path);
    }
    let summary = ScenarioSummary::new(&job.scenario, job.selection, runs, req.qd_display_scale);
    let path = summary_path(dir, name);
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    fs::write(&path, text).map_err(|source| RunError::Io {
        path: path.display().to_string(),
        source,
    })?;
    written.push(path);
    Ok(written)
}

/// Runs `jobs` with the options of `req` and writes all files.
pub fn execute(jobs: &[Job], req: &RunRequest) -> Result<Vec<PathBuf>, RunError> {
    prepare_output_dir(&req.output_dir)?;
    let opts = MeasureOptions {
        exact_eur: req.emit_exact_eur,
    };
    let grouped = match req.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(|| simulate(jobs, opts))?,
        None => simulate(jobs, opts)?,
    };
    let mut written = Vec::new();
    for (job, runs) in jobs.iter().zip(&grouped) {
        written.extend(write_outputs(&req.output_dir, job, runs, req)?);
    }
    Ok(written)
}
