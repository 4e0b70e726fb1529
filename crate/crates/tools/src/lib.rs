//! File formats and the command line for `pulsecorr-core` simulations.
//!
//! A run writes one CSV per initial state and a JSON summary per scenario:
//! `<out>/<scenario>_<bell|separable>.csv` and `<out>/<scenario>_summary.json`.

pub mod cli;
pub mod config;
pub mod csv;
pub mod run;
pub mod summary;

pub use cli::{main_with_args, parse_args, Invocation, RunRequest, ScenarioSource};
pub use config::{InitialSelection, RunConfig};
pub use summary::{summarize, QdScale, Summary};
