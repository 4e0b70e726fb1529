//! Headline numbers of a measured run.

use pulsecorr_core::scenarios::{FigureScenario, MeasuredRun};
use pulsecorr_core::CorrelationSample;
use serde::{Deserialize, Serialize};

use crate::config::{InitialSelection, RunConfig};

/// Negativity at or below this counts as entanglement sudden death.
pub const SUDDEN_DEATH_THRESHOLD: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QdScale {
    #[default]
    Raw,
    Doubled,
}

impl QdScale {
    pub fn factor(self) -> f64 {
        match self {
            QdScale::Raw => 1.0,
            QdScale::Doubled => 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub ng_initial: f64,
    pub ng_final: f64,
    /// First sample time with `ng <= SUDDEN_DEATH_THRESHOLD`.
    pub sudden_death_time: Option<f64>,
    /// Largest negativity at or after the pulse centre, if any sample lies there.
    pub max_ng_after_t0: Option<f64>,
    pub u_approx_final: f64,
    pub qd_initial: f64,
    pub qd_final: f64,
}

/// # Panics
/// If `samples` is empty.
pub fn summarize(samples: &[CorrelationSample], t0: f64, qd_scale: QdScale) -> Summary {
    let first = samples
        .first()
        .expect("summarize needs at least one sample");
    let last = samples.last().expect("non-empty");
    let k = qd_scale.factor();
    Summary {
        ng_initial: first.ng,
        ng_final: last.ng,
        sudden_death_time: samples
            .iter()
            .find(|s| s.ng <= SUDDEN_DEATH_THRESHOLD)
            .map(|s| s.t),
        max_ng_after_t0: samples
            .iter()
            .filter(|s| s.t >= t0)
            .map(|s| s.ng)
            .reduce(f64::max),
        u_approx_final: last.u_approx,
        qd_initial: k * first.qd,
        qd_final: k * last.qd,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSummary {
    pub initial_state: String,
    pub samples: usize,
    #[serde(flatten)]
    pub summary: Summary,
}

/// Contents of `<scenario>_summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSummary {
    pub scenario: String,
    pub qd_scale: QdScale,
    pub parameters: RunConfig,
    pub runs: Vec<StateSummary>,
}

impl ScenarioSummary {
    pub fn new(
        scenario: &FigureScenario,
        selection: InitialSelection,
        runs: &[MeasuredRun],
        qd_scale: QdScale,
    ) -> Self {
        Self {
            scenario: scenario.name.clone(),
            qd_scale,
            parameters: RunConfig::from_scenario(scenario, selection),
            runs: runs
                .iter()
                .map(|r| StateSummary {
                    initial_state: r.initial.label().to_owned(),
                    samples: r.samples.len(),
                    summary: summarize(&r.samples, scenario.pulse.t0, qd_scale),
                })
                .collect(),
        }
    }
}
