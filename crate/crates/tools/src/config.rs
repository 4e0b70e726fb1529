//! Flat JSON run configuration.

use std::fs;
use std::path::Path;

use pulsecorr_core::scenarios::FigureScenario;
use pulsecorr_core::{
    DecoherenceRates, InitialStateKind, PulseParams, SimulationConfig, SystemParams,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed config {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid config {path}: {reason}")]
    Invalid { path: String, reason: String },
}

/// Which initial states a configured run evolves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialSelection {
    Bell,
    Separable,
    Both,
}

impl InitialSelection {
    pub fn kinds(self) -> &'static [InitialStateKind] {
        match self {
            InitialSelection::Bell => &[InitialStateKind::Bell],
            InitialSelection::Separable => &[InitialStateKind::Separable],
            InitialSelection::Both => &InitialStateKind::ALL,
        }
    }
}

/// Every key is required and unknown keys are rejected, so one file fully
/// determines a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub epsilon0: f64,
    pub epsilon1: f64,
    pub j_zz: f64,
    pub j_xx: f64,
    pub a_pulse: f64,
    pub beta_pulse: f64,
    pub t0: f64,
    pub gamma_amp: f64,
    pub gamma_deph: f64,
    pub g_pulse: f64,
    pub t_max: f64,
    pub dt: f64,
    pub sample_stride: usize,
    pub initial_state: InitialSelection,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let display = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: display.clone(),
            source,
        })?;
        let cfg = Self::from_json(&text).map_err(|source| ConfigError::Parse {
            path: display.clone(),
            source,
        })?;
        cfg.validate().map_err(|reason| ConfigError::Invalid {
            path: display,
            reason,
        })?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        let s = self.to_scenario("config");
        s.system.validate().map_err(|e| e.to_string())?;
        s.pulse.validate().map_err(|e| e.to_string())?;
        s.rates.validate().map_err(|e| e.to_string())?;
        s.sim.validate().map_err(|e| e.to_string())
    }

    pub fn to_scenario(&self, name: &str) -> FigureScenario {
        FigureScenario {
            name: name.to_owned(),
            system: SystemParams {
                epsilon0: self.epsilon0,
                epsilon1: self.epsilon1,
                j_zz: self.j_zz,
                j_xx: self.j_xx,
            },
            pulse: PulseParams {
                a_pulse: self.a_pulse,
                beta_pulse: self.beta_pulse,
                t0: self.t0,
            },
            rates: DecoherenceRates {
                gamma_amp: self.gamma_amp,
                gamma_deph: self.gamma_deph,
                g_pulse: self.g_pulse,
            },
            sim: SimulationConfig {
                t_max: self.t_max,
                dt: self.dt,
                sample_stride: self.sample_stride,
            },
        }
    }

    pub fn from_scenario(s: &FigureScenario, initial_state: InitialSelection) -> Self {
        Self {
            epsilon0: s.system.epsilon0,
            epsilon1: s.system.epsilon1,
            j_zz: s.system.j_zz,
            j_xx: s.system.j_xx,
            a_pulse: s.pulse.a_pulse,
            beta_pulse: s.pulse.beta_pulse,
            t0: s.pulse.t0,
            gamma_amp: s.rates.gamma_amp,
            gamma_deph: s.rates.gamma_deph,
            g_pulse: s.rates.g_pulse,
            t_max: s.sim.t_max,
            dt: s.sim.dt,
            sample_stride: s.sim.sample_stride,
            initial_state,
        }
    }
}
