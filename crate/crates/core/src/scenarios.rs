//! Initial states, the built-in figure scenarios and one-axis sweeps.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::hamiltonian::{PulseParams, SystemParams};
use crate::lindblad::{evolve, DecoherenceRates, EvolveError, SimulationConfig};
use crate::measures::{measure_trajectory_with, CorrelationSample, MeasureError, MeasureOptions};
use crate::qmath::{ComplexMatrix, C64};

/// Centre of the drive pulse in every built-in scenario.
pub const PULSE_CENTER: f64 = 15.0;
/// Width parameter used wherever a scenario does not vary it.
pub const DEFAULT_BETA_PULSE: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InitialStateKind {
    /// |Φ⁺⟩ = (|00⟩ + |11⟩)/√2
    Bell,
    /// |00⟩
    Separable,
}

impl InitialStateKind {
    pub const ALL: [InitialStateKind; 2] = [InitialStateKind::Bell, InitialStateKind::Separable];

    /// Lower-case label used in file names.
    pub fn label(self) -> &'static str {
        match self {
            InitialStateKind::Bell => "bell",
            InitialStateKind::Separable => "separable",
        }
    }

    pub fn density_matrix(self) -> ComplexMatrix {
        match self {
            InitialStateKind::Bell => {
                let mut m = ComplexMatrix::zeros(4);
                for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
                    m[(i, j)] = C64::new(0.5, 0.0);
                }
                m
            }
            InitialStateKind::Separable => ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0]),
        }
    }
}

impl fmt::Display for InitialStateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitialState {
    pub kind: InitialStateKind,
    pub matrix: ComplexMatrix,
}

impl From<InitialStateKind> for InitialState {
    fn from(kind: InitialStateKind) -> Self {
        Self {
            kind,
            matrix: kind.density_matrix(),
        }
    }
}

/// A complete parameter set for one figure row.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureScenario {
    pub name: String,
    pub system: SystemParams,
    pub pulse: PulseParams,
    pub rates: DecoherenceRates,
    pub sim: SimulationConfig,
}

struct Row {
    name: &'static str,
    epsilon: f64,
    j_zz: f64,
    j_xx: f64,
    gamma_amp: f64,
    gamma_deph: f64,
    g_pulse: f64,
    a_pulse: f64,
    beta_pulse: f64,
}

const B: f64 = DEFAULT_BETA_PULSE;

#[rustfmt::skip]
const ROWS: [Row; 16] = [
    //    name            eps   j_zz  j_xx  g_amp g_deph G     A      beta
    Row { name: "fig1_top",    epsilon: 0.01, j_zz: 0.5,  j_xx: 0.5, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 1.0,  beta_pulse: B },
    Row { name: "fig1_bottom", epsilon: 5.0,  j_zz: 0.5,  j_xx: 0.5, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 1.0,  beta_pulse: B },
    Row { name: "fig2_top",    epsilon: 0.1,  j_zz: 0.01, j_xx: 1.0, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 1.0,  beta_pulse: B },
    Row { name: "fig2_bottom", epsilon: 0.1,  j_zz: 5.0,  j_xx: 1.0, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 1.0,  beta_pulse: B },
    Row { name: "fig3_top",    epsilon: 0.1,  j_zz: 1.0,  j_xx: 0.1, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 1.0,  beta_pulse: B },
    Row { name: "fig3_bottom", epsilon: 0.1,  j_zz: 1.0,  j_xx: 1.0, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 1.0,  beta_pulse: B },
    Row { name: "fig4_top",    epsilon: 0.1,  j_zz: 1.0,  j_xx: 1.0, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 1.0,  beta_pulse: B },
    Row { name: "fig4_bottom", epsilon: 0.1,  j_zz: 1.0,  j_xx: 1.0, gamma_amp: 0.1,  gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 1.0,  beta_pulse: B },
    Row { name: "fig5_top",    epsilon: 0.1,  j_zz: 1.0,  j_xx: 1.0, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 1.0,  beta_pulse: B },
    Row { name: "fig5_bottom", epsilon: 0.1,  j_zz: 1.0,  j_xx: 1.0, gamma_amp: 0.01, gamma_deph: 0.1,  g_pulse: 0.01, a_pulse: 1.0,  beta_pulse: B },
    Row { name: "fig6_top",    epsilon: 0.1,  j_zz: 0.5,  j_xx: 0.5, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 0.01, beta_pulse: B },
    Row { name: "fig6_bottom", epsilon: 0.1,  j_zz: 0.5,  j_xx: 0.5, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 10.0, beta_pulse: B },
    Row { name: "fig7_top",    epsilon: 0.1,  j_zz: 0.5,  j_xx: 0.5, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 5.0,  beta_pulse: 0.1 },
    Row { name: "fig7_bottom", epsilon: 0.1,  j_zz: 0.5,  j_xx: 0.5, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 5.0,  beta_pulse: 5.0 },
    // Coupling assumed to be 1.0, as in fig4 and fig5.
    Row { name: "fig8_top",    epsilon: 0.1,  j_zz: 1.0,  j_xx: 1.0, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 0.01, a_pulse: 1.0,  beta_pulse: B },
    Row { name: "fig8_bottom", epsilon: 0.1,  j_zz: 1.0,  j_xx: 1.0, gamma_amp: 0.01, gamma_deph: 0.01, g_pulse: 5.0,  a_pulse: 1.0,  beta_pulse: B },
];

impl Row {
    fn scenario(&self) -> FigureScenario {
        FigureScenario {
            name: String::from(self.name),
            system: SystemParams::symmetric(self.epsilon, self.j_zz, self.j_xx),
            pulse: PulseParams {
                a_pulse: self.a_pulse,
                beta_pulse: self.beta_pulse,
                t0: PULSE_CENTER,
            },
            rates: DecoherenceRates {
                gamma_amp: self.gamma_amp,
                gamma_deph: self.gamma_deph,
                g_pulse: self.g_pulse,
            },
            sim: SimulationConfig::default(),
        }
    }
}

/// The sixteen figure rows, `fig1_top` through `fig8_bottom`.
pub fn builtin_scenarios() -> Vec<FigureScenario> {
    ROWS.iter().map(Row::scenario).collect()
}

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    ROWS.iter().map(|r| r.name)
}

pub fn find_scenario(name: &str) -> Option<FigureScenario> {
    ROWS.iter().find(|r| r.name == name).map(Row::scenario)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("{initial} run of `{scenario}`: {source}")]
    Evolve {
        scenario: String,
        initial: InitialStateKind,
        #[source]
        source: EvolveError,
    },
    #[error("{initial} run of `{scenario}`: {source}")]
    Measure {
        scenario: String,
        initial: InitialStateKind,
        #[source]
        source: MeasureError,
    },
    #[error("unknown sweep axis `{0}`")]
    UnknownAxis(String),
}

/// Measured samples for one initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredRun {
    pub initial: InitialStateKind,
    pub samples: Vec<CorrelationSample>,
}

/// Both initial states of one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRun {
    pub bell: MeasuredRun,
    pub separable: MeasuredRun,
}

impl ScenarioRun {
    pub fn runs(&self) -> [&MeasuredRun; 2] {
        [&self.bell, &self.separable]
    }
}

impl FigureScenario {
    pub fn run_initial(
        &self,
        initial: InitialStateKind,
        opts: MeasureOptions,
    ) -> Result<MeasuredRun, ScenarioError> {
        let traj = evolve(
            &initial.density_matrix(),
            &self.system,
            &self.pulse,
            &self.rates,
            &self.sim,
        )
        .map_err(|source| ScenarioError::Evolve {
            scenario: self.name.clone(),
            initial,
            source,
        })?;
        let samples =
            measure_trajectory_with(&traj, opts).map_err(|source| ScenarioError::Measure {
                scenario: self.name.clone(),
                initial,
                source,
            })?;
        Ok(MeasuredRun { initial, samples })
    }
}

/// Evolves and measures the scenario from both initial states.
pub fn run_scenario(s: &FigureScenario) -> Result<ScenarioRun, ScenarioError> {
    run_scenario_with(s, MeasureOptions::default())
}

pub fn run_scenario_with(
    s: &FigureScenario,
    opts: MeasureOptions,
) -> Result<ScenarioRun, ScenarioError> {
    Ok(ScenarioRun {
        bell: s.run_initial(InitialStateKind::Bell, opts)?,
        separable: s.run_initial(InitialStateKind::Separable, opts)?,
    })
}

/// A scalar parameter a sweep may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    /// Sets both qubit splittings.
    Epsilon,
    Epsilon0,
    Epsilon1,
    JZz,
    JXx,
    APulse,
    BetaPulse,
    T0,
    GammaAmp,
    GammaDeph,
    GPulse,
}

impl SweepAxis {
    pub const ALL: [SweepAxis; 11] = [
        SweepAxis::Epsilon,
        SweepAxis::Epsilon0,
        SweepAxis::Epsilon1,
        SweepAxis::JZz,
        SweepAxis::JXx,
        SweepAxis::APulse,
        SweepAxis::BetaPulse,
        SweepAxis::T0,
        SweepAxis::GammaAmp,
        SweepAxis::GammaDeph,
        SweepAxis::GPulse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Epsilon => "epsilon",
            SweepAxis::Epsilon0 => "epsilon0",
            SweepAxis::Epsilon1 => "epsilon1",
            SweepAxis::JZz => "j_zz",
            SweepAxis::JXx => "j_xx",
            SweepAxis::APulse => "a_pulse",
            SweepAxis::BetaPulse => "beta_pulse",
            SweepAxis::T0 => "t0",
            SweepAxis::GammaAmp => "gamma_amp",
            SweepAxis::GammaDeph => "gamma_deph",
            SweepAxis::GPulse => "g_pulse",
        }
    }

    pub fn apply(self, s: &mut FigureScenario, value: f64) {
        match self {
            SweepAxis::Epsilon => {
                s.system.epsilon0 = value;
                s.system.epsilon1 = value;
            }
            SweepAxis::Epsilon0 => s.system.epsilon0 = value,
            SweepAxis::Epsilon1 => s.system.epsilon1 = value,
            SweepAxis::JZz => s.system.j_zz = value,
            SweepAxis::JXx => s.system.j_xx = value,
            SweepAxis::APulse => s.pulse.a_pulse = value,
            SweepAxis::BetaPulse => s.pulse.beta_pulse = value,
            SweepAxis::T0 => s.pulse.t0 = value,
            SweepAxis::GammaAmp => s.rates.gamma_amp = value,
            SweepAxis::GammaDeph => s.rates.gamma_deph = value,
            SweepAxis::GPulse => s.rates.g_pulse = value,
        }
    }
}

impl FromStr for SweepAxis {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SweepAxis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| ScenarioError::UnknownAxis(String::from(s)))
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: FigureScenario,
    pub axis: String,
    pub values: Vec<f64>,
}

/// One scenario per value, named `<base>_<axis>_<value>`.
pub fn expand_sweep(spec: &SweepSpec) -> Result<Vec<FigureScenario>, ScenarioError> {
    let axis: SweepAxis = spec.axis.parse()?;
    Ok(spec
        .values
        .iter()
        .map(|&v| {
            let mut s = spec.base.clone();
            axis.apply(&mut s, v);
            s.name = format!("{}_{}_{}", spec.base.name, axis, v);
            s
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn initial_states_are_exact() {
        let bell = InitialStateKind::Bell.density_matrix();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let ket = [
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
        ];
        assert!(bell.max_abs_diff(&ComplexMatrix::projector(&ket)) < 1e-15);
        assert_eq!(bell.trace(), C64::new(1.0, 0.0));
        let sep = InitialStateKind::Separable.density_matrix();
        assert_eq!(sep[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(sep.max_abs(), 1.0);
        assert_eq!(sep.trace(), C64::new(1.0, 0.0));
    }

    #[test]
    fn registry_shape() {
        let all = builtin_scenarios();
        assert_eq!(all.len(), 16);
        for s in &all {
            assert_eq!(s.pulse.t0, 15.0);
            assert_eq!(s.sim, SimulationConfig::default());
            assert_eq!(s.system.epsilon0, s.system.epsilon1);
            assert!(s.pulse.validate().is_ok());
            assert!(s.rates.validate().is_ok());
        }
        let names: Vec<_> = builtin_names().collect();
        assert_eq!(names[0], "fig1_top");
        assert_eq!(names[15], "fig8_bottom");
        assert!(find_scenario("fig9_top").is_none());
    }

    #[test]
    fn sweep_expansion() {
        let base = find_scenario("fig4_top").unwrap();
        let spec = SweepSpec {
            base: base.clone(),
            axis: String::from("gamma_amp"),
            values: vec![0.01, 0.1],
        };
        let out = expand_sweep(&spec).unwrap();
        assert_eq!(out.len(), 2);
        let bottom = find_scenario("fig4_bottom").unwrap();
        assert_eq!(out[0].rates, base.rates);
        assert_eq!(out[1].rates, bottom.rates);
        assert_eq!(out[1].system, bottom.system);
        assert_eq!(out[1].pulse, bottom.pulse);
        assert_eq!(out[1].name, "fig4_top_gamma_amp_0.1");

        let empty = SweepSpec {
            values: vec![],
            ..spec.clone()
        };
        assert!(expand_sweep(&empty).unwrap().is_empty());

        let bad = SweepSpec {
            axis: String::from("j_yy"),
            ..spec
        };
        assert_eq!(
            expand_sweep(&bad),
            Err(ScenarioError::UnknownAxis(String::from("j_yy")))
        );
    }

    #[test]
    fn epsilon_sweep_reproduces_fig1_pair() {
        let spec = SweepSpec {
            base: find_scenario("fig1_top").unwrap(),
            axis: String::from("epsilon"),
            values: vec![0.01, 5.0],
        };
        let out = expand_sweep(&spec).unwrap();
        assert_eq!(out[0].system, find_scenario("fig1_top").unwrap().system);
        assert_eq!(out[1].system, find_scenario("fig1_bottom").unwrap().system);
    }

    #[test]
    fn axis_names_round_trip() {
        for a in SweepAxis::ALL {
            assert_eq!(a.name().parse::<SweepAxis>().unwrap(), a);
        }
    }
}
