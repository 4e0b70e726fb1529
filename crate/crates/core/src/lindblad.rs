//! Dissipative channels and fixed-step RK4 integration of the Lindblad
//! master equation
//!
//! ```text
//! dρ/dt = −i[H(t), ρ] + Σ_j γ_j(t) (L_j ρ L_j† − ½{L_j† L_j, ρ})
//! ```
//!
//! with amplitude damping, local pure dephasing and a collective dephasing
//! channel whose rate follows the square of the drive envelope.

use alloc::vec::Vec;

use thiserror::Error;

use crate::hamiltonian::{
    non_negative, positive, DrivenHamiltonian, ParamError, PulseParams, SystemParams,
};
use crate::qmath::pauli::{identity, sigma_minus, sigma_z};
use crate::qmath::{hermitian_eigs, kron, ComplexMatrix, QmathError, C64};

/// Tolerances a recorded state is held to by [`evolve`].
pub const TRACE_DRIFT_LIMIT: f64 = 1e-6;
pub const MIN_EIGENVALUE_LIMIT: f64 = -1e-6;

/// Tolerances an initial state must meet.
const INITIAL_TRACE_TOL: f64 = 1e-8;
const INITIAL_MIN_EIGENVALUE: f64 = -1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceRates {
    pub gamma_amp: f64,
    pub gamma_deph: f64,
    /// Pulse-induced dephasing strength `G`.
    pub g_pulse: f64,
}

impl DecoherenceRates {
    pub fn validate(&self) -> Result<(), ParamError> {
        non_negative("gamma_amp", self.gamma_amp)?;
        non_negative("gamma_deph", self.gamma_deph)?;
        non_negative("g_pulse", self.g_pulse)
    }
}

/// Time dependence of a channel rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rate {
    Constant(f64),
    /// `strength · f(t)²` for the sech envelope `f`.
    PulseSquared {
        strength: f64,
        pulse: PulseParams,
    },
}

impl Rate {
    #[inline]
    pub fn at(&self, t: f64) -> f64 {
        match *self {
            Rate::Constant(g) => g,
            Rate::PulseSquared { strength, pulse } => {
                let f = pulse.amplitude(t);
                strength * f * f
            }
        }
    }
}

/// A Lindblad operator with its rate.
#[derive(Debug, Clone)]
pub struct CollapseChannel {
    operator: ComplexMatrix,
    adjoint: ComplexMatrix,
    decay: ComplexMatrix,
    rate: Rate,
}

impl CollapseChannel {
    pub fn new(operator: ComplexMatrix, rate: Rate) -> Self {
        let adjoint = operator.dagger();
        let decay = adjoint.matmul(&operator);
        Self {
            operator,
            adjoint,
            decay,
            rate,
        }
    }

    pub fn operator(&self) -> &ComplexMatrix {
        &self.operator
    }

    pub fn rate(&self) -> &Rate {
        &self.rate
    }

    /// `L†L`
    pub fn decay_operator(&self) -> &ComplexMatrix {
        &self.decay
    }

    #[inline]
    pub fn rate_at(&self, t: f64) -> f64 {
        self.rate.at(t)
    }
}

/// The five channels of the model, in order: amplitude damping on qubit 0
/// and 1, pure dephasing on qubit 0 and 1, collective pulse dephasing.
pub fn build_collapse_channels(r: &DecoherenceRates, pulse: &PulseParams) -> Vec<CollapseChannel> {
    let (id, sm, sz) = (identity(), sigma_minus(), sigma_z());
    let z0 = kron(&sz, &id);
    let z1 = kron(&id, &sz);
    let collective = &z0 + &z1;
    alloc::vec![
        CollapseChannel::new(kron(&sm, &id), Rate::Constant(r.gamma_amp)),
        CollapseChannel::new(kron(&id, &sm), Rate::Constant(r.gamma_amp)),
        CollapseChannel::new(z0, Rate::Constant(r.gamma_deph)),
        CollapseChannel::new(z1, Rate::Constant(r.gamma_deph)),
        CollapseChannel::new(
            collective,
            Rate::PulseSquared {
                strength: r.g_pulse,
                pulse: *pulse,
            },
        ),
    ]
}

/// Right-hand side of the master equation at time `t` for Hamiltonian `h`.
pub fn lindblad_rhs(
    t: f64,
    rho: &ComplexMatrix,
    h: &ComplexMatrix,
    channels: &[CollapseChannel],
) -> ComplexMatrix {
    let mut out = h.commutator(rho).scale(C64::new(0.0, -1.0));
    for ch in channels {
        let gamma = ch.rate_at(t);
        if gamma == 0.0 {
            continue;
        }
        let jump = ch.operator.matmul(rho).matmul(&ch.adjoint);
        out.add_scaled(&jump, C64::new(gamma, 0.0));
        out.add_scaled(&ch.decay.anticommutator(rho), C64::new(-0.5 * gamma, 0.0));
    }
    out
}

/// One classical RK4 step followed by re-symmetrization `(ρ + ρ†)/2`.
pub fn rk4_step<F>(t: f64, rho: &ComplexMatrix, dt: f64, rhs: F) -> ComplexMatrix
where
    F: Fn(f64, &ComplexMatrix) -> ComplexMatrix,
{
    let half = C64::new(0.5 * dt, 0.0);
    let k1 = rhs(t, rho);
    let mut probe = rho.clone();
    probe.add_scaled(&k1, half);
    let k2 = rhs(t + 0.5 * dt, &probe);
    let mut probe = rho.clone();
    probe.add_scaled(&k2, half);
    let k3 = rhs(t + 0.5 * dt, &probe);
    let mut probe = rho.clone();
    probe.add_scaled(&k3, C64::new(dt, 0.0));
    let k4 = rhs(t + dt, &probe);

    let mut next = rho.clone();
    let sixth = dt / 6.0;
    next.add_scaled(&k1, C64::new(sixth, 0.0));
    next.add_scaled(&k2, C64::new(2.0 * sixth, 0.0));
    next.add_scaled(&k3, C64::new(2.0 * sixth, 0.0));
    next.add_scaled(&k4, C64::new(sixth, 0.0));
    next.hermitian_part()
}

/// Horizon, step and recording stride of a fixed-step run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub t_max: f64,
    pub dt: f64,
    /// Record every `sample_stride`-th step (step 0 is always recorded).
    pub sample_stride: usize,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            t_max: 30.0,
            dt: 1e-3,
            sample_stride: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ConfigError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("dt = {dt} exceeds t_max = {t_max}")]
    StepExceedsHorizon { dt: f64, t_max: f64 },
    #[error("t_max / dt = {ratio} is not an integer step count")]
    FractionalSteps { ratio: f64 },
    #[error("sample_stride must be at least 1")]
    ZeroStride,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        positive("t_max", self.t_max)?;
        positive("dt", self.dt)?;
        if self.dt > self.t_max {
            return Err(ConfigError::StepExceedsHorizon {
                dt: self.dt,
                t_max: self.t_max,
            });
        }
        let ratio = self.t_max / self.dt;
        if (ratio - libm::round(ratio)).abs() > 1e-6 * ratio.max(1.0) {
            return Err(ConfigError::FractionalSteps { ratio });
        }
        if self.sample_stride == 0 {
            return Err(ConfigError::ZeroStride);
        }
        Ok(())
    }

    /// Number of integration steps from 0 to `t_max`.
    pub fn steps(&self) -> usize {
        libm::round(self.t_max / self.dt) as usize
    }

    /// Time of step `k`, computed without accumulation.
    #[inline]
    pub fn time_of(&self, step: usize) -> f64 {
        step as f64 * self.dt
    }
}

/// Recorded density matrices with their times.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<ComplexMatrix>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn push(&mut self, t: f64, state: ComplexMatrix) {
        self.times.push(t);
        self.states.push(state);
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &ComplexMatrix)> {
        self.times.iter().copied().zip(self.states.iter())
    }

    /// Largest elementwise difference between two trajectories on the same grid.
    pub fn max_abs_diff(&self, other: &Trajectory) -> Option<f64> {
        if self.times != other.times {
            return None;
        }
        Some(
            self.states
                .iter()
                .zip(&other.states)
                .map(|(a, b)| a.max_abs_diff(b))
                .fold(0.0, f64::max),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    TraceDrift(f64),
    NegativeEigenvalue(f64),
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvolveError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("initial state is not a valid density matrix: {0:?}")]
    InvalidInitialState(StateDefect),
    #[error("state invariant violated at t = {time}: {violation:?}")]
    InvariantViolation { time: f64, violation: Violation },
    #[error(transparent)]
    Math(#[from] QmathError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateDefect {
    WrongDimension(usize),
    Math(QmathError),
    Trace(f64),
    MinEigenvalue(f64),
}

/// Checks dimension, Hermiticity, unit trace and positivity of a 4×4 density matrix.
pub fn check_density_matrix(rho: &ComplexMatrix) -> Result<(), StateDefect> {
    if rho.dim() != 4 {
        return Err(StateDefect::WrongDimension(rho.dim()));
    }
    let eig = hermitian_eigs(rho).map_err(StateDefect::Math)?;
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > INITIAL_TRACE_TOL {
        return Err(StateDefect::Trace(tr));
    }
    if eig.min() < INITIAL_MIN_EIGENVALUE {
        return Err(StateDefect::MinEigenvalue(eig.min()));
    }
    Ok(())
}

fn monitor(t: f64, rho: &ComplexMatrix) -> Result<(), EvolveError> {
    let fail = |violation| EvolveError::InvariantViolation { time: t, violation };
    if rho
        .entries()
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(fail(Violation::NonFinite));
    }
    let drift = rho.trace().re - 1.0;
    if drift.abs() > TRACE_DRIFT_LIMIT {
        return Err(fail(Violation::TraceDrift(drift)));
    }
    let min = hermitian_eigs(rho)?.min();
    if min < MIN_EIGENVALUE_LIMIT {
        return Err(fail(Violation::NegativeEigenvalue(min)));
    }
    Ok(())
}

/// The full generator `ρ ↦ dρ/dt` for one parameter set.
#[derive(Debug, Clone)]
pub struct MasterEquation {
    hamiltonian: DrivenHamiltonian,
    channels: Vec<CollapseChannel>,
}

impl MasterEquation {
    pub fn new(params: &SystemParams, pulse: &PulseParams, rates: &DecoherenceRates) -> Self {
        Self {
            hamiltonian: DrivenHamiltonian::new(params, pulse),
            channels: build_collapse_channels(rates, pulse),
        }
    }

    pub fn hamiltonian(&self) -> &DrivenHamiltonian {
        &self.hamiltonian
    }

    pub fn channels(&self) -> &[CollapseChannel] {
        &self.channels
    }

    pub fn rhs(&self, t: f64, rho: &ComplexMatrix) -> ComplexMatrix {
        lindblad_rhs(t, rho, &self.hamiltonian.at(t), &self.channels)
    }
}

/// Integrates from `t = 0` to `cfg.t_max` with fixed-step RK4, recording every
/// `cfg.sample_stride`-th state.
pub fn evolve(
    rho0: &ComplexMatrix,
    params: &SystemParams,
    pulse: &PulseParams,
    rates: &DecoherenceRates,
    cfg: &SimulationConfig,
) -> Result<Trajectory, EvolveError> {
    params.validate()?;
    pulse.validate()?;
    rates.validate()?;
    cfg.validate()?;
    check_density_matrix(rho0).map_err(EvolveError::InvalidInitialState)?;

    let eq = MasterEquation::new(params, pulse, rates);
    let steps = cfg.steps();
    let mut traj = Trajectory::default();
    let mut rho = rho0.clone();
    traj.push(0.0, rho.clone());

    for step in 0..steps {
        let t = cfg.time_of(step);
        rho = rk4_step(t, &rho, cfg.dt, |s, r| eq.rhs(s, r));
        let done = step + 1;
        if done % cfg.sample_stride == 0 {
            let t_next = cfg.time_of(done);
            monitor(t_next, &rho)?;
            traj.push(t_next, rho.clone());
        }
    }
    Ok(traj)
}
