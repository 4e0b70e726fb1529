//! Static two-qubit Hamiltonian, sech drive envelope and the total
//! time-dependent Hamiltonian (ħ = 1, dimensionless units).

use thiserror::Error;

use crate::qmath::pauli::{identity, sigma_x, sigma_y, sigma_z};
use crate::qmath::{kron, ComplexMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ParamError {
    #[error("parameter `{name}` must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
    #[error("parameter `{name}` must be positive, got {value}")]
    NotPositive { name: &'static str, value: f64 },
    #[error("parameter `{name}` must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<(), ParamError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(ParamError::NotFinite { name, value })
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<(), ParamError> {
    finite(name, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(ParamError::NotPositive { name, value })
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<(), ParamError> {
    finite(name, value)?;
    if value >= 0.0 {
        Ok(())
    } else {
        Err(ParamError::Negative { name, value })
    }
}

/// Qubit splittings and couplings of the static Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub epsilon0: f64,
    pub epsilon1: f64,
    pub j_zz: f64,
    pub j_xx: f64,
}

impl SystemParams {
    /// Both qubits share the splitting `epsilon`.
    pub fn symmetric(epsilon: f64, j_zz: f64, j_xx: f64) -> Self {
        Self {
            epsilon0: epsilon,
            epsilon1: epsilon,
            j_zz,
            j_xx,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        finite("epsilon0", self.epsilon0)?;
        finite("epsilon1", self.epsilon1)?;
        finite("j_zz", self.j_zz)?;
        finite("j_xx", self.j_xx)
    }
}

/// Sech envelope `a_pulse / cosh(beta_pulse · (t − t0))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseParams {
    pub a_pulse: f64,
    pub beta_pulse: f64,
    pub t0: f64,
}

impl PulseParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        finite("a_pulse", self.a_pulse)?;
        positive("beta_pulse", self.beta_pulse)?;
        finite("t0", self.t0)
    }

    #[inline]
    pub fn amplitude(&self, t: f64) -> f64 {
        pulse_amplitude(t, self)
    }
}

#[inline]
pub fn pulse_amplitude(t: f64, p: &PulseParams) -> f64 {
    let x = p.beta_pulse * (t - p.t0);
    // cosh overflows near |x| = 710; the envelope is zero there in f64 anyway.
    if x.abs() > 700.0 {
        0.0
    } else {
        p.a_pulse / libm::cosh(x)
    }
}

/// `(ε₀/2) σz⊗I + (ε₁/2) I⊗σz + J_zz σz⊗σz + J_xx σx⊗σx`
pub fn build_static_hamiltonian(p: &SystemParams) -> ComplexMatrix {
    let (id, sx, sz) = (identity(), sigma_x(), sigma_z());
    let mut h = ComplexMatrix::zeros(4);
    h.add_scaled(&kron(&sz, &id), C64::new(p.epsilon0 / 2.0, 0.0));
    h.add_scaled(&kron(&id, &sz), C64::new(p.epsilon1 / 2.0, 0.0));
    h.add_scaled(&kron(&sz, &sz), C64::new(p.j_zz, 0.0));
    h.add_scaled(&kron(&sx, &sx), C64::new(p.j_xx, 0.0));
    h
}

/// `(σx + σy)⊗I + I⊗(σx + σy)`
pub fn build_drive_operator() -> ComplexMatrix {
    let id = identity();
    let local = &sigma_x() + &sigma_y();
    &kron(&local, &id) + &kron(&id, &local)
}

pub fn total_hamiltonian(t: f64, p: &SystemParams, pulse: &PulseParams) -> ComplexMatrix {
    DrivenHamiltonian::new(p, pulse).at(t)
}

/// `H(t) = H₀ + f(t)·H_D` with both operators built once.
#[derive(Debug, Clone)]
pub struct DrivenHamiltonian {
    static_part: ComplexMatrix,
    drive: ComplexMatrix,
    pulse: PulseParams,
}

impl DrivenHamiltonian {
    pub fn new(p: &SystemParams, pulse: &PulseParams) -> Self {
        Self {
            static_part: build_static_hamiltonian(p),
            drive: build_drive_operator(),
            pulse: *pulse,
        }
    }

    pub fn static_part(&self) -> &ComplexMatrix {
        &self.static_part
    }

    pub fn drive_operator(&self) -> &ComplexMatrix {
        &self.drive
    }

    pub fn pulse(&self) -> &PulseParams {
        &self.pulse
    }

    pub fn at(&self, t: f64) -> ComplexMatrix {
        let f = self.pulse.amplitude(t);
        let mut h = self.static_part.clone();
        if f != 0.0 {
            h.add_scaled(&self.drive, C64::new(f, 0.0));
        }
        h
    }
}
