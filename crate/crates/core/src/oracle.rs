//! Reference propagator for checking [`crate::lindblad::evolve`].
//!
//! The density matrix is vectorized row-major into a 16-vector, the master
//! equation becomes `d vec(ρ)/dt = 𝓛(t) vec(ρ)`, and each fine step applies
//! `exp(h·𝓛(t_mid))` with 𝓛 frozen at the step midpoint. The superoperator is
//! assembled directly from `vec(AρB) = (A ⊗ Bᵀ) vec(ρ)` and shares no code
//! with the RK4 right-hand side.

use thiserror::Error;

use crate::hamiltonian::{DrivenHamiltonian, PulseParams, SystemParams};
use crate::lindblad::{
    build_collapse_channels, CollapseChannel, ConfigError, DecoherenceRates, SimulationConfig,
    Trajectory,
};
use crate::qmath::{expm, kron, ComplexMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("fine step {fine_dt} must be at most dt/10 = {limit}")]
    StepTooCoarse { fine_dt: f64, limit: f64 },
    #[error("dt / fine_dt = {ratio} is not an integer")]
    FractionalSubdivision { ratio: f64 },
    #[error("initial state must be 4x4, got {0}x{0}")]
    NotTwoQubit(usize),
}

/// `𝓛 = −i(H ⊗ I − I ⊗ Hᵀ) + Σ γ (L ⊗ L̄ − ½ L†L ⊗ I − ½ I ⊗ (L†L)ᵀ)`
pub fn liouvillian(h: &ComplexMatrix, channels: &[(ComplexMatrix, f64)]) -> ComplexMatrix {
    let id = ComplexMatrix::identity(h.dim());
    let mut sup = &kron(h, &id) - &kron(&id, &h.transpose());
    sup = sup.scale(C64::new(0.0, -1.0));
    for (l, gamma) in channels {
        if *gamma == 0.0 {
            continue;
        }
        let ldl = l.dagger().matmul(l);
        sup.add_scaled(&kron(l, &l.conj()), C64::new(*gamma, 0.0));
        sup.add_scaled(&kron(&ldl, &id), C64::new(-0.5 * gamma, 0.0));
        sup.add_scaled(&kron(&id, &ldl.transpose()), C64::new(-0.5 * gamma, 0.0));
    }
    sup
}

fn liouvillian_at(ham: &DrivenHamiltonian, chans: &[CollapseChannel], t: f64) -> ComplexMatrix {
    let rated: alloc::vec::Vec<_> = chans
        .iter()
        .map(|c| (c.operator().clone(), c.rate_at(t)))
        .collect();
    liouvillian(&ham.at(t), &rated)
}

/// Propagates `rho0` over the same recording grid as [`crate::lindblad::evolve`]
/// with `cfg`, subdividing every integration step into `dt / fine_dt` frozen
/// Liouvillian exponentials.
pub fn liouvillian_exponential_oracle(
    rho0: &ComplexMatrix,
    params: &SystemParams,
    pulse: &PulseParams,
    rates: &DecoherenceRates,
    cfg: &SimulationConfig,
    fine_dt: f64,
) -> Result<Trajectory, OracleError> {
    cfg.validate()?;
    if rho0.dim() != 4 {
        return Err(OracleError::NotTwoQubit(rho0.dim()));
    }
    let limit = cfg.dt / 10.0;
    if !(fine_dt > 0.0 && fine_dt <= limit * (1.0 + 1e-12)) {
        return Err(OracleError::StepTooCoarse { fine_dt, limit });
    }
    let ratio = cfg.dt / fine_dt;
    let per_step = libm::round(ratio);
    if (ratio - per_step).abs() > 1e-6 * ratio {
        return Err(OracleError::FractionalSubdivision { ratio });
    }
    let per_step = per_step as usize;
    let h = cfg.dt / per_step as f64;

    let ham = DrivenHamiltonian::new(params, pulse);
    let chans = build_collapse_channels(rates, pulse);

    let mut traj = Trajectory::default();
    let mut v = rho0.to_vec();
    traj.push(0.0, rho0.clone());
    for step in 0..cfg.steps() {
        let t_step = cfg.time_of(step);
        for sub in 0..per_step {
            let t_mid = t_step + (sub as f64 + 0.5) * h;
            let prop = expm(&liouvillian_at(&ham, &chans, t_mid).scale_real(h));
            v = prop.apply(&v);
        }
        let done = step + 1;
        if done % cfg.sample_stride == 0 {
            let rho = ComplexMatrix::from_row_major(v.clone()).expect("16 entries");
            traj.push(cfg.time_of(done), rho);
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindblad::lindblad_rhs;
    use crate::qmath::pauli::{identity, sigma_minus, sigma_x, sigma_z};

    #[test]
    fn superoperator_matches_direct_generator() {
        let rho = {
            let mut r = ComplexMatrix::from_diagonal(&[0.4, 0.3, 0.2, 0.1]);
            r[(0, 3)] = C64::new(0.05, 0.02);
            r[(3, 0)] = C64::new(0.05, -0.02);
            r
        };
        let h = &kron(&sigma_x(), &sigma_x()) + &kron(&sigma_z(), &identity()).scale_real(0.3);
        let l = kron(&sigma_minus(), &identity());
        let sup = liouvillian(&h, &[(l.clone(), 0.7)]);
        let via_sup = ComplexMatrix::from_row_major(sup.apply(&rho.to_vec())).unwrap();
        let chan = CollapseChannel::new(l, crate::lindblad::Rate::Constant(0.7));
        let direct = lindblad_rhs(0.0, &rho, &h, &[chan]);
        assert!(via_sup.max_abs_diff(&direct) < 1e-15);
    }

    #[test]
    fn rejects_coarse_fine_step() {
        let cfg = SimulationConfig::default();
        let rho = ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0]);
        let sys = SystemParams::symmetric(0.0, 0.0, 0.0);
        let pulse = PulseParams {
            a_pulse: 0.0,
            beta_pulse: 1.0,
            t0: 15.0,
        };
        let rates = DecoherenceRates {
            gamma_amp: 0.0,
            gamma_deph: 0.0,
            g_pulse: 0.0,
        };
        let err = liouvillian_exponential_oracle(&rho, &sys, &pulse, &rates, &cfg, 5e-4);
        assert!(matches!(err, Err(OracleError::StepTooCoarse { .. })));
        let err = liouvillian_exponential_oracle(&rho, &sys, &pulse, &rates, &cfg, 0.3e-4);
        assert!(matches!(
            err,
            Err(OracleError::FractionalSubdivision { .. })
        ));
    }
}
