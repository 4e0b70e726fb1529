//! Correlation measures of a two-qubit density matrix: negativity, geometric
//! discord and the memory-assisted entropic uncertainty for σx/σz on qubit A
//! with qubit B as memory.

use alloc::boxed::Box;
use alloc::vec::Vec;

use thiserror::Error;

use crate::lindblad::Trajectory;
use crate::qmath::pauli::{identity, sigma_x, sigma_z};
use crate::qmath::{
    hermitian_eigs, kron, partial_trace, partial_transpose, purity, trace_norm,
    von_neumann_entropy, ComplexMatrix, QmathError, Subsystem, C64,
};

/// Slack allowed below the entropic lower bound before it is reported.
pub const BERTA_SLACK: f64 = 1e-9;

/// `log₂(1/c)` for the complementary pair σx, σz (`c = 1/2`).
pub const COMPLEMENTARITY_BITS: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Math(#[from] QmathError),
    #[error("entropic uncertainty {value} fell below its lower bound {bound}")]
    BoundViolation { value: f64, bound: f64 },
    #[error("at t = {time}: {source}")]
    AtTime {
        time: f64,
        #[source]
        source: Box<MeasureError>,
    },
}

impl MeasureError {
    fn at(self, time: f64) -> Self {
        match self {
            already @ MeasureError::AtTime { .. } => already,
            other => MeasureError::AtTime {
                time,
                source: Box::new(other),
            },
        }
    }
}

/// `(‖ρ^{T_A}‖₁ − 1) / 2`, clamped at zero.
pub fn negativity(rho: &ComplexMatrix) -> Result<f64, MeasureError> {
    let pt = partial_transpose(rho, Subsystem::A)?;
    Ok(((trace_norm(&pt) - 1.0) / 2.0).max(0.0))
}

/// Local Bloch vectors and correlation matrix of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub t_matrix: [[f64; 3]; 3],
}

impl BlochDecomposition {
    /// `¼ (I⊗I + Σ xᵢ σᵢ⊗I + Σ yⱼ I⊗σⱼ + Σ Tᵢⱼ σᵢ⊗σⱼ)`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let id = identity();
        let paulis = crate::qmath::pauli::all();
        let mut rho = ComplexMatrix::identity(4);
        for i in 0..3 {
            rho.add_scaled(&kron(&paulis[i], &id), C64::new(self.x[i], 0.0));
            rho.add_scaled(&kron(&id, &paulis[i]), C64::new(self.y[i], 0.0));
            for j in 0..3 {
                rho.add_scaled(
                    &kron(&paulis[i], &paulis[j]),
                    C64::new(self.t_matrix[i][j], 0.0),
                );
            }
        }
        rho.scale_real(0.25)
    }

    /// `K = x xᵀ + T Tᵀ`, with `x` the Bloch vector of the measured qubit A.
    pub fn k_matrix(&self) -> [[f64; 3]; 3] {
        let mut k = [[0.0; 3]; 3];
        for (i, row) in k.iter_mut().enumerate() {
            for (j, kij) in row.iter_mut().enumerate() {
                let tt: f64 = (0..3)
                    .map(|m| self.t_matrix[i][m] * self.t_matrix[j][m])
                    .sum();
                *kij = self.x[i] * self.x[j] + tt;
            }
        }
        k
    }
}

fn expectation(rho: &ComplexMatrix, op: &ComplexMatrix) -> f64 {
    rho.matmul(op).trace().re
}

pub fn bloch_decompose(rho: &ComplexMatrix) -> Result<BlochDecomposition, MeasureError> {
    if rho.dim() != 4 {
        return Err(QmathError::NotTwoQubit { dim: rho.dim() }.into());
    }
    let id = identity();
    let paulis = crate::qmath::pauli::all();
    let mut out = BlochDecomposition {
        x: [0.0; 3],
        y: [0.0; 3],
        t_matrix: [[0.0; 3]; 3],
    };
    for i in 0..3 {
        out.x[i] = expectation(rho, &kron(&paulis[i], &id));
        out.y[i] = expectation(rho, &kron(&id, &paulis[i]));
        for j in 0..3 {
            out.t_matrix[i][j] = expectation(rho, &kron(&paulis[i], &paulis[j]));
        }
    }
    Ok(out)
}

/// `¼ (Tr K − λ_max(K))`
pub fn geometric_discord(rho: &ComplexMatrix) -> Result<f64, MeasureError> {
    let k = bloch_decompose(rho)?.k_matrix();
    let km = ComplexMatrix::from_real_rows(k);
    let lambda_max = hermitian_eigs(&km)?.max();
    let trace = k[0][0] + k[1][1] + k[2][2];
    Ok(((trace - lambda_max) / 4.0).max(0.0))
}

/// Observable measured on qubit A.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementAxis {
    X,
    Z,
}

impl MeasurementAxis {
    /// Projectors onto the +1 and −1 eigenspaces.
    fn projectors(self) -> [ComplexMatrix; 2] {
        let op = match self {
            MeasurementAxis::X => sigma_x(),
            MeasurementAxis::Z => sigma_z(),
        };
        let id = identity();
        [(&id + &op).scale_real(0.5), (&id - &op).scale_real(0.5)]
    }
}

/// `S(ρ_AB) − S(ρ_B)`
pub fn conditional_entropy(rho: &ComplexMatrix) -> Result<f64, MeasureError> {
    let rho_b = partial_trace(rho, Subsystem::B)?;
    Ok(von_neumann_entropy(rho)? - von_neumann_entropy(&rho_b)?)
}

/// `S(Q_A|B) = S(Σ_k (Π_k⊗I) ρ (Π_k⊗I)) − S(ρ_B)` for the chosen Pauli `Q` on A,
/// clamped at zero.
pub fn conditional_entropy_after_measurement(
    rho: &ComplexMatrix,
    axis: MeasurementAxis,
) -> Result<f64, MeasureError> {
    let id = identity();
    let mut measured = ComplexMatrix::zeros(4);
    for p in axis.projectors() {
        let lifted = kron(&p, &id);
        let branch = lifted.matmul(rho).matmul(&lifted);
        measured.add_scaled(&branch, C64::new(1.0, 0.0));
    }
    let rho_b = partial_trace(rho, Subsystem::B)?;
    let s = von_neumann_entropy(&measured.hermitian_part())? - von_neumann_entropy(&rho_b)?;
    Ok(s.max(0.0))
}

/// Exact entropic uncertainty together with its lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropicUncertainty {
    /// `S(X_A|B) + S(Z_A|B)`
    pub value: f64,
    /// `log₂(1/c) + S(A|B)`
    pub bound: f64,
}

pub fn qm_eur_exact(rho: &ComplexMatrix) -> Result<EntropicUncertainty, MeasureError> {
    let value = conditional_entropy_after_measurement(rho, MeasurementAxis::X)?
        + conditional_entropy_after_measurement(rho, MeasurementAxis::Z)?;
    let bound = COMPLEMENTARITY_BITS + conditional_entropy(rho)?;
    if value < bound - BERTA_SLACK {
        return Err(MeasureError::BoundViolation { value, bound });
    }
    Ok(EntropicUncertainty { value, bound })
}

/// Linear surrogate `2 (1 − 2 N(ρ))`.
pub fn qm_eur_approx(rho: &ComplexMatrix) -> Result<f64, MeasureError> {
    Ok(eur_from_negativity(negativity(rho)?))
}

#[inline]
pub fn eur_from_negativity(ng: f64) -> f64 {
    2.0 * (1.0 - 2.0 * ng)
}

/// Derived quantities of one recorded state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSample {
    pub t: f64,
    pub ng: f64,
    /// Geometric discord on its native scale (maximum 0.5).
    pub qd: f64,
    /// `NaN` when the exact relation was not requested.
    pub u_exact: f64,
    pub u_approx: f64,
    pub purity: f64,
    /// `Tr ρ − 1`
    pub trace_error: f64,
}

impl CorrelationSample {
    pub fn qd_doubled(&self) -> f64 {
        2.0 * self.qd
    }
}

/// Everything except the exact entropic uncertainty is always computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureOptions {
    pub exact_eur: bool,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        Self { exact_eur: true }
    }
}

pub fn measure_state(
    t: f64,
    rho: &ComplexMatrix,
    opts: MeasureOptions,
) -> Result<CorrelationSample, MeasureError> {
    let ng = negativity(rho)?;
    let u_exact = if opts.exact_eur {
        qm_eur_exact(rho)?.value
    } else {
        f64::NAN
    };
    Ok(CorrelationSample {
        t,
        ng,
        qd: geometric_discord(rho)?,
        u_exact,
        u_approx: eur_from_negativity(ng),
        purity: purity(rho),
        trace_error: rho.trace().re - 1.0,
    })
}

pub fn measure_trajectory(traj: &Trajectory) -> Result<Vec<CorrelationSample>, MeasureError> {
    measure_trajectory_with(traj, MeasureOptions::default())
}

pub fn measure_trajectory_with(
    traj: &Trajectory,
    opts: MeasureOptions,
) -> Result<Vec<CorrelationSample>, MeasureError> {
    traj.iter()
        .map(|(t, rho)| measure_state(t, rho, opts).map_err(|e| e.at(t)))
        .collect()
}
