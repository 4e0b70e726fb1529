//! Dense complex linear algebra for the 2×2 and 4×4 operators of a qubit pair.
//!
//! Basis ordering is |00⟩, |01⟩, |10⟩, |11⟩ with qubit 0 (subsystem `A`) as the
//! most significant index, so `kron(a, b)` places `a` on qubit 0.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex64 as C64;
use thiserror::Error;

/// Elementwise tolerance for accepting an input as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues between this and zero are treated as round-off in entropies.
pub const NEGATIVE_EIGENVALUE_TOL: f64 = 1e-9;

const JACOBI_OFFDIAG_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QmathError {
    #[error("entry count {len} is not a square of a positive dimension")]
    NotSquare { len: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected a 4x4 two-qubit operator, got {dim}x{dim}")]
    NotTwoQubit { dim: usize },
    #[error("matrix is not Hermitian (max |M - M^dagger| = {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("eigenvalue {value:e} is below the round-off allowance")]
    NegativeEigenvalue { value: f64 },
}

/// One qubit of the pair. `A` is qubit 0, `B` is qubit 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

/// A dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; the length must be a perfect square.
    pub fn from_row_major(entries: Vec<C64>) -> Result<Self, QmathError> {
        let len = entries.len();
        let dim = isqrt(len);
        if dim == 0 || dim * dim != len {
            return Err(QmathError::NotSquare { len });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros(N);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = C64::new(v, 0.0);
            }
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// The projector |ψ⟩⟨ψ| onto a (not necessarily normalized) state vector.
    pub fn projector(ket: &[C64]) -> Self {
        let mut m = Self::zeros(ket.len());
        for (i, a) in ket.iter().enumerate() {
            for (j, b) in ket.iter().enumerate() {
                m[(i, j)] = a * b.conj();
            }
        }
        m
    }

    /// Builds `(m + m†)/2`, which is Hermitian to machine precision.
    pub fn hermitian_part(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| f(z)).collect(),
        }
    }

    /// `self += s * other`, in place.
    pub fn add_scaled(&mut self, other: &Self, s: C64) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b * s;
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        out
    }

    /// `[self, other] = self·other − other·self`
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// `{self, other} = self·other + other·self`
    pub fn anticommutator(&self, other: &Self) -> Self {
        &self.matmul(other) + &other.matmul(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M − M†|` elementwise.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Induced 1-norm (max absolute column sum).
    pub fn one_norm(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Row-major vectorization, `vec(ρ)[i·n + j] = ρ[i][j]`.
    pub fn to_vec(&self) -> Vec<C64> {
        self.entries.clone()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|k| self.entries[i * n + k] * v[k]).sum())
            .collect()
    }

    fn require_two_qubit(&self) -> Result<(), QmathError> {
        if self.dim == 4 {
            Ok(())
        } else {
            Err(QmathError::NotTwoQubit { dim: self.dim })
        }
    }
}

fn isqrt(n: usize) -> usize {
    let mut r = libm::sqrt(n as f64) as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

/// Single-qubit Pauli and ladder operators.
pub mod pauli {
    use super::{ComplexMatrix, C64};

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn sigma_y() -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = C64::new(0.0, -1.0);
        m[(1, 0)] = C64::new(0.0, 1.0);
        m
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]])
    }

    /// Lowering operator |0⟩⟨1|.
    pub fn sigma_minus() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[0.0, 1.0], [0.0, 0.0]])
    }

    /// Raising operator |1⟩⟨0|.
    pub fn sigma_plus() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[0.0, 0.0], [1.0, 0.0]])
    }

    /// σ_x, σ_y, σ_z in order.
    pub fn all() -> [ComplexMatrix; 3] {
        [sigma_x(), sigma_y(), sigma_z()]
    }
}

/// Kronecker product with `a` as the left (more significant) factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (n, m) = (a.dim, b.dim);
    let mut out = ComplexMatrix::zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            let aij = a[(i, j)];
            for k in 0..m {
                for l in 0..m {
                    out[(i * m + k, j * m + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn dagger(m: &ComplexMatrix) -> ComplexMatrix {
    m.dagger()
}

/// Transposes the indices of one qubit of a 4×4 operator.
pub fn partial_transpose(
    rho: &ComplexMatrix,
    subsystem: Subsystem,
) -> Result<ComplexMatrix, QmathError> {
    rho.require_two_qubit()?;
    let mut out = ComplexMatrix::zeros(4);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    // element ⟨a b|ρ|c d⟩
                    let (row, col) = match subsystem {
                        Subsystem::A => (c * 2 + b, a * 2 + d),
                        Subsystem::B => (a * 2 + d, c * 2 + b),
                    };
                    out[(row, col)] = rho[(a * 2 + b, c * 2 + d)];
                }
            }
        }
    }
    Ok(out)
}

/// Reduced 2×2 state of the qubit named by `keep`.
pub fn partial_trace(rho: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix, QmathError> {
    rho.require_two_qubit()?;
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = (0..2)
                .map(|k| match keep {
                    Subsystem::A => rho[(i * 2 + k, j * 2 + k)],
                    Subsystem::B => rho[(k * 2 + i, k * 2 + j)],
                })
                .sum();
        }
    }
    Ok(out)
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        let n = self.eigenvectors.dim();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// `V Λ V†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvectors.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] +=
                        self.eigenvectors[(i, k)] * self.eigenvectors[(j, k)].conj() * lambda;
                }
            }
        }
        out
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }
}

/// Eigen-decomposition by cyclic complex Jacobi rotations.
pub fn hermitian_eigs(m: &ComplexMatrix) -> Result<HermitianEigen, QmathError> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL || defect.is_nan() {
        return Err(QmathError::NotHermitian { defect });
    }
    Ok(jacobi_eigen(m.hermitian_part()))
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>, QmathError> {
    hermitian_eigs(m).map(|e| e.eigenvalues)
}

fn jacobi_eigen(mut a: ComplexMatrix) -> HermitianEigen {
    let n = a.dim();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off < JACOBI_OFFDIAG_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, col)] = v[(i, src)];
        }
    }
    HermitianEigen {
        eigenvalues,
        eigenvectors,
    }
}

/// Annihilates `a[p][q]` with the unitary `U = diag(1, e^{-iφ})·R(θ)` acting on
/// the (p, q) plane, updating `a ← U† a U` and `v ← v U`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = 0.5 * libm::atan2(2.0 * r, aqq - app);
    let (s, c) = (libm::sin(theta), libm::cos(theta));

    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// `Tr √(M†M)`. Hermitian inputs use the sum of absolute eigenvalues.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    if m.hermiticity_defect() <= HERMITIAN_TOL {
        jacobi_eigen(m.hermitian_part())
            .eigenvalues
            .iter()
            .map(|l| l.abs())
            .sum()
    } else {
        let gram = m.dagger().matmul(m).hermitian_part();
        jacobi_eigen(gram)
            .eigenvalues
            .iter()
            .map(|&l| libm::sqrt(l.max(0.0)))
            .sum()
    }
}

/// Shannon entropy in bits of a spectrum, with `0·log 0 = 0`.
///
/// Values in `[-NEGATIVE_EIGENVALUE_TOL, 0)` are clamped to zero.
pub fn spectral_entropy(eigenvalues: &[f64]) -> Result<f64, QmathError> {
    let mut s = 0.0;
    for &l in eigenvalues {
        if l < -NEGATIVE_EIGENVALUE_TOL {
            return Err(QmathError::NegativeEigenvalue { value: l });
        }
        let p = l.clamp(0.0, 1.0);
        if p > 0.0 {
            s -= p * libm::log2(p);
        }
    }
    Ok(s)
}

/// Von Neumann entropy `−Tr ρ log₂ ρ` in bits.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64, QmathError> {
    spectral_entropy(&hermitian_eigs(rho)?.eigenvalues)
}

/// `Tr ρ²`
pub fn purity(rho: &ComplexMatrix) -> f64 {
    // Tr(ρρ) = Σ_ij ρ_ij ρ_ji
    let n = rho.dim();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += rho[(i, j)] * rho[(j, i)];
        }
    }
    acc.re
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
pub fn expm(m: &ComplexMatrix) -> ComplexMatrix {
    let norm = m.one_norm();
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > 0.5 {
        scaled_norm *= 0.5;
        squarings += 1;
    }
    let scaled = m.scale_real(libm::ldexp(1.0, -(squarings as i32)));

    let n = m.dim();
    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=30u32 {
        term = term.matmul(&scaled).scale_real(1.0 / k as f64);
        result.add_scaled(&term, C64::new(1.0, 0.0));
        if term.max_abs() <= f64::EPSILON * 1e-3 * result.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::pauli::*;
    use super::*;

    fn bell() -> ComplexMatrix {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::projector(&[
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
        ])
    }

    fn ket00() -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0])
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn kron_fixtures() {
        assert_eq!(kron(&identity(), &identity()), ComplexMatrix::identity(4));
        assert_eq!(
            kron(&sigma_z(), &identity()),
            ComplexMatrix::from_diagonal(&[1.0, 1.0, -1.0, -1.0])
        );
        let xx = kron(&sigma_x(), &sigma_x());
        let anti = ComplexMatrix::from_real_rows([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(xx, anti);
    }

    #[test]
    fn dagger_fixtures() {
        assert_eq!(dagger(&sigma_z()), sigma_z());
        assert_eq!(dagger(&sigma_minus()), sigma_plus());
        assert_eq!(dagger(&sigma_y()), sigma_y());
    }

    #[test]
    fn partial_transpose_fixtures() {
        let pt = partial_transpose(&bell(), Subsystem::A).unwrap();
        let e = hermitian_eigs(&pt).unwrap();
        for (got, want) in e.eigenvalues.iter().zip([-0.5, 0.5, 0.5, 0.5]) {
            assert_close(*got, want, 1e-12);
        }
        assert_eq!(partial_transpose(&ket00(), Subsystem::A).unwrap(), ket00());
        assert!(matches!(
            partial_transpose(&sigma_x(), Subsystem::A),
            Err(QmathError::NotTwoQubit { dim: 2 })
        ));
    }

    #[test]
    fn partial_transpose_b_equals_full_transpose_of_a() {
        // ρ^{T_B} = (ρ^{T_A})^T
        let mut rho = bell();
        rho[(0, 1)] = C64::new(0.1, 0.2);
        rho[(1, 0)] = C64::new(0.1, -0.2);
        let ta = partial_transpose(&rho, Subsystem::A).unwrap();
        let tb = partial_transpose(&rho, Subsystem::B).unwrap();
        assert!(ta.transpose().max_abs_diff(&tb) < 1e-15);
    }

    #[test]
    fn partial_trace_fixtures() {
        let reduced = partial_trace(&bell(), Subsystem::A).unwrap();
        assert!(reduced.max_abs_diff(&identity().scale_real(0.5)) < 1e-15);
        let reduced = partial_trace(&ket00(), Subsystem::A).unwrap();
        assert_eq!(reduced, ComplexMatrix::from_diagonal(&[1.0, 0.0]));
        assert!(partial_trace(&identity(), Subsystem::B).is_err());
    }

    #[test]
    fn partial_trace_keeps_named_qubit() {
        let a = ComplexMatrix::from_diagonal(&[0.25, 0.75]);
        let b = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let ab = kron(&a, &b);
        assert!(partial_trace(&ab, Subsystem::A).unwrap().max_abs_diff(&a) < 1e-15);
        assert!(partial_trace(&ab, Subsystem::B).unwrap().max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn eigen_fixtures() {
        let e = hermitian_eigs(&ComplexMatrix::from_diagonal(&[3.0, 1.0, 4.0, 2.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 2.0, 3.0, 4.0]);
        let e = hermitian_eigs(&sigma_x()).unwrap();
        assert_close(e.eigenvalues[0], -1.0, 1e-14);
        assert_close(e.eigenvalues[1], 1.0, 1e-14);
        let e = hermitian_eigs(&sigma_y()).unwrap();
        assert!(e.reconstruct().max_abs_diff(&sigma_y()) < 1e-14);
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        assert!(matches!(
            hermitian_eigs(&sigma_minus()),
            Err(QmathError::NotHermitian { .. })
        ));
    }

    #[test]
    fn trace_norm_fixtures() {
        assert_close(trace_norm(&ComplexMatrix::identity(4)), 4.0, 1e-14);
        let pt = partial_transpose(&bell(), Subsystem::A).unwrap();
        assert_close(trace_norm(&pt), 2.0, 1e-12);
        assert_close(trace_norm(&bell()), 1.0, 1e-12);
        // singular values of σ₋ are {1, 0}
        assert_close(trace_norm(&sigma_minus()), 1.0, 1e-12);
    }

    #[test]
    fn entropy_fixtures() {
        assert_close(von_neumann_entropy(&ket00()).unwrap(), 0.0, 1e-14);
        let mixed4 = ComplexMatrix::identity(4).scale_real(0.25);
        assert_close(von_neumann_entropy(&mixed4).unwrap(), 2.0, 1e-12);
        let mixed2 = ComplexMatrix::identity(2).scale_real(0.5);
        assert_close(von_neumann_entropy(&mixed2).unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn entropy_clamps_round_off_but_rejects_real_negatives() {
        assert_eq!(spectral_entropy(&[1.0, -5e-10]).unwrap(), 0.0);
        assert!(matches!(
            spectral_entropy(&[1.1, -1e-3]),
            Err(QmathError::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn expm_of_pauli_rotation() {
        // exp(-iθσ_x) = cos θ I − i sin θ σ_x
        let theta: f64 = 0.7;
        let u = expm(&sigma_x().scale(C64::new(0.0, -theta)));
        let want =
            &identity().scale_real(theta.cos()) + &sigma_x().scale(C64::new(0.0, -theta.sin()));
        assert!(u.max_abs_diff(&want) < 1e-14);
        let big = expm(&sigma_z().scale_real(5.0));
        assert_close(big[(0, 0)].re, 5f64.exp(), 1e-9 * 5f64.exp());
        assert_close(big[(1, 1)].re, (-5f64).exp(), 1e-12);
    }

    #[test]
    fn from_row_major_rejects_non_square() {
        assert!(ComplexMatrix::from_row_major(vec![C64::new(1.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::from_row_major(Vec::new()).is_err());
        let m = ComplexMatrix::from_row_major(vec![C64::new(1.0, 0.0); 9]).unwrap();
        assert_eq!(m.dim(), 3);
    }
}
