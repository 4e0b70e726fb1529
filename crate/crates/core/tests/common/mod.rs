#![allow(dead_code)]

use pulsecorr_core::qmath::{kron, ComplexMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn random_complex(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let entries = (0..dim * dim)
        .map(|_| C64::new(gaussian(rng), gaussian(rng)))
        .collect();
    ComplexMatrix::from_row_major(entries).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    random_complex(rng, dim).hermitian_part()
}

/// `G G† / Tr(G G†)`
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let g = random_complex(rng, dim);
    let w = g.matmul(&g.dagger()).hermitian_part();
    let tr = w.trace().re;
    w.scale_real(1.0 / tr)
}

/// Unitary from Gram-Schmidt QR of a random complex matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let a = random_complex(rng, dim);
    let mut q = ComplexMatrix::zeros(dim);
    for j in 0..dim {
        let mut v: Vec<C64> = (0..dim).map(|i| a[(i, j)]).collect();
        for k in 0..j {
            let dot: C64 = (0..dim).map(|i| q[(i, k)].conj() * v[i]).sum();
            for i in 0..dim {
                v[i] -= dot * q[(i, k)];
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..dim {
            q[(i, j)] = v[i] / norm;
        }
    }
    q
}

pub fn conjugate(u: &ComplexMatrix, m: &ComplexMatrix) -> ComplexMatrix {
    u.matmul(m).matmul(&u.dagger())
}

pub fn local_unitary(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    kron(&random_unitary(rng, 2), &random_unitary(rng, 2))
}
