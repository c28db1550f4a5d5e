//! Seeded random sampling for unitaries, states, and channels.
//!
//! Every random draw in the crate flows from a root seed through
//! [`derive_seed`], so restarts and sweep points get independent,
//! reproducible streams regardless of execution order.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::linalg::{inner, ComplexMatrix};

/// SplitMix64 finalizer; decorrelates nearby seeds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive the seed for an independent stream (restart index, sweep point,
/// sample index) from the root seed: `splitmix64(root ^ splitmix64(stream))`.
pub fn derive_seed(root: u64, stream: u64) -> u64 {
    splitmix64(root ^ splitmix64(stream))
}

/// Deterministic RNG for stream `stream` of root seed `root`.
pub fn rng_for(root: u64, stream: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(derive_seed(root, stream))
}

fn standard_complex(rng: &mut ChaCha12Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Complex matrix with i.i.d. standard complex Gaussian entries.
pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| standard_complex(rng))
}

/// Orthonormalize the columns of `m` (modified Gram–Schmidt) and fix phases
/// so the first entry of largest modulus in each column is real-positive.
///
/// On Gaussian input this samples Haar-adequately for test purposes.
pub fn orthonormalize_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let (rows, cols) = (m.rows, m.cols);
    assert!(
        cols <= rows,
        "cannot orthonormalize {cols} columns in dimension {rows}"
    );
    let mut columns: Vec<Vec<Complex64>> = (0..cols).map(|j| m.column(j)).collect();
    for j in 0..cols {
        for k in 0..j {
            let coeff = inner(&columns[k], &columns[j]);
            let prev = columns[k].clone();
            for (x, p) in columns[j].iter_mut().zip(&prev) {
                *x -= coeff * p;
            }
        }
        let norm = columns[j].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 1e-12, "rank-deficient Gaussian draw");
        // Phase fixing for determinism across equivalent inputs.
        let lead = columns[j]
            .iter()
            .cloned()
            .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
            .unwrap();
        let phase = if lead.norm() > 0.0 {
            lead / lead.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let scale = phase.conj() / norm;
        for x in columns[j].iter_mut() {
            *x *= scale;
        }
    }
    ComplexMatrix::from_fn(rows, cols, |i, j| columns[j][i])
}

/// Haar-like random unitary via orthonormalization of a Gaussian matrix.
pub fn random_unitary(dim: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix {
    orthonormalize_columns(&gaussian_matrix(dim, dim, rng))
}

/// Random isometry: `rows x cols` with V†V = I (requires rows >= cols).
pub fn random_isometry(rows: usize, cols: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix {
    orthonormalize_columns(&gaussian_matrix(rows, cols, rng))
}

/// Random density matrix GG†/Tr(GG†) from a square Gaussian draw.
pub fn random_density(dim: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix {
    let g = gaussian_matrix(dim, dim, rng);
    let p = g.matmul(&g.adjoint());
    let tr = p.trace().re;
    p.scale_re(1.0 / tr)
}

/// Random normalized state vector.
pub fn random_pure(dim: usize, rng: &mut ChaCha12Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim).map(|_| standard_complex(rng)).collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
    v
}

/// Random probability vector (normalized squared Gaussians).
pub fn random_probabilities(n: usize, rng: &mut ChaCha12Rng) -> Vec<f64> {
    let mut p: Vec<f64> = (0..n)
        .map(|_| {
            let g: f64 = rng.sample(StandardNormal);
            g * g
        })
        .collect();
    let total: f64 = p.iter().sum();
    for x in p.iter_mut() {
        *x /= total;
    }
    p
}
