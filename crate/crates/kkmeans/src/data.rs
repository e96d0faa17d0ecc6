//! Seeded synthetic datasets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::{DenseMatrix, Scalar};

/// ChaCha stream used for dataset generation, distinct from the stream the
/// label initialisation draws from.
const DATA_STREAM: u64 = 1;

fn data_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(DATA_STREAM);
    rng
}

/// `n×d` matrix of independent uniform draws from `[0, 1)`.
pub fn uniform<T: Scalar>(n: usize, d: usize, seed: u64) -> DenseMatrix<T> {
    let mut rng = data_rng(seed);
    DenseMatrix::from_fn(n, d, |_, _| T::from_f64(rng.random::<f64>()))
}

/// Isotropic Gaussian blobs: `centers` centres drawn uniformly from
/// `[-1, 1]^d`, each point a centre plus `N(0, spread²)` noise. Points are
/// assigned to centres round-robin.
pub fn blobs<T: Scalar>(n: usize, d: usize, centers: usize, spread: f64, seed: u64) -> DenseMatrix<T> {
    let mut rng = data_rng(seed);
    let centers = centers.max(1);
    let c: Vec<f64> = (0..centers * d).map(|_| rng.random_range(-1.0..1.0)).collect();
    let noise = Normal::new(0.0, spread.abs()).expect("finite spread");
    DenseMatrix::from_fn(n, d, |i, l| {
        let center = c[(i % centers) * d + l];
        T::from_f64(center + noise.sample(&mut rng))
    })
}
