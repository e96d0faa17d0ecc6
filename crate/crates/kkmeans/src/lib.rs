//! Kernel K-means expressed as sparse linear algebra.
//!
//! The kernel matrix `K` is built once from the input points with a dense
//! Gram product (GEMM or SYRK, picked by the `n/d` ratio) followed by an
//! elementwise kernel map. Each clustering iteration then needs only two
//! sparse products against the CSR selection matrix `V`:
//!
//! ```text
//! E  = -2 K Vᵀ                    (SpMM, n×k)
//! z  = -0.5 [E(i, cluster(i))]    (gather)
//! C̃  = V z                        (SpMV, centroid squared norms)
//! D  = E + P̃ + C̃                  (P̃ = diag K, broadcast)
//! ```
//!
//! followed by a row-wise argmin of `D` and a rebuild of `V`.
//!
//! Alongside the sparse driver ([`clustering::run_popcorn`]) the crate ships
//! a naive per-point kernel-trick driver ([`clustering::run_baseline`]) and a
//! classical input-space Lloyd driver ([`clustering::run_lloyd`]) that serve
//! as oracles, plus arithmetic-intensity calculators in [`analysis`] and the
//! command-line front end in [`cli`].
//!
//! All numeric code is generic over [`Scalar`], implemented for `f32` (the
//! performance default) and `f64` (used for exact equivalence checks).

pub mod analysis;
pub mod cli;
pub mod clustering;
pub mod data;
pub mod dense;
mod error;
pub mod kernel;
mod scalar;
pub mod sparse;

pub use clustering::{
    Assignments, ClusteringResult, IterationTrace, KKMeansConfig, TimingBreakdown,
};
pub use dense::{DenseMatrix, Vector};
pub use error::{Error, Result};
pub use kernel::{GramAlgorithm, GramMethod, KernelFamily, KernelSpec};
pub use scalar::{Precision, Scalar};
pub use sparse::CsrMatrix;
