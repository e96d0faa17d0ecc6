use std::time::Instant;

use rayon::prelude::*;

use super::{compute_objective, run_loop, Assignments, ClusteringResult, DistanceEngine, IterationTrace, KKMeansConfig};
use crate::dense::diag;
use crate::kernel::kernel_matrix;
use crate::sparse::{build_selection_matrix, spmm_neg2_kvt, spmv_scaled};
use crate::{CsrMatrix, DenseMatrix, Error, Result, Scalar, Vector};

struct SparseEngine<'a, T: Scalar> {
    kmat: &'a DenseMatrix<T>,
    /// `P̃` stored as its single distinct column, `diag(K)`.
    point_norms: Vector<T>,
    k: usize,
    selection: Option<CsrMatrix<T>>,
}

impl<T: Scalar> DistanceEngine<T> for SparseEngine<'_, T> {
    fn n(&self) -> usize {
        self.kmat.rows()
    }

    fn update(&mut self, labels: &Assignments) -> Result<()> {
        self.selection = Some(build_selection_matrix(labels, self.k)?);
        Ok(())
    }

    fn distances(&mut self, labels: &Assignments) -> Result<DenseMatrix<T>> {
        let v = self
            .selection
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("selection matrix not initialised".into()))?;
        // E = -2 K Vᵀ
        let mut e = spmm_neg2_kvt(self.kmat, v)?;
        // z = -0.5 [E(i, cluster(i))]
        let half = T::from_f64(-0.5);
        let z: Vec<T> = labels
            .labels()
            .iter()
            .enumerate()
            .map(|(i, &j)| half * e.get(i, j))
            .collect();
        // C̃ = V z
        let centroid_norms = spmv_scaled(T::one(), v, &Vector::new(z))?;
        // D = E + P̃ + C̃ in one pass
        let pn = self.point_norms.as_slice();
        let cn = centroid_norms.as_slice();
        e.par_rows_mut().enumerate().for_each(|(i, row)| {
            for (x, &c) in row.iter_mut().zip(cn) {
                *x = *x + pn[i] + c;
            }
        });
        Ok(e)
    }

    fn objective(&self, labels: &Assignments) -> Result<f64> {
        compute_objective(self.kmat, labels)
    }

    fn selection(&self) -> Option<&CsrMatrix<T>> {
        self.selection.as_ref()
    }
}

/// Sparse-matrix Kernel K-means: builds `K` once, then iterates
/// SpMM → gather → SpMV → fused add → argmin → rebuild `V`.
pub fn run_popcorn<T: Scalar>(points: &DenseMatrix<T>, cfg: &KKMeansConfig) -> Result<ClusteringResult> {
    run_popcorn_observed(points, cfg, |_| {})
}

/// [`run_popcorn`] with a callback after every iteration.
pub fn run_popcorn_observed<T, F>(points: &DenseMatrix<T>, cfg: &KKMeansConfig, observer: F) -> Result<ClusteringResult>
where
    T: Scalar,
    F: FnMut(&IterationTrace<'_, T>),
{
    points.check_finite()?;
    cfg.validate(points.rows())?;
    let start = Instant::now();
    let kmat = kernel_matrix(points, &cfg.kernel, cfg.gram)?;
    let point_norms = diag(&kmat)?;
    let kernel_seconds = start.elapsed().as_secs_f64();
    let mut engine = SparseEngine {
        kmat: &kmat,
        point_norms,
        k: cfg.k,
        selection: None,
    };
    run_loop(&mut engine, cfg, kernel_seconds, observer)
}

/// Runs the sparse iteration on a precomputed kernel matrix. `cfg.kernel`
/// and `cfg.gram` are ignored and the kernel phase is reported as zero.
pub fn run_popcorn_on_kernel<T, F>(kmat: &DenseMatrix<T>, cfg: &KKMeansConfig, observer: F) -> Result<ClusteringResult>
where
    T: Scalar,
    F: FnMut(&IterationTrace<'_, T>),
{
    let point_norms = diag(kmat)?;
    let mut engine = SparseEngine {
        kmat,
        point_norms,
        k: cfg.k,
        selection: None,
    };
    run_loop(&mut engine, cfg, 0.0, observer)
}
