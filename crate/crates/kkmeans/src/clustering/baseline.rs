use std::time::Instant;

use rayon::prelude::*;

use super::objective::{cluster_self_terms, expanded_distance};
use super::{compute_objective, run_loop, Assignments, ClusteringResult, DistanceEngine, IterationTrace, KKMeansConfig};
use crate::kernel::kernel_matrix;
use crate::{DenseMatrix, Result, Scalar};

/// Per-point kernel-trick distances with no sparse machinery.
///
/// For every point `i` and cluster `j` the whole row `K[i]` is scanned and
/// the entries whose column belongs to `L_j` are summed, so one iteration
/// costs `O(n²k)`. The cluster self term is computed once per cluster.
struct NaiveEngine<'a, T: Scalar> {
    kmat: &'a DenseMatrix<T>,
    k: usize,
    /// `(|L_j|, Σ_{l,m∈L_j} K_lm)` for the current labels.
    clusters: Vec<(usize, T)>,
}

impl<T: Scalar> DistanceEngine<T> for NaiveEngine<'_, T> {
    fn n(&self) -> usize {
        self.kmat.rows()
    }

    fn update(&mut self, labels: &Assignments) -> Result<()> {
        self.clusters = cluster_self_terms(self.kmat, &labels.members());
        Ok(())
    }

    fn distances(&mut self, labels: &Assignments) -> Result<DenseMatrix<T>> {
        let n = self.n();
        let lab = labels.labels();
        let clusters = &self.clusters;
        let mut d = DenseMatrix::zeros(n, self.k);
        d.par_rows_mut().enumerate().for_each(|(i, out)| {
            let row = self.kmat.row(i);
            for (j, slot) in out.iter_mut().enumerate() {
                let mut cross = T::zero();
                for (l, &kil) in row.iter().enumerate() {
                    if lab[l] == j {
                        cross = cross + kil;
                    }
                }
                let (size, self_term) = clusters[j];
                *slot = expanded_distance(row[i], cross, size, self_term);
            }
        });
        Ok(d)
    }

    fn objective(&self, labels: &Assignments) -> Result<f64> {
        compute_objective(self.kmat, labels)
    }
}

/// Naive Kernel K-means: same initialisation, stopping rule and empty
/// cluster policy as [`run_popcorn`](super::run_popcorn), distances from
/// the direct kernel-trick expansion.
pub fn run_baseline<T: Scalar>(points: &DenseMatrix<T>, cfg: &KKMeansConfig) -> Result<ClusteringResult> {
    run_baseline_observed(points, cfg, |_| {})
}

pub fn run_baseline_observed<T, F>(points: &DenseMatrix<T>, cfg: &KKMeansConfig, observer: F) -> Result<ClusteringResult>
where
    T: Scalar,
    F: FnMut(&IterationTrace<'_, T>),
{
    points.check_finite()?;
    cfg.validate(points.rows())?;
    let start = Instant::now();
    let kmat = kernel_matrix(points, &cfg.kernel, cfg.gram)?;
    let kernel_seconds = start.elapsed().as_secs_f64();
    let mut engine = NaiveEngine {
        kmat: &kmat,
        k: cfg.k,
        clusters: Vec::new(),
    };
    run_loop(&mut engine, cfg, kernel_seconds, observer)
}

/// Runs the naive iteration on a precomputed kernel matrix.
pub fn run_baseline_on_kernel<T, F>(kmat: &DenseMatrix<T>, cfg: &KKMeansConfig, observer: F) -> Result<ClusteringResult>
where
    T: Scalar,
    F: FnMut(&IterationTrace<'_, T>),
{
    let mut engine = NaiveEngine {
        kmat,
        k: cfg.k,
        clusters: Vec::new(),
    };
    run_loop(&mut engine, cfg, 0.0, observer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::run_popcorn_observed;
    use crate::KernelSpec;

    #[test]
    fn singleton_clusters_have_zero_objective() {
        let p = DenseMatrix::<f64>::from_rows(&[[0.0, 0.0], [1.0, 3.0], [-2.0, 4.0]]).unwrap();
        let cfg = KKMeansConfig::new(3).with_kernel(KernelSpec::linear()).with_max_iters(3);
        let r = run_baseline(&p, &cfg).unwrap();
        assert!(r.final_objective.abs() < 1e-9);
        assert!(r.objective_history.iter().all(|o| o.abs() < 1e-9));
    }

    #[test]
    fn one_cluster_of_two_points() {
        let p = DenseMatrix::<f64>::from_rows(&[[0.0], [2.0]]).unwrap();
        let cfg = KKMeansConfig::new(1).with_kernel(KernelSpec::linear()).with_max_iters(1);
        let mut seen = Vec::new();
        let r = run_baseline_observed(&p, &cfg, |t| seen.push(t.distances.clone())).unwrap();
        assert_eq!(seen[0].as_slice(), &[1.0, 1.0]);
        assert_eq!(r.final_objective, 2.0);
    }

    #[test]
    fn matches_sparse_driver_on_polynomial_blobs() {
        let p = crate::data::blobs::<f64>(200, 5, 4, 0.5, 3);
        let cfg = KKMeansConfig::new(4).with_seed(1);
        let mut a = Vec::new();
        let mut b = Vec::new();
        run_popcorn_observed(&p, &cfg, |t| a.push(t.labels_after.clone())).unwrap();
        run_baseline_observed(&p, &cfg, |t| b.push(t.labels_after.clone())).unwrap();
        assert_eq!(a.len(), 30);
        assert_eq!(a, b);
    }
}
