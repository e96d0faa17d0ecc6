use rayon::prelude::*;

use super::{run_loop, Assignments, ClusteringResult, DistanceEngine, IterationTrace, KKMeansConfig};
use crate::{DenseMatrix, Result, Scalar};

/// Classical K-means in input space with explicit mean centroids.
struct InputSpaceEngine<'a, T: Scalar> {
    points: &'a DenseMatrix<T>,
    centroids: DenseMatrix<T>,
}

impl<T: Scalar> DistanceEngine<T> for InputSpaceEngine<'_, T> {
    fn n(&self) -> usize {
        self.points.rows()
    }

    fn update(&mut self, labels: &Assignments) -> Result<()> {
        let d = self.points.cols();
        let mut sums = DenseMatrix::<T>::zeros(labels.k(), d);
        for (i, &j) in labels.labels().iter().enumerate() {
            for (s, &x) in sums.row_mut(j).iter_mut().zip(self.points.row(i)) {
                *s = *s + x;
            }
        }
        for (j, size) in labels.cluster_sizes().into_iter().enumerate() {
            // An empty cluster keeps an all-zero centroid; repair never leaves one.
            if size > 0 {
                let s = T::from_f64(size as f64);
                for c in sums.row_mut(j) {
                    *c = *c / s;
                }
            }
        }
        self.centroids = sums;
        Ok(())
    }

    fn distances(&mut self, _labels: &Assignments) -> Result<DenseMatrix<T>> {
        let k = self.centroids.rows();
        let mut out = DenseMatrix::zeros(self.n(), k);
        let centroids = &self.centroids;
        out.par_rows_mut().enumerate().for_each(|(i, row)| {
            let p = self.points.row(i);
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = sq_dist(p, centroids.row(j));
            }
        });
        Ok(out)
    }

    fn objective(&self, labels: &Assignments) -> Result<f64> {
        Ok(labels
            .labels()
            .iter()
            .enumerate()
            .map(|(i, &j)| sq_dist(self.points.row(i), self.centroids.row(j)).as_f64())
            .sum())
    }
}

#[inline]
fn sq_dist<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| {
        let t = x - y;
        acc + t * t
    })
}

/// Lloyd's algorithm on the raw points. `cfg.kernel` is ignored.
pub fn run_lloyd<T: Scalar>(points: &DenseMatrix<T>, cfg: &KKMeansConfig) -> Result<ClusteringResult> {
    run_lloyd_observed(points, cfg, |_| {})
}

pub fn run_lloyd_observed<T, F>(points: &DenseMatrix<T>, cfg: &KKMeansConfig, observer: F) -> Result<ClusteringResult>
where
    T: Scalar,
    F: FnMut(&IterationTrace<'_, T>),
{
    points.check_finite()?;
    let mut engine = InputSpaceEngine {
        points,
        centroids: DenseMatrix::zeros(0, points.cols()),
    };
    run_loop(&mut engine, cfg, 0.0, observer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_per_cluster() {
        let p = DenseMatrix::<f64>::from_rows(&[[1.0, 2.0], [-3.0, 0.5], [4.0, 4.0]]).unwrap();
        let r = run_lloyd(&p, &KKMeansConfig::new(3).with_convergence(0.0)).unwrap();
        assert_eq!(r.iterations_run, 1);
        assert_eq!(r.final_objective, 0.0);
    }

    #[test]
    fn two_groups_on_a_line() {
        let p = DenseMatrix::<f64>::from_rows(&[[0.0], [0.1], [10.0], [10.1]]).unwrap();
        for seed in 0..8 {
            let r = run_lloyd(&p, &KKMeansConfig::new(2).with_seed(seed)).unwrap();
            let l = r.labels.labels();
            assert_eq!(l[0], l[1]);
            assert_eq!(l[2], l[3]);
            assert_ne!(l[0], l[2]);
            approx::assert_relative_eq!(r.final_objective, 0.01, max_relative = 1e-9);
        }
    }

    #[test]
    fn objective_never_increases() {
        let p = crate::data::blobs::<f64>(120, 2, 5, 1.5, 4);
        let r = run_lloyd(&p, &KKMeansConfig::new(5).with_seed(3)).unwrap();
        for w in r.objective_history.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12));
        }
    }
}
