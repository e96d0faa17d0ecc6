//! Kernel K-means drivers.
//!
//! Three drivers share one iteration skeleton and differ only in how the
//! `n×k` point-to-centroid distance matrix `D` is produced:
//!
//! * [`run_popcorn`]: `D = −2KVᵀ + P̃ + C̃` via one SpMM and one SpMV.
//! * [`run_baseline`]: the kernel-trick expansion evaluated per point and
//!   per cluster with no sparse machinery.
//! * [`run_lloyd`]: classical K-means in input space, which the linear
//!   kernel must reproduce.
//!
//! Each iteration computes `D` from the current labels, takes the row-wise
//! argmin, repairs empty clusters, and rebuilds the per-driver state. The
//! loop stops after `max_iters` iterations or, when convergence checking is
//! on, once the fraction of points whose label changed is at most `tol`.

mod baseline;
mod init;
mod lloyd;
mod objective;
mod popcorn;
mod repair;

use std::time::{Duration, Instant};

pub use baseline::{run_baseline, run_baseline_observed, run_baseline_on_kernel};
pub use init::init_assignments;
pub use lloyd::{run_lloyd, run_lloyd_observed};
pub use objective::compute_objective;
pub use popcorn::{run_popcorn, run_popcorn_observed, run_popcorn_on_kernel};
pub use repair::repair_empty_clusters;

use crate::dense::row_argmin;
use crate::{CsrMatrix, DenseMatrix, Error, GramMethod, KernelSpec, Result, Scalar};

/// Cluster label of every point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignments {
    labels: Vec<usize>,
    k: usize,
}

impl Assignments {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if let Some((index, &label)) = labels.iter().enumerate().find(|(_, &l)| l >= k) {
            return Err(Error::LabelOutOfRange { index, label, k });
        }
        Ok(Self { labels, k })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<usize> {
        self.labels
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of points in each cluster.
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    /// Point indices of each cluster, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i);
        }
        out
    }

    pub fn empty_clusters(&self) -> Vec<usize> {
        self.cluster_sizes()
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 0)
            .map(|(j, _)| j)
            .collect()
    }

    /// Number of points whose label differs from `other`.
    pub fn count_changed(&self, other: &Assignments) -> usize {
        self.labels
            .iter()
            .zip(&other.labels)
            .filter(|(a, b)| a != b)
            .count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KKMeansConfig {
    pub k: usize,
    pub max_iters: usize,
    /// Largest fraction of relabelled points still counted as converged.
    pub tol: f64,
    pub check_convergence: bool,
    pub seed: u64,
    pub kernel: KernelSpec,
    pub gram: GramMethod,
}

impl KKMeansConfig {
    /// `k` clusters, 30 iterations, no convergence check, seed 0,
    /// polynomial kernel `(xᵀy + 1)²`.
    pub fn new(k: usize) -> Self {
        Self {
            k,
            max_iters: 30,
            tol: 1e-4,
            check_convergence: false,
            seed: 0,
            kernel: KernelSpec::default(),
            gram: GramMethod::default(),
        }
    }

    pub fn with_kernel(mut self, kernel: KernelSpec) -> Self {
        self.kernel = kernel;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn with_convergence(mut self, tol: f64) -> Self {
        self.check_convergence = true;
        self.tol = tol;
        self
    }

    pub fn with_gram(mut self, gram: GramMethod) -> Self {
        self.gram = gram;
        self
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.k == 0 || self.k > n {
            return Err(Error::InvalidClusterCount { k: self.k, n });
        }
        if !(self.tol >= 0.0) {
            return Err(Error::InvalidConfig(format!("tol must be >= 0, got {}", self.tol)));
        }
        self.kernel.validate()?;
        self.gram.validate()
    }
}

/// Wall-clock seconds spent in each phase, summed over all iterations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TimingBreakdown {
    pub kernel_matrix_seconds: f64,
    pub pairwise_distances_seconds: f64,
    pub argmin_update_seconds: f64,
}

impl TimingBreakdown {
    pub fn total_seconds(&self) -> f64 {
        self.kernel_matrix_seconds + self.pairwise_distances_seconds + self.argmin_update_seconds
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringResult {
    pub labels: Assignments,
    pub iterations_run: usize,
    /// Objective of the labels entering each iteration, evaluated against
    /// their own centroids (`Σᵢ D[i][cluster(i)]`).
    pub objective_history: Vec<f64>,
    /// Objective of the final labels.
    pub final_objective: f64,
    pub converged: bool,
    /// Total number of points moved by empty-cluster repair.
    pub empty_cluster_repairs: usize,
    pub timings: TimingBreakdown,
}

/// State of one completed iteration, passed to observers.
#[derive(Debug)]
pub struct IterationTrace<'a, T: Scalar> {
    pub iteration: usize,
    pub labels_before: &'a Assignments,
    pub distances: &'a DenseMatrix<T>,
    pub labels_after: &'a Assignments,
    /// Points moved by empty-cluster repair in this iteration.
    pub repaired_points: usize,
    pub objective: f64,
    /// The selection matrix rebuilt from `labels_after` (sparse driver only).
    pub selection: Option<&'a CsrMatrix<T>>,
}

/// Per-driver state behind the shared iteration skeleton.
trait DistanceEngine<T: Scalar> {
    fn n(&self) -> usize;

    /// Rebuilds whatever depends on the labels (selection matrix, cluster
    /// member lists, centroids).
    fn update(&mut self, labels: &Assignments) -> Result<()>;

    /// `n×k` squared distances from each point to each current centroid.
    fn distances(&mut self, labels: &Assignments) -> Result<DenseMatrix<T>>;

    /// Objective of `labels` against the centroids set by the last `update`.
    fn objective(&self, labels: &Assignments) -> Result<f64>;

    fn selection(&self) -> Option<&CsrMatrix<T>> {
        None
    }
}

fn assigned_sum<T: Scalar>(d: &DenseMatrix<T>, labels: &Assignments) -> f64 {
    labels
        .labels()
        .iter()
        .enumerate()
        .map(|(i, &j)| d.get(i, j).as_f64())
        .sum()
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn run_loop<T, E, F>(
    engine: &mut E,
    cfg: &KKMeansConfig,
    kernel_seconds: f64,
    mut observer: F,
) -> Result<ClusteringResult>
where
    T: Scalar,
    E: DistanceEngine<T>,
    F: FnMut(&IterationTrace<'_, T>),
{
    let n = engine.n();
    cfg.validate(n)?;
    let k = cfg.k;
    let mut timings = TimingBreakdown {
        kernel_matrix_seconds: kernel_seconds,
        ..TimingBreakdown::default()
    };

    let start = Instant::now();
    let mut labels = init_assignments(n, k, cfg.seed)?;
    engine.update(&labels)?;
    timings.argmin_update_seconds += secs(start.elapsed());

    let mut history = Vec::with_capacity(cfg.max_iters);
    let mut iterations_run = 0;
    let mut converged = false;
    let mut repairs = 0;

    for iteration in 0..cfg.max_iters {
        let start = Instant::now();
        let d = engine.distances(&labels)?;
        timings.pairwise_distances_seconds += secs(start.elapsed());
        let objective = assigned_sum(&d, &labels);
        history.push(objective);

        let start = Instant::now();
        let nearest = row_argmin(&d)?;
        let next = repair_empty_clusters(&nearest, &d, k)?;
        let repaired_points = next.count_changed(&nearest);
        let changed = next.count_changed(&labels);
        engine.update(&next)?;
        timings.argmin_update_seconds += secs(start.elapsed());

        observer(&IterationTrace {
            iteration,
            labels_before: &labels,
            distances: &d,
            labels_after: &next,
            repaired_points,
            objective,
            selection: engine.selection(),
        });

        repairs += repaired_points;
        labels = next;
        iterations_run += 1;
        converged = changed as f64 / n as f64 <= cfg.tol;
        if cfg.check_convergence && converged {
            break;
        }
    }

    let final_objective = engine.objective(&labels)?;
    Ok(ClusteringResult {
        labels,
        iterations_run,
        objective_history: history,
        final_objective,
        converged,
        empty_cluster_repairs: repairs,
        timings,
    })
}
