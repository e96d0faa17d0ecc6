//! Clusters Gaussian blobs with every kernel family, using both the sparse
//! driver and the naive one.
//!
//! cargo run --release --example kernel_kmeans

use kkmeans::clustering::{run_baseline, run_popcorn};
use kkmeans::{data, KKMeansConfig, KernelFamily, KernelSpec};

fn main() -> kkmeans::Result<()> {
    let (n, d, k) = (1500, 8, 6);
    let points = data::blobs::<f64>(n, d, k, 0.25, 3);

    println!("{:<11} {:>6} {:>14} {:>14} {:>8} {:>11}", "kernel", "iters", "objective", "naive obj", "agree", "sizes");
    for family in KernelFamily::ALL {
        let cfg = KKMeansConfig::new(k)
            .with_kernel(KernelSpec::of_family(family))
            .with_seed(5)
            .with_convergence(0.0);
        let fast = run_popcorn(&points, &cfg)?;
        let slow = run_baseline(&points, &cfg)?;
        println!(
            "{:<11} {:>6} {:>14.6} {:>14.6} {:>8} {:?}",
            family.name(),
            fast.iterations_run,
            fast.final_objective,
            slow.final_objective,
            fast.labels == slow.labels,
            fast.labels.cluster_sizes(),
        );
    }
    Ok(())
}
