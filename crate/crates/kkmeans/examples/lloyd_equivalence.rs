//! With the linear kernel, kernel K-means is ordinary K-means. Runs both on
//! the same data and init and compares every iteration.
//!
//! cargo run --release --example lloyd_equivalence

use kkmeans::clustering::{run_lloyd_observed, run_popcorn_observed};
use kkmeans::{data, KKMeansConfig, KernelSpec};

fn main() -> kkmeans::Result<()> {
    let points = data::uniform::<f64>(800, 3, 17);
    let cfg = KKMeansConfig::new(12).with_kernel(KernelSpec::linear()).with_seed(17);

    let mut kernel_space = Vec::new();
    let a = run_popcorn_observed(&points, &cfg, |t| kernel_space.push(t.labels_after.clone()))?;
    let mut input_space = Vec::new();
    let b = run_lloyd_observed(&points, &cfg, |t| input_space.push(t.labels_after.clone()))?;

    for (t, (x, y)) in kernel_space.iter().zip(&input_space).enumerate() {
        println!("iteration {t:>2}: {} labels differ", x.count_changed(y));
    }
    println!("objectives: kernel {:.9} input {:.9}", a.final_objective, b.final_objective);
    Ok(())
}
