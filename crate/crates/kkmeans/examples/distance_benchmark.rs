//! Times the distance phase of the sparse driver against the naive one and
//! writes a CSV report.
//!
//! cargo run --release --example distance_benchmark -- [n] [k] [report.csv]

use std::fmt::Write as _;

use kkmeans::clustering::{run_baseline, run_popcorn};
use kkmeans::{data, ClusteringResult, KKMeansConfig};

fn per_iter(r: &ClusteringResult) -> f64 {
    r.timings.pairwise_distances_seconds / r.iterations_run as f64
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4096);
    let k: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);
    let report = args.next().unwrap_or_else(|| "distance_benchmark.csv".into());
    let d = 16;
    let iters = 5;

    let mut csv = String::from("n,d,k,iterations,driver,kernel_matrix_s,distance_s_per_iter,argmin_update_s\n");
    let points = data::uniform::<f32>(n, d, 1);
    let cfg = KKMeansConfig::new(k).with_seed(1).with_max_iters(iters);
    let mut per = Vec::new();
    for (name, r) in [("popcorn", run_popcorn(&points, &cfg)?), ("baseline", run_baseline(&points, &cfg)?)] {
        let t = &r.timings;
        writeln!(
            csv,
            "{n},{d},{k},{iters},{name},{:.6},{:.6},{:.6}",
            t.kernel_matrix_seconds,
            per_iter(&r),
            t.argmin_update_seconds
        )
        .unwrap();
        println!("{name:<9} distance phase {:.4}s/iter", per_iter(&r));
        per.push(per_iter(&r));
    }
    println!("speedup {:.1}x", per[1] / per[0]);
    std::fs::write(&report, csv)?;
    println!("report written to {report}");
    Ok(())
}
