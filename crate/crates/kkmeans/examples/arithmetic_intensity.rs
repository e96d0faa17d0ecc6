//! Prints FLOPs, bytes and arithmetic intensity for building `K` and for
//! one distance iteration across a range of problem sizes.
//!
//! cargo run --example arithmetic_intensity

use kkmeans::analysis::{intensity_distances, intensity_kernel_matrix_for};
use kkmeans::{KernelFamily, KernelSpec};

fn main() -> kkmeans::Result<()> {
    let d = 780;
    println!("kernel matrix, d = {d}");
    println!("{:>8} {:<11} {:>16} {:>16} {:>8}", "n", "kernel", "flops", "bytes", "AI");
    for n in [1_000u64, 10_000, 60_000] {
        for family in KernelFamily::ALL {
            let r = intensity_kernel_matrix_for(&KernelSpec::of_family(family), n, d)?;
            println!("{n:>8} {:<11} {:>16} {:>16} {:>8.2}", family.name(), r.flops, r.bytes, r.intensity);
        }
    }

    println!("\ndistance matrix, one iteration");
    println!("{:>8} {:>5} {:>16} {:>16} {:>8}", "n", "k", "flops", "bytes", "AI");
    for n in [1_000u64, 10_000, 60_000] {
        for k in [10u64, 100, 1000] {
            let r = intensity_distances(n, k)?;
            println!("{n:>8} {k:>5} {:>16} {:>16} {:>8.3}", r.flops, r.bytes, r.intensity);
        }
    }
    Ok(())
}
