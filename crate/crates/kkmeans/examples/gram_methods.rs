//! Builds the Gram matrix with GEMM and with SYRK and shows which one the
//! `n/d` rule picks.
//!
//! cargo run --release --example gram_methods

use std::time::Instant;

use kkmeans::kernel::{compute_gram, select_gram_algorithm};
use kkmeans::{data, GramMethod};

fn main() -> kkmeans::Result<()> {
    let auto = GramMethod::default();
    println!("{:>6} {:>5} {:>6} {:>10} {:>10} {:>12}", "n", "d", "auto", "gemm_ms", "syrk_ms", "max_abs_diff");
    for (n, d) in [(2000, 4), (2000, 16), (2000, 64), (1000, 512)] {
        let points = data::uniform::<f32>(n, d, 7);

        let t = Instant::now();
        let g = compute_gram(&points, GramMethod::gemm())?;
        let gemm_ms = t.elapsed().as_secs_f64() * 1e3;

        let t = Instant::now();
        let s = compute_gram(&points, GramMethod::syrk())?;
        let syrk_ms = t.elapsed().as_secs_f64() * 1e3;

        let diff = g
            .as_slice()
            .iter()
            .zip(s.as_slice())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f32, f32::max);
        let pick = format!("{:?}", select_gram_algorithm(n, d, auto)).to_lowercase();
        println!("{n:>6} {d:>5} {pick:>6} {gemm_ms:>10.2} {syrk_ms:>10.2} {diff:>12.2e}");
    }
    Ok(())
}
