//! Writes a small dataset as libsvm and as CSV, loads both back, and
//! clusters the result.
//!
//! cargo run --example load_datasets

use std::fmt::Write as _;

use kkmeans::cli::{load_csv, load_dataset, load_libsvm, write_results};
use kkmeans::clustering::run_popcorn;
use kkmeans::{data, DenseMatrix, KKMeansConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("kkmeans-load-example");
    std::fs::create_dir_all(&dir)?;
    let points = data::blobs::<f64>(60, 5, 3, 0.2, 1);

    let mut svm = String::new();
    let mut csv = String::from("a,b,c,d,e\n");
    for i in 0..points.rows() {
        svm.push_str(&(i % 3).to_string());
        for (j, v) in points.row(i).iter().enumerate() {
            write!(svm, " {}:{v}", j + 1).unwrap();
        }
        svm.push('\n');
        let cells: Vec<String> = points.row(i).iter().map(f64::to_string).collect();
        csv.push_str(&cells.join(","));
        csv.push('\n');
    }
    let svm_path = dir.join("blobs.svm");
    let csv_path = dir.join("blobs.csv");
    std::fs::write(&svm_path, svm)?;
    std::fs::write(&csv_path, csv)?;

    let a: DenseMatrix<f64> = load_libsvm(&svm_path, 60, 5)?;
    let b: DenseMatrix<f64> = load_csv(&csv_path, 60, 5)?;
    let c: DenseMatrix<f64> = load_dataset(&svm_path, None, None)?;
    println!("libsvm == original: {}", a == points);
    println!("csv == original:    {}", b == points);
    println!("inferred shape:     {:?}", c.shape());

    let result = run_popcorn(&a, &KKMeansConfig::new(3).with_seed(2))?;
    let out = dir.join("labels.txt");
    write_results(&result, &out)?;
    println!("labels written to {}", out.display());
    Ok(())
}
