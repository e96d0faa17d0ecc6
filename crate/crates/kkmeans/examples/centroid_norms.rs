//! Walks through one distance computation by hand: `E = −2KVᵀ`, the `z`
//! gather, the SpMV for the centroid norms, and the final argmin.
//!
//! cargo run --example centroid_norms

use kkmeans::dense::{diag, row_argmin};
use kkmeans::kernel::kernel_matrix;
use kkmeans::sparse::{build_selection_matrix, spmm_neg2_kvt, spmv_scaled};
use kkmeans::{Assignments, DenseMatrix, GramMethod, KernelSpec, Vector};

fn main() -> kkmeans::Result<()> {
    let points = DenseMatrix::from_rows(&[[0.0, 0.0], [0.2, 0.1], [3.0, 3.0], [3.1, 2.8], [0.1, 0.3], [2.9, 3.2]])?;
    let labels = Assignments::new(vec![0, 1, 1, 0, 0, 1], 2)?;
    let kmat = kernel_matrix(&points, &KernelSpec::linear(), GramMethod::default())?;

    let v = build_selection_matrix::<f64>(&labels, 2)?;
    println!("V rowptrs {:?} colinds {:?}", v.rowptrs(), v.colinds());
    println!("V values  {:?}", v.values());

    let e = spmm_neg2_kvt(&kmat, &v)?;
    let z = Vector::new(
        labels
            .labels()
            .iter()
            .enumerate()
            .map(|(i, &l)| -0.5 * e.get(i, l))
            .collect(),
    );
    let c_norms = spmv_scaled(1.0, &v, &z)?;
    println!("centroid norms {:?}", c_norms.as_slice());

    let p_norms = diag(&kmat)?;
    let d = DenseMatrix::from_fn(points.rows(), 2, |i, j| e.get(i, j) + p_norms[i] + c_norms[j]);
    for i in 0..d.rows() {
        println!("point {i}: distances {:?}", d.row(i));
    }
    println!("new labels {:?}", row_argmin(&d)?.labels());
    Ok(())
}
