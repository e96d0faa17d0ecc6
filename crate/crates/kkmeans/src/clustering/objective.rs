use rayon::prelude::*;

use super::Assignments;
use crate::{DenseMatrix, Error, Result, Scalar};

/// Per-cluster `(|L_j|, Σ_{l,m∈L_j} K[l][m])`.
pub(super) fn cluster_self_terms<T: Scalar>(
    kmat: &DenseMatrix<T>,
    members: &[Vec<usize>],
) -> Vec<(usize, T)> {
    members
        .par_iter()
        .map(|m| {
            let mut acc = T::zero();
            for &l in m {
                let row = kmat.row(l);
                for &c in m {
                    acc = acc + row[c];
                }
            }
            (m.len(), acc)
        })
        .collect()
}

/// `‖φ(p_i) − c_j‖² = K_ii − (2/|L|)·Σ_{l∈L} K_il + (1/|L|²)·Σ_{l,m∈L} K_lm`.
#[inline]
pub(super) fn expanded_distance<T: Scalar>(kii: T, cross: T, size: usize, self_term: T) -> T {
    if size == 0 {
        return T::infinity();
    }
    let s = T::from_f64(size as f64);
    kii - (T::from_f64(2.0) / s) * cross + self_term / (s * s)
}

/// Kernel K-means objective `Σᵢ ‖φ(pᵢ) − c_{cluster(i)}‖²`, evaluated with
/// the kernel trick. Every sum is carried in `f64` whatever `T` is.
pub fn compute_objective<T: Scalar>(kmat: &DenseMatrix<T>, assign: &Assignments) -> Result<f64> {
    let n = assign.len();
    if kmat.rows() != n || kmat.cols() != n {
        return Err(Error::mismatch(
            "compute_objective",
            format!("{n} labels against a {}x{} kernel matrix", kmat.rows(), kmat.cols()),
        ));
    }
    let members = assign.members();
    let selfs: Vec<f64> = members
        .par_iter()
        .map(|m| m.iter().map(|&l| sum_f64(kmat.row(l), m)).sum())
        .collect();
    let labels = assign.labels();
    // Collected before summing so the f64 reduction runs in index order.
    let total = (0..n)
        .into_par_iter()
        .map(|i| {
            let j = labels[i];
            let s = members[j].len() as f64;
            let cross = sum_f64(kmat.row(i), &members[j]);
            kmat.get(i, i).as_f64() - 2.0 / s * cross + selfs[j] / (s * s)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    Ok(total)
}

fn sum_f64<T: Scalar>(row: &[T], cols: &[usize]) -> f64 {
    cols.iter().map(|&c| row[c].as_f64()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel_matrix;
    use crate::{GramMethod, KernelSpec};

    #[test]
    fn singletons_have_zero_objective() {
        let p = DenseMatrix::<f64>::from_rows(&[[0.0, 1.0], [3.0, -2.0], [5.0, 5.0]]).unwrap();
        let k = kernel_matrix(&p, &KernelSpec::polynomial(1.0, 1.0, 2), GramMethod::default()).unwrap();
        let a = Assignments::new(vec![2, 0, 1], 3).unwrap();
        assert!(compute_objective(&k, &a).unwrap().abs() < 1e-9);
    }

    #[test]
    fn two_points_one_cluster() {
        let p = DenseMatrix::<f64>::from_rows(&[[0.0], [2.0]]).unwrap();
        let k = kernel_matrix(&p, &KernelSpec::linear(), GramMethod::default()).unwrap();
        let a = Assignments::new(vec![0, 0], 1).unwrap();
        assert_eq!(compute_objective(&k, &a).unwrap(), 2.0);
    }

    #[test]
    fn linear_kernel_matches_input_space_objective() {
        let p = DenseMatrix::<f64>::from_rows(&[[0.0], [0.1], [10.0], [10.1]]).unwrap();
        let k = kernel_matrix(&p, &KernelSpec::linear(), GramMethod::default()).unwrap();
        let a = Assignments::new(vec![0, 0, 1, 1], 2).unwrap();
        approx::assert_relative_eq!(compute_objective(&k, &a).unwrap(), 0.01, max_relative = 1e-9);
    }

    #[test]
    fn shape_mismatch() {
        let a = Assignments::new(vec![0, 0], 1).unwrap();
        assert!(compute_objective(&DenseMatrix::<f32>::identity(3), &a).is_err());
    }
}
