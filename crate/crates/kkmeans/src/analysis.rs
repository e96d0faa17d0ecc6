//! FLOP and byte accounting for the two heavy phases, and an augmented
//! matrix formulation of squared Euclidean distance used as a test oracle.
//!
//! Byte counts assume 4-byte values and 4-byte indices.

use crate::{Error, KernelFamily, KernelSpec, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityReport {
    pub flops: u128,
    pub bytes: u128,
    /// `flops / bytes`.
    pub intensity: f64,
}

impl IntensityReport {
    fn new(flops: u128, bytes: u128) -> Self {
        Self {
            flops,
            bytes,
            intensity: flops as f64 / bytes as f64,
        }
    }
}

/// Building `K`: `(F_K + 2n²d) / 4(B_K + 2nd + n²)`.
///
/// `f_k` and `b_k` are the FLOPs and memory operations of the elementwise
/// kernel map; see [`KernelCostModel`] for defaults.
pub fn intensity_kernel_matrix(n: u64, d: u64, f_k: u64, b_k: u64) -> Result<IntensityReport> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidConfig(format!(
            "intensity needs n, d >= 1 (got n={n}, d={d})"
        )));
    }
    let (n, d) = (n as u128, d as u128);
    let flops = f_k as u128 + 2 * n * n * d;
    let bytes = 4 * (b_k as u128 + 2 * n * d + n * n);
    Ok(IntensityReport::new(flops, bytes))
}

/// One iteration's distance matrix `D`: one SpMM, one SpMV and the fused
/// add, `(2n² + 2n + 3nk) / 4(n² + 6n + 4k + 3nk)`.
pub fn intensity_distances(n: u64, k: u64) -> Result<IntensityReport> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidConfig(format!(
            "intensity needs n, k >= 1 (got n={n}, k={k})"
        )));
    }
    let (n, k) = (n as u128, k as u128);
    let flops = 2 * n * n + 2 * n + 3 * n * k;
    let bytes = 4 * (n * n + 6 * n + 4 * k + 3 * n * k);
    Ok(IntensityReport::new(flops, bytes))
}

/// Per-entry cost of applying a kernel to the Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelCostModel {
    pub flops_per_entry: u64,
    pub mem_ops_per_entry: u64,
}

impl KernelCostModel {
    /// Defaults: polynomial `r + 1` FLOPs, gaussian 5, sigmoid 3, each with
    /// one read and one write per entry; linear is free.
    pub fn for_kernel(spec: &KernelSpec) -> Self {
        let (flops_per_entry, mem_ops_per_entry) = match spec.family {
            KernelFamily::Linear => (0, 0),
            KernelFamily::Polynomial => (spec.degree as u64 + 1, 2),
            KernelFamily::Gaussian => (5, 2),
            KernelFamily::Sigmoid => (3, 2),
        };
        Self {
            flops_per_entry,
            mem_ops_per_entry,
        }
    }

    /// `(F_K, B_K)` over the `n²` entries of `K`.
    pub fn totals(&self, n: u64) -> (u64, u64) {
        let entries = n * n;
        (self.flops_per_entry * entries, self.mem_ops_per_entry * entries)
    }
}

/// [`intensity_kernel_matrix`] with `F_K`, `B_K` from the default cost model.
pub fn intensity_kernel_matrix_for(spec: &KernelSpec, n: u64, d: u64) -> Result<IntensityReport> {
    let (f_k, b_k) = KernelCostModel::for_kernel(spec).totals(n);
    intensity_kernel_matrix(n, d, f_k, b_k)
}

/// The `(d+1)×(d+1)` matrix `M` with `q·M·qᵀ = ‖p − c‖²` for `q = [1, p]`:
/// corner `‖c‖²`, first row and column `−c`, identity elsewhere.
pub fn augmented_center_matrix(c: &[f64]) -> Vec<Vec<f64>> {
    let d = c.len();
    let mut m = vec![vec![0.0; d + 1]; d + 1];
    m[0][0] = c.iter().map(|x| x * x).sum();
    for (i, &ci) in c.iter().enumerate() {
        m[0][i + 1] = -ci;
        m[i + 1][0] = -ci;
        m[i + 1][i + 1] = 1.0;
    }
    m
}

/// Squared distance `‖p − c‖²` computed as `q·M·qᵀ` with `q = [1, p]` and
/// `M` from [`augmented_center_matrix`].
pub fn augmented_distance_oracle(p: &[f64], c: &[f64]) -> Result<f64> {
    if p.len() != c.len() {
        return Err(Error::mismatch(
            "augmented_distance_oracle",
            format!("point has {} coordinates, center has {}", p.len(), c.len()),
        ));
    }
    let m = augmented_center_matrix(c);
    let q: Vec<f64> = std::iter::once(1.0).chain(p.iter().copied()).collect();
    // (q·M) then ·qᵀ
    let qm: Vec<f64> = (0..q.len())
        .map(|col| q.iter().zip(&m).map(|(qi, row)| qi * row[col]).sum())
        .collect();
    Ok(qm.iter().zip(&q).map(|(a, b)| a * b).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernel_matrix_substitutions() {
        let r = intensity_kernel_matrix(1, 1, 0, 0).unwrap();
        assert_eq!((r.flops, r.bytes), (2, 12));
        assert_eq!(r.intensity, 1.0 / 6.0);

        let r = intensity_kernel_matrix(2, 1, 0, 0).unwrap();
        assert_eq!((r.flops, r.bytes), (8, 32));
        assert_eq!(r.intensity, 0.25);

        assert!(intensity_kernel_matrix(0, 1, 0, 0).is_err());
    }

    #[test]
    fn polynomial_default_model() {
        // 3 flops and 2 accesses per entry, n = 100, d = 10:
        // flops = 3·10⁴ + 2·10⁴·10 = 230000
        // bytes = 4·(2·10⁴ + 2·100·10 + 10⁴) = 4·32000 = 128000
        let spec = KernelSpec::polynomial(1.0, 1.0, 2);
        assert_eq!(KernelCostModel::for_kernel(&spec).totals(100), (30_000, 20_000));
        let r = intensity_kernel_matrix_for(&spec, 100, 10).unwrap();
        assert_eq!((r.flops, r.bytes), (230_000, 128_000));
        assert_eq!(r.intensity, 230_000.0 / 128_000.0);
    }

    #[test]
    fn distance_substitutions() {
        let r = intensity_distances(2, 1).unwrap();
        assert_eq!((r.flops, r.bytes), (18, 104));
        assert_eq!(r.intensity, 18.0 / 104.0);

        let r = intensity_distances(1, 1).unwrap();
        assert_eq!((r.flops, r.bytes), (7, 56));

        // n = 10⁴, k = 100: 2·10⁸ + 2·10⁴ + 3·10⁶ and 4·(10⁸ + 6·10⁴ + 400 + 3·10⁶)
        let r = intensity_distances(10_000, 100).unwrap();
        assert_eq!(r.flops, 203_020_000);
        assert_eq!(r.bytes, 412_241_600);
        assert!(intensity_distances(1, 0).is_err());
    }

    #[test]
    fn scale_checks() {
        for n in 1..=8u64 {
            for k in 1..=4u64 {
                let a = intensity_distances(n, k).unwrap().flops;
                let b = intensity_distances(2 * n, k).unwrap().flops;
                assert_eq!(b - 2 * a, 4 * (n as u128).pow(2));
            }
            for d in 1..=4u64 {
                let a = intensity_kernel_matrix(n, d, 0, 0).unwrap().flops;
                let b = intensity_kernel_matrix(2 * n, d, 0, 0).unwrap().flops;
                assert_eq!(b - 2 * a, 4 * (n as u128).pow(2) * d as u128);
            }
        }
    }

    #[test]
    fn worked_examples() {
        assert_eq!(augmented_distance_oracle(&[3.0], &[7.0]).unwrap(), 16.0);
        assert_eq!(augmented_distance_oracle(&[1.0], &[7.0]).unwrap(), 36.0);
        assert_eq!(augmented_distance_oracle(&[5.0, 2.0], &[1.0, 4.0]).unwrap(), 20.0);
        assert_eq!(augmented_distance_oracle(&[4.0, 3.0, 2.0], &[5.0, 2.0, 3.0]).unwrap(), 3.0);
    }

    #[test]
    fn augmented_matrices_match_worked_examples() {
        assert_eq!(augmented_center_matrix(&[7.0]), vec![vec![49.0, -7.0], vec![-7.0, 1.0]]);
        assert_eq!(augmented_center_matrix(&[1.0, 4.0])[0], vec![17.0, -1.0, -4.0]);
        assert_eq!(augmented_center_matrix(&[5.0, 2.0, 3.0])[0][0], 38.0);
        assert!(augmented_distance_oracle(&[1.0], &[1.0, 2.0]).is_err());
    }

    proptest! {
        #[test]
        fn oracle_matches_direct(
            (p, c) in (1usize..=16).prop_flat_map(|d| (
                prop::collection::vec(-10.0f64..10.0, d),
                prop::collection::vec(-10.0f64..10.0, d),
            ))
        ) {
            let direct: f64 = p.iter().zip(&c).map(|(a, b)| (a - b).powi(2)).sum();
            let got = augmented_distance_oracle(&p, &c).unwrap();
            // Cancellation in ‖p‖² − 2p·c + ‖c‖² is absolute, not relative.
            let scale = p.iter().chain(&c).map(|x| x * x).sum::<f64>().max(1.0);
            prop_assert!((got - direct).abs() <= 1e-12 * scale, "{} vs {}", got, direct);
        }
    }
}
