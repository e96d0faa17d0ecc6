use super::Assignments;
use crate::{DenseMatrix, Error, Result, Scalar};

/// Refills empty clusters with far-away points.
///
/// Empty clusters are visited in ascending order. Each one receives the
/// point with the largest distance to its own (current) centroid, ties to
/// the lowest index, among points that have not already been moved and
/// whose cluster would not become empty. With `k ≤ n` such a point always
/// exists while some cluster is empty, so the result has none.
pub fn repair_empty_clusters<T: Scalar>(
    assign: &Assignments,
    d: &DenseMatrix<T>,
    k: usize,
) -> Result<Assignments> {
    let n = assign.len();
    if k == 0 || k > n {
        return Err(Error::InvalidClusterCount { k, n });
    }
    if d.rows() != n || d.cols() != k || assign.k() != k {
        return Err(Error::mismatch(
            "repair_empty_clusters",
            format!(
                "{n} labels over {} clusters against a {}x{} distance matrix, k={k}",
                assign.k(),
                d.rows(),
                d.cols()
            ),
        ));
    }
    let mut sizes = assign.cluster_sizes();
    if sizes.iter().all(|&s| s > 0) {
        return Ok(assign.clone());
    }

    let mut labels = assign.labels().to_vec();
    let own: Vec<T> = (0..n).map(|i| d.get(i, labels[i])).collect();
    let mut moved = vec![false; n];
    for j in 0..k {
        if sizes[j] > 0 {
            continue;
        }
        let mut pick: Option<usize> = None;
        for i in 0..n {
            if moved[i] || sizes[labels[i]] < 2 {
                continue;
            }
            // Strict comparison keeps the lowest index on ties; NaN never wins.
            if pick.is_none_or(|p| own[i] > own[p]) {
                pick = Some(i);
            }
        }
        let i = pick.expect("k <= n guarantees a cluster with at least two points");
        sizes[labels[i]] -= 1;
        sizes[j] += 1;
        labels[i] = j;
        moved[i] = true;
    }
    Assignments::new(labels, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn no_empty_clusters_is_identity() {
        let a = Assignments::new(vec![0, 1, 1], 2).unwrap();
        let d = DenseMatrix::<f32>::zeros(3, 2);
        assert_eq!(repair_empty_clusters(&a, &d, 2).unwrap(), a);
    }

    #[test]
    fn farthest_point_moves() {
        let a = Assignments::new(vec![0, 0, 0, 0], 2).unwrap();
        let d = DenseMatrix::<f32>::from_rows(&[[1.0, 5.0], [2.0, 5.0], [0.5, 5.0], [9.0, 5.0]]).unwrap();
        let r = repair_empty_clusters(&a, &d, 2).unwrap();
        assert_eq!(r.labels(), &[0, 0, 0, 1]);
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let a = Assignments::new(vec![0, 0, 0], 3).unwrap();
        let d = DenseMatrix::<f32>::from_rows(&[[1.0, 0.0, 0.0], [3.0, 0.0, 0.0], [3.0, 0.0, 0.0]]).unwrap();
        let r = repair_empty_clusters(&a, &d, 3).unwrap();
        assert_eq!(r.labels(), &[0, 1, 2]);
    }

    #[test]
    fn singleton_clusters_are_not_drained() {
        // Point 0 is farthest but alone in cluster 1.
        let a = Assignments::new(vec![1, 0, 0], 3).unwrap();
        let d = DenseMatrix::<f32>::from_rows(&[[0.0, 100.0, 0.0], [2.0, 0.0, 0.0], [1.0, 0.0, 0.0]]).unwrap();
        let r = repair_empty_clusters(&a, &d, 3).unwrap();
        assert_eq!(r.labels(), &[1, 2, 0]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = Assignments::new(vec![0, 0], 3).unwrap();
        assert!(matches!(
            repair_empty_clusters(&a, &DenseMatrix::<f32>::zeros(2, 3), 3),
            Err(Error::InvalidClusterCount { .. })
        ));
        let a = Assignments::new(vec![0, 0], 2).unwrap();
        assert!(repair_empty_clusters(&a, &DenseMatrix::<f32>::zeros(2, 3), 2).is_err());
    }

    proptest! {
        #[test]
        fn repairs_exactly_the_empty_count(
            (labels, k, dvals) in (1usize..40).prop_flat_map(|n| (
                prop::collection::vec(0usize..3, n),
                1usize..=n,
                prop::collection::vec(0.0f64..10.0, n),
            ))
        ) {
            let n = labels.len();
            let labels: Vec<usize> = labels.into_iter().map(|l| l % k).collect();
            let a = Assignments::new(labels, k).unwrap();
            let d = DenseMatrix::from_fn(n, k, |i, _| dvals[i]);
            let empty = a.empty_clusters().len();
            let r = repair_empty_clusters(&a, &d, k).unwrap();
            prop_assert!(r.empty_clusters().is_empty());
            prop_assert_eq!(r.count_changed(&a), empty);
        }
    }
}
