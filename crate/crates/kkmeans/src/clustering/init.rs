use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Assignments;
use crate::{Error, Result};

/// Uniform random labels in `[0, k)` from a ChaCha8 stream seeded with
/// `seed`, followed by a repair pass that leaves no cluster empty.
///
/// Repair: every empty cluster `j` takes point `j`. Moving point `j` can
/// empty the cluster it came from, so the pass repeats; a point `j` that
/// already carries label `j` is never moved again, so at most `k` passes
/// are needed.
pub fn init_assignments(n: usize, k: usize, seed: u64) -> Result<Assignments> {
    if k == 0 || k > n {
        return Err(Error::InvalidClusterCount { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();

    let mut sizes = vec![0usize; k];
    for &l in &labels {
        sizes[l] += 1;
    }
    loop {
        let empty: Vec<usize> = (0..k).filter(|&j| sizes[j] == 0).collect();
        if empty.is_empty() {
            break;
        }
        for j in empty {
            let old = labels[j];
            sizes[old] -= 1;
            sizes[j] += 1;
            labels[j] = j;
        }
    }
    Assignments::new(labels, k)
}
