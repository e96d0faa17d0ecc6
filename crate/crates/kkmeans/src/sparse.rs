//! CSR storage for the selection matrix `V` and the two sparse products that
//! drive each clustering iteration.
//!
//! `V` is `k×n` with `V[j][i] = 1/|L_j|` when point `i` belongs to cluster
//! `j`. Because every point belongs to exactly one cluster, every column of
//! `V` holds exactly one nonzero, so `V` always has `n` nonzeros.

use rayon::prelude::*;

use crate::clustering::Assignments;
use crate::{DenseMatrix, Error, Result, Scalar, Vector};

/// Compressed sparse row matrix with 32-bit indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix<T = f32> {
    rows: usize,
    cols: usize,
    rowptrs: Vec<u32>,
    colinds: Vec<u32>,
    values: Vec<T>,
}

impl<T: Scalar> CsrMatrix<T> {
    /// Validates the three arrays and wraps them.
    pub fn new(
        rows: usize,
        cols: usize,
        rowptrs: Vec<u32>,
        colinds: Vec<u32>,
        values: Vec<T>,
    ) -> Result<Self> {
        if rows > u32::MAX as usize {
            return Err(Error::IndexOverflow(rows));
        }
        if cols > u32::MAX as usize {
            return Err(Error::IndexOverflow(cols));
        }
        if rowptrs.len() != rows + 1 {
            return Err(Error::InvalidCsr(format!(
                "rowptrs has length {}, expected {}",
                rowptrs.len(),
                rows + 1
            )));
        }
        if colinds.len() != values.len() {
            return Err(Error::InvalidCsr(format!(
                "{} column indices but {} values",
                colinds.len(),
                values.len()
            )));
        }
        if rowptrs[0] != 0 || rowptrs[rows] as usize != colinds.len() {
            return Err(Error::InvalidCsr(
                "rowptrs must start at 0 and end at nnz".into(),
            ));
        }
        for r in 0..rows {
            let (lo, hi) = (rowptrs[r] as usize, rowptrs[r + 1] as usize);
            if lo > hi {
                return Err(Error::InvalidCsr(format!("rowptrs decreases at row {r}")));
            }
            let row = &colinds[lo..hi];
            if row.iter().any(|&c| c as usize >= cols) {
                return Err(Error::InvalidCsr(format!("column index out of range in row {r}")));
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidCsr(format!(
                    "column indices of row {r} are not strictly increasing"
                )));
            }
        }
        Ok(Self {
            rows,
            cols,
            rowptrs,
            colinds,
            values,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn rowptrs(&self) -> &[u32] {
        &self.rowptrs
    }

    pub fn colinds(&self) -> &[u32] {
        &self.colinds
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `(column, value)` pairs of row `r`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let (lo, hi) = (self.rowptrs[r] as usize, self.rowptrs[r + 1] as usize);
        self.colinds[lo..hi]
            .iter()
            .zip(&self.values[lo..hi])
            .map(|(&c, &v)| (c as usize, v))
    }

    pub fn row_nnz(&self, r: usize) -> usize {
        (self.rowptrs[r + 1] - self.rowptrs[r]) as usize
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut out = DenseMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                out.set(r, c, v);
            }
        }
        out
    }

    /// Column-major view: for every column, the `(row, value)` pairs in
    /// ascending row order.
    fn transpose_lookup(&self) -> (Vec<usize>, Vec<(u32, T)>) {
        let mut colptrs = vec![0usize; self.cols + 1];
        for &c in &self.colinds {
            colptrs[c as usize + 1] += 1;
        }
        for c in 0..self.cols {
            colptrs[c + 1] += colptrs[c];
        }
        let mut fill = colptrs.clone();
        let mut entries = vec![(0u32, T::zero()); self.nnz()];
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                entries[fill[c]] = (r as u32, v);
                fill[c] += 1;
            }
        }
        (colptrs, entries)
    }
}

/// Builds the `k×n` selection matrix for `assign`.
///
/// Empty clusters become empty rows.
pub fn build_selection_matrix<T: Scalar>(assign: &Assignments, k: usize) -> Result<CsrMatrix<T>> {
    let n = assign.len();
    if k == 0 || n == 0 {
        return Err(Error::InvalidClusterCount { k, n });
    }
    if n > u32::MAX as usize {
        return Err(Error::IndexOverflow(n));
    }
    let labels = assign.labels();
    let mut counts = vec![0u32; k];
    for (i, &l) in labels.iter().enumerate() {
        if l >= k {
            return Err(Error::LabelOutOfRange { index: i, label: l, k });
        }
        counts[l] += 1;
    }
    let mut rowptrs = vec![0u32; k + 1];
    for j in 0..k {
        rowptrs[j + 1] = rowptrs[j] + counts[j];
    }
    // Scanning points in order leaves each row's column indices sorted.
    let mut fill: Vec<u32> = rowptrs[..k].to_vec();
    let mut colinds = vec![0u32; n];
    let mut values = vec![T::zero(); n];
    for (i, &l) in labels.iter().enumerate() {
        let slot = fill[l] as usize;
        colinds[slot] = i as u32;
        values[slot] = T::one() / T::from_f64(counts[l] as f64);
        fill[l] += 1;
    }
    Ok(CsrMatrix {
        rows: k,
        cols: n,
        rowptrs,
        colinds,
        values,
    })
}

/// `E = -2·K·Vᵀ` as a dense `n×k` matrix.
///
/// Rows of `E` are computed independently; within a row the columns of `K`
/// are visited in ascending order, so results are deterministic.
pub fn spmm_neg2_kvt<T: Scalar>(kmat: &DenseMatrix<T>, v: &CsrMatrix<T>) -> Result<DenseMatrix<T>> {
    if !kmat.is_square() {
        return Err(Error::NotSquare {
            rows: kmat.rows(),
            cols: kmat.cols(),
        });
    }
    let n = kmat.rows();
    if v.cols() != n {
        return Err(Error::mismatch(
            "spmm_neg2_kvt",
            format!("V has {} columns but K is {n}x{n}", v.cols()),
        ));
    }
    let k = v.rows();
    let (colptrs, entries) = v.transpose_lookup();
    let neg2 = T::from_f64(-2.0);
    let mut out = DenseMatrix::zeros(n, k);
    if k == 0 {
        return Ok(out);
    }
    out.par_rows_mut().enumerate().for_each(|(i, acc)| {
        let krow = kmat.row(i);
        for (l, &kil) in krow.iter().enumerate() {
            for &(j, vjl) in &entries[colptrs[l]..colptrs[l + 1]] {
                acc[j as usize] = acc[j as usize] + kil * vjl;
            }
        }
        for e in acc.iter_mut() {
            *e = neg2 * *e;
        }
    });
    Ok(out)
}

/// `alpha · V · z`.
pub fn spmv_scaled<T: Scalar>(alpha: T, v: &CsrMatrix<T>, z: &Vector<T>) -> Result<Vector<T>> {
    if v.cols() != z.len() {
        return Err(Error::mismatch(
            "spmv_scaled",
            format!("V has {} columns but z has length {}", v.cols(), z.len()),
        ));
    }
    let zs = z.as_slice();
    let out = (0..v.rows())
        .into_par_iter()
        .map(|j| {
            let mut acc = T::zero();
            for (l, val) in v.row(j) {
                acc = acc + val * zs[l];
            }
            alpha * acc
        })
        .collect();
    Ok(Vector::new(out))
}
