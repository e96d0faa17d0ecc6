//! Row-major dense matrices and the handful of dense kernels the clustering
//! drivers need.

use rayon::prelude::*;

use crate::clustering::Assignments;
use crate::{Error, Result, Scalar};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T = f32> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DataLength {
                rows,
                cols,
                actual: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from equally sized rows.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::mismatch(
                    "from_rows",
                    format!("row {i} has {} entries, expected {cols}", row.len()),
                ));
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).collect()
    }

    /// Converts every entry to another precision.
    pub fn cast<U: Scalar>(&self) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| U::from_f64(v.as_f64())).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Returns the position of the first non-finite entry.
    pub fn check_finite(&self) -> Result<()> {
        match self.data.iter().position(|v| !v.is_finite()) {
            None => Ok(()),
            Some(p) => Err(Error::NonFinite {
                row: p / self.cols.max(1),
                col: p % self.cols.max(1),
            }),
        }
    }

    pub(crate) fn par_rows_mut(&mut self) -> rayon::slice::ChunksMut<'_, T> {
        let cols = self.cols.max(1);
        self.data.par_chunks_mut(cols)
    }
}

/// Dense real vector.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Vector<T = f32>(Vec<T>);

impl<T: Scalar> Vector<T> {
    pub fn new(data: Vec<T>) -> Self {
        Self(data)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![T::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }
}

impl<T> std::ops::Index<usize> for Vector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Scalar> From<Vec<T>> for Vector<T> {
    fn from(v: Vec<T>) -> Self {
        Self(v)
    }
}

fn require_nonempty<T: Scalar>(m: &DenseMatrix<T>) -> Result<()> {
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::EmptyDimension {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(())
}

#[inline]
fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    // Sequential accumulation keeps every entry bit-reproducible.
    let mut acc = T::zero();
    for (&x, &y) in a.iter().zip(b) {
        acc = acc + x * y;
    }
    acc
}

/// `points · pointsᵀ` with every one of the `n²` entries computed.
pub fn gemm_gram<T: Scalar>(points: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    require_nonempty(points)?;
    let n = points.rows;
    let mut out = DenseMatrix::zeros(n, n);
    out.par_rows_mut().enumerate().for_each(|(i, row)| {
        let pi = points.row(i);
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = dot(pi, points.row(j));
        }
    });
    Ok(out)
}

/// `points · pointsᵀ` computing only the upper triangle, then copying it
/// into the lower triangle. The result is bitwise symmetric.
pub fn syrk_gram<T: Scalar>(points: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    require_nonempty(points)?;
    let n = points.rows;
    let mut out = DenseMatrix::zeros(n, n);
    out.par_rows_mut().enumerate().for_each(|(i, row)| {
        let pi = points.row(i);
        for (j, slot) in row.iter_mut().enumerate().skip(i) {
            *slot = dot(pi, points.row(j));
        }
    });
    mirror_upper(&mut out);
    Ok(out)
}

fn mirror_upper<T: Scalar>(m: &mut DenseMatrix<T>) {
    let n = m.rows;
    for i in 1..n {
        for j in 0..i {
            let v = m.data[j * n + i];
            m.data[i * n + j] = v;
        }
    }
}

/// Main diagonal of a square matrix.
pub fn diag<T: Scalar>(m: &DenseMatrix<T>) -> Result<Vector<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(Vector((0..m.rows).map(|i| m.get(i, i)).collect()))
}

/// Column index of each row's minimum. Ties go to the lowest index.
pub fn row_argmin<T: Scalar>(m: &DenseMatrix<T>) -> Result<Assignments> {
    require_nonempty(m)?;
    let labels = (0..m.rows)
        .into_par_iter()
        .map(|i| argmin_slice(m.row(i)).ok_or(Error::NanInRow { row: i }))
        .collect::<Result<Vec<_>>>()?;
    Assignments::new(labels, m.cols)
}

#[inline]
pub(crate) fn argmin_slice<T: Scalar>(row: &[T]) -> Option<usize> {
    let mut best = 0;
    let mut best_val = *row.first()?;
    if best_val.is_nan() {
        return None;
    }
    for (j, &v) in row.iter().enumerate().skip(1) {
        if v.is_nan() {
            return None;
        }
        if v < best_val {
            best = j;
            best_val = v;
        }
    }
    Some(best)
}

/// Applies `f` to every entry. Non-finite results are reported as errors.
pub fn map_elementwise<T, F>(m: &DenseMatrix<T>, f: F) -> Result<DenseMatrix<T>>
where
    T: Scalar,
    F: Fn(T) -> T + Sync,
{
    map_indexed(m, |_, _, v| f(v))
}

/// Like [`map_elementwise`] but the closure also receives `(row, col)`.
pub fn map_indexed<T, F>(m: &DenseMatrix<T>, f: F) -> Result<DenseMatrix<T>>
where
    T: Scalar,
    F: Fn(usize, usize, T) -> T + Sync,
{
    let mut out = m.clone();
    let cols = m.cols;
    if cols == 0 {
        return Ok(out);
    }
    out.par_rows_mut().enumerate().for_each(|(i, row)| {
        for (j, v) in row.iter_mut().enumerate() {
            *v = f(i, j, *v);
        }
    });
    out.check_finite()?;
    Ok(out)
}
