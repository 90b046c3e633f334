use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::numerics::{exp, relu, sigmoid};

/// Row-major dense `f64` matrix.
///
/// Constructors that ingest external data reject NaN and infinities. Arithmetic
/// on finite inputs is not re-checked; callers that need the guarantee use
/// [`DenseMatrix::ensure_finite`].
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<f64>,
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl DenseMatrix {
    pub fn new(nrows: usize, ncols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != nrows * ncols {
            return Err(Error::shape("DenseMatrix::new", (nrows, ncols), (data.len(), 1)));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("DenseMatrix::new"));
        }
        Ok(Self { nrows, ncols, data })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self::filled(nrows, ncols, 0.0)
    }

    pub fn filled(nrows: usize, ncols: usize, value: f64) -> Self {
        Self { nrows, ncols, data: vec![value; nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from equally long rows. An empty slice yields a 0x0 matrix.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::shape("DenseMatrix::from_rows", (rows.len(), ncols), (1, r.len())));
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), ncols, data)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.ncols + j] = value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        (0..self.nrows).map(move |i| self.row(i))
    }

    pub fn ensure_finite(&self, context: &'static str) -> Result<()> {
        if self.data.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite(context))
        }
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::shape(op, self.shape(), other.shape()));
        }
        Ok(())
    }

    /// `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::shape("matmul", self.shape(), other.shape()));
        }
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            let out_row = &mut out.data[i * other.ncols..(i + 1) * other.ncols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ · other`, without materializing the transpose.
    pub fn t_matmul(&self, other: &Self) -> Result<Self> {
        if self.nrows != other.nrows {
            return Err(Error::shape("t_matmul", self.shape(), other.shape()));
        }
        let mut out = Self::zeros(self.ncols, other.ncols);
        for k in 0..self.nrows {
            let b_row = other.row(k);
            for (i, &a) in self.row(k).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let out_row = &mut out.data[i * other.ncols..(i + 1) * other.ncols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self · otherᵀ`.
    pub fn matmul_t(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.ncols {
            return Err(Error::shape("matmul_t", self.shape(), other.shape()));
        }
        let mut out = Self::zeros(self.nrows, other.nrows);
        for i in 0..self.nrows {
            let a = self.row(i);
            for j in 0..other.nrows {
                out.data[i * other.nrows + j] = dot(a, other.row(j));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(self.zip_map(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_map(other, |a, b| a - b))
    }

    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "hadamard")?;
        Ok(self.zip_map(other, |a, b| a * b))
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.same_shape(other, "add_assign")?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(())
    }

    /// `self += alpha * other`.
    pub fn axpy(&mut self, alpha: f64, other: &Self) -> Result<()> {
        self.same_shape(other, "axpy")?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
        Ok(())
    }

    pub fn scale(&self, alpha: f64) -> Self {
        self.map(|v| alpha * v)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.data[j * self.nrows + i] = self.data[i * self.ncols + j];
            }
        }
        out
    }

    pub fn relu(&self) -> Self {
        self.map(relu)
    }

    pub fn sigmoid(&self) -> Self {
        self.map(sigmoid)
    }

    /// Numerically stable softmax of every row. Rows of a 0-column matrix stay empty.
    pub fn row_softmax(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.nrows {
            let row = out.row_mut(i);
            let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mut total = 0.0;
            for v in row.iter_mut() {
                *v = exp(*v - max);
                total += *v;
            }
            for v in row.iter_mut() {
                *v /= total;
            }
        }
        out
    }

    /// Divides every row by its sum; rows summing to zero are left untouched.
    pub fn row_normalize(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.nrows {
            let row = out.row_mut(i);
            let total: f64 = row.iter().sum();
            if total != 0.0 {
                for v in row.iter_mut() {
                    *v /= total;
                }
            }
        }
        out
    }

    pub fn concat_cols(&self, other: &Self) -> Result<Self> {
        if self.nrows != other.nrows {
            return Err(Error::shape("concat_cols", self.shape(), other.shape()));
        }
        let ncols = self.ncols + other.ncols;
        let mut data = Vec::with_capacity(self.nrows * ncols);
        for i in 0..self.nrows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Self { nrows: self.nrows, ncols, data })
    }

    /// Inverse of [`concat_cols`](Self::concat_cols): columns `[0, at)` and `[at, ncols)`.
    pub fn split_cols(&self, at: usize) -> (Self, Self) {
        assert!(at <= self.ncols, "split point {at} beyond {} columns", self.ncols);
        let mut left = Self::zeros(self.nrows, at);
        let mut right = Self::zeros(self.nrows, self.ncols - at);
        for i in 0..self.nrows {
            let (l, r) = self.row(i).split_at(at);
            left.row_mut(i).copy_from_slice(l);
            right.row_mut(i).copy_from_slice(r);
        }
        (left, right)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.ncols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Self { nrows: rows.len(), ncols: self.ncols, data }
    }

    /// Rows `[start, end)` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        Self {
            nrows: end - start,
            ncols: self.ncols,
            data: self.data[start * self.ncols..end * self.ncols].to_vec(),
        }
    }

    /// Stacks matrices of equal width on top of each other.
    pub fn vstack(blocks: &[&Self]) -> Result<Self> {
        let ncols = blocks.first().map_or(0, |b| b.ncols);
        let mut data = Vec::new();
        let mut nrows = 0;
        for b in blocks {
            if b.ncols != ncols {
                return Err(Error::shape("vstack", (nrows, ncols), b.shape()));
            }
            data.extend_from_slice(&b.data);
            nrows += b.nrows;
        }
        Ok(Self { nrows, ncols, data })
    }

    /// Sum over rows, i.e. one value per column.
    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.ncols];
        for row in self.rows() {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
        sums
    }

    pub fn frobenius_norm(&self) -> f64 {
        crate::numerics::sqrt(self.data.iter().map(|v| v * v).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| f64::max(m, v.abs()))
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn sigmoid_and_relu_definitions() {
        let x = m(&[&[0.0, -3.5, 2.0]]);
        assert_eq!(x.sigmoid().get(0, 0), 0.5);
        assert_eq!(x.relu().row(0), &[0.0, 0.0, 2.0]);
    }

    #[test]
    fn softmax_of_zero_row_is_uniform() {
        let s = m(&[&[0.0, 0.0, 0.0]]).row_softmax();
        for &v in s.row(0) {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn softmax_rows_sum_to_one_for_large_logits() {
        let s = m(&[&[1000.0, -1000.0, 3.0], &[-5.0, 7.5, 0.25]]).row_softmax();
        for row in s.rows() {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(row.iter().all(|v| v.is_finite()));
        }
    }

    #[test]
    fn matmul_variants_agree_with_explicit_transpose() {
        let a = m(&[&[1.0, 2.0, 0.0], &[-1.0, 0.5, 3.0]]);
        let b = m(&[&[2.0, 1.0], &[0.0, -1.0], &[4.0, 0.5]]);
        let ab = a.matmul(&b).unwrap();
        assert_eq!(ab, m(&[&[2.0, -1.0], &[10.0, 0.0]]));
        assert_eq!(a.transpose().t_matmul(&b).unwrap(), ab);
        assert_eq!(a.matmul_t(&b.transpose()).unwrap(), ab);
    }

    #[test]
    fn shape_errors_report_both_shapes() {
        let a = DenseMatrix::zeros(2, 3);
        let b = DenseMatrix::zeros(2, 3);
        match a.matmul(&b) {
            Err(Error::Shape { lhs, rhs, .. }) => {
                assert_eq!(lhs, (2, 3));
                assert_eq!(rhs, (2, 3));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(a.add(&DenseMatrix::zeros(3, 2)).is_err());
        assert!(a.concat_cols(&DenseMatrix::zeros(1, 1)).is_err());
    }

    #[test]
    fn rejects_non_finite_input() {
        assert_eq!(
            DenseMatrix::new(1, 2, alloc::vec![1.0, f64::NAN]),
            Err(Error::NonFinite("DenseMatrix::new"))
        );
        assert!(DenseMatrix::new(1, 2, alloc::vec![1.0]).is_err());
    }

    #[test]
    fn concat_then_split_is_identity() {
        let a = m(&[&[1.0], &[2.0]]);
        let b = m(&[&[3.0, 4.0], &[5.0, 6.0]]);
        let c = a.concat_cols(&b).unwrap();
        assert_eq!(c.row(1), &[2.0, 5.0, 6.0]);
        assert_eq!(c.split_cols(1), (a, b));
    }

    #[test]
    fn row_normalize_leaves_zero_rows() {
        let r = m(&[&[1.0, 3.0], &[0.0, 0.0]]).row_normalize();
        assert_eq!(r.row(0), &[0.25, 0.75]);
        assert_eq!(r.row(1), &[0.0, 0.0]);
    }
}
