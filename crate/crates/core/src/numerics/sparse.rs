use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;

/// Compressed-row real matrix used as a linear operator on dense features.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseOperator {
    /// Builds the operator from `(row, col, value)` triplets. Duplicates are summed;
    /// zeros are dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nrows];
        for (i, j, v) in triplets {
            assert!(i < nrows && j < ncols, "triplet ({i}, {j}) outside {nrows}x{ncols}");
            rows[i].push((j, v));
        }
        let mut indptr = Vec::with_capacity(nrows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(j, _)| j);
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(row.len());
            for (j, v) in row {
                match merged.last_mut() {
                    Some((lj, lv)) if *lj == j => *lv += v,
                    _ => merged.push((j, v)),
                }
            }
            for (j, v) in merged {
                if v != 0.0 {
                    indices.push(j);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Self { nrows, ncols, indptr, indices, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, 1.0)))
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.indptr[i]..self.indptr[i + 1];
        self.indices[range.clone()].iter().copied().zip(self.values[range].iter().copied())
    }

    /// `self · h`.
    pub fn apply(&self, h: &DenseMatrix) -> Result<DenseMatrix> {
        if self.ncols != h.nrows() {
            return Err(Error::shape("SparseOperator::apply", (self.nrows, self.ncols), h.shape()));
        }
        let mut out = DenseMatrix::zeros(self.nrows, h.ncols());
        for i in 0..self.nrows {
            for (j, v) in self.row(i) {
                let src = h.row(j);
                for (o, s) in out.row_mut(i).iter_mut().zip(src) {
                    *o += v * s;
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ · h`.
    pub fn apply_transpose(&self, h: &DenseMatrix) -> Result<DenseMatrix> {
        if self.nrows != h.nrows() {
            return Err(Error::shape(
                "SparseOperator::apply_transpose",
                (self.nrows, self.ncols),
                h.shape(),
            ));
        }
        let mut out = DenseMatrix::zeros(self.ncols, h.ncols());
        for i in 0..self.nrows {
            let src = h.row(i);
            for (j, v) in self.row(i) {
                for (o, s) in out.row_mut(j).iter_mut().zip(src) {
                    *o += v * s;
                }
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.nrows, self.ncols);
        for i in 0..self.nrows {
            for (j, v) in self.row(i) {
                out.set(i, j, v);
            }
        }
        out
    }
}
