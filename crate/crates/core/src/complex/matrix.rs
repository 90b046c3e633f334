use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{DenseMatrix, SparseOperator};

/// Integer-valued sparse matrix holding neighborhood multiplicities or 0/1 incidence.
///
/// Explicit zeros are never stored. When `symmetric` is set the stored pattern
/// and values are mirrored across the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    entries: BTreeMap<(usize, usize), u32>,
    symmetric: bool,
}

impl SparseMatrix {
    pub fn new(nrows: usize, ncols: usize, symmetric: bool) -> Self {
        Self { nrows, ncols, entries: BTreeMap::new(), symmetric }
    }

    /// Validating constructor used when reading matrices back from storage.
    pub fn from_entries(
        nrows: usize,
        ncols: usize,
        symmetric: bool,
        entries: impl IntoIterator<Item = ((usize, usize), u32)>,
    ) -> Result<Self> {
        let mut m = Self::new(nrows, ncols, symmetric);
        for ((i, j), v) in entries {
            if i >= nrows || j >= ncols {
                return Err(Error::shape("SparseMatrix::from_entries", (nrows, ncols), (i, j)));
            }
            if v != 0 {
                m.entries.insert((i, j), v);
            }
        }
        if symmetric && !m.is_symmetric() {
            return Err(Error::DimensionMismatch("entries flagged symmetric are not".into()));
        }
        Ok(m)
    }

    pub(crate) fn increment(&mut self, i: usize, j: usize) {
        *self.entries.entry((i, j)).or_insert(0) += 1;
    }

    pub(crate) fn insert(&mut self, i: usize, j: usize, value: u32) {
        if value == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.entries.range((i, 0)..(i + 1, 0)).map(|(&(_, j), &v)| (j, v))
    }

    pub fn row_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.nrows];
        for (i, _, v) in self.iter() {
            sums[i] += u64::from(v);
        }
        sums
    }

    pub fn column_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.ncols];
        for (_, j, v) in self.iter() {
            sums[j] += u64::from(v);
        }
        sums
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows == self.ncols && self.iter().all(|(i, j, v)| self.get(j, i) == v)
    }

    pub fn transpose(&self) -> Self {
        Self {
            nrows: self.ncols,
            ncols: self.nrows,
            entries: self.iter().map(|(i, j, v)| ((j, i), v)).collect(),
            symmetric: self.symmetric,
        }
    }

    /// Square sub-block with rows and columns in `[start, end)`.
    pub fn block(&self, start: usize, end: usize) -> Self {
        let mut out = Self::new(end - start, end - start, self.symmetric);
        for i in start..end {
            for (j, v) in self.row(i) {
                if (start..end).contains(&j) {
                    out.insert(i - start, j - start, v);
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.iter() {
            d.set(i, j, f64::from(v));
        }
        d
    }

    pub fn to_operator(&self) -> SparseOperator {
        SparseOperator::from_triplets(self.nrows, self.ncols, self.iter().map(|(i, j, v)| (i, j, f64::from(v))))
    }
}
