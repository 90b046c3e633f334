use alloc::format;
use alloc::vec::Vec;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;

/// Per-dimension feature matrices `H_m`, row `i` belonging to the `i`-th
/// `m`-simplex in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet {
    dims: Vec<DenseMatrix>,
}

impl FeatureSet {
    /// Checks one matrix per dimension with `|X^m|` rows each.
    pub fn new(x: &SimplicialComplex, dims: Vec<DenseMatrix>) -> Result<Self> {
        if dims.len() != x.dim() + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} feature matrices for a complex of dimension {}",
                dims.len(),
                x.dim()
            )));
        }
        for (m, h) in dims.iter().enumerate() {
            if h.nrows() != x.count(m) {
                return Err(Error::shape("FeatureSet::new", h.shape(), (x.count(m), h.ncols())));
            }
            h.ensure_finite("FeatureSet::new")?;
        }
        Ok(Self { dims })
    }

    pub(crate) fn from_parts(dims: Vec<DenseMatrix>) -> Self {
        Self { dims }
    }

    pub fn get(&self, m: usize) -> &DenseMatrix {
        &self.dims[m]
    }

    pub(crate) fn get_mut(&mut self, m: usize) -> &mut DenseMatrix {
        &mut self.dims[m]
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn widths(&self) -> Vec<usize> {
        self.dims.iter().map(DenseMatrix::ncols).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &DenseMatrix> {
        self.dims.iter()
    }

    pub fn into_inner(self) -> Vec<DenseMatrix> {
        self.dims
    }

    /// Zero matrices with the same shapes.
    pub fn zeros_like(&self) -> Self {
        Self { dims: self.dims.iter().map(|h| DenseMatrix::zeros(h.nrows(), h.ncols())).collect() }
    }

    /// Rows of dimensions `dims` stacked in canonical order.
    pub fn stack(&self, dims: core::ops::Range<usize>, width: usize) -> Result<DenseMatrix> {
        if dims.is_empty() {
            return Ok(DenseMatrix::zeros(0, width));
        }
        let blocks: Vec<&DenseMatrix> = self.dims[dims].iter().collect();
        DenseMatrix::vstack(&blocks)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitScheme {
    /// `[|cofacets|, |facets|, dim, 1]`, each column divided by its maximum.
    Structural,
    /// A single column of ones.
    Ones,
    Given(Vec<DenseMatrix>),
}

/// Width of the structural feature rows.
pub const STRUCTURAL_WIDTH: usize = 4;

/// Unnormalized structural rows.
pub fn structural_features_raw(x: &SimplicialComplex) -> FeatureSet {
    let dims = (0..=x.dim())
        .map(|m| {
            let mut h = DenseMatrix::zeros(x.count(m), STRUCTURAL_WIDTH);
            for (row, g) in x.range(m).enumerate() {
                let r = h.row_mut(row);
                r[0] = x.cofacet_ids(g).len() as f64;
                r[1] = x.facet_ids(g).len() as f64;
                r[2] = m as f64;
                r[3] = 1.0;
            }
            h
        })
        .collect();
    FeatureSet { dims }
}

pub fn init_features(x: &SimplicialComplex, scheme: InitScheme) -> Result<FeatureSet> {
    match scheme {
        InitScheme::Structural => {
            let mut raw = structural_features_raw(x);
            let mut maxima = [0.0_f64; STRUCTURAL_WIDTH];
            for h in raw.iter() {
                for row in h.rows() {
                    for (m, v) in maxima.iter_mut().zip(row) {
                        *m = m.max(*v);
                    }
                }
            }
            for h in raw.dims.iter_mut() {
                for i in 0..h.nrows() {
                    for (v, m) in h.row_mut(i).iter_mut().zip(maxima) {
                        if m > 0.0 {
                            *v /= m;
                        }
                    }
                }
            }
            Ok(raw)
        }
        InitScheme::Ones => Ok(FeatureSet {
            dims: (0..=x.dim()).map(|m| DenseMatrix::filled(x.count(m), 1, 1.0)).collect(),
        }),
        InitScheme::Given(dims) => FeatureSet::new(x, dims),
    }
}
