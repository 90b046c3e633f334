//! Complex-to-complex distances: a discretized Hausdorff distance between
//! point samples of the underlying polyhedra.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng as _;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::numerics::{ln, sqrt, squared_distance, streams, DenseMatrix, RngState};
use crate::pooling::validate_distances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SamplingConfig {
    /// Uniform barycentric samples per maximal simplex; 0 keeps vertices only.
    pub points_per_top_simplex: usize,
    pub seed: u64,
}

/// Symmetric, non-negative, zero-diagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    values: DenseMatrix,
}

impl DistanceMatrix {
    pub fn new(values: DenseMatrix) -> Result<Self> {
        validate_distances(&values, values.nrows())?;
        Ok(Self { values })
    }

    pub fn size(&self) -> usize {
        self.values.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values.get(i, j)
    }

    pub fn as_matrix(&self) -> &DenseMatrix {
        &self.values
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.values
    }
}

/// Vertices followed by the barycentric samples, maximal simplex by maximal
/// simplex. The set depends only on the complex and `cfg`.
pub fn sample_points(x: &SimplicialComplex, cfg: &SamplingConfig) -> Result<Vec<Vec<f64>>> {
    let coords = x.coordinates().ok_or(Error::CoordinatesRequired)?;
    let mut points: Vec<Vec<f64>> = x
        .vertex_ids()
        .map(|v| coords.point(v).map(<[f64]>::to_vec).ok_or(Error::CoordinatesRequired))
        .collect::<Result<_>>()?;
    if cfg.points_per_top_simplex == 0 {
        return Ok(points);
    }
    let mut rng = RngState::new(cfg.seed).stream(streams::id(streams::POINT_SAMPLES, 0));
    for simplex in x.maximal_simplices() {
        let corners: Vec<&[f64]> = simplex.vertices().iter().map(|&v| coords.point(v).expect("checked above")).collect();
        for _ in 0..cfg.points_per_top_simplex {
            // Normalized exponentials are uniform on the simplex.
            let raw: Vec<f64> = corners.iter().map(|_| -ln(1.0 - rng.gen::<f64>())).collect();
            let total: f64 = raw.iter().sum();
            let mut p = alloc::vec![0.0; coords.ambient_dim()];
            for (corner, b) in corners.iter().zip(&raw) {
                for (pv, cv) in p.iter_mut().zip(corner.iter()) {
                    *pv += b / total * cv;
                }
            }
            points.push(p);
        }
    }
    Ok(points)
}

/// `max_{p ∈ P} min_{q ∈ Q} ‖p − q‖`.
pub fn directed_hausdorff(p: &[Vec<f64>], q: &[Vec<f64>]) -> f64 {
    let worst = p
        .iter()
        .map(|a| q.iter().map(|b| squared_distance(a, b)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    sqrt(worst)
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff_points(p: &[Vec<f64>], q: &[Vec<f64>]) -> f64 {
    directed_hausdorff(p, q).max(directed_hausdorff(q, p))
}

pub fn hausdorff(x: &SimplicialComplex, y: &SimplicialComplex, cfg: &SamplingConfig) -> Result<f64> {
    let (cx, cy) = match (x.coordinates(), y.coordinates()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::CoordinatesRequired),
    };
    if cx.ambient_dim() != cy.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions {} and {} differ",
            cx.ambient_dim(),
            cy.ambient_dim()
        )));
    }
    Ok(hausdorff_points(&sample_points(x, cfg)?, &sample_points(y, cfg)?))
}

/// Pairwise Hausdorff distances; each unordered pair is computed once.
pub fn distance_matrix(dataset: &[SimplicialComplex], cfg: &SamplingConfig) -> Result<DistanceMatrix> {
    let ambient = dataset.first().and_then(|x| x.coordinates()).map(|c| c.ambient_dim());
    let mut samples = Vec::with_capacity(dataset.len());
    for (i, x) in dataset.iter().enumerate() {
        let c = x.coordinates().ok_or(Error::CoordinatesRequired)?;
        if Some(c.ambient_dim()) != ambient {
            return Err(Error::DimensionMismatch(format!("complex {i} has a different ambient dimension")));
        }
        samples.push(sample_points(x, cfg)?);
    }
    distance_matrix_from_points(&samples)
}

pub fn distance_matrix_from_points(samples: &[Vec<Vec<f64>>]) -> Result<DistanceMatrix> {
    let m = samples.len();
    let mut values = DenseMatrix::zeros(m, m);
    for i in 0..m {
        for j in (i + 1)..m {
            let d = hausdorff_points(&samples[i], &samples[j]);
            values.set(i, j, d);
            values.set(j, i, d);
        }
    }
    DistanceMatrix::new(values)
}
