use alloc::vec::Vec;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::numerics::{DenseMatrix, RngState};

/// Which coordinates a gradient check perturbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordinateSample {
    All,
    /// At most `per_tensor` coordinates per tensor, drawn without replacement.
    Random { per_tensor: usize, seed: u64 },
}

/// Compares `analytic` against central differences of `loss` around `params`.
///
/// Returns `max |analytic - numeric| / max(1e-8, |numeric|)` over the checked
/// coordinates. `loss` must be deterministic.
pub fn finite_difference_check<F>(
    mut loss: F,
    params: &[DenseMatrix],
    analytic: &[DenseMatrix],
    epsilon: f64,
    sample: CoordinateSample,
) -> Result<f64>
where
    F: FnMut(&[DenseMatrix]) -> Result<f64>,
{
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidConfig(alloc::format!("epsilon must be positive, got {epsilon}")));
    }
    if params.len() != analytic.len() {
        return Err(Error::shape("finite_difference_check", (params.len(), 1), (analytic.len(), 1)));
    }
    for (p, g) in params.iter().zip(analytic) {
        if p.shape() != g.shape() {
            return Err(Error::shape("finite_difference_check", p.shape(), g.shape()));
        }
    }
    let base = loss(params)?;
    if !base.is_finite() {
        return Err(Error::NonFiniteObjective);
    }

    let mut work: Vec<DenseMatrix> = params.to_vec();
    let mut worst = 0.0_f64;
    for t in 0..params.len() {
        let len = params[t].as_slice().len();
        let coords: Vec<usize> = match sample {
            CoordinateSample::All => (0..len).collect(),
            CoordinateSample::Random { per_tensor, seed } => {
                let mut rng = RngState::new(seed).stream(t as u64);
                let mut idx: Vec<usize> = (0..len).collect();
                let take = per_tensor.min(len);
                for i in 0..take {
                    let j = rng.gen_range(i..len);
                    idx.swap(i, j);
                }
                idx.truncate(take);
                idx
            }
        };
        for c in coords {
            let original = work[t].as_slice()[c];
            work[t].as_mut_slice()[c] = original + epsilon;
            let plus = loss(&work)?;
            work[t].as_mut_slice()[c] = original - epsilon;
            let minus = loss(&work)?;
            work[t].as_mut_slice()[c] = original;
            if !plus.is_finite() || !minus.is_finite() {
                return Err(Error::NonFiniteObjective);
            }
            let numeric = (plus - minus) / (2.0 * epsilon);
            let exact = analytic[t].as_slice()[c];
            let rel = (exact - numeric).abs() / f64::max(1e-8, numeric.abs());
            worst = worst.max(rel);
        }
    }
    Ok(worst)
}
