use alloc::vec;
use alloc::vec::Vec;

use rand::Rng as _;

use crate::autoencoder::LossKind;
use crate::complex::SparseMatrix;
use crate::error::{Error, Result};
use crate::numerics::{dot, ln, DenseMatrix, Rng};

/// Training pairs for one dimension `k`, as local ordinals into `Z_k`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PairBatch {
    /// `(a, c, sim(a, c))` over unordered adjacent pairs.
    pub positives: Vec<(usize, usize, f64)>,
    /// Non-adjacent pairs with target similarity 0.
    pub negatives: Vec<(usize, usize)>,
    /// `(center, context, p̂(context | center))`.
    pub context: Vec<(usize, usize, f64)>,
}

/// Unordered adjacent pairs `a < c` with `sim = A^k_adj(a, c)`.
pub fn positive_pairs(adjacency: &SparseMatrix) -> Vec<(usize, usize, f64)> {
    adjacency.iter().filter(|&(a, c, _)| a < c).map(|(a, c, w)| (a, c, f64::from(w))).collect()
}

/// `ratio` negatives per positive: the positive's first endpoint paired with a
/// uniformly drawn simplex that is neither itself nor adjacent to it.
/// Endpoints adjacent to everything contribute no negatives.
pub fn sample_negatives(
    adjacency: &SparseMatrix,
    positives: &[(usize, usize, f64)],
    ratio: usize,
    rng: &mut Rng,
) -> Vec<(usize, usize)> {
    let n = adjacency.nrows();
    let degree: Vec<usize> = (0..n).map(|i| adjacency.row(i).count()).collect();
    let mut out = Vec::with_capacity(positives.len() * ratio);
    for &(a, _, _) in positives {
        if degree[a] + 1 >= n {
            continue;
        }
        for _ in 0..ratio {
            loop {
                let b = rng.gen_range(0..n);
                if b != a && adjacency.get(a, b) == 0 {
                    out.push((a, b));
                    break;
                }
            }
        }
    }
    out
}

/// Loss and `dL/dZ` for one dimension.
///
/// - `LapProduct`: `Σ sim · ‖z_a − z_c‖²` over positives.
/// - `SquaredError`: `Σ (z_aᵀz_c − sim)²` over positives plus `Σ (z_aᵀz_b)²` over negatives.
/// - `NegLogLikelihood`: `−Σ p̂ · log softmax_b(z_centerᵀ z_b)[context]` with the
///   exact normalization over every row of `Z`.
pub fn ae_loss(kind: LossKind, z: &DenseMatrix, batch: &PairBatch) -> Result<(f64, DenseMatrix)> {
    let n = z.nrows();
    let check = |i: usize| {
        if i < n {
            Ok(())
        } else {
            Err(Error::InvalidConfig(alloc::format!("pair index {i} out of range for {n} simplices")))
        }
    };
    let mut grad = DenseMatrix::zeros(n, z.ncols());
    let mut value = 0.0;
    match kind {
        LossKind::LapProduct => {
            for &(a, c, sim) in &batch.positives {
                check(a)?;
                check(c)?;
                for t in 0..z.ncols() {
                    let diff = z.get(a, t) - z.get(c, t);
                    value += sim * diff * diff;
                    grad.row_mut(a)[t] += 2.0 * sim * diff;
                    grad.row_mut(c)[t] -= 2.0 * sim * diff;
                }
            }
        }
        LossKind::SquaredError => {
            let targets = batch.positives.iter().copied().chain(batch.negatives.iter().map(|&(a, b)| (a, b, 0.0)));
            for (a, c, sim) in targets {
                check(a)?;
                check(c)?;
                let r = dot(z.row(a), z.row(c)) - sim;
                value += r * r;
                for t in 0..z.ncols() {
                    let (za, zc) = (z.get(a, t), z.get(c, t));
                    grad.row_mut(a)[t] += 2.0 * r * zc;
                    grad.row_mut(c)[t] += 2.0 * r * za;
                }
            }
        }
        LossKind::NegLogLikelihood => {
            if batch.context.is_empty() {
                return Ok((0.0, grad));
            }
            let scores = z.matmul_t(z)?;
            let probs = scores.row_softmax();
            // dL/dS, accumulated per center row.
            let mut ds = DenseMatrix::zeros(n, n);
            let mut center_weight = vec![0.0; n];
            for &(c, a, w) in &batch.context {
                check(c)?;
                check(a)?;
                value -= w * ln(probs.get(c, a).max(f64::MIN_POSITIVE));
                let row = ds.row_mut(c);
                row[a] -= w;
                center_weight[c] += w;
            }
            for (c, &w) in center_weight.iter().enumerate() {
                if w != 0.0 {
                    let p = probs.row(c).to_vec();
                    for (d, p) in ds.row_mut(c).iter_mut().zip(p) {
                        *d += w * p;
                    }
                }
            }
            let sym = ds.add(&ds.transpose())?;
            grad = sym.matmul(z)?;
        }
    }
    Ok((value, grad))
}
