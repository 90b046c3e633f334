//! Attention pooling of an embedding table into one complex-level vector,
//! `h_X = Σ_m σ(z_mᵀ relu(W Σ_n z_n)) z_m`, and the two objectives that train
//! the shared matrix `W`: stress against a distance matrix, and a triplet hinge.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{dot, glorot_uniform, sigmoid, sqrt, squared_distance, streams, DenseMatrix, Optimizer, OptimizerConfig, RngState};

/// `h_X` with the attention weights that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexEmbedding {
    pub h: Vec<f64>,
    pub weights: Vec<f64>,
}

fn check_width(u: &DenseMatrix, w: &DenseMatrix) -> Result<()> {
    if w.nrows() != w.ncols() {
        return Err(Error::shape("pool", w.shape(), (w.nrows(), w.nrows())));
    }
    if u.ncols() != w.nrows() {
        return Err(Error::shape("pool", u.shape(), w.shape()));
    }
    if u.nrows() == 0 {
        return Err(Error::InvalidConfig("cannot pool an empty embedding table".into()));
    }
    Ok(())
}

struct Forward {
    sum: Vec<f64>,
    pre: Vec<f64>,
    weights: Vec<f64>,
}

fn forward(u: &DenseMatrix, w: &DenseMatrix) -> Result<Forward> {
    check_width(u, w)?;
    let sum = u.column_sums();
    let pre: Vec<f64> = w.rows().map(|row| dot(row, &sum)).collect();
    let context: Vec<f64> = pre.iter().map(|&v| v.max(0.0)).collect();
    let weights = u.rows().map(|z| sigmoid(dot(z, &context))).collect();
    Ok(Forward { sum, pre, weights })
}

/// `w_m = σ(z_mᵀ relu(W Σ_n z_n))`, each strictly inside `(0, 1)` for finite inputs.
pub fn attention_weights(u: &DenseMatrix, w: &DenseMatrix) -> Result<Vec<f64>> {
    Ok(forward(u, w)?.weights)
}

pub fn pool(u: &DenseMatrix, w: &DenseMatrix) -> Result<ComplexEmbedding> {
    let f = forward(u, w)?;
    let mut h = vec![0.0; u.ncols()];
    for (z, &wm) in u.rows().zip(&f.weights) {
        for (hv, zv) in h.iter_mut().zip(z) {
            *hv += wm * zv;
        }
    }
    Ok(ComplexEmbedding { h, weights: f.weights })
}

/// `dL/dW` given `dL/dh_X`.
pub fn pool_backward(u: &DenseMatrix, w: &DenseMatrix, grad_h: &[f64]) -> Result<DenseMatrix> {
    let f = forward(u, w)?;
    if grad_h.len() != u.ncols() {
        return Err(Error::shape("pool_backward", (1, grad_h.len()), (1, u.ncols())));
    }
    let d = u.ncols();
    let mut grad_context = vec![0.0; d];
    for (z, &wm) in u.rows().zip(&f.weights) {
        let dt = dot(z, grad_h) * wm * (1.0 - wm);
        for (g, zv) in grad_context.iter_mut().zip(z) {
            *g += dt * zv;
        }
    }
    let mut grad_w = DenseMatrix::zeros(d, d);
    for i in 0..d {
        if f.pre[i] > 0.0 {
            for (j, s) in f.sum.iter().enumerate() {
                grad_w.set(i, j, grad_context[i] * s);
            }
        }
    }
    Ok(grad_w)
}

/// Checks that `d` is an `m x m` symmetric matrix with zero diagonal.
pub fn validate_distances(d: &DenseMatrix, m: usize) -> Result<()> {
    if d.shape() != (m, m) {
        return Err(Error::InvalidDistanceMatrix(format!("expected {m}x{m}, got {}x{}", d.nrows(), d.ncols())));
    }
    for i in 0..m {
        if d.get(i, i) != 0.0 {
            return Err(Error::InvalidDistanceMatrix(format!("nonzero diagonal at {i}")));
        }
        for j in (i + 1)..m {
            if d.get(i, j) != d.get(j, i) {
                return Err(Error::InvalidDistanceMatrix(format!("asymmetric at ({i}, {j})")));
            }
            if d.get(i, j) < 0.0 {
                return Err(Error::InvalidDistanceMatrix(format!("negative entry at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// `Σ_i Σ_j (‖h_i − h_j‖ − d_ij)²` over ordered pairs, and `dL/dh_i`.
/// Coincident embeddings contribute a zero subgradient.
pub fn stress_loss(embeddings: &[Vec<f64>], d: &DenseMatrix) -> Result<(f64, Vec<Vec<f64>>)> {
    let m = embeddings.len();
    validate_distances(d, m)?;
    let width = embeddings.first().map_or(0, Vec::len);
    if embeddings.iter().any(|h| h.len() != width) {
        return Err(Error::DimensionMismatch("embeddings differ in width".into()));
    }
    let mut value = 0.0;
    let mut grads = vec![vec![0.0; width]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            let dist = sqrt(squared_distance(&embeddings[i], &embeddings[j]));
            let r = dist - d.get(i, j);
            // (i, j) and (j, i) contribute equally.
            value += 2.0 * r * r;
            if dist > 0.0 {
                let scale = 4.0 * r / dist;
                for t in 0..width {
                    let g = scale * (embeddings[i][t] - embeddings[j][t]);
                    grads[i][t] += g;
                    grads[j][t] -= g;
                }
            }
        }
    }
    Ok((value, grads))
}

/// `max(0, ‖h − h⁺‖² − ‖h − h⁻‖² + margin)` with gradients for `(h, h⁺, h⁻)`.
pub fn triplet_loss(
    anchor: &[f64],
    positive: &[f64],
    negative: &[f64],
    margin: f64,
) -> Result<(f64, [Vec<f64>; 3])> {
    let d = anchor.len();
    if positive.len() != d || negative.len() != d {
        return Err(Error::DimensionMismatch("triplet members differ in width".into()));
    }
    let value = squared_distance(anchor, positive) - squared_distance(anchor, negative) + margin;
    if value <= 0.0 {
        return Ok((0.0, [vec![0.0; d], vec![0.0; d], vec![0.0; d]]));
    }
    let ga = (0..d).map(|t| 2.0 * (negative[t] - positive[t])).collect();
    let gp = (0..d).map(|t| -2.0 * (anchor[t] - positive[t])).collect();
    let gn = (0..d).map(|t| 2.0 * (anchor[t] - negative[t])).collect();
    Ok((value, [ga, gp, gn]))
}

/// Every `(anchor, positive, negative)` with `label[a] = label[p]`, `a ≠ p`,
/// `label[n] ≠ label[a]`.
pub fn mine_triplets(labels: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..labels.len() {
        for p in 0..labels.len() {
            if p == a || labels[p] != labels[a] {
                continue;
            }
            for (n, &ln) in labels.iter().enumerate() {
                if ln != labels[a] {
                    out.push((a, p, n));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PoolingMode {
    Stress,
    Triplet { margin: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoolingConfig {
    pub mode: PoolingMode,
    pub epochs: usize,
    pub optimizer: OptimizerConfig,
    pub seed: u64,
}

impl PoolingConfig {
    pub fn new(mode: PoolingMode) -> Self {
        Self { mode, epochs: 300, optimizer: OptimizerConfig::adam(0.01), seed: 0 }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum PoolingTarget<'a> {
    Distances(&'a DenseMatrix),
    Labels(&'a [usize]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoolingModel {
    pub w: DenseMatrix,
    pub mode: PoolingMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedPooling {
    pub model: PoolingModel,
    pub embeddings: Vec<ComplexEmbedding>,
    /// Objective before each update, followed by the value after training.
    pub log: Vec<f64>,
}

impl TrainedPooling {
    pub fn initial_loss(&self) -> f64 {
        self.log[0]
    }

    pub fn final_loss(&self) -> f64 {
        *self.log.last().expect("log is never empty")
    }
}

/// Objective and `dL/dW` over a whole dataset.
pub fn pooling_objective(
    dataset: &[DenseMatrix],
    w: &DenseMatrix,
    mode: PoolingMode,
    target: PoolingTarget<'_>,
) -> Result<(f64, DenseMatrix)> {
    let pooled: Vec<ComplexEmbedding> = dataset.iter().map(|u| pool(u, w)).collect::<Result<_>>()?;
    let hs: Vec<Vec<f64>> = pooled.into_iter().map(|e| e.h).collect();
    let (value, grad_h) = match (mode, target) {
        (PoolingMode::Stress, PoolingTarget::Distances(d)) => stress_loss(&hs, d)?,
        (PoolingMode::Triplet { margin }, PoolingTarget::Labels(labels)) => {
            if labels.len() != hs.len() {
                return Err(Error::MissingLabels(format!("{} labels for {} complexes", labels.len(), hs.len())));
            }
            let mut value = 0.0;
            let mut grads = vec![vec![0.0; w.nrows()]; hs.len()];
            for (a, p, n) in mine_triplets(labels) {
                let (v, [ga, gp, gn]) = triplet_loss(&hs[a], &hs[p], &hs[n], margin)?;
                if v > 0.0 {
                    value += v;
                    for t in 0..ga.len() {
                        grads[a][t] += ga[t];
                        grads[p][t] += gp[t];
                        grads[n][t] += gn[t];
                    }
                }
            }
            (value, grads)
        }
        (PoolingMode::Stress, _) => return Err(Error::InvalidConfig("stress mode needs a distance matrix".into())),
        (PoolingMode::Triplet { .. }, _) => return Err(Error::MissingLabels("triplet mode needs class labels".into())),
    };
    let mut grad_w = DenseMatrix::zeros(w.nrows(), w.ncols());
    for (u, g) in dataset.iter().zip(&grad_h) {
        if g.iter().any(|&v| v != 0.0) {
            grad_w.add_assign(&pool_backward(u, w, g)?)?;
        }
    }
    Ok((value, grad_w))
}

/// Fraction of mined triplets whose hinge is zero.
pub fn triplet_satisfaction(embeddings: &[Vec<f64>], labels: &[usize], margin: f64) -> Result<f64> {
    let triplets = mine_triplets(labels);
    if triplets.is_empty() {
        return Err(Error::MissingLabels("no valid triplets: need two classes and a class with two members".into()));
    }
    let mut satisfied = 0usize;
    for &(a, p, n) in &triplets {
        if triplet_loss(&embeddings[a], &embeddings[p], &embeddings[n], margin)?.0 == 0.0 {
            satisfied += 1;
        }
    }
    Ok(satisfied as f64 / triplets.len() as f64)
}

/// Trains `W` with the embedding tables frozen.
pub fn train_pooling(dataset: &[DenseMatrix], target: PoolingTarget<'_>, cfg: &PoolingConfig) -> Result<TrainedPooling> {
    let d = dataset.first().map(DenseMatrix::ncols).ok_or(Error::EmptyComplex)?;
    if let Some(bad) = dataset.iter().position(|u| u.ncols() != d) {
        return Err(Error::DimensionMismatch(format!("complex {bad} has width {}, expected {d}", dataset[bad].ncols())));
    }
    if let PoolingMode::Triplet { margin } = cfg.mode {
        if !(margin >= 0.0 && margin.is_finite()) {
            return Err(Error::InvalidConfig("margin must be non-negative".into()));
        }
    }
    let mut w = glorot_uniform(d, d, &mut RngState::new(cfg.seed).stream(streams::id(streams::POOL_INIT, 0)));
    let mut optimizer = Optimizer::new(cfg.optimizer);
    let mut log = Vec::with_capacity(cfg.epochs + 1);
    for epoch in 0..cfg.epochs {
        let (value, grad) = pooling_objective(dataset, &w, cfg.mode, target)?;
        if !value.is_finite() {
            return Err(Error::Diverged { epoch });
        }
        log::debug!("pool epoch {epoch}: loss {value}");
        log.push(value);
        optimizer.step(&mut [&mut w], &[grad])?;
    }
    let (value, _) = pooling_objective(dataset, &w, cfg.mode, target)?;
    if !value.is_finite() {
        return Err(Error::Diverged { epoch: cfg.epochs });
    }
    log.push(value);
    let embeddings = dataset.iter().map(|u| pool(u, &w)).collect::<Result<_>>()?;
    Ok(TrainedPooling { model: PoolingModel { w, mode: cfg.mode }, embeddings, log })
}
