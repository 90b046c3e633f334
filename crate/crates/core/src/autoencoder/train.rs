use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::autoencoder::{
    ae_loss, empirical_similarity, laplacian_eigenmaps_solve, positive_pairs, random_walk_corpus, sample_negatives,
    AutoencoderConfig, EncoderKind, Method, PairBatch,
};
use crate::autoencoder::eigenmaps::eigenmaps_objective;
use crate::complex::{SimplicialComplex, SparseMatrix};
use crate::error::{Error, Result};
use crate::message_passing::{init_features, CxnEncoder, CxnParams, FeatureSet, InitScheme, Scheme};
use crate::numerics::{glorot_uniform, streams, DenseMatrix, Optimizer, Parameters, RngState};

/// Loss values recorded at the start of an epoch, before the update.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    /// `(k, L_k)` for every trained dimension.
    pub per_dim: Vec<(usize, f64)>,
    pub total: f64,
}

/// Trainable state after training.
#[derive(Debug, Clone, PartialEq)]
pub enum EncoderState {
    Table(DenseMatrix),
    Cxn(CxnParams),
    /// Closed-form solution; nothing to store beyond the embeddings.
    Eigenmaps,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedAutoencoder {
    /// `U_X`: rows of `embedded_dims` in canonical order.
    pub embeddings: DenseMatrix,
    pub embedded_dims: Range<usize>,
    pub counts: Vec<usize>,
    pub log: Vec<EpochRecord>,
    pub state: EncoderState,
}

impl TrainedAutoencoder {
    /// `Z_k`, or `None` when `k` is not embedded.
    pub fn block(&self, k: usize) -> Option<DenseMatrix> {
        dimension_rows(&self.counts, &self.embedded_dims, k).map(|r| self.embeddings.row_range(r.start, r.end))
    }
}

/// Row range of dimension `k` inside a table covering `embedded`.
pub fn dimension_rows(counts: &[usize], embedded: &Range<usize>, k: usize) -> Option<Range<usize>> {
    if !embedded.contains(&k) {
        return None;
    }
    let start: usize = counts[embedded.start..k].iter().sum();
    Some(start..start + counts[k])
}

/// Simplex set the encoder embeds.
pub fn embedded_dims(encoder: EncoderKind, n: usize) -> Range<usize> {
    match encoder {
        EncoderKind::ShallowTable => Scheme::Amps.embedded_dims(n),
        EncoderKind::Cxn { scheme, .. } => scheme.embedded_dims(n),
    }
}

/// Dimensions whose `L_k` enters the objective: `0..n` intersected with the
/// embedded set.
pub fn loss_dims(encoder: EncoderKind, n: usize) -> Range<usize> {
    let e = embedded_dims(encoder, n);
    e.start..e.end.min(n)
}

enum Encoder {
    Table(DenseMatrix),
    Cxn { encoder: CxnEncoder, input: FeatureSet, params: CxnParams },
}

/// Trains per-simplex embeddings for one complex.
///
/// The eigenmaps row is solved in closed form for every `k < n`. The other
/// rows run full-batch gradient descent on `Σ_k L_k`; inner-product training
/// redraws its negatives every epoch.
pub fn train_autoencoder(x: &SimplicialComplex, cfg: &AutoencoderConfig) -> Result<TrainedAutoencoder> {
    cfg.validate()?;
    let n = x.dim();
    let embedded = embedded_dims(cfg.encoder, n);
    let dims = loss_dims(cfg.encoder, n);
    let counts = x.counts();
    let adjacency: Vec<SparseMatrix> = dims.clone().map(|k| x.per_dim_adjacency(k)).collect::<Result<_>>()?;
    for (k, a) in dims.clone().zip(&adjacency) {
        if a.nnz() == 0 {
            log::warn!("no adjacent {k}-simplices; L_{k} is identically zero");
        }
    }

    if cfg.method == Method::LaplacianEigenmaps {
        return solve_eigenmaps(x, cfg, &adjacency, embedded, counts);
    }

    let seed = RngState::new(cfg.seed);
    let mut init_rng = seed.stream(streams::id(streams::PARAM_INIT, 0));
    let mut negative_rng = seed.stream(streams::id(streams::NEGATIVES, 0));
    let mut encoder = match cfg.encoder {
        EncoderKind::ShallowTable => {
            let blocks: Vec<DenseMatrix> = embedded.clone().map(|k| glorot_uniform(counts[k], cfg.dim, &mut init_rng)).collect();
            Encoder::Table(stack_blocks(&blocks, cfg.dim)?)
        }
        EncoderKind::Cxn { scheme, layers } => {
            let input = init_features(x, InitScheme::Structural)?;
            let params = CxnParams::init(x, scheme, &input.widths(), cfg.dim, layers, &mut init_rng)?;
            Encoder::Cxn { encoder: CxnEncoder::new(x, scheme)?, input, params }
        }
    };

    let positives: Vec<Vec<(usize, usize, f64)>> = adjacency.iter().map(positive_pairs).collect();
    let contexts: Vec<Vec<(usize, usize, f64)>> = match cfg.method {
        Method::RandomWalk(rw) => dims
            .clone()
            .map(|k| {
                let corpus = random_walk_corpus(x, k, &rw)?;
                Ok(empirical_similarity(&corpus, rw.window, counts[k]).weighted_pairs())
            })
            .collect::<Result<_>>()?,
        _ => vec![Vec::new(); adjacency.len()],
    };

    let mut optimizer = Optimizer::new(cfg.optimizer);
    let mut log = Vec::with_capacity(cfg.epochs);
    let loss_kind = cfg.method.loss();
    for epoch in 0..cfg.epochs {
        let (u, pass) = match &encoder {
            Encoder::Table(t) => (t.clone(), None),
            Encoder::Cxn { encoder, input, params } => {
                let pass = encoder.forward(input, params)?;
                (encoder.embeddings(&pass, params)?, Some(pass))
            }
        };
        let mut grad_u = DenseMatrix::zeros(u.nrows(), u.ncols());
        let mut per_dim = Vec::with_capacity(adjacency.len());
        let mut total = 0.0;
        for (i, k) in dims.clone().enumerate() {
            let rows = dimension_rows(&counts, &embedded, k).expect("loss dims are embedded");
            let z = u.row_range(rows.start, rows.end);
            let negatives = if cfg.method == Method::InnerProduct {
                sample_negatives(&adjacency[i], &positives[i], cfg.negative_ratio, &mut negative_rng)
            } else {
                Vec::new()
            };
            let batch = PairBatch { positives: positives[i].clone(), negatives, context: contexts[i].clone() };
            let (value, grad) = ae_loss(loss_kind, &z, &batch)?;
            for (r, row) in rows.clone().zip(grad.rows()) {
                grad_u.row_mut(r).copy_from_slice(row);
            }
            per_dim.push((k, value));
            total += value;
        }
        if !total.is_finite() {
            return Err(Error::Diverged { epoch });
        }
        log::debug!("epoch {epoch}: loss {total}");
        log.push(EpochRecord { epoch, per_dim, total });

        match &mut encoder {
            Encoder::Table(t) => optimizer.step(&mut [t], &[grad_u])?,
            Encoder::Cxn { encoder, params, .. } => {
                let grads = encoder.backward(pass.as_ref().expect("cxn pass"), params, &grad_u)?;
                optimizer.step(&mut params.tensors_mut(), &grads.cloned_tensors())?;
            }
        }
    }

    let (embeddings, state) = match encoder {
        Encoder::Table(t) => (t.clone(), EncoderState::Table(t)),
        Encoder::Cxn { encoder, input, params } => {
            let pass = encoder.forward(&input, &params)?;
            (encoder.embeddings(&pass, &params)?, EncoderState::Cxn(params))
        }
    };
    if embeddings.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::Diverged { epoch: cfg.epochs });
    }
    Ok(TrainedAutoencoder { embeddings, embedded_dims: embedded, counts, log, state })
}

fn solve_eigenmaps(
    x: &SimplicialComplex,
    cfg: &AutoencoderConfig,
    adjacency: &[SparseMatrix],
    embedded: Range<usize>,
    counts: Vec<usize>,
) -> Result<TrainedAutoencoder> {
    let mut blocks = Vec::with_capacity(adjacency.len());
    let mut per_dim = Vec::with_capacity(adjacency.len());
    for (k, a) in (0..x.dim()).zip(adjacency) {
        let z = laplacian_eigenmaps_solve(a, cfg.dim)?;
        per_dim.push((k, eigenmaps_objective(a, &z)));
        blocks.push(z);
    }
    let embeddings = stack_blocks(&blocks, cfg.dim)?;
    let total = per_dim.iter().map(|p| p.1).sum();
    Ok(TrainedAutoencoder {
        embeddings,
        embedded_dims: embedded,
        counts,
        log: vec![EpochRecord { epoch: 0, per_dim, total }],
        state: EncoderState::Eigenmaps,
    })
}

/// Stacks blocks, keeping the embedding width when there are none.
fn stack_blocks(blocks: &[DenseMatrix], width: usize) -> Result<DenseMatrix> {
    if blocks.is_empty() {
        return Ok(DenseMatrix::zeros(0, width));
    }
    DenseMatrix::vstack(&blocks.iter().collect::<Vec<_>>())
}

/// Area under the ROC curve of `pos` against `neg`, ties counted as one half.
pub fn auc(pos: &[f64], neg: &[f64]) -> Option<f64> {
    if pos.is_empty() || neg.is_empty() {
        return None;
    }
    let mut all: Vec<(f64, bool)> = pos.iter().map(|&v| (v, true)).chain(neg.iter().map(|&v| (v, false))).collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Mann–Whitney U with average ranks for ties.
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        while j < all.len() && all[j].0 == all[i].0 {
            j += 1;
        }
        let avg = (i + 1 + j) as f64 / 2.0;
        rank_sum += avg * all[i..j].iter().filter(|e| e.1).count() as f64;
        i = j;
    }
    let np = pos.len() as f64;
    let nn = neg.len() as f64;
    Some((rank_sum - np * (np + 1.0) / 2.0) / (np * nn))
}

/// Adjacency-reconstruction AUC: inner-product scores of adjacent same-dimension
/// pairs ranked against every non-adjacent same-dimension pair, pooled over `dims`.
pub fn reconstruction_auc(
    x: &SimplicialComplex,
    embeddings: &DenseMatrix,
    embedded: Range<usize>,
    dims: &[usize],
) -> Result<f64> {
    let counts = x.counts();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for &k in dims {
        let rows = dimension_rows(&counts, &embedded, k)
            .ok_or_else(|| Error::InvalidConfig(alloc::format!("dimension {k} is not embedded")))?;
        let a = x.per_dim_adjacency(k)?;
        let z = embeddings.row_range(rows.start, rows.end);
        for p in 0..z.nrows() {
            for q in (p + 1)..z.nrows() {
                let s = crate::numerics::dot(z.row(p), z.row(q));
                if a.get(p, q) > 0 {
                    pos.push(s);
                } else {
                    neg.push(s);
                }
            }
        }
    }
    auc(&pos, &neg).ok_or_else(|| Error::InvalidConfig("AUC needs both adjacent and non-adjacent pairs".into()))
}
