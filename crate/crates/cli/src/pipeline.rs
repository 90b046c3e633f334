//! Dataset-level stages. Per-complex work fans out over rayon; results are
//! collected in dataset order, so outputs do not depend on scheduling.

use rayon::prelude::*;
use simplex_embed_core::autoencoder::{loss_dims, reconstruction_auc, train_autoencoder, TrainedAutoencoder};
use simplex_embed_core::metrics::{distance_matrix_from_points, sample_points, DistanceMatrix};
use simplex_embed_core::numerics::{sqrt, squared_distance};
use simplex_embed_core::pooling::{stress_loss, train_pooling, triplet_satisfaction, PoolingMode, PoolingTarget, TrainedPooling};
use simplex_embed_core::DenseMatrix;

use crate::config::RunConfig;
use crate::dataset::Dataset;
use crate::error::{CliError, Result};

pub fn train_embeddings(dataset: &Dataset, cfg: &RunConfig) -> Result<Vec<TrainedAutoencoder>> {
    let ae = cfg.autoencoder()?;
    dataset
        .entries
        .par_iter()
        .map(|e| {
            train_autoencoder(&e.complex, &ae)
                .map_err(|err| CliError::Config(format!("training `{}` failed: {err}", e.name())))
        })
        .collect()
}

pub fn compute_distances(dataset: &Dataset, cfg: &RunConfig) -> Result<DistanceMatrix> {
    let sampling = cfg.sampling();
    let ambient: Vec<Option<usize>> =
        dataset.entries.iter().map(|e| e.complex.coordinates().map(|c| c.ambient_dim())).collect();
    if ambient.windows(2).any(|w| w[0] != w[1]) {
        return Err(simplex_embed_core::Error::DimensionMismatch("complexes differ in ambient dimension".into()).into());
    }
    let samples: Vec<Vec<Vec<f64>>> =
        dataset.entries.par_iter().map(|e| sample_points(&e.complex, &sampling)).collect::<Result<_, _>>()?;
    Ok(distance_matrix_from_points(&samples)?)
}

pub fn train_pool(tables: &[DenseMatrix], dataset: &Dataset, distances: Option<&DenseMatrix>, cfg: &RunConfig) -> Result<TrainedPooling> {
    let pooling = cfg.pooling()?;
    let labels;
    let target = match pooling.mode {
        PoolingMode::Stress => PoolingTarget::Distances(
            distances.ok_or_else(|| CliError::Config("stress mode needs a distance matrix".into()))?,
        ),
        PoolingMode::Triplet { .. } => {
            labels = dataset.class_indices()?.0;
            PoolingTarget::Labels(&labels)
        }
    };
    Ok(train_pooling(tables, target, &pooling)?)
}

/// Leave-one-out 1-nearest-neighbor accuracy; ties go to the lower index.
pub fn knn_accuracy(embeddings: &[Vec<f64>], labels: &[usize]) -> Option<f64> {
    if embeddings.len() < 2 {
        return None;
    }
    let mut correct = 0usize;
    for (i, h) in embeddings.iter().enumerate() {
        let nearest = (0..embeddings.len())
            .filter(|&j| j != i)
            .min_by(|&a, &b| squared_distance(h, &embeddings[a]).total_cmp(&squared_distance(h, &embeddings[b])))
            .expect("at least two embeddings");
        if labels[nearest] == labels[i] {
            correct += 1;
        }
    }
    Some(correct as f64 / embeddings.len() as f64)
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct EvalReport {
    pub config: String,
    /// Mean adjacency-reconstruction AUC over complexes that admit one.
    pub auc: Option<f64>,
    pub auc_per_complex: Vec<Option<f64>>,
    pub stress: Option<f64>,
    pub knn_accuracy: Option<f64>,
    pub triplet_satisfaction: Option<f64>,
}

pub fn evaluate(
    dataset: &Dataset,
    tables: &[DenseMatrix],
    pooled: &[Vec<f64>],
    distances: Option<&DenseMatrix>,
    cfg: &RunConfig,
) -> Result<EvalReport> {
    let encoder = cfg.encoder_kind();
    let auc_per_complex: Vec<Option<f64>> = dataset
        .entries
        .iter()
        .zip(tables)
        .map(|(e, u)| {
            let n = e.complex.dim();
            let dims: Vec<usize> = loss_dims(encoder, n).collect();
            let embedded = simplex_embed_core::autoencoder::embedded_dims(encoder, n);
            reconstruction_auc(&e.complex, u, embedded, &dims).ok()
        })
        .collect();
    let scored: Vec<f64> = auc_per_complex.iter().flatten().copied().collect();
    let auc = (!scored.is_empty()).then(|| scored.iter().sum::<f64>() / scored.len() as f64);
    let stress = distances.map(|d| stress_loss(pooled, d).map(|s| s.0)).transpose()?;
    let labels = dataset.class_indices().ok().map(|l| l.0);
    let knn = labels.as_ref().and_then(|l| knn_accuracy(pooled, l));
    let triplets = labels.as_ref().and_then(|l| triplet_satisfaction(pooled, l, cfg.margin).ok());
    Ok(EvalReport { config: cfg.hash(), auc, auc_per_complex, stress, knn_accuracy: knn, triplet_satisfaction: triplets })
}

/// Euclidean distance, for reporting.
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    sqrt(squared_distance(a, b))
}
