//! Artifact naming, model files and config-hash checks.
//!
//! Per complex, `train-ae` writes three files into its output directory:
//!
//! - `<name>.embedding.txt`: the embedding table `U_X` as a matrix file,
//! - `<name>.model.json`: encoder tensors (see [`ModelFile`]),
//! - `<name>.log.jsonl`: one record per epoch, `{"epoch", "per_dim", "total"}`.
//!
//! `train-pool` writes `pool_w.txt`, `complex_embeddings.txt` (one `h_X` per
//! row, dataset order) and `pool_log.jsonl`. Every artifact records the hash
//! of the config that produced it.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use simplex_embed_core::autoencoder::{EncoderState, EpochRecord, TrainedAutoencoder};
use simplex_embed_core::message_passing::{init_features, CxnEncoder, CxnParams, InitScheme, Scheme};
use simplex_embed_core::numerics::Parameters;
use simplex_embed_core::{DenseMatrix, SimplicialComplex};

use crate::error::{read_to_string, write_string, CliError, Result};

pub const POOL_WEIGHTS: &str = "pool_w.txt";
pub const COMPLEX_EMBEDDINGS: &str = "complex_embeddings.txt";
pub const POOL_LOG: &str = "pool_log.jsonl";

pub fn embedding_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.embedding.txt"))
}

pub fn model_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.model.json"))
}

pub fn log_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.log.jsonl"))
}

/// Fails unless an artifact was produced by the config hashing to `expected`.
pub fn expect_config(path: &Path, found: Option<&str>, expected: &str) -> Result<()> {
    match found {
        Some(h) if h == expected => Ok(()),
        other => Err(CliError::ConfigMismatch {
            path: path.to_path_buf(),
            expected: expected.to_string(),
            found: other.unwrap_or("none").to_string(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tensor {
    pub rows: usize,
    pub cols: usize,
    /// Row-major.
    pub data: Vec<f64>,
}

impl Tensor {
    pub fn from_matrix(m: &DenseMatrix) -> Self {
        Self { rows: m.nrows(), cols: m.ncols(), data: m.as_slice().to_vec() }
    }

    pub fn to_matrix(&self) -> simplex_embed_core::Result<DenseMatrix> {
        DenseMatrix::new(self.rows, self.cols, self.data.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// The trained table itself; only applies to the complex it was trained on.
    Table,
    /// Closed-form eigenmaps solution, stored as a table.
    Eigenmaps,
    /// Message-passing weights; applies to any complex of the same dimension.
    Amps,
    Cmps,
    Hcmps,
}

impl ModelKind {
    fn scheme(self) -> Option<Scheme> {
        match self {
            ModelKind::Amps => Some(Scheme::Amps),
            ModelKind::Cmps => Some(Scheme::Cmps),
            ModelKind::Hcmps => Some(Scheme::Hcmps),
            ModelKind::Table | ModelKind::Eigenmaps => None,
        }
    }
}

/// Trained encoder state. Message-passing models store their weight tensors
/// in layer order, dimension by dimension; tables store `U_X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub config: String,
    pub complex: String,
    pub kind: ModelKind,
    pub complex_dim: usize,
    pub counts: Vec<usize>,
    pub width: usize,
    pub layers: usize,
    pub tensors: Vec<Tensor>,
}

impl ModelFile {
    pub fn from_trained(config: &str, complex: &str, trained: &TrainedAutoencoder) -> Self {
        let (kind, layers, tensors) = match &trained.state {
            EncoderState::Table(t) => (ModelKind::Table, 0, vec![Tensor::from_matrix(t)]),
            EncoderState::Eigenmaps => (ModelKind::Eigenmaps, 0, vec![Tensor::from_matrix(&trained.embeddings)]),
            EncoderState::Cxn(p) => {
                let kind = match p.scheme() {
                    Scheme::Amps => ModelKind::Amps,
                    Scheme::Cmps => ModelKind::Cmps,
                    Scheme::Hcmps => ModelKind::Hcmps,
                };
                (kind, p.layers().len(), p.tensors().into_iter().map(Tensor::from_matrix).collect())
            }
        };
        Self {
            config: config.to_string(),
            complex: complex.to_string(),
            kind,
            complex_dim: trained.counts.len() - 1,
            counts: trained.counts.clone(),
            width: trained.embeddings.ncols(),
            layers,
            tensors,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("model files always serialize");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<Self> {
        serde_json::from_str(&read_to_string(path)?).map_err(|e| CliError::parse(path, e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_string(path, &self.to_json())
    }

    /// `U_X` of `x` under this model.
    pub fn embed(&self, x: &SimplicialComplex, path: &Path) -> Result<DenseMatrix> {
        let Some(scheme) = self.kind.scheme() else {
            if x.counts() != self.counts {
                return Err(CliError::parse(
                    path,
                    format!(
                        "table model for `{}` has simplex counts {:?}, the complex has {:?}",
                        self.complex,
                        self.counts,
                        x.counts()
                    ),
                ));
            }
            let [table] = self.tensors.as_slice() else {
                return Err(CliError::parse(path, "field `tensors`: a table model holds exactly one tensor"));
            };
            return Ok(table.to_matrix()?);
        };
        if x.dim() != self.complex_dim {
            return Err(CliError::parse(
                path,
                format!("model expects a {}-dimensional complex, got dimension {}", self.complex_dim, x.dim()),
            ));
        }
        let input = init_features(x, InitScheme::Structural)?;
        let mut params = CxnParams::constant(x, scheme, &input.widths(), self.width, self.layers, 0.0)?;
        let slots = params.tensors_mut();
        if slots.len() != self.tensors.len() {
            return Err(CliError::parse(
                path,
                format!("field `tensors`: expected {} tensors, found {}", slots.len(), self.tensors.len()),
            ));
        }
        for (i, (slot, t)) in slots.into_iter().zip(&self.tensors).enumerate() {
            if slot.shape() != (t.rows, t.cols) {
                return Err(CliError::parse(
                    path,
                    format!("field `tensors[{i}]`: expected shape {:?}, found ({}, {})", slot.shape(), t.rows, t.cols),
                ));
            }
            *slot = t.to_matrix().map_err(|e| CliError::parse(path, format!("field `tensors[{i}]`: {e}")))?;
        }
        let encoder = CxnEncoder::new(x, scheme)?;
        let pass = encoder.forward(&input, &params)?;
        Ok(encoder.embeddings(&pass, &params)?)
    }
}

/// Training log as JSON lines.
pub fn log_lines(records: &[EpochRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let per_dim: serde_json::Map<String, serde_json::Value> =
            r.per_dim.iter().map(|(k, v)| (k.to_string(), serde_json::json!(v))).collect();
        out.push_str(&serde_json::json!({"epoch": r.epoch, "per_dim": per_dim, "total": r.total}).to_string());
        out.push('\n');
    }
    out
}
