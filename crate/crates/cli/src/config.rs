//! The resolved hyperparameters of a run and their content hash.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use simplex_embed_core::autoencoder::{
    AutoencoderConfig, DecoderKind, EncoderKind, LossKind, Method, RandomWalkConfig, SimilarityKind,
};
use simplex_embed_core::message_passing::Scheme;
use simplex_embed_core::metrics::SamplingConfig;
use simplex_embed_core::numerics::OptimizerConfig;
use simplex_embed_core::pooling::{PoolingConfig, PoolingMode};

use crate::error::{read_to_string, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum EncoderName {
    Shallow,
    Amps,
    Cmps,
    Hcmps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum DecoderName {
    Laplacian,
    InnerProduct,
    SoftmaxRw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum SimilarityName {
    Adjacency,
    RandomWalk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum LossName {
    LapProduct,
    SquaredError,
    NegLogLikelihood,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum OptimizerName {
    Sgd,
    Adam,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum PoolModeName {
    Stress,
    Triplet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkSettings {
    pub walks_per_simplex: usize,
    pub walk_length: usize,
    pub window: usize,
}

impl Default for WalkSettings {
    fn default() -> Self {
        let d = RandomWalkConfig::default();
        Self { walks_per_simplex: d.walks_per_simplex, walk_length: d.walk_length, window: d.window }
    }
}

/// Every hyperparameter of the pipeline. One master `seed` drives all
/// randomness: parameter initialization, negatives, walks, point samples and
/// the pooling matrix each read their own stream of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub encoder: EncoderName,
    /// Message-passing layers (ignored by the shallow encoder).
    pub layers: usize,
    pub decoder: DecoderName,
    pub similarity: SimilarityName,
    pub loss: LossName,
    pub dim: usize,
    pub epochs: usize,
    pub optimizer: OptimizerName,
    pub learning_rate: f64,
    pub negative_ratio: usize,
    pub walk: WalkSettings,
    pub pool_mode: PoolModeName,
    pub margin: f64,
    pub pool_epochs: usize,
    pub pool_learning_rate: f64,
    pub points_per_top_simplex: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            encoder: EncoderName::Amps,
            layers: 2,
            decoder: DecoderName::InnerProduct,
            similarity: SimilarityName::Adjacency,
            loss: LossName::SquaredError,
            dim: 16,
            epochs: 300,
            optimizer: OptimizerName::Adam,
            learning_rate: 0.01,
            negative_ratio: 5,
            walk: WalkSettings::default(),
            pool_mode: PoolModeName::Stress,
            margin: 1.0,
            pool_epochs: 300,
            pool_learning_rate: 0.01,
            points_per_top_simplex: 10,
            seed: 0,
        }
    }
}

fn optimizer(name: OptimizerName, learning_rate: f64) -> OptimizerConfig {
    match name {
        OptimizerName::Sgd => OptimizerConfig::sgd(learning_rate),
        OptimizerName::Adam => OptimizerConfig::adam(learning_rate),
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        serde_json::from_str(&read_to_string(path)?).map_err(|e| CliError::parse(path, e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configs always serialize")
    }

    /// SHA-256 of the compact JSON form, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    pub fn method(&self) -> Result<Method> {
        let decoder = match self.decoder {
            DecoderName::Laplacian => DecoderKind::Laplacian,
            DecoderName::InnerProduct => DecoderKind::InnerProduct,
            DecoderName::SoftmaxRw => DecoderKind::SoftmaxRw,
        };
        let similarity = match self.similarity {
            SimilarityName::Adjacency => SimilarityKind::Adjacency,
            SimilarityName::RandomWalk => SimilarityKind::RandomWalk(RandomWalkConfig {
                walks_per_simplex: self.walk.walks_per_simplex,
                walk_length: self.walk.walk_length,
                window: self.walk.window,
                seed: self.seed,
            }),
        };
        let loss = match self.loss {
            LossName::LapProduct => LossKind::LapProduct,
            LossName::SquaredError => LossKind::SquaredError,
            LossName::NegLogLikelihood => LossKind::NegLogLikelihood,
        };
        Ok(Method::from_triple(decoder, similarity, loss)?)
    }

    pub fn encoder_kind(&self) -> EncoderKind {
        let scheme = match self.encoder {
            EncoderName::Shallow => return EncoderKind::ShallowTable,
            EncoderName::Amps => Scheme::Amps,
            EncoderName::Cmps => Scheme::Cmps,
            EncoderName::Hcmps => Scheme::Hcmps,
        };
        EncoderKind::Cxn { scheme, layers: self.layers }
    }

    pub fn autoencoder(&self) -> Result<AutoencoderConfig> {
        let mut cfg = AutoencoderConfig::new(self.encoder_kind(), self.method()?, self.dim);
        cfg.negative_ratio = self.negative_ratio;
        cfg.epochs = self.epochs;
        cfg.optimizer = optimizer(self.optimizer, self.learning_rate);
        cfg.seed = self.seed;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn pooling(&self) -> Result<PoolingConfig> {
        let mode = match self.pool_mode {
            PoolModeName::Stress => PoolingMode::Stress,
            PoolModeName::Triplet => PoolingMode::Triplet { margin: self.margin },
        };
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return Err(CliError::Config("margin must be non-negative".into()));
        }
        if !(self.pool_learning_rate > 0.0 && self.pool_learning_rate.is_finite()) {
            return Err(CliError::Config("pool learning rate must be positive".into()));
        }
        let mut cfg = PoolingConfig::new(mode);
        cfg.epochs = self.pool_epochs;
        cfg.optimizer = optimizer(self.optimizer, self.pool_learning_rate);
        cfg.seed = self.seed;
        Ok(cfg)
    }

    pub fn sampling(&self) -> SamplingConfig {
        SamplingConfig { points_per_top_simplex: self.points_per_top_simplex, seed: self.seed }
    }

    /// Checks every stage's settings, including the decoder/similarity/loss row.
    pub fn validate(&self) -> Result<()> {
        self.autoencoder()?;
        self.pooling()?;
        Ok(())
    }
}
