use alloc::format;

use crate::error::{Error, Result};
use crate::message_passing::Scheme;
use crate::numerics::OptimizerConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    /// `‖z_a − z_c‖²`
    Laplacian,
    /// `z_aᵀ z_c`
    InnerProduct,
    /// `exp(z_aᵀ z_c) / Σ_b exp(z_aᵀ z_b)` over all `k`-simplices `b`.
    SoftmaxRw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimilarityKind {
    /// `A^k_adj(a, c)`
    Adjacency,
    /// Window co-occurrence estimate of `p(a | c)` from random walks.
    RandomWalk(RandomWalkConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LossKind {
    /// `dec · sim`
    LapProduct,
    /// `(dec − sim)²`
    SquaredError,
    /// `−log dec`
    NegLogLikelihood,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomWalkConfig {
    pub walks_per_simplex: usize,
    pub walk_length: usize,
    pub window: usize,
    pub seed: u64,
}

impl Default for RandomWalkConfig {
    fn default() -> Self {
        Self { walks_per_simplex: 10, walk_length: 10, window: 2, seed: 0 }
    }
}

impl RandomWalkConfig {
    pub fn validate(&self) -> Result<()> {
        if self.walks_per_simplex == 0 || self.walk_length == 0 || self.window == 0 {
            return Err(Error::InvalidConfig(format!(
                "random-walk settings must be positive: {self:?}"
            )));
        }
        Ok(())
    }
}

/// One of the three admissible (decoder, similarity, loss) rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    LaplacianEigenmaps,
    InnerProduct,
    RandomWalk(RandomWalkConfig),
}

impl Method {
    /// Resolves a triple, rejecting combinations that mix rows.
    pub fn from_triple(decoder: DecoderKind, similarity: SimilarityKind, loss: LossKind) -> Result<Self> {
        match (decoder, similarity, loss) {
            (DecoderKind::Laplacian, SimilarityKind::Adjacency, LossKind::LapProduct) => Ok(Method::LaplacianEigenmaps),
            (DecoderKind::InnerProduct, SimilarityKind::Adjacency, LossKind::SquaredError) => Ok(Method::InnerProduct),
            (DecoderKind::SoftmaxRw, SimilarityKind::RandomWalk(cfg), LossKind::NegLogLikelihood) => {
                cfg.validate()?;
                Ok(Method::RandomWalk(cfg))
            }
            other => Err(Error::InvalidConfig(format!(
                "({:?}, {:?}, {:?}) is not a valid decoder/similarity/loss combination",
                other.0, other.1, other.2
            ))),
        }
    }

    pub fn decoder(&self) -> DecoderKind {
        match self {
            Method::LaplacianEigenmaps => DecoderKind::Laplacian,
            Method::InnerProduct => DecoderKind::InnerProduct,
            Method::RandomWalk(_) => DecoderKind::SoftmaxRw,
        }
    }

    pub fn similarity(&self) -> SimilarityKind {
        match self {
            Method::RandomWalk(cfg) => SimilarityKind::RandomWalk(*cfg),
            _ => SimilarityKind::Adjacency,
        }
    }

    pub fn loss(&self) -> LossKind {
        match self {
            Method::LaplacianEigenmaps => LossKind::LapProduct,
            Method::InnerProduct => LossKind::SquaredError,
            Method::RandomWalk(_) => LossKind::NegLogLikelihood,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EncoderKind {
    /// A free embedding row per simplex of `X^{<n}`.
    ShallowTable,
    Cxn { scheme: Scheme, layers: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutoencoderConfig {
    pub encoder: EncoderKind,
    pub method: Method,
    /// Embedding width `d`.
    pub dim: usize,
    /// Negative samples per positive pair (inner-product row).
    pub negative_ratio: usize,
    pub epochs: usize,
    pub optimizer: OptimizerConfig,
    pub seed: u64,
}

impl AutoencoderConfig {
    pub fn new(encoder: EncoderKind, method: Method, dim: usize) -> Self {
        Self {
            encoder,
            method,
            dim,
            negative_ratio: 5,
            epochs: 500,
            optimizer: OptimizerConfig::adam(0.01),
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidConfig("embedding dimension must be positive".into()));
        }
        if let EncoderKind::Cxn { layers, .. } = self.encoder {
            if layers == 0 {
                return Err(Error::InvalidConfig("a message-passing encoder needs at least one layer".into()));
            }
            if self.method == Method::LaplacianEigenmaps {
                return Err(Error::InvalidConfig(
                    "Laplacian eigenmaps is solved in closed form and needs the shallow encoder".into(),
                ));
            }
        }
        if let Method::RandomWalk(cfg) = self.method {
            cfg.validate()?;
        }
        if !(self.optimizer.learning_rate > 0.0 && self.optimizer.learning_rate.is_finite()) {
            return Err(Error::InvalidConfig("learning rate must be positive".into()));
        }
        Ok(())
    }
}
