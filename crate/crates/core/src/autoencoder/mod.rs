//! Encoder/decoder/similarity/loss framework for per-simplex embeddings.
//!
//! Three (decoder, similarity, loss) rows are admissible:
//!
//! | row | decoder | similarity | loss |
//! |-----|---------|------------|------|
//! | Laplacian eigenmaps | `‖z_a − z_c‖²` | `A^k_adj` | `dec · sim` |
//! | inner product | `z_aᵀ z_c` | `A^k_adj` | `(dec − sim)²` |
//! | random walk | softmax of `z_aᵀ z_c` | walk co-occurrence | `−log dec` |
//!
//! Eigenmaps is solved as the constrained generalized eigenproblem; the other
//! two rows are trained by gradient descent over all `k < n` jointly.

mod config;
mod decoder;
mod eigenmaps;
mod loss;
mod train;
mod walks;

pub use config::{AutoencoderConfig, DecoderKind, EncoderKind, LossKind, Method, RandomWalkConfig, SimilarityKind};
pub use decoder::decode;
pub use eigenmaps::{connected_components, eigenmaps_objective, laplacian_eigenmaps_solve};
pub use loss::{ae_loss, positive_pairs, sample_negatives, PairBatch};
pub use train::{
    auc, dimension_rows, embedded_dims, loss_dims, reconstruction_auc, train_autoencoder, EncoderState,
    EpochRecord, TrainedAutoencoder,
};
pub use walks::{empirical_similarity, random_walk_corpus, SimilarityTable, Walk};
