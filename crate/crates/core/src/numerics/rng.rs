use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numerics::{sqrt, DenseMatrix};

/// Generator used everywhere in the crate. ChaCha is counter-based, so each
/// `(seed, stream)` pair is an independent, platform-stable sequence.
pub type Rng = ChaCha8Rng;

/// Stream identifiers. The upper 32 bits of a stream id name the purpose, the
/// lower 32 bits an item index (complex, dimension, tensor).
pub mod streams {
    pub const PARAM_INIT: u64 = 1;
    pub const NEGATIVES: u64 = 2;
    pub const WALKS: u64 = 3;
    pub const POINT_SAMPLES: u64 = 4;
    pub const POOL_INIT: u64 = 5;
    pub const DATASET: u64 = 6;
    pub const FIXTURE: u64 = 7;

    pub const fn id(purpose: u64, index: u64) -> u64 {
        (purpose << 32) | (index & 0xffff_ffff)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngState {
    seed: u64,
}

impl RngState {
    pub const fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub const fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self, stream: u64) -> Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// Derives a child seed, e.g. one per complex in a dataset.
    pub fn derive(&self, purpose: u64, index: u64) -> RngState {
        use rand::RngCore;
        RngState::new(self.stream(streams::id(purpose, index)).next_u64())
    }
}

/// Glorot-uniform initialization for a `fan_in x fan_out` weight matrix.
pub fn glorot_uniform(fan_in: usize, fan_out: usize, rng: &mut Rng) -> DenseMatrix {
    let limit = sqrt(6.0 / (fan_in + fan_out).max(1) as f64);
    let mut m = DenseMatrix::zeros(fan_in, fan_out);
    for v in m.as_mut_slice() {
        *v = rng.gen_range(-limit..limit);
    }
    m
}
