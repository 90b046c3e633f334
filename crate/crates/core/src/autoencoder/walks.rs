use alloc::vec::Vec;

use rand::Rng as _;

use crate::autoencoder::RandomWalkConfig;
use crate::complex::{SimplicialComplex, SparseMatrix};
use crate::error::Result;
use crate::numerics::{streams, DenseMatrix, RngState};

/// A walk over `k`-simplices, as local ordinals.
pub type Walk = Vec<usize>;

/// Walks on the `k`-adjacency graph: `walks_per_simplex` walks from every
/// `k`-simplex, each step choosing a neighbor with probability proportional to
/// the `A^k_adj` multiplicity. Walks stop early at simplices without neighbors.
pub fn random_walk_corpus(x: &SimplicialComplex, k: usize, cfg: &RandomWalkConfig) -> Result<Vec<Walk>> {
    cfg.validate()?;
    let adjacency = x.per_dim_adjacency(k)?;
    Ok(walks_on(&adjacency, cfg, streams::id(streams::WALKS, k as u64)))
}

pub(crate) fn walks_on(adjacency: &SparseMatrix, cfg: &RandomWalkConfig, stream: u64) -> Vec<Walk> {
    let mut rng = RngState::new(cfg.seed).stream(stream);
    let neighbors: Vec<Vec<(usize, u32)>> = (0..adjacency.nrows()).map(|i| adjacency.row(i).collect()).collect();
    let totals: Vec<u64> = adjacency.row_sums();
    let mut corpus = Vec::with_capacity(adjacency.nrows() * cfg.walks_per_simplex);
    for _ in 0..cfg.walks_per_simplex {
        for start in 0..adjacency.nrows() {
            let mut walk = Vec::with_capacity(cfg.walk_length);
            walk.push(start);
            let mut at = start;
            while walk.len() < cfg.walk_length && totals[at] > 0 {
                let mut pick = rng.gen_range(0..totals[at]);
                let mut next = neighbors[at][0].0;
                for &(j, w) in &neighbors[at] {
                    if pick < u64::from(w) {
                        next = j;
                        break;
                    }
                    pick -= u64::from(w);
                }
                walk.push(next);
                at = next;
            }
            corpus.push(walk);
        }
    }
    corpus
}

/// Row-stochastic estimate `p̂(a | c)`: row `c` holds the normalized window
/// co-occurrence counts of every context `a` around center `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityTable {
    probabilities: DenseMatrix,
    populated: Vec<bool>,
}

impl SimilarityTable {
    pub fn probabilities(&self) -> &DenseMatrix {
        &self.probabilities
    }

    /// `p̂(a | c)`; zero for absent rows.
    pub fn get(&self, center: usize, context: usize) -> f64 {
        self.probabilities.get(center, context)
    }

    /// Whether center `c` had any co-occurrence at all.
    pub fn is_populated(&self, center: usize) -> bool {
        self.populated[center]
    }

    pub fn len(&self) -> usize {
        self.populated.len()
    }

    pub fn is_empty(&self) -> bool {
        self.populated.is_empty()
    }

    /// `(center, context, p̂(context | center))` for every non-zero entry.
    pub fn weighted_pairs(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for c in 0..self.len() {
            if !self.populated[c] {
                continue;
            }
            for (a, &p) in self.probabilities.row(c).iter().enumerate() {
                if p > 0.0 {
                    out.push((c, a, p));
                }
            }
        }
        out
    }
}

pub fn empirical_similarity(corpus: &[Walk], window: usize, size: usize) -> SimilarityTable {
    let mut counts = DenseMatrix::zeros(size, size);
    for walk in corpus {
        for (i, &center) in walk.iter().enumerate() {
            let lo = i.saturating_sub(window);
            let hi = (i + window + 1).min(walk.len());
            for (j, &context) in walk.iter().enumerate().take(hi).skip(lo) {
                if j != i {
                    counts.set(center, context, counts.get(center, context) + 1.0);
                }
            }
        }
    }
    let populated: Vec<bool> = counts.rows().map(|r| r.iter().any(|&v| v > 0.0)).collect();
    SimilarityTable { probabilities: counts.row_normalize(), populated }
}
