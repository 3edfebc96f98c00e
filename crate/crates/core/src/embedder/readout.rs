//! Random-walk readout: turns node embeddings into one graph embedding.

use rand::Rng;

use crate::graphs::FeatureGraph;
use crate::nn::{Scalar, Tensor};
use crate::util::derive_seed;

/// How node embeddings are pooled into a graph embedding.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct ReadoutConfig {
    /// Number of walks started at the start node.
    pub walks: usize,
    /// Steps per walk; a walk of length L visits L+1 nodes.
    pub walk_len: usize,
    /// Ablation switch: plain mean over all nodes instead of walks.
    pub mean_all: bool,
}

impl Default for ReadoutConfig {
    fn default() -> Self {
        ReadoutConfig { walks: 16, walk_len: 16, mean_all: false }
    }
}

/// Visit frequencies of `walks` uniform random out-neighbor walks from
/// `start`, as a normalized `1 x n` weight row. A dead end restarts the
/// walk at the start node (that restart counts as the step's visit), so a
/// walk always makes exactly `walk_len` moves.
pub fn walk_weights<S: Scalar, R: Rng>(
    adj: &[Vec<usize>],
    start: usize,
    cfg: &ReadoutConfig,
    rng: &mut R,
) -> Tensor<S> {
    let n = adj.len();
    if cfg.mean_all {
        return Tensor::from_vec(1, n, vec![S::of(1.0 / n as f64); n]);
    }
    let mut counts = vec![0u64; n];
    for _ in 0..cfg.walks {
        let mut cur = start;
        counts[cur] += 1;
        for _ in 0..cfg.walk_len {
            let next = &adj[cur];
            cur = if next.is_empty() {
                start
            } else if next.len() == 1 {
                next[0]
            } else {
                next[rng.random_range(0..next.len())]
            };
            counts[cur] += 1;
        }
    }
    let total = (cfg.walks * (cfg.walk_len + 1)) as f64;
    Tensor::from_vec(1, n, counts.into_iter().map(|c| S::of(c as f64 / total)).collect())
}

/// The walk seed of evaluation-mode embeddings: a pure function of graph
/// structure and constant features, so an embedding is reproducible and
/// unaffected by whatever fills the content regions.
pub fn eval_walk_seed(fg: &FeatureGraph) -> u64 {
    derive_seed(fg.topology_hash(), "readout", 0)
}
