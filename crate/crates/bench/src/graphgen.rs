//! Random regular graphs by the configuration model.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use diagtn::ProblemGraph;

pub const MAX_PAIRING_ATTEMPTS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphGenError {
    #[error("no {d}-regular graph on {n} nodes: n * d must be even")]
    OddDegreeSum { n: usize, d: usize },

    #[error("no {d}-regular graph on {n} nodes: degree must be less than the node count")]
    DegreeTooLarge { n: usize, d: usize },

    #[error("graph must have at least one node")]
    NoNodes,

    #[error("no simple pairing found after {0} attempts")]
    RetriesExhausted(usize),
}

/// Uniform-ish simple `d`-regular graph: shuffle `n * d` stubs, pair them up and
/// reject the whole pairing on any self-loop or repeated edge. Edges come out
/// sorted with `u < v`.
pub fn random_regular_graph(n: usize, d: usize, seed: u64) -> Result<ProblemGraph, GraphGenError> {
    if n == 0 {
        return Err(GraphGenError::NoNodes);
    }
    if (n * d) % 2 == 1 {
        return Err(GraphGenError::OddDegreeSum { n, d });
    }
    if d >= n {
        return Err(GraphGenError::DegreeTooLarge { n, d });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    let mut adjacent = vec![false; n * n];
    'attempt: for _ in 0..MAX_PAIRING_ATTEMPTS {
        stubs.shuffle(&mut rng);
        adjacent.fill(false);
        let mut edges = Vec::with_capacity(stubs.len() / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || adjacent[u * n + v] {
                continue 'attempt;
            }
            adjacent[u * n + v] = true;
            edges.push((u, v));
        }
        edges.sort_unstable();
        return Ok(ProblemGraph::new(n, edges).expect("pairing produced a simple graph"));
    }
    Err(GraphGenError::RetriesExhausted(MAX_PAIRING_ATTEMPTS))
}
