//! Elimination orderings over a line graph and the contraction cost model.
//!
//! Eliminating a vertex produces an intermediate tensor over its current
//! neighbours; the neighbours then become a clique. The contraction width `C`
//! is the largest such rank along the order. The aggregate cost estimate is
//! `2^C` FLOPs and `16 * 2^C` bytes (one complex double per entry).

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::circuit::{ProblemGraph, QaoaParams};
use crate::network::{line_graph, LineGraph};
use crate::pipeline::{build_network, PipelineMode};

/// Bytes per complex double.
pub const BYTES_PER_ENTRY: f64 = 16.0;

/// Width budget of a 4 GiB machine: `16 * 2^C <= 4 * 2^30`.
pub const LAPTOP_WIDTH_BUDGET: usize = 28;

/// Width budget of 800 TiB aggregate memory: `floor(log2(800 * 2^40 / 16))`.
pub const SUPERCOMPUTER_WIDTH_BUDGET: usize = 45;

pub const LAPTOP_MEMORY_BYTES: f64 = 4.0 * (1u64 << 30) as f64;
pub const SUPERCOMPUTER_MEMORY_BYTES: f64 = 800.0 * (1u64 << 40) as f64;

/// Depths scanned by [`feasible_max_p`].
pub const MAX_P_CUTOFF: usize = 8;

/// Largest width whose intermediate fits in `memory_bytes`.
pub fn width_budget_for_memory(memory_bytes: f64) -> usize {
    (memory_bytes / BYTES_PER_ENTRY).log2().floor() as usize
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrderingError {
    #[error("order has {got} entries, line graph has {expected} vertices")]
    OrderLength { expected: usize, got: usize },

    #[error("order repeats or omits vertex {0}")]
    NotPermutation(usize),

    #[error("temperature must be >= 0, got {0}")]
    NegativeTemperature(f64),

    #[error("n_repeats must be >= 1")]
    NoRepeats,

    #[error("exhaustive search is limited to {max} vertices, got {got}")]
    TooLarge { max: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ContractionOrder(Vec<usize>);

impl ContractionOrder {
    pub fn new(sequence: Vec<usize>) -> Self {
        ContractionOrder(sequence)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    pub fn validate(&self, vertex_count: usize) -> Result<(), OrderingError> {
        if self.0.len() != vertex_count {
            return Err(OrderingError::OrderLength { expected: vertex_count, got: self.0.len() });
        }
        let mut seen = vec![false; vertex_count];
        for &v in &self.0 {
            if v >= vertex_count || seen[v] {
                return Err(OrderingError::NotPermutation(v));
            }
            seen[v] = true;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub width: usize,
    pub step_ranks: Vec<usize>,
    pub flops_2c: f64,
    /// `sum over steps of 2^(rank + 1)`, counting the summed-over variable.
    pub flops_sum: f64,
    pub memory_bytes: f64,
}

impl CostReport {
    pub fn from_step_ranks(step_ranks: Vec<usize>) -> Self {
        let width = step_ranks.iter().copied().max().unwrap_or(0);
        let flops_sum = step_ranks.iter().map(|&r| 2f64.powi(r as i32 + 1)).sum();
        CostReport {
            width,
            step_ranks,
            flops_2c: 2f64.powi(width as i32),
            flops_sum,
            memory_bytes: BYTES_PER_ENTRY * 2f64.powi(width as i32),
        }
    }

    pub fn log2_flops(&self) -> f64 {
        self.width as f64
    }
}

/// Mutable adjacency used while simulating elimination.
#[derive(Clone)]
struct EliminationGraph {
    adj: Vec<HashSet<usize>>,
    alive: Vec<usize>,
    position: Vec<usize>,
}

impl EliminationGraph {
    fn new(lg: &LineGraph) -> Self {
        let n = lg.vertex_count();
        EliminationGraph {
            adj: (0..n).map(|v| lg.neighbors(v).iter().copied().collect()).collect(),
            alive: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Removes `v`, connects its neighbours pairwise and returns the rank of
    /// the produced intermediate.
    fn eliminate(&mut self, v: usize) -> usize {
        let nbrs: Vec<usize> = self.adj[v].drain().collect();
        for &u in &nbrs {
            self.adj[u].remove(&v);
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                self.adj[a].insert(b);
                self.adj[b].insert(a);
            }
        }
        let pos = self.position[v];
        self.alive.swap_remove(pos);
        if pos < self.alive.len() {
            self.position[self.alive[pos]] = pos;
        }
        nbrs.len()
    }

    fn min_degree(&self) -> usize {
        self.alive.iter().map(|&v| self.degree(v)).min().unwrap_or(0)
    }
}

/// Simulates elimination along `order` and reports the resulting costs.
pub fn contraction_width(lg: &LineGraph, order: &ContractionOrder) -> Result<CostReport, OrderingError> {
    order.validate(lg.vertex_count())?;
    let mut g = EliminationGraph::new(lg);
    let ranks = order.as_slice().iter().map(|&v| g.eliminate(v)).collect();
    Ok(CostReport::from_step_ranks(ranks))
}

/// Min-degree elimination; ties go to the smallest vertex id.
pub fn greedy_order(lg: &LineGraph) -> ContractionOrder {
    greedy_pass(lg).0
}

fn greedy_pass(lg: &LineGraph) -> (ContractionOrder, CostReport) {
    let mut g = EliminationGraph::new(lg);
    let mut seq = Vec::with_capacity(lg.vertex_count());
    let mut ranks = Vec::with_capacity(lg.vertex_count());
    while !g.alive.is_empty() {
        let v = *g.alive.iter().min_by_key(|&&v| (g.degree(v), v)).expect("non-empty");
        ranks.push(g.eliminate(v));
        seq.push(v);
    }
    (ContractionOrder(seq), CostReport::from_step_ranks(ranks))
}

/// One Boltzmann-sampled pass: vertex `v` is drawn with weight
/// `exp(-(deg(v) - min_deg) / temp)`. At `temp == 0` the draw is uniform over
/// the minimum-degree vertices.
fn randomized_pass(lg: &LineGraph, temp: f64, rng: &mut impl Rng) -> (ContractionOrder, CostReport) {
    let mut g = EliminationGraph::new(lg);
    let mut seq = Vec::with_capacity(lg.vertex_count());
    let mut ranks = Vec::with_capacity(lg.vertex_count());
    let mut weights = Vec::with_capacity(lg.vertex_count());
    while !g.alive.is_empty() {
        let dmin = g.min_degree();
        weights.clear();
        weights.extend(g.alive.iter().map(|&v| {
            let excess = (g.degree(v) - dmin) as f64;
            if temp == 0.0 {
                if excess == 0.0 { 1.0 } else { 0.0 }
            } else {
                (-excess / temp).exp()
            }
        }));
        let total: f64 = weights.iter().sum();
        let mut target = rng.gen::<f64>() * total;
        let mut pick = g.alive.len() - 1;
        for (i, &w) in weights.iter().enumerate() {
            if target < w {
                pick = i;
                break;
            }
            target -= w;
        }
        // guard against landing on a zero-weight tail through rounding
        while weights[pick] == 0.0 {
            pick -= 1;
        }
        let v = g.alive[pick];
        ranks.push(g.eliminate(v));
        seq.push(v);
    }
    (ContractionOrder(seq), CostReport::from_step_ranks(ranks))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingParams {
    pub n_repeats: usize,
    pub temp: f64,
    pub seed: u64,
}

impl Default for OrderingParams {
    fn default() -> Self {
        OrderingParams { n_repeats: 10, temp: 0.02, seed: 0 }
    }
}

/// Best of `n_repeats` elimination passes.
///
/// Pass 0 is the deterministic [`greedy_order`]; pass `k > 0` is a randomized
/// pass seeded with `seed + k`. Passes run in parallel and are reduced by
/// (width, flops_sum, pass index), so the result matches sequential execution.
pub fn rgreedy_order(
    lg: &LineGraph,
    n_repeats: usize,
    temp: f64,
    seed: u64,
) -> Result<(ContractionOrder, CostReport), OrderingError> {
    if !(temp >= 0.0) {
        return Err(OrderingError::NegativeTemperature(temp));
    }
    if n_repeats == 0 {
        return Err(OrderingError::NoRepeats);
    }
    let passes: Vec<(ContractionOrder, CostReport)> = (0..n_repeats)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                greedy_pass(lg)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
                randomized_pass(lg, temp, &mut rng)
            }
        })
        .collect();

    let mut best: Option<(ContractionOrder, CostReport)> = None;
    for (order, report) in passes {
        let better = match &best {
            None => true,
            Some((_, b)) => (report.width, report.flops_sum) < (b.width, b.flops_sum),
        };
        if better {
            best = Some((order, report));
        }
    }
    Ok(best.expect("n_repeats >= 1"))
}

pub fn rgreedy_with(lg: &LineGraph, params: &OrderingParams) -> Result<(ContractionOrder, CostReport), OrderingError> {
    rgreedy_order(lg, params.n_repeats, params.temp, params.seed)
}

pub const EXHAUSTIVE_MAX_VERTICES: usize = 12;

/// Minimum width over every elimination order, by depth-first enumeration of
/// order prefixes with branch-and-bound on the best width found so far.
pub fn exhaustive_min_width(lg: &LineGraph) -> Result<usize, OrderingError> {
    let n = lg.vertex_count();
    if n > EXHAUSTIVE_MAX_VERTICES {
        return Err(OrderingError::TooLarge { max: EXHAUSTIVE_MAX_VERTICES, got: n });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| lg.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let mut best = n.saturating_sub(1);
    search(&adj, (1u32 << n) - 1, 0, &mut best);
    Ok(best)
}

fn search(adj: &[u32], alive: u32, width: usize, best: &mut usize) {
    if alive == 0 {
        *best = (*best).min(width);
        return;
    }
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let nbrs = adj[v] & alive;
        let rank = nbrs.count_ones() as usize;
        let w = width.max(rank);
        // any order has width <= n - 1, so `best` starts as a valid bound
        if w >= *best {
            continue;
        }
        let mut next = adj.to_vec();
        let mut m = nbrs;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            next[u] |= nbrs & !(1 << u);
        }
        search(&next, alive & !(1 << v), w, best);
    }
}

/// Largest `p` in `1..=MAX_P_CUTOFF` whose pipeline network has rgreedy width
/// within `width_budget`; 0 when no depth fits.
pub fn feasible_max_p(
    graph: &ProblemGraph,
    params_for_p: impl Fn(usize) -> QaoaParams,
    mode: PipelineMode,
    width_budget: usize,
    ordering: &OrderingParams,
) -> Result<usize, OrderingError> {
    let bits = vec![0u8; graph.node_count()];
    let mut best = 0;
    for p in 1..=MAX_P_CUTOFF {
        let network = build_network(graph, &params_for_p(p), mode, &bits)
            .expect("benchmark angle rule yields matching gamma/beta lengths");
        let (_, report) = rgreedy_with(&line_graph(&network), ordering)?;
        if report.width <= width_budget {
            best = p;
        }
    }
    Ok(best)
}
