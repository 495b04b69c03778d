//! Circuit to tensor-network conversion and the line-graph view.
//!
//! Every tensor index has dimension 2. Tensor data is stored with the first
//! variable as the most significant bit. Gate tensors list their output
//! variables first, then their input variables, so a gate's row-major matrix
//! is its tensor data as-is.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::Circuit;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetworkError {
    #[error("output bitstring has {got} bit(s), circuit has {expected} qubit(s)")]
    BitstringLength { expected: usize, got: usize },

    #[error("bit value {0} is not 0 or 1")]
    BadBit(u8),

    #[error("hyperedge references vertex {0}, line graph has {1} vertices")]
    VertexOutOfRange(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    pub id: usize,
    pub vars: Vec<usize>,
    pub data: Vec<Complex64>,
}

impl Tensor {
    pub fn new(id: usize, vars: Vec<usize>, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), 1 << vars.len(), "tensor data must have 2^rank entries");
        debug_assert!(
            vars.iter().collect::<BTreeSet<_>>().len() == vars.len(),
            "tensor variables must be distinct"
        );
        Tensor { id, vars, data }
    }

    pub fn scalar(id: usize, value: Complex64) -> Self {
        Tensor { id, vars: Vec::new(), data: vec![value] }
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    /// Entry at the given per-variable bit assignment.
    pub fn at(&self, bits: &[u8]) -> Complex64 {
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        self.data[idx]
    }

    /// Sub-tensor with every variable in `fixed` pinned to its bit value and removed.
    pub fn slice(&self, fixed: &BTreeMap<usize, u8>) -> Tensor {
        let rank = self.rank();
        let keep: Vec<usize> = (0..rank).filter(|&k| !fixed.contains_key(&self.vars[k])).collect();
        if keep.len() == rank {
            return self.clone();
        }
        let mut base = 0usize;
        for (k, v) in self.vars.iter().enumerate() {
            if let Some(&b) = fixed.get(v) {
                base |= (b as usize) << (rank - 1 - k);
            }
        }
        let kept_rank = keep.len();
        let data = (0..1usize << kept_rank)
            .map(|sub| {
                let mut idx = base;
                for (pos, &k) in keep.iter().enumerate() {
                    let bit = (sub >> (kept_rank - 1 - pos)) & 1;
                    idx |= bit << (rank - 1 - k);
                }
                self.data[idx]
            })
            .collect();
        Tensor {
            id: self.id,
            vars: keep.iter().map(|&k| self.vars[k]).collect(),
            data,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NetworkMode {
    /// Every gate is a full-matrix tensor with fresh output variables.
    Full,
    /// Diagonal gates reuse the current wire variables and store only their diagonal.
    Diagonal,
}

/// Tensors over the variable universe `0..variable_count`, with output variables fixed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TensorNetwork {
    pub tensors: Vec<Tensor>,
    pub variable_count: usize,
    pub fixed: BTreeMap<usize, u8>,
}

/// A network with every fixed variable sliced out and the remaining
/// variables relabelled densely. Vertex `i` is `variables[i]`, the `i`-th
/// smallest unfixed variable of the source network.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicedNetwork {
    pub tensors: Vec<Tensor>,
    pub variables: Vec<usize>,
}

impl TensorNetwork {
    pub fn unfixed_variables(&self) -> Vec<usize> {
        (0..self.variable_count).filter(|v| !self.fixed.contains_key(v)).collect()
    }

    pub fn sliced(&self) -> SlicedNetwork {
        let variables = self.unfixed_variables();
        let mut dense = vec![usize::MAX; self.variable_count];
        for (i, &v) in variables.iter().enumerate() {
            dense[v] = i;
        }
        let tensors = self
            .tensors
            .iter()
            .map(|t| {
                let mut s = t.slice(&self.fixed);
                for v in &mut s.vars {
                    *v = dense[*v];
                }
                s
            })
            .collect();
        SlicedNetwork { tensors, variables }
    }

    pub fn stats(&self) -> NetworkStats {
        network_stats(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NetworkStats {
    /// Includes rank-0 tensors such as the global phase.
    pub tensor_count: usize,
    pub variable_count: usize,
    pub max_rank: usize,
}

pub fn network_stats(network: &TensorNetwork) -> NetworkStats {
    NetworkStats {
        tensor_count: network.tensors.len(),
        variable_count: network.variable_count,
        max_rank: network.tensors.iter().map(Tensor::rank).max().unwrap_or(0),
    }
}

struct Builder {
    tensors: Vec<Tensor>,
    next_var: usize,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.next_var += 1;
        self.next_var - 1
    }

    fn add(&mut self, vars: Vec<usize>, data: Vec<Complex64>) {
        let id = self.tensors.len();
        self.tensors.push(Tensor::new(id, vars, data));
    }
}

/// Tensor network whose full contraction is `<output_bits| circuit |0...0>`.
///
/// Each wire starts with a fresh variable carrying the `(1, 0)` tensor. In
/// `Full` mode every gate introduces fresh output variables. In `Diagonal`
/// mode a diagonal gate instead attaches its matrix diagonal to the wires'
/// current variables: a rank-1 tensor for `ZPOW`, the rank-2
/// `[[rho, conj(rho)], [conj(rho), rho]]` tensor for `ZZ`. The last variable
/// of each wire is fixed to its output bit and the circuit phase becomes a
/// rank-0 tensor.
pub fn circuit_to_network(
    circuit: &Circuit,
    mode: NetworkMode,
    output_bits: &[u8],
) -> Result<TensorNetwork, NetworkError> {
    let n = circuit.qubit_count();
    if output_bits.len() != n {
        return Err(NetworkError::BitstringLength { expected: n, got: output_bits.len() });
    }
    if let Some(&b) = output_bits.iter().find(|&&b| b > 1) {
        return Err(NetworkError::BadBit(b));
    }

    let mut b = Builder { tensors: Vec::new(), next_var: 0 };
    let mut current: Vec<usize> = Vec::with_capacity(n);
    let zero = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    for _ in 0..n {
        let v = b.fresh();
        current.push(v);
        b.add(vec![v], zero.clone());
    }

    for gate in circuit.gates() {
        let qubits = gate.qubits();
        let matrix = gate.matrix();
        let inputs: Vec<usize> = qubits.iter().map(|&q| current[q]).collect();
        if mode == NetworkMode::Diagonal && gate.is_diagonal() {
            b.add(inputs, matrix.diagonal());
        } else {
            let outputs: Vec<usize> = qubits.iter().map(|_| b.fresh()).collect();
            for (&q, &v) in qubits.iter().zip(&outputs) {
                current[q] = v;
            }
            let mut vars = outputs;
            vars.extend(inputs);
            b.add(vars, matrix.data().to_vec());
        }
    }

    let fixed = current.iter().zip(output_bits).map(|(&v, &bit)| (v, bit)).collect();
    let id = b.tensors.len();
    b.tensors.push(Tensor::scalar(id, circuit.phase()));

    Ok(TensorNetwork {
        tensors: b.tensors,
        variable_count: b.next_var,
        fixed,
    })
}

/// Hypergraph over the unfixed variables: one hyperedge per tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct LineGraph {
    vertex_count: usize,
    hyperedges: Vec<Vec<usize>>,
    adjacency: Vec<Vec<usize>>,
}

impl LineGraph {
    pub fn from_hyperedges(vertex_count: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self, NetworkError> {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); vertex_count];
        for edge in &hyperedges {
            for &v in edge {
                if v >= vertex_count {
                    return Err(NetworkError::VertexOutOfRange(v, vertex_count));
                }
            }
            for &u in edge {
                for &v in edge {
                    if u != v {
                        adj[u].insert(v);
                    }
                }
            }
        }
        Ok(LineGraph {
            vertex_count,
            hyperedges,
            adjacency: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// Simple graph with the given edges as rank-2 hyperedges.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, NetworkError> {
        LineGraph::from_hyperedges(vertex_count, edges.iter().map(|&(u, v)| vec![u, v]).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Same hypergraph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> LineGraph {
        assert_eq!(perm.len(), self.vertex_count);
        let edges = self
            .hyperedges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        LineGraph::from_hyperedges(self.vertex_count, edges).expect("permutation keeps vertices in range")
    }
}

/// Line graph of the sliced network; vertex `i` is the `i`-th smallest unfixed variable.
pub fn line_graph(network: &TensorNetwork) -> LineGraph {
    let sliced = network.sliced();
    let edges = sliced.tensors.into_iter().map(|t| t.vars).collect();
    LineGraph::from_hyperedges(sliced.variables.len(), edges).expect("sliced variables are dense")
}
