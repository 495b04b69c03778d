//! Bucket-elimination contraction and two independent reference evaluators:
//! Feynman-path enumeration over the network and dense state-vector evolution.

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::network::{Tensor, TensorNetwork};
use crate::ordering::{ContractionOrder, OrderingError};

pub type Amplitude = Complex64;

/// Largest intermediate rank `contract` will allocate by default.
pub const DEFAULT_RANK_CAP: usize = 30;

/// Limit on enumerated variables for [`direct_sum`] and qubits for the state vector.
pub const ORACLE_MAX_BITS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContractError {
    #[error(transparent)]
    Order(#[from] OrderingError),

    #[error("intermediate tensor of rank {rank} exceeds the rank cap {cap}")]
    RankCap { rank: usize, cap: usize },

    #[error("{count} variables/qubits exceed the oracle limit of {max}")]
    TooLarge { count: usize, max: usize },

    #[error("bitstring has {got} bit(s), expected {expected}")]
    BitstringLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractOptions {
    pub rank_cap: usize,
}

impl Default for ContractOptions {
    fn default() -> Self {
        ContractOptions { rank_cap: DEFAULT_RANK_CAP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contraction {
    pub amplitude: Amplitude,
    /// Largest rank of any intermediate produced by a bucket.
    pub peak_rank: usize,
}

/// Contracts the network along `order`, a permutation of its line-graph vertices.
pub fn contract(network: &TensorNetwork, order: &ContractionOrder) -> Result<Amplitude, ContractError> {
    Ok(contract_with(network, order, &ContractOptions::default())?.amplitude)
}

/// Bucket elimination: for each vertex in `order`, multiply every tensor that
/// contains it (ascending tensor id), sum the vertex out and put the result
/// back. Remaining rank-0 tensors are multiplied into the amplitude.
pub fn contract_with(
    network: &TensorNetwork,
    order: &ContractionOrder,
    options: &ContractOptions,
) -> Result<Contraction, ContractError> {
    let sliced = network.sliced();
    let q = sliced.variables.len();
    order.validate(q)?;

    let mut pool: Vec<Option<Tensor>> = sliced.tensors.into_iter().map(Some).collect();
    // tensor ids containing each vertex; stale entries are skipped on use
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); q];
    for (slot, t) in pool.iter().enumerate() {
        let t = t.as_ref().expect("fresh pool");
        for &v in &t.vars {
            holders[v].push(slot);
        }
    }

    let mut peak_rank = 0;
    for &v in order.as_slice() {
        let mut bucket: Vec<usize> = std::mem::take(&mut holders[v])
            .into_iter()
            .filter(|&slot| pool[slot].as_ref().is_some_and(|t| t.vars.contains(&v)))
            .collect();
        bucket.sort_unstable();
        bucket.dedup();

        let mut out_vars: Vec<usize> = Vec::new();
        for &slot in &bucket {
            for &u in &pool[slot].as_ref().expect("live").vars {
                if u != v && !out_vars.contains(&u) {
                    out_vars.push(u);
                }
            }
        }
        out_vars.sort_unstable();
        let rank = out_vars.len();
        if rank > options.rank_cap {
            return Err(ContractError::RankCap { rank, cap: options.rank_cap });
        }
        peak_rank = peak_rank.max(rank);

        let members: Vec<Tensor> = bucket.iter().map(|&slot| pool[slot].take().expect("live")).collect();
        let data = sum_out(&members, &out_vars, v);
        let slot = pool.len();
        for &u in &out_vars {
            holders[u].push(slot);
        }
        pool.push(Some(Tensor::new(slot, out_vars, data)));
    }

    let amplitude = pool
        .into_iter()
        .flatten()
        .fold(Complex64::new(1.0, 0.0), |acc, t| {
            debug_assert!(t.vars.is_empty(), "every variable has been eliminated");
            acc * t.data[0]
        });
    Ok(Contraction { amplitude, peak_rank })
}

/// `out[a] = sum_{x in {0,1}} prod_t t[a, v = x]`, with `a` ranging over
/// assignments to `out_vars` (first variable most significant).
fn sum_out(members: &[Tensor], out_vars: &[usize], v: usize) -> Vec<Complex64> {
    let rank = out_vars.len();
    // For each tensor and each of its variables: which bit of the combined
    // index `(a << 1) | x` feeds it.
    let shifts: Vec<Vec<u32>> = members
        .iter()
        .map(|t| {
            t.vars
                .iter()
                .map(|&u| {
                    if u == v {
                        0
                    } else {
                        let pos = out_vars.iter().position(|&w| w == u).expect("var in union");
                        (rank - pos) as u32
                    }
                })
                .collect()
        })
        .collect();

    (0..1usize << rank)
        .map(|a| {
            let mut acc = Complex64::new(0.0, 0.0);
            for x in 0..2usize {
                let combined = (a << 1) | x;
                let mut prod = Complex64::new(1.0, 0.0);
                for (t, sh) in members.iter().zip(&shifts) {
                    let idx = sh.iter().fold(0usize, |i, &s| (i << 1) | ((combined >> s) & 1));
                    prod *= t.data[idx];
                }
                acc += prod;
            }
            acc
        })
        .collect()
}

/// Evaluates the network sum by enumerating all `2^q` assignments of the
/// unfixed variables.
pub fn direct_sum(network: &TensorNetwork) -> Result<Amplitude, ContractError> {
    let sliced = network.sliced();
    let q = sliced.variables.len();
    if q > ORACLE_MAX_BITS {
        return Err(ContractError::TooLarge { count: q, max: ORACLE_MAX_BITS });
    }
    let tensors = sliced.tensors;
    let mut total = Complex64::new(0.0, 0.0);
    for assignment in 0..1usize << q {
        let mut path = Complex64::new(1.0, 0.0);
        for t in &tensors {
            let idx = t.vars.iter().fold(0usize, |i, &u| (i << 1) | ((assignment >> u) & 1));
            path *= t.data[idx];
            if path == Complex64::new(0.0, 0.0) {
                break;
            }
        }
        total += path;
    }
    Ok(total)
}

/// Full `2^N` state `phase * circuit |0...0>`, qubit 0 as the most significant bit.
pub fn statevector(circuit: &Circuit) -> Result<Vec<Complex64>, ContractError> {
    let n = circuit.qubit_count();
    if n > ORACLE_MAX_BITS {
        return Err(ContractError::TooLarge { count: n, max: ORACLE_MAX_BITS });
    }
    let mut state = vec![Complex64::new(0.0, 0.0); 1 << n];
    state[0] = Complex64::new(1.0, 0.0);
    for gate in circuit.gates() {
        apply_gate(&mut state, n, gate);
    }
    let phase = circuit.phase();
    for amp in &mut state {
        *amp *= phase;
    }
    Ok(state)
}

pub fn statevector_amplitude(circuit: &Circuit, bits: &[u8]) -> Result<Amplitude, ContractError> {
    let n = circuit.qubit_count();
    if bits.len() != n {
        return Err(ContractError::BitstringLength { expected: n, got: bits.len() });
    }
    let state = statevector(circuit)?;
    let idx = bits.iter().fold(0usize, |i, &b| (i << 1) | (b & 1) as usize);
    Ok(state[idx])
}

fn apply_gate(state: &mut [Complex64], n: usize, gate: &Gate) {
    let m = gate.matrix();
    let masks: Vec<usize> = gate.qubits().iter().map(|&q| 1 << (n - 1 - q)).collect();
    let k = masks.len();
    let all: usize = masks.iter().sum();
    let mut local = [Complex64::new(0.0, 0.0); 4];
    let mut index = [0usize; 4];
    for base in 0..state.len() {
        if base & all != 0 {
            continue;
        }
        for s in 0..1 << k {
            index[s] = masks
                .iter()
                .enumerate()
                .fold(base, |i, (j, &mask)| if (s >> (k - 1 - j)) & 1 == 1 { i | mask } else { i });
            local[s] = state[index[s]];
        }
        for r in 0..1 << k {
            state[index[r]] = (0..1 << k).map(|c| m.get(r, c) * local[c]).sum();
        }
    }
}
