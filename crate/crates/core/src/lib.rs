//! Diagonal-aware tensor-network simulation of QAOA MaxCut amplitudes.
//!
//! The pipeline is: [`circuit`] builds the ansatz (optionally fusing
//! `CNOT-ZPOW-CNOT` into `ZZ` and `H-ZPOW-H` into `XPOW`), [`network`] turns it
//! into a tensor network sliced at an output bitstring (optionally storing
//! diagonal gates as tensors on existing wire variables), [`ordering`] finds
//! an elimination order and its cost, and [`contraction`] evaluates the
//! amplitude.

pub mod circuit;
pub mod contraction;
pub mod format;
pub mod network;
pub mod ordering;
pub mod pipeline;

pub use circuit::{
    build_qaoa_maxcut_circuit, fuse_zz, gate_matrix, is_diagonal, Circuit, CircuitError, Gate, GateKind,
    GateMatrix, ProblemGraph, QaoaParams,
};
pub use contraction::{
    contract, contract_with, direct_sum, statevector, statevector_amplitude, Amplitude, ContractError,
    ContractOptions, Contraction,
};
pub use network::{circuit_to_network, line_graph, network_stats, LineGraph, NetworkMode, Tensor, TensorNetwork};
pub use ordering::{
    contraction_width, feasible_max_p, greedy_order, rgreedy_order, rgreedy_with, ContractionOrder, CostReport, OrderingError,
    OrderingParams,
};
pub use pipeline::{build_circuit, build_network, PipelineError, PipelineMode};
