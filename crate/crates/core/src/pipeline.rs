//! The four circuit/network configurations compared by the benchmarks.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::circuit::{build_qaoa_maxcut_circuit, fuse_zz, Circuit, CircuitError, ProblemGraph, QaoaParams};
use crate::network::{circuit_to_network, NetworkError, NetworkMode, TensorNetwork};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),

    #[error(transparent)]
    Network(#[from] NetworkError),

    #[error("unknown mode '{0}' (expected default, diagonal, zz or zz+diagonal)")]
    UnknownMode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PipelineMode {
    /// Unfused circuit, full-matrix tensors.
    Default,
    /// Unfused circuit, diagonal gates simplified.
    Diagonal,
    /// Fused `ZZ`/`XPOW` circuit, full-matrix tensors.
    Zz,
    /// Fused circuit with diagonal simplification.
    ZzDiagonal,
}

impl PipelineMode {
    pub const ALL: [PipelineMode; 4] = [
        PipelineMode::Default,
        PipelineMode::Diagonal,
        PipelineMode::Zz,
        PipelineMode::ZzDiagonal,
    ];

    pub fn fused(self) -> bool {
        matches!(self, PipelineMode::Zz | PipelineMode::ZzDiagonal)
    }

    pub fn network_mode(self) -> NetworkMode {
        match self {
            PipelineMode::Default | PipelineMode::Zz => NetworkMode::Full,
            PipelineMode::Diagonal | PipelineMode::ZzDiagonal => NetworkMode::Diagonal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PipelineMode::Default => "default",
            PipelineMode::Diagonal => "diagonal",
            PipelineMode::Zz => "zz",
            PipelineMode::ZzDiagonal => "zz+diagonal",
        }
    }

    /// Applies the mode's fusion choice to an existing circuit. Fusing is
    /// idempotent, so an already fused circuit passes through; unfused modes
    /// leave the circuit as given.
    pub fn prepare(self, circuit: &Circuit) -> Circuit {
        if self.fused() {
            fuse_zz(circuit)
        } else {
            circuit.clone()
        }
    }
}

impl fmt::Display for PipelineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PipelineMode {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PipelineMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| PipelineError::UnknownMode(s.to_string()))
    }
}

pub fn build_circuit(graph: &ProblemGraph, params: &QaoaParams, mode: PipelineMode) -> Result<Circuit, PipelineError> {
    Ok(build_qaoa_maxcut_circuit(graph, params, mode.fused())?)
}

/// Graph to circuit to network for one configuration.
pub fn build_network(
    graph: &ProblemGraph,
    params: &QaoaParams,
    mode: PipelineMode,
    output_bits: &[u8],
) -> Result<TensorNetwork, PipelineError> {
    let circuit = build_circuit(graph, params, mode)?;
    Ok(circuit_to_network(&circuit, mode.network_mode(), output_bits)?)
}
