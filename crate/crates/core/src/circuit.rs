//! Gates, circuits and the QAOA MaxCut ansatz builder.
//!
//! Convention: `ZPow(t) = diag(1, e^{-it})` and `XPow(t) = H ZPow(t) H`, so that
//! `CNOT(c,t) ZPow(2g on t) CNOT(c,t) = e^{-ig} ZZ(g)` holds exactly. The scalar
//! is tracked in [`Circuit::phase`], which keeps fused and unfused circuits
//! equal as operators rather than equal up to a global phase.

use std::collections::HashSet;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("edge ({0}, {1}) references a node >= node count {2}")]
    NodeOutOfRange(usize, usize, usize),

    #[error("graph must have at least one node")]
    EmptyGraph,

    #[error("gamma and beta vectors differ in length ({0} vs {1})")]
    ParamLengthMismatch(usize, usize),

    #[error("gate {0} acts on qubit {1}, but the circuit has {2} qubit(s)")]
    QubitOutOfRange(String, usize, usize),

    #[error("gate {0} repeats qubit {1}")]
    RepeatedQubit(String, usize),

    #[error("circuit phase must have unit modulus, got |phase| = {0}")]
    PhaseNotUnit(f64),
}

pub type CircuitResult<T> = Result<T, CircuitError>;

/// Simple undirected graph defining a MaxCut instance. Nodes are `0..node_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemGraph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
}

impl ProblemGraph {
    pub fn new(node_count: usize, edges: Vec<(usize, usize)>) -> CircuitResult<Self> {
        if node_count == 0 {
            return Err(CircuitError::EmptyGraph);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u >= node_count || v >= node_count {
                return Err(CircuitError::NodeOutOfRange(u, v, node_count));
            }
            if u == v {
                return Err(CircuitError::SelfLoop(u, v));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(CircuitError::DuplicateEdge(u, v));
            }
        }
        Ok(ProblemGraph { node_count, edges })
    }

    /// Graph with `n` nodes and every pair connected, edges in lexicographic order.
    pub fn complete(n: usize) -> CircuitResult<Self> {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        ProblemGraph::new(n, edges)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| u == node || v == node)
            .count()
    }
}

/// QAOA angle vectors; `p` is their common length.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaParams {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

impl QaoaParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> CircuitResult<Self> {
        if gammas.len() != betas.len() {
            return Err(CircuitError::ParamLengthMismatch(gammas.len(), betas.len()));
        }
        Ok(QaoaParams { gammas, betas })
    }

    /// Fixed benchmark angles: `gamma_q = 0.3 + 0.1 q`, `beta_q = 0.5 - 0.05 q`
    /// for rounds `q = 1..=p`.
    pub fn benchmark(p: usize) -> Self {
        let gammas = (1..=p).map(|q| 0.3 + 0.1 * q as f64).collect();
        let betas = (1..=p).map(|q| 0.5 - 0.05 * q as f64).collect();
        QaoaParams { gammas, betas }
    }

    pub fn p(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    ZPow,
    XPow,
    Cnot,
    Zz,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    /// `Z^t = diag(1, e^{-it})`.
    ZPow(usize, f64),
    /// `X^t = H Z^t H`.
    XPow(usize, f64),
    /// Control, target.
    Cnot(usize, usize),
    /// `e^{i g Z Z} = diag(e^{ig}, e^{-ig}, e^{-ig}, e^{ig})`.
    Zz(usize, usize, f64),
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::ZPow(..) => GateKind::ZPow,
            Gate::XPow(..) => GateKind::XPow,
            Gate::Cnot(..) => GateKind::Cnot,
            Gate::Zz(..) => GateKind::Zz,
        }
    }

    /// Qubits in matrix order: the first one is the most significant bit.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::ZPow(q, _) | Gate::XPow(q, _) => vec![q],
            Gate::Cnot(a, b) | Gate::Zz(a, b, _) => vec![a, b],
        }
    }

    pub fn param(&self) -> Option<f64> {
        match *self {
            Gate::H(_) | Gate::Cnot(..) => None,
            Gate::ZPow(_, t) | Gate::XPow(_, t) | Gate::Zz(_, _, t) => Some(t),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Gate::H(_) | Gate::ZPow(..) | Gate::XPow(..) => 1,
            Gate::Cnot(..) | Gate::Zz(..) => 2,
        }
    }

    pub fn acts_on(&self, qubit: usize) -> bool {
        match *self {
            Gate::H(q) | Gate::ZPow(q, _) | Gate::XPow(q, _) => q == qubit,
            Gate::Cnot(a, b) | Gate::Zz(a, b, _) => a == qubit || b == qubit,
        }
    }

    /// Decided by gate kind, not by inspecting matrix entries.
    pub fn is_diagonal(&self) -> bool {
        matches!(self.kind(), GateKind::ZPow | GateKind::Zz)
    }

    pub fn matrix(&self) -> GateMatrix {
        gate_matrix(self)
    }

    fn validate(&self, qubit_count: usize) -> CircuitResult<()> {
        let qubits = self.qubits();
        for &q in &qubits {
            if q >= qubit_count {
                return Err(CircuitError::QubitOutOfRange(self.to_string(), q, qubit_count));
            }
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(CircuitError::RepeatedQubit(self.to_string(), qubits[0]));
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    /// Same syntax as one gate line of the circuit text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::ZPow(q, t) => write!(f, "ZPOW {q} {t:?}"),
            Gate::XPow(q, t) => write!(f, "XPOW {q} {t:?}"),
            Gate::Cnot(c, t) => write!(f, "CNOT {c} {t}"),
            Gate::Zz(a, b, g) => write!(f, "ZZ {a} {b} {g:?}"),
        }
    }
}

/// Dense row-major square matrix of a 1- or 2-qubit gate.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl GateMatrix {
    pub fn from_rows(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim, "matrix data has wrong length");
        GateMatrix { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        GateMatrix { dim, data }
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let dim = entries.len();
        let mut m = GateMatrix::identity(dim);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * dim + i] = e;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn matmul(&self, rhs: &GateMatrix) -> GateMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        GateMatrix { dim: n, data }
    }

    pub fn scale(&self, s: Complex64) -> GateMatrix {
        GateMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn adjoint(&self) -> GateMatrix {
        let n = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.get(i, j).conj();
            }
        }
        GateMatrix { dim: n, data }
    }

    /// Kronecker product `self ⊗ rhs`; `self` acts on the more significant bits.
    pub fn kron(&self, rhs: &GateMatrix) -> GateMatrix {
        let n = self.dim * rhs.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..rhs.dim {
                    for l in 0..rhs.dim {
                        data[(i * rhs.dim + k) * n + j * rhs.dim + l] =
                            self.get(i, j) * rhs.get(k, l);
                    }
                }
            }
        }
        GateMatrix { dim: n, data }
    }

    pub fn max_abs_diff(&self, other: &GateMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&GateMatrix::identity(self.dim))
            <= tol
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j) == Complex64::new(0.0, 0.0)))
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Matrix of `gate` in the computational basis, first qubit most significant.
pub fn gate_matrix(gate: &Gate) -> GateMatrix {
    let h = FRAC_1_SQRT_2;
    match *gate {
        Gate::H(_) => GateMatrix::from_rows(2, vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]),
        Gate::ZPow(_, t) => GateMatrix::diag(&[c(1.0, 0.0), Complex64::from_polar(1.0, -t)]),
        Gate::XPow(_, t) => {
            // H diag(1, w) H = 1/2 [[1 + w, 1 - w], [1 - w, 1 + w]]
            let w = Complex64::from_polar(1.0, -t);
            let one = c(1.0, 0.0);
            let a = (one + w) * 0.5;
            let b = (one - w) * 0.5;
            GateMatrix::from_rows(2, vec![a, b, b, a])
        }
        Gate::Cnot(..) => {
            let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
            GateMatrix::from_rows(
                4,
                vec![
                    l, o, o, o, //
                    o, l, o, o, //
                    o, o, o, l, //
                    o, o, l, o,
                ],
            )
        }
        Gate::Zz(_, _, g) => {
            let rho = Complex64::from_polar(1.0, g);
            let rho_bar = rho.conj();
            GateMatrix::diag(&[rho, rho_bar, rho_bar, rho])
        }
    }
}

pub fn is_diagonal(gate: &Gate) -> bool {
    gate.is_diagonal()
}

/// Ordered gate list over `qubit_count` qubits with a unit-modulus global phase.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    qubit_count: usize,
    gates: Vec<Gate>,
    phase: Complex64,
}

impl Circuit {
    pub fn new(qubit_count: usize) -> Self {
        Circuit {
            qubit_count,
            gates: Vec::new(),
            phase: c(1.0, 0.0),
        }
    }

    pub fn from_parts(qubit_count: usize, gates: Vec<Gate>, phase: Complex64) -> CircuitResult<Self> {
        if ((phase.norm() - 1.0).abs()) > 1e-12 {
            return Err(CircuitError::PhaseNotUnit(phase.norm()));
        }
        for g in &gates {
            g.validate(qubit_count)?;
        }
        Ok(Circuit {
            qubit_count,
            gates,
            phase,
        })
    }

    pub fn push(&mut self, gate: Gate) -> CircuitResult<()> {
        gate.validate(self.qubit_count)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    fn rotate_phase(&mut self, angle: f64) {
        self.phase *= Complex64::from_polar(1.0, angle);
    }
}

/// Builds the QAOA MaxCut ansatz circuit.
///
/// An initial layer of H on every qubit is followed by `p` rounds. Each round
/// emits the cost layer in edge order and then the mixer layer in ascending
/// qubit order. Unfused rounds use `CNOT, ZPOW(2g), CNOT` per edge and
/// `H, ZPOW(2b), H` per qubit; fused rounds emit `ZZ(g)` per edge (with the
/// matching `e^{-ig}` folded into the phase) and `XPOW(2b)` per qubit.
pub fn build_qaoa_maxcut_circuit(
    graph: &ProblemGraph,
    params: &QaoaParams,
    fused: bool,
) -> CircuitResult<Circuit> {
    if params.gammas.len() != params.betas.len() {
        return Err(CircuitError::ParamLengthMismatch(params.gammas.len(), params.betas.len()));
    }
    let n = graph.node_count();
    let mut circuit = Circuit::new(n);
    for q in 0..n {
        circuit.push(Gate::H(q))?;
    }
    for (&gamma, &beta) in params.gammas.iter().zip(&params.betas) {
        for &(i, j) in graph.edges() {
            if fused {
                circuit.push(Gate::Zz(i, j, gamma))?;
                circuit.rotate_phase(-gamma);
            } else {
                circuit.push(Gate::Cnot(i, j))?;
                circuit.push(Gate::ZPow(j, 2.0 * gamma))?;
                circuit.push(Gate::Cnot(i, j))?;
            }
        }
        for k in 0..n {
            if fused {
                circuit.push(Gate::XPow(k, 2.0 * beta))?;
            } else {
                circuit.push(Gate::H(k))?;
                circuit.push(Gate::ZPow(k, 2.0 * beta))?;
                circuit.push(Gate::H(k))?;
            }
        }
    }
    Ok(circuit)
}

/// Rewrites `CNOT(c,t) ZPOW(2g on t) CNOT(c,t)` into `ZZ(g)` (phase `*= e^{-ig}`)
/// and `H ZPOW(t) H` on a single qubit into `XPOW(t)`.
///
/// Patterns are matched on per-qubit adjacency: the three gates must be
/// consecutive on every qubit they touch, while gates on other qubits may be
/// interleaved. The fused gate takes the position of the pattern's first gate.
/// Overlapping candidates are resolved greedily left to right.
pub fn fuse_zz(circuit: &Circuit) -> Circuit {
    let gates = circuit.gates();
    let next_on = next_gate_on_qubit(circuit);
    let next = |i: usize, q: usize| -> Option<usize> { next_on[i].iter().find(|(qq, _)| *qq == q).and_then(|&(_, n)| n) };

    let mut consumed = vec![false; gates.len()];
    let mut out = Circuit {
        qubit_count: circuit.qubit_count,
        gates: Vec::with_capacity(gates.len()),
        phase: circuit.phase,
    };

    for i in 0..gates.len() {
        if consumed[i] {
            continue;
        }
        match gates[i] {
            Gate::Cnot(ctrl, tgt) => {
                let matched = next(i, tgt).and_then(|j| {
                    let k = next(j, tgt)?;
                    match (gates[j], gates[k]) {
                        (Gate::ZPow(zq, theta), Gate::Cnot(c2, t2))
                            if zq == tgt && c2 == ctrl && t2 == tgt && next(i, ctrl) == Some(k) =>
                        {
                            Some((j, k, theta))
                        }
                        _ => None,
                    }
                });
                if let Some((j, k, theta)) = matched {
                    consumed[j] = true;
                    consumed[k] = true;
                    out.gates.push(Gate::Zz(ctrl, tgt, theta / 2.0));
                    out.rotate_phase(-theta / 2.0);
                    continue;
                }
            }
            Gate::H(q) => {
                let matched = next(i, q).and_then(|j| {
                    let k = next(j, q)?;
                    match (gates[j], gates[k]) {
                        (Gate::ZPow(zq, theta), Gate::H(hq)) if zq == q && hq == q => Some((j, k, theta)),
                        _ => None,
                    }
                });
                if let Some((j, k, theta)) = matched {
                    consumed[j] = true;
                    consumed[k] = true;
                    out.gates.push(Gate::XPow(q, theta));
                    continue;
                }
            }
            _ => {}
        }
        out.gates.push(gates[i]);
    }
    out
}

/// For each gate, the index of the next gate acting on each of its qubits.
fn next_gate_on_qubit(circuit: &Circuit) -> Vec<Vec<(usize, Option<usize>)>> {
    let gates = circuit.gates();
    let mut last_seen: Vec<Option<usize>> = vec![None; circuit.qubit_count];
    let mut next = vec![Vec::new(); gates.len()];
    for i in (0..gates.len()).rev() {
        for q in gates[i].qubits() {
            next[i].push((q, last_seen[q]));
            last_seen[q] = Some(i);
        }
    }
    next
}
