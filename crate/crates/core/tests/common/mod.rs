#![allow(dead_code)]

use diagtn::{Circuit, Gate, ProblemGraph};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn gate_strategy(n: usize, fused_kinds: bool) -> impl Strategy<Value = Gate> {
    let kinds = if fused_kinds { 5u8 } else { 3u8 };
    (0..kinds, 0..n, 0..n.max(2) - 1, -7.0f64..7.0).prop_map(move |(k, a, off, t)| {
        // second qubit distinct from the first
        let b = (a + 1 + off) % n;
        match k {
            0 => Gate::H(a),
            1 => Gate::ZPow(a, t),
            2 if n > 1 => Gate::Cnot(a, b),
            2 => Gate::H(a),
            3 => Gate::XPow(a, t),
            _ if n > 1 => Gate::Zz(a, b, t),
            _ => Gate::ZPow(a, t),
        }
    })
}

/// Random circuits over {H, ZPOW, CNOT}, or the full gate set when `fused_kinds`.
pub fn circuit_strategy(max_qubits: usize, max_gates: usize, fused_kinds: bool) -> impl Strategy<Value = Circuit> {
    (1..=max_qubits).prop_flat_map(move |n| {
        prop::collection::vec(gate_strategy(n, fused_kinds), 0..=max_gates)
            .prop_map(move |gates| Circuit::from_parts(n, gates, one()).unwrap())
    })
}

/// Circuits biased toward the fusible patterns: random mixtures of QAOA-style
/// blocks and stray gates.
pub fn patterned_circuit(n: usize, blocks: usize, rng: &mut impl Rng) -> Circuit {
    let mut gates = Vec::new();
    for _ in 0..blocks {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let t = rng.gen_range(-4.0..4.0);
        match rng.gen_range(0..4) {
            0 => gates.extend([Gate::Cnot(a, b), Gate::ZPow(b, t), Gate::Cnot(a, b)]),
            1 => gates.extend([Gate::H(a), Gate::ZPow(a, t), Gate::H(a)]),
            2 => gates.push(Gate::H(a)),
            _ => gates.push(Gate::ZPow(b, t)),
        }
    }
    // interleave by shuffling a few adjacent pairs that touch disjoint qubits
    for _ in 0..gates.len() {
        if gates.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..gates.len() - 1);
        let qa = gates[i].qubits();
        if !gates[i + 1].qubits().iter().any(|q| qa.contains(q)) {
            gates.swap(i, i + 1);
        }
    }
    Circuit::from_parts(n, gates, one()).unwrap()
}

/// Uniform random simple 3-regular graph by rejection over stub pairings.
pub fn cubic_graph(n: usize, seed: u64) -> ProblemGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
    loop {
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
        edges.sort();
        let simple = edges.iter().all(|&(u, v)| u != v) && edges.windows(2).all(|w| w[0] != w[1]);
        if simple {
            return ProblemGraph::new(n, edges).unwrap();
        }
    }
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
