mod common;

use common::{circuit_strategy, cubic_graph, max_diff, patterned_circuit};
use diagtn::{build_qaoa_maxcut_circuit, fuse_zz, gate_matrix, statevector, Gate, ProblemGraph, QaoaParams};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fusion_preserves_state(circ in circuit_strategy(8, 40, false)) {
        let fused = fuse_zz(&circ);
        let a = statevector(&circ).unwrap();
        let b = statevector(&fused).unwrap();
        prop_assert!(max_diff(&a, &b) <= 1e-12);
        prop_assert_eq!(fuse_zz(&fused), fused);
    }

    #[test]
    fn fusion_on_mixed_gate_sets(circ in circuit_strategy(6, 30, true)) {
        let fused = fuse_zz(&circ);
        prop_assert!(max_diff(&statevector(&circ).unwrap(), &statevector(&fused).unwrap()) <= 1e-12);
        prop_assert!(fused.len() <= circ.len());
    }
}

#[test]
fn fusion_preserves_state_on_patterned_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let n = rng.gen_range(2..=10);
        let circ = patterned_circuit(n, rng.gen_range(1..30), &mut rng);
        let fused = fuse_zz(&circ);
        assert!(fused.len() < circ.len() || circ.len() < 3);
        let d = max_diff(&statevector(&circ).unwrap(), &statevector(&fused).unwrap());
        assert!(d <= 1e-12, "diff {d}");
    }
}

#[test]
fn gate_matrices_are_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let t: f64 = rng.gen_range(-50.0..50.0);
        for g in [Gate::H(0), Gate::ZPow(0, t), Gate::XPow(0, t), Gate::Cnot(0, 1), Gate::Zz(0, 1, t)] {
            assert!(gate_matrix(&g).is_unitary(1e-12), "{g}");
        }
    }
}

#[test]
fn gate_counts_follow_formula() {
    let graphs = vec![
        ProblemGraph::complete(4).unwrap(),
        ProblemGraph::new(5, vec![(0, 1), (3, 4)]).unwrap(),
        ProblemGraph::new(1, vec![]).unwrap(),
        cubic_graph(12, 3),
    ];
    for g in &graphs {
        let (v, e) = (g.node_count(), g.edges().len());
        for p in 0..4 {
            let params = QaoaParams::benchmark(p);
            let unfused = build_qaoa_maxcut_circuit(g, &params, false).unwrap();
            let fused = build_qaoa_maxcut_circuit(g, &params, true).unwrap();
            assert_eq!(unfused.len(), v + p * (3 * e + 3 * v));
            assert_eq!(fused.len(), v + p * (e + v));
        }
    }
}

#[test]
fn builder_fused_equals_fusion_pass() {
    for seed in 0..10 {
        let g = cubic_graph(10, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = rng.gen_range(0..4);
        let params = QaoaParams::new(
            (0..p).map(|_| rng.gen_range(-3.0..3.0)).collect(),
            (0..p).map(|_| rng.gen_range(-3.0..3.0)).collect(),
        )
        .unwrap();
        let built = build_qaoa_maxcut_circuit(&g, &params, true).unwrap();
        let passed = fuse_zz(&build_qaoa_maxcut_circuit(&g, &params, false).unwrap());
        assert_eq!(built.gates(), passed.gates());
        assert!((built.phase() - passed.phase()).norm() <= 1e-15);
    }
}
