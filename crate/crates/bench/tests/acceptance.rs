//! End-to-end acceptance checks. Each test prints one `[PASS]`/`[FAIL]` line.
//!
//! Run with `cargo test -p diagtn-bench --test acceptance -- --nocapture`.

use std::time::Instant;

use diagtn::ordering::{exhaustive_min_width, LAPTOP_WIDTH_BUDGET, SUPERCOMPUTER_WIDTH_BUDGET};
use diagtn::{
    build_circuit, build_network, circuit_to_network, contract, contraction_width, direct_sum, feasible_max_p,
    fuse_zz, greedy_order, line_graph, rgreedy_order, rgreedy_with, statevector, statevector_amplitude, Circuit,
    Gate, LineGraph, NetworkMode, OrderingParams, PipelineMode, QaoaParams,
};
use diagtn_bench::random_regular_graph;
use diagtn_bench::summary::median;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEEDS: [u64; 5] = [0, 1, 2, 3, 4];

fn report(criterion: usize, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {criterion}: {detail}");
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn modes3() -> [PipelineMode; 3] {
    [PipelineMode::Default, PipelineMode::Diagonal, PipelineMode::ZzDiagonal]
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let mut worst_sv = 0.0f64;
    let mut worst_ds = 0.0f64;
    let mut direct_checks = 0;
    let mut instances = 0;
    for (i, n) in [6usize, 8, 10, 12, 14].into_iter().enumerate() {
        for p in [1usize, 2] {
            for rep in 0..2 {
                let seed = 100 + (i * 4 + (p - 1) * 2 + rep) as u64;
                let graph = random_regular_graph(n, 3, seed).unwrap();
                let params = QaoaParams::benchmark(p);
                let bits = vec![0u8; n];
                let reference = statevector_amplitude(&build_circuit(&graph, &params, PipelineMode::Default).unwrap(), &bits).unwrap();
                for mode in PipelineMode::ALL {
                    let net = build_network(&graph, &params, mode, &bits).unwrap();
                    let lg = line_graph(&net);
                    let (order, _) = rgreedy_with(&lg, &OrderingParams::default()).unwrap();
                    let amp = contract(&net, &order).unwrap();
                    worst_sv = worst_sv.max((amp - reference).norm());
                    if lg.vertex_count() <= 24 {
                        worst_ds = worst_ds.max((amp - direct_sum(&net).unwrap()).norm());
                        direct_checks += 1;
                    }
                }
                instances += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = instances == 20 && worst_sv <= 1e-10 && worst_ds <= 1e-12 && secs < 120.0;
    report(
        1,
        pass,
        format!(
            "{instances} instances x 4 modes, max |tn - statevector| = {worst_sv:.2e} (tol 1e-10), \
             max |tn - direct_sum| = {worst_ds:.2e} over {direct_checks} networks (tol 1e-12), {secs:.1}s"
        ),
    );
}

/// Random {H, ZPOW, CNOT} circuit with a mix of fusible motifs and stray gates.
fn fusion_circuit(rng: &mut ChaCha8Rng) -> Circuit {
    let n = rng.gen_range(1..=10);
    let mut c = Circuit::new(n);
    for _ in 0..rng.gen_range(0..40) {
        let a = rng.gen_range(0..n);
        let t = rng.gen_range(-6.0..6.0);
        let gates = match (rng.gen_range(0..5), n > 1) {
            (0, true) => {
                let b = (a + rng.gen_range(1..n)) % n;
                vec![Gate::Cnot(a, b), Gate::ZPow(b, t), Gate::Cnot(a, b)]
            }
            (1, _) => vec![Gate::H(a), Gate::ZPow(a, t), Gate::H(a)],
            (2, true) => vec![Gate::Cnot(a, (a + rng.gen_range(1..n)) % n)],
            (3, _) => vec![Gate::ZPow(a, t)],
            _ => vec![Gate::H(a)],
        };
        for g in gates {
            c.push(g).unwrap();
        }
    }
    c
}

#[test]
fn criterion_2_fusion_exactness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    let mut fused_gates = 0;
    for _ in 0..50 {
        let c = fusion_circuit(&mut rng);
        let f = fuse_zz(&c);
        fused_gates += c.len() - f.len();
        let a = statevector(&c).unwrap();
        let b = statevector(&f).unwrap();
        let d = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        worst = worst.max(d);
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        2,
        worst <= 1e-12 && fused_gates > 0 && secs < 60.0,
        format!("50 circuits, {fused_gates} gates removed by fusion, max entrywise diff {worst:.2e} (tol 1e-12), {secs:.1}s"),
    );
}

#[test]
fn criterion_3_diagonal_variable_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut checked = 0;
    for _ in 0..30 {
        let n = rng.gen_range(2..=6);
        let mut c = Circuit::new(n);
        for q in 0..n {
            c.push(Gate::H(q)).unwrap();
        }
        let (mut d1, mut d2) = (0usize, 0usize);
        for _ in 0..rng.gen_range(1..12) {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            let t = rng.gen_range(-3.0..3.0);
            let g = match rng.gen_range(0..5) {
                0 => Gate::ZPow(a, t),
                1 => Gate::Zz(a, b, t),
                2 => Gate::XPow(a, t),
                3 => Gate::Cnot(a, b),
                _ => Gate::H(a),
            };
            match g {
                Gate::ZPow(..) => d1 += 1,
                Gate::Zz(..) => d2 += 1,
                _ => {}
            }
            c.push(g).unwrap();
        }
        let bits: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let full = circuit_to_network(&c, NetworkMode::Full, &bits).unwrap();
        let diag = circuit_to_network(&c, NetworkMode::Diagonal, &bits).unwrap();
        ok &= full.variable_count == diag.variable_count + d1 + 2 * d2;
        let vf = contract(&full, &greedy_order(&line_graph(&full))).unwrap();
        let vd = contract(&diag, &greedy_order(&line_graph(&diag))).unwrap();
        worst = worst.max((vf - vd).norm());
        checked += 1;
    }
    // the worked single-qubit case: a diagonal gate between U and psi
    let c = Circuit::from_parts(1, vec![Gate::H(0), Gate::ZPow(0, 0.9), Gate::XPow(0, -1.3)], Complex64::new(1.0, 0.0))
        .unwrap();
    let full = circuit_to_network(&c, NetworkMode::Full, &[1]).unwrap();
    let diag = circuit_to_network(&c, NetworkMode::Diagonal, &[1]).unwrap();
    ok &= full.variable_count == diag.variable_count + 1;
    worst = worst.max((direct_sum(&full).unwrap() - direct_sum(&diag).unwrap()).norm());
    report(
        3,
        ok && worst <= 1e-12,
        format!("{} networks, variable counts {}, max value diff {worst:.2e} (tol 1e-12)", checked + 1, if ok { "match" } else { "MISMATCH" }),
    );
}

fn median_feasible_p(mode: PipelineMode, budget: usize) -> f64 {
    let ps: Vec<f64> = SEEDS
        .iter()
        .map(|&s| {
            let g = random_regular_graph(40, 3, s).unwrap();
            feasible_max_p(&g, QaoaParams::benchmark, mode, budget, &OrderingParams::default()).unwrap() as f64
        })
        .collect();
    median(&ps).unwrap()
}

#[test]
fn criterion_4_depth_feasibility_table() {
    let start = Instant::now();
    let reference = [(LAPTOP_WIDTH_BUDGET, [2.0, 3.0, 3.0]), (SUPERCOMPUTER_WIDTH_BUDGET, [2.0, 4.0, 5.0])];
    let mut table = Vec::new();
    for (budget, _) in reference {
        let row: Vec<f64> = modes3().iter().map(|&m| median_feasible_p(m, budget)).collect();
        table.push(row);
    }
    let (lap, sup) = (&table[0], &table[1]);
    let ordering = lap[0] <= lap[1] && lap[1] <= lap[2];
    let gaps = lap[2] - lap[0] >= 1.0 && sup[2] - sup[0] >= 2.0;
    let mut off = Vec::new();
    for (row, (budget, expected)) in table.iter().zip(reference) {
        for ((got, want), mode) in row.iter().zip(expected).zip(modes3()) {
            if (got - want).abs() > 1.0 {
                off.push(format!("{mode}@{budget}: {got} vs {want}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        4,
        ordering && gaps && off.is_empty() && secs < 1200.0,
        format!(
            "median max p (default/diagonal/zz+diagonal) C<=28: {:?}, C<=45: {:?}; ordering {}, gaps {}, \
             within +-1 of 2/3/3 and 2/4/5: {}, {secs:.1}s",
            lap,
            sup,
            ok_str(ordering),
            ok_str(gaps),
            if off.is_empty() { "ok".to_string() } else { format!("off [{}]", off.join(", ")) }
        ),
    );
}

fn ok_str(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "violated"
    }
}

fn median_width(n: usize, p: usize, mode: PipelineMode) -> f64 {
    let ws: Vec<f64> = SEEDS
        .iter()
        .map(|&s| {
            let g = random_regular_graph(n, 3, s).unwrap();
            let net = build_network(&g, &QaoaParams::benchmark(p), mode, &vec![0; n]).unwrap();
            rgreedy_with(&line_graph(&net), &OrderingParams::default()).unwrap().1.width as f64
        })
        .collect();
    median(&ws).unwrap()
}

#[test]
fn criterion_5_size_feasibility_table() {
    let start = Instant::now();
    let largest: Vec<Option<usize>> = modes3()
        .iter()
        .map(|&m| (100..=200).step_by(10).filter(|&n| median_width(n, 1, m) <= LAPTOP_WIDTH_BUDGET as f64).max())
        .collect();
    // no feasible size counts as below the range
    let v: Vec<i64> = largest.iter().map(|x| x.map_or(90, |n| n as i64)).collect();
    let pass = v[2] >= v[1] && v[1] >= v[0] && v[2] - v[0] >= 30;
    let secs = start.elapsed().as_secs_f64();
    report(
        5,
        pass && secs < 1200.0,
        format!("largest n at p=1, C<=28 (default/diagonal/zz+diagonal): {largest:?}, {secs:.1}s"),
    );
}

#[test]
fn criterion_6_speedup_magnitude() {
    let start = Instant::now();
    let gaps: Vec<i64> = SEEDS
        .iter()
        .map(|&s| {
            let g = random_regular_graph(40, 3, s).unwrap();
            let w = |mode| {
                let net = build_network(&g, &QaoaParams::benchmark(5), mode, &[0; 40]).unwrap();
                rgreedy_with(&line_graph(&net), &OrderingParams::default()).unwrap().1.width as i64
            };
            w(PipelineMode::Default) - w(PipelineMode::ZzDiagonal)
        })
        .collect();
    let best = *gaps.iter().max().unwrap();
    let secs = start.elapsed().as_secs_f64();
    report(
        6,
        best >= 20 && secs < 600.0,
        format!("p=5 width gaps per seed {gaps:?}, best speedup 2^{best} = {:.1e} (need >= 1e6), {secs:.1}s", 2f64.powi(best as i32)),
    );
}

#[test]
fn criterion_7_ordering_sanity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut optimal, mut never_worse) = (0, true);
    for i in 0..100 {
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.15..0.85);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        let lg = LineGraph::from_edges(n, &edges).unwrap();
        let (_, r) = rgreedy_order(&lg, 1000, 0.02, i).unwrap();
        let greedy = contraction_width(&lg, &greedy_order(&lg)).unwrap().width;
        never_worse &= r.width <= greedy;
        if r.width == exhaustive_min_width(&lg).unwrap() {
            optimal += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        7,
        optimal >= 95 && never_worse && secs < 300.0,
        format!("optimal on {optimal}/100 graphs (need >= 95), rgreedy <= greedy: {}, {secs:.1}s", ok_str(never_worse)),
    );
}

#[test]
fn criterion_8_ordering_time() {
    let g = random_regular_graph(160, 3, 0).unwrap();
    let net = build_network(&g, &QaoaParams::benchmark(1), PipelineMode::ZzDiagonal, &[0; 160]).unwrap();
    let start = Instant::now();
    let lg = line_graph(&net);
    let (_, r) = rgreedy_order(&lg, 10, 0.02, 0).unwrap();
    let secs = start.elapsed().as_secs_f64();
    report(
        8,
        secs < 10.0,
        format!("{} vertices, width {}, ordered in {secs:.3}s (limit 10s)", lg.vertex_count(), r.width),
    );
}
