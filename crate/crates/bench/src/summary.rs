//! Aggregation of benchmark rows into per-configuration statistics and
//! memory-budget feasibility tables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use diagtn::ordering::{LAPTOP_WIDTH_BUDGET, SUPERCOMPUTER_WIDTH_BUDGET};
use diagtn::PipelineMode;

use crate::run::BenchRow;

pub const BUDGETS: [(&str, usize); 2] = [("laptop", LAPTOP_WIDTH_BUDGET), ("supercomputer", SUPERCOMPUTER_WIDTH_BUDGET)];

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[mid] } else { 0.5 * (v[mid - 1] + v[mid]) })
}

/// Population standard deviation (zero for a single sample).
pub fn std_dev(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / values.len() as f64;
    Some(var.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub n: usize,
    pub p: usize,
    pub mode: PipelineMode,
    pub count: usize,
    pub median_log2_flops: f64,
    pub mean_log2_flops: f64,
    pub std_log2_flops: f64,
}

/// Widths grouped by `(n, p, mode)` over seeds; failed rows are skipped.
fn widths(rows: &[BenchRow]) -> BTreeMap<(usize, usize, PipelineMode), Vec<f64>> {
    let mut groups: BTreeMap<_, Vec<f64>> = BTreeMap::new();
    for row in rows {
        if let (Some(mode), Some(w)) = (row.pipeline_mode(), row.log2_flops_2c) {
            groups.entry((row.n, row.p, mode)).or_default().push(w);
        }
    }
    groups
}

pub fn aggregate(rows: &[BenchRow]) -> Vec<Aggregate> {
    widths(rows)
        .into_iter()
        .map(|((n, p, mode), ws)| Aggregate {
            n,
            p,
            mode,
            count: ws.len(),
            median_log2_flops: median(&ws).expect("non-empty group"),
            mean_log2_flops: ws.iter().sum::<f64>() / ws.len() as f64,
            std_log2_flops: std_dev(&ws).expect("non-empty group"),
        })
        .collect()
}

/// Largest `p` at node count `n` whose median width fits the budget.
pub fn max_feasible_p(rows: &[BenchRow], n: usize, mode: PipelineMode, budget: usize) -> Option<usize> {
    aggregate(rows)
        .into_iter()
        .filter(|a| a.n == n && a.mode == mode && a.median_log2_flops <= budget as f64)
        .map(|a| a.p)
        .max()
}

/// Largest `n` at depth `p` whose median width fits the budget.
pub fn max_feasible_n(rows: &[BenchRow], p: usize, mode: PipelineMode, budget: usize) -> Option<usize> {
    aggregate(rows)
        .into_iter()
        .filter(|a| a.p == p && a.mode == mode && a.median_log2_flops <= budget as f64)
        .map(|a| a.n)
        .max()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub markdown: String,
    pub aggregate_csv: String,
    pub feasibility_csv: String,
}

fn cell(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn summarize(rows: &[BenchRow]) -> Summary {
    let aggs = aggregate(rows);
    let modes: BTreeSet<PipelineMode> = aggs.iter().map(|a| a.mode).collect();
    let ns: BTreeSet<usize> = aggs.iter().map(|a| a.n).collect();
    let ps: BTreeSet<usize> = aggs.iter().map(|a| a.p).collect();

    let mut md = String::from("# Benchmark summary\n\n## log2 FLOPs (contraction width) by configuration\n\n");
    md.push_str("| n | p | mode | graphs | median | mean | 1-sigma |\n|---|---|---|---|---|---|---|\n");
    let mut agg_csv = String::from("n,p,mode,count,median_log2_flops,mean_log2_flops,std_log2_flops\n");
    for a in &aggs {
        let _ = writeln!(
            md,
            "| {} | {} | {} | {} | {} | {:.3} | {:.3} |",
            a.n, a.p, a.mode, a.count, a.median_log2_flops, a.mean_log2_flops, a.std_log2_flops
        );
        let _ = writeln!(
            agg_csv,
            "{},{},{},{},{},{},{}",
            a.n, a.p, a.mode, a.count, a.median_log2_flops, a.mean_log2_flops, a.std_log2_flops
        );
    }

    let mut feas_csv = String::from("budget_name,width_budget,axis,fixed,mode,max_feasible\n");
    let header = |md: &mut String, first: &str| {
        let _ = write!(md, "| {first} |");
        for m in &modes {
            let _ = write!(md, " {m} |");
        }
        md.push_str("\n|---|");
        for _ in &modes {
            md.push_str("---|");
        }
        md.push('\n');
    };

    md.push_str("\n## Maximum feasible p (median width within budget)\n");
    for &n in &ns {
        let _ = writeln!(md, "\n### n = {n}\n");
        header(&mut md, "machine");
        for (name, budget) in BUDGETS {
            let _ = write!(md, "| {name} (C <= {budget}) |");
            for &m in &modes {
                let v = max_feasible_p(rows, n, m, budget);
                let _ = write!(md, " {} |", cell(v));
                let _ = writeln!(feas_csv, "{name},{budget},p,{n},{m},{}", v.map_or(String::new(), |x| x.to_string()));
            }
            md.push('\n');
        }
    }

    md.push_str("\n## Maximum feasible n (median width within budget)\n");
    for &p in &ps {
        let _ = writeln!(md, "\n### p = {p}\n");
        header(&mut md, "machine");
        for (name, budget) in BUDGETS {
            let _ = write!(md, "| {name} (C <= {budget}) |");
            for &m in &modes {
                let v = max_feasible_n(rows, p, m, budget);
                let _ = write!(md, " {} |", cell(v));
                let _ = writeln!(feas_csv, "{name},{budget},n,{p},{m},{}", v.map_or(String::new(), |x| x.to_string()));
            }
            md.push('\n');
        }
    }

    Summary { markdown: md, aggregate_csv: agg_csv, feasibility_csv: feas_csv }
}
