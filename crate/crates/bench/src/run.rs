//! Benchmark sweeps and the CSV row schema.

use std::io;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use diagtn::{
    build_network, contract_with, line_graph, rgreedy_with, ContractOptions, PipelineMode, QaoaParams,
};

use crate::graphgen::random_regular_graph;
use crate::spec::BenchSpec;

/// One `(graph seed, n, p, mode)` cell. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub graph_seed: u64,
    pub n: usize,
    pub degree: usize,
    pub p: usize,
    pub mode: String,
    pub n_repeats: usize,
    pub temp: f64,
    pub order_seconds: Option<f64>,
    pub width: Option<usize>,
    pub log2_flops_2c: Option<f64>,
    pub memory_bytes: Option<f64>,
    pub contracted: bool,
    pub amp_re: Option<f64>,
    pub amp_im: Option<f64>,
    pub contract_seconds: Option<f64>,
    /// Empty unless the cell failed.
    pub error: Option<String>,
}

pub const CSV_HEADER: &str = "graph_seed,n,degree,p,mode,n_repeats,temp,order_seconds,width,log2_flops_2c,memory_bytes,contracted,amp_re,amp_im,contract_seconds,error";

impl BenchRow {
    fn empty(spec: &BenchSpec, seed: u64, n: usize, p: usize, mode: PipelineMode) -> Self {
        BenchRow {
            graph_seed: seed,
            n,
            degree: spec.degree,
            p,
            mode: mode.name().to_string(),
            n_repeats: spec.ordering.n_repeats,
            temp: spec.ordering.temp,
            order_seconds: None,
            width: None,
            log2_flops_2c: None,
            memory_bytes: None,
            contracted: false,
            amp_re: None,
            amp_im: None,
            contract_seconds: None,
            error: None,
        }
    }

    pub fn pipeline_mode(&self) -> Option<PipelineMode> {
        self.mode.parse().ok()
    }

    /// Row-level invariants: cost columns follow from the width and the
    /// amplitude columns are present exactly when the cell was contracted.
    pub fn is_consistent(&self) -> bool {
        let cost_ok = match self.width {
            Some(w) => {
                self.log2_flops_2c == Some(w as f64) && self.memory_bytes == Some(16.0 * 2f64.powi(w as i32))
            }
            None => self.log2_flops_2c.is_none() && self.memory_bytes.is_none(),
        };
        let amp_ok = self.contracted == (self.amp_re.is_some() && self.amp_im.is_some())
            && self.contracted == self.contract_seconds.is_some();
        cost_ok && amp_ok
    }

    /// Copy with the wall-clock columns cleared.
    pub fn without_timings(&self) -> BenchRow {
        BenchRow {
            order_seconds: None,
            contract_seconds: None,
            ..self.clone()
        }
    }
}

/// Graph, circuit, network, line graph, ordering and optionally contraction
/// for one cell. Failures are recorded in the row.
pub fn run_cell(spec: &BenchSpec, seed: u64, n: usize, p: usize, mode: PipelineMode) -> BenchRow {
    let mut row = BenchRow::empty(spec, seed, n, p, mode);
    let graph = match random_regular_graph(n, spec.degree, seed) {
        Ok(g) => g,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let bits = vec![0u8; n];
    let network = match build_network(&graph, &QaoaParams::benchmark(p), mode, &bits) {
        Ok(net) => net,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };

    let start = Instant::now();
    let lg = line_graph(&network);
    let (order, report) = match rgreedy_with(&lg, &spec.ordering) {
        Ok(r) => r,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.order_seconds = Some(start.elapsed().as_secs_f64());
    row.width = Some(report.width);
    row.log2_flops_2c = Some(report.log2_flops());
    row.memory_bytes = Some(report.memory_bytes);

    if spec.contract && report.width <= spec.rank_cap {
        let start = Instant::now();
        match contract_with(&network, &order, &ContractOptions { rank_cap: spec.rank_cap }) {
            Ok(c) => {
                row.contracted = true;
                row.amp_re = Some(c.amplitude.re);
                row.amp_im = Some(c.amplitude.im);
                row.contract_seconds = Some(start.elapsed().as_secs_f64());
            }
            Err(e) => row.error = Some(e.to_string()),
        }
    }
    row
}

/// Runs every cell of the spec; rows are ordered by `(seed, n, p, mode)`.
pub fn run_benchmark(spec: &BenchSpec) -> Vec<BenchRow> {
    spec.cells()
        .into_par_iter()
        .map(|(seed, n, p, mode)| run_cell(spec, seed, n, p, mode))
        .collect()
}

pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRow>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}
