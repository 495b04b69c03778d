//! Benchmark harness around `diagtn`: random regular graphs, sweeps over the
//! four circuit/network configurations, CSV output and summary tables.

pub mod graphgen;
pub mod run;
pub mod spec;
pub mod summary;

pub use graphgen::{random_regular_graph, GraphGenError};
pub use run::{read_csv, run_benchmark, run_cell, write_csv, BenchRow};
pub use spec::{BenchSpec, SpecError};
pub use summary::{summarize, Summary};
