//! Benchmark specification files: flat `key = value` text.
//!
//! ```text
//! # width sweep at fixed n
//! n = 40
//! degree = 3
//! p = 1..=5
//! modes = default, diagonal, zz, zz+diagonal
//! seeds = 0..=4
//! n_repeats = 10
//! temp = 0.02
//! order_seed = 0
//! contract = false
//! rank_cap = 30
//! ```
//!
//! Integer lists accept comma-separated items, each either a single value,
//! an inclusive range `a..=b`, or a stepped range `a..=b:step`.

use std::str::FromStr;

use thiserror::Error;

use diagtn::contraction::DEFAULT_RANK_CAP;
use diagtn::{OrderingParams, PipelineMode};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("missing required key '{0}'")]
    Missing(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub n: Vec<usize>,
    pub degree: usize,
    pub p: Vec<usize>,
    pub modes: Vec<PipelineMode>,
    pub seeds: Vec<u64>,
    pub ordering: OrderingParams,
    pub contract: bool,
    pub rank_cap: usize,
}

impl Default for BenchSpec {
    fn default() -> Self {
        BenchSpec {
            n: vec![40],
            degree: 3,
            p: vec![1],
            modes: PipelineMode::ALL.to_vec(),
            seeds: (0..5).collect(),
            ordering: OrderingParams::default(),
            contract: false,
            rank_cap: DEFAULT_RANK_CAP,
        }
    }
}

fn int_list<T>(line: usize, value: &str) -> Result<Vec<T>, SpecError>
where
    T: FromStr + Copy + PartialOrd + std::ops::Add<Output = T> + From<u8>,
{
    let err = |msg: String| SpecError::Syntax { line, msg };
    let parse = |s: &str| s.trim().parse::<T>().map_err(|_| err(format!("cannot parse integer from '{}'", s.trim())));
    let mut out = Vec::new();
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, rest)) = item.split_once("..=") {
            let (hi, step) = match rest.split_once(':') {
                Some((hi, step)) => (parse(hi)?, parse(step)?),
                None => (parse(rest)?, T::from(1)),
            };
            if step == T::from(0) {
                return Err(err("range step must be positive".into()));
            }
            let mut x = parse(lo)?;
            while x <= hi {
                out.push(x);
                x = x + step;
            }
        } else {
            out.push(parse(item)?);
        }
    }
    Ok(out)
}

impl BenchSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let mut spec = BenchSpec::default();
        let mut saw_n = false;
        let mut saw_p = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| SpecError::Syntax { line, msg };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected 'key = value', found '{content}'")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "n" => {
                    spec.n = int_list(line, value)?;
                    saw_n = true;
                }
                "degree" | "d" => spec.degree = value.parse().map_err(|_| err(format!("bad degree '{value}'")))?,
                "p" => {
                    spec.p = int_list(line, value)?;
                    saw_p = true;
                }
                "modes" => {
                    spec.modes = value
                        .split(',')
                        .map(|m| m.trim().parse::<PipelineMode>().map_err(|e| err(e.to_string())))
                        .collect::<Result<_, _>>()?;
                }
                "seeds" => spec.seeds = int_list(line, value)?,
                "n_repeats" => {
                    spec.ordering.n_repeats = value.parse().map_err(|_| err(format!("bad n_repeats '{value}'")))?
                }
                "temp" => spec.ordering.temp = value.parse().map_err(|_| err(format!("bad temp '{value}'")))?,
                "order_seed" => {
                    spec.ordering.seed = value.parse().map_err(|_| err(format!("bad order_seed '{value}'")))?
                }
                "contract" => spec.contract = value.parse().map_err(|_| err(format!("bad boolean '{value}'")))?,
                "rank_cap" => spec.rank_cap = value.parse().map_err(|_| err(format!("bad rank_cap '{value}'")))?,
                other => return Err(err(format!("unknown key '{other}'"))),
            }
            if spec.ordering.n_repeats == 0 {
                return Err(err("n_repeats must be >= 1".into()));
            }
            if !(spec.ordering.temp >= 0.0) {
                return Err(err("temp must be >= 0".into()));
            }
        }
        if !saw_n {
            return Err(SpecError::Missing("n"));
        }
        if !saw_p {
            return Err(SpecError::Missing("p"));
        }
        Ok(spec)
    }

    /// `(seed, n, p, mode)` cells in output order.
    pub fn cells(&self) -> Vec<(u64, usize, usize, PipelineMode)> {
        let mut cells = Vec::new();
        for &seed in &self.seeds {
            for &n in &self.n {
                for &p in &self.p {
                    for &mode in &self.modes {
                        cells.push((seed, n, p, mode));
                    }
                }
            }
        }
        cells
    }
}
