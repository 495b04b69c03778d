//! Plain-text file formats.
//!
//! Graph: a `<node_count> <edge_count>` header followed by one `u v` pair per line.
//!
//! Circuit: a `qubits <N>` header, an optional `phase <re> <im>` line, then one
//! gate per line: `H q`, `ZPOW q t`, `XPOW q t`, `CNOT c t`, `ZZ q1 q2 gamma`.
//! Angles are decimal radians. Blank lines and lines starting with `#` are ignored.
//!
//! Order: one line-graph vertex id per line.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, ProblemGraph};
use crate::ordering::ContractionOrder;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("{0}")]
    Invalid(#[from] CircuitError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            None
        } else {
            Some((i + 1, l.split_whitespace().collect()))
        }
    })
}

fn field<T: FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("cannot parse {what} from '{tok}'")))
}

fn expect_arity(line: usize, toks: &[&str], n: usize) -> Result<(), ParseError> {
    if toks.len() != n {
        return Err(syntax(
            line,
            format!("'{}' expects {} field(s), found {}", toks[0], n - 1, toks.len() - 1),
        ));
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<ProblemGraph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "empty graph file"))?;
    if header.len() != 2 {
        return Err(syntax(hline, "header must be '<node_count> <edge_count>'"));
    }
    let node_count: usize = field(hline, header[0], "node count")?;
    let edge_count: usize = field(hline, header[1], "edge count")?;
    let mut edges = Vec::with_capacity(edge_count);
    let mut seen = HashSet::with_capacity(edge_count);
    let mut last_line = hline;
    for (line, toks) in lines {
        if toks.len() != 2 {
            return Err(syntax(line, "edge line must be 'u v'"));
        }
        let u: usize = field(line, toks[0], "node id")?;
        let v: usize = field(line, toks[1], "node id")?;
        if u >= node_count || v >= node_count {
            return Err(syntax(line, format!("edge ({u}, {v}) out of range for {node_count} node(s)")));
        }
        if u == v {
            return Err(syntax(line, format!("self-loop on node {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(syntax(line, format!("duplicate edge ({u}, {v})")));
        }
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != edge_count {
        return Err(syntax(
            last_line,
            format!("header declares {edge_count} edge(s), found {}", edges.len()),
        ));
    }
    Ok(ProblemGraph::new(node_count, edges)?)
}

pub fn write_graph(graph: &ProblemGraph) -> String {
    let mut out = format!("{} {}\n", graph.node_count(), graph.edges().len());
    for &(u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut lines = content_lines(text).peekable();
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "empty circuit file"))?;
    if header.len() != 2 || header[0] != "qubits" {
        return Err(syntax(hline, "header must be 'qubits <N>'"));
    }
    let qubits: usize = field(hline, header[1], "qubit count")?;
    if qubits == 0 {
        return Err(syntax(hline, "circuit needs at least one qubit"));
    }

    let mut phase = Complex64::new(1.0, 0.0);
    if let Some((line, toks)) = lines.peek() {
        if toks[0] == "phase" {
            let line = *line;
            expect_arity(line, toks, 3)?;
            phase = Complex64::new(field(line, toks[1], "phase re")?, field(line, toks[2], "phase im")?);
            if (phase.norm() - 1.0).abs() > 1e-12 {
                return Err(syntax(line, format!("phase must have unit modulus, got {}", phase.norm())));
            }
            lines.next();
        }
    }

    let mut circuit = Circuit::from_parts(qubits, Vec::new(), phase)?;
    for (line, toks) in lines {
        let gate = match toks[0] {
            "H" => {
                expect_arity(line, &toks, 2)?;
                Gate::H(field(line, toks[1], "qubit")?)
            }
            "ZPOW" => {
                expect_arity(line, &toks, 3)?;
                Gate::ZPow(field(line, toks[1], "qubit")?, field(line, toks[2], "angle")?)
            }
            "XPOW" => {
                expect_arity(line, &toks, 3)?;
                Gate::XPow(field(line, toks[1], "qubit")?, field(line, toks[2], "angle")?)
            }
            "CNOT" => {
                expect_arity(line, &toks, 3)?;
                Gate::Cnot(field(line, toks[1], "control")?, field(line, toks[2], "target")?)
            }
            "ZZ" => {
                expect_arity(line, &toks, 4)?;
                Gate::Zz(
                    field(line, toks[1], "qubit")?,
                    field(line, toks[2], "qubit")?,
                    field(line, toks[3], "angle")?,
                )
            }
            "phase" => return Err(syntax(line, "phase must directly follow the header")),
            other => return Err(syntax(line, format!("unknown gate '{other}'"))),
        };
        circuit.push(gate).map_err(|e| syntax(line, e.to_string()))?;
    }
    Ok(circuit)
}

/// Angles are written with `{:?}` so they round-trip exactly.
pub fn write_circuit(circuit: &Circuit) -> String {
    let mut out = format!("qubits {}\n", circuit.qubit_count());
    let phase = circuit.phase();
    if phase != Complex64::new(1.0, 0.0) {
        let _ = writeln!(out, "phase {:?} {:?}", phase.re, phase.im);
    }
    for g in circuit.gates() {
        let _ = writeln!(out, "{g}");
    }
    out
}

/// Parses an output bitstring such as `0110`; character `i` is qubit `i`.
pub fn parse_bits(text: &str) -> Result<Vec<u8>, ParseError> {
    text.trim()
        .chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(syntax(1, format!("bitstring contains '{other}'"))),
        })
        .collect()
}

pub fn parse_order(text: &str) -> Result<ContractionOrder, ParseError> {
    let seq = content_lines(text)
        .map(|(line, toks)| {
            if toks.len() != 1 {
                return Err(syntax(line, "expected one vertex id per line"));
            }
            field(line, toks[0], "vertex id")
        })
        .collect::<Result<Vec<usize>, _>>()?;
    Ok(ContractionOrder::new(seq))
}

pub fn write_order(order: &ContractionOrder) -> String {
    order.as_slice().iter().map(|v| format!("{v}\n")).collect()
}
