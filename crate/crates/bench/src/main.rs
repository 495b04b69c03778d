use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use diagtn::contraction::{ContractError, DEFAULT_RANK_CAP, ORACLE_MAX_BITS};
use diagtn::format::{parse_bits, parse_circuit, parse_graph, write_circuit, write_graph, write_order};
use diagtn::{
    build_qaoa_maxcut_circuit, circuit_to_network, contract_with, line_graph, network_stats, rgreedy_order,
    statevector_amplitude, ContractOptions, PipelineMode, QaoaParams,
};
use diagtn_bench::{random_regular_graph, read_csv, run_benchmark, summarize, write_csv, BenchSpec};

#[derive(Parser)]
#[command(name = "diagtn", version, about = "Tensor-network amplitudes of QAOA MaxCut circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct OrderArgs {
    #[arg(long, default_value_t = 10)]
    n_repeats: usize,
    #[arg(long, default_value_t = 0.02)]
    temp: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Random d-regular graph.
    GenGraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// QAOA MaxCut circuit for a graph file.
    Circuit {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: usize,
        /// Comma-separated angles; defaults to 0.3 + 0.1 q.
        #[arg(long, value_delimiter = ',')]
        gamma: Option<Vec<f64>>,
        /// Comma-separated angles; defaults to 0.5 - 0.05 q.
        #[arg(long, value_delimiter = ',')]
        beta: Option<Vec<f64>>,
        #[arg(long)]
        fused: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Contraction cost of a circuit's amplitude network.
    Cost {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, default_value = "zz+diagonal")]
        mode: String,
        #[arg(long)]
        bits: Option<String>,
        #[command(flatten)]
        order: OrderArgs,
        /// Write the elimination order, one vertex per line.
        #[arg(long)]
        order_out: Option<PathBuf>,
    },
    /// Single amplitude by tensor-network contraction.
    Amplitude {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        bits: Option<String>,
        #[arg(long, default_value = "zz+diagonal")]
        mode: String,
        /// Also evaluate by dense state-vector simulation and print the difference.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_RANK_CAP)]
        rank_cap: usize,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Run a benchmark sweep described by a key = value spec file.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Aggregate a benchmark CSV into markdown and CSV tables.
    Summarize {
        #[arg(long)]
        csv: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

enum CliError {
    Input(String),
    Infeasible(String),
}

type CliResult<T> = Result<T, CliError>;

fn input<E: ToString>(context: &str) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::Input(format!("{context}: {}", e.to_string()))
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(input(&path.display().to_string()))
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(input(&path.display().to_string())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_pipeline(circuit: &Path, mode: &str, bits: Option<&str>) -> CliResult<(diagtn::Circuit, PipelineMode, Vec<u8>)> {
    let mode: PipelineMode = mode.parse().map_err(input("--mode"))?;
    let text = read(circuit)?;
    let circ = parse_circuit(&text).map_err(input(&circuit.display().to_string()))?;
    let circ = mode.prepare(&circ);
    let bits = match bits {
        Some(b) => parse_bits(b).map_err(input("--bits"))?,
        None => vec![0; circ.qubit_count()],
    };
    if bits.len() != circ.qubit_count() {
        return Err(CliError::Input(format!(
            "--bits has {} bit(s), circuit has {} qubit(s)",
            bits.len(),
            circ.qubit_count()
        )));
    }
    Ok((circ, mode, bits))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::GenGraph { n, d, seed, output } => {
            let g = random_regular_graph(n, d, seed).map_err(input("gen-graph"))?;
            emit(&write_graph(&g), output.as_deref())
        }
        Command::Circuit { graph, p, gamma, beta, fused, output } => {
            let text = read(&graph)?;
            let g = parse_graph(&text).map_err(input(&graph.display().to_string()))?;
            let defaults = QaoaParams::benchmark(p);
            let gammas = gamma.unwrap_or_else(|| defaults.gammas().to_vec());
            let betas = beta.unwrap_or_else(|| defaults.betas().to_vec());
            if gammas.len() != p || betas.len() != p {
                return Err(CliError::Input(format!(
                    "--gamma and --beta need {p} value(s) each, got {} and {}",
                    gammas.len(),
                    betas.len()
                )));
            }
            let params = QaoaParams::new(gammas, betas).map_err(input("circuit"))?;
            let circ = build_qaoa_maxcut_circuit(&g, &params, fused).map_err(input("circuit"))?;
            emit(&write_circuit(&circ), output.as_deref())
        }
        Command::Cost { circuit, mode, bits, order, order_out } => {
            let (circ, mode, bits) = load_pipeline(&circuit, &mode, bits.as_deref())?;
            let net = circuit_to_network(&circ, mode.network_mode(), &bits).map_err(input("network"))?;
            let stats = network_stats(&net);
            let start = Instant::now();
            let lg = line_graph(&net);
            let (ord, report) = rgreedy_order(&lg, order.n_repeats, order.temp, order.seed).map_err(input("ordering"))?;
            let secs = start.elapsed().as_secs_f64();
            println!("mode: {mode}");
            println!("tensors: {}", stats.tensor_count);
            println!("variables: {}", stats.variable_count);
            println!("line_graph_vertices: {}", lg.vertex_count());
            println!("width: {}", report.width);
            println!("flops_2c: {:e}", report.flops_2c);
            println!("flops_sum: {:e}", report.flops_sum);
            println!("memory_bytes: {:e}", report.memory_bytes);
            println!("order_seconds: {secs:.3}");
            if let Some(path) = order_out {
                emit(&write_order(&ord), Some(&path))?;
            }
            Ok(())
        }
        Command::Amplitude { circuit, bits, mode, oracle, rank_cap, order } => {
            let (circ, mode, bits) = load_pipeline(&circuit, &mode, bits.as_deref())?;
            if oracle && circ.qubit_count() > ORACLE_MAX_BITS {
                return Err(CliError::Input(format!(
                    "--oracle supports at most {ORACLE_MAX_BITS} qubits, circuit has {}",
                    circ.qubit_count()
                )));
            }
            let net = circuit_to_network(&circ, mode.network_mode(), &bits).map_err(input("network"))?;
            let lg = line_graph(&net);
            let (ord, _) = rgreedy_order(&lg, order.n_repeats, order.temp, order.seed).map_err(input("ordering"))?;
            let amp = match contract_with(&net, &ord, &ContractOptions { rank_cap }) {
                Ok(c) => c.amplitude,
                Err(e @ ContractError::RankCap { .. }) => return Err(CliError::Infeasible(e.to_string())),
                Err(e) => return Err(CliError::Input(e.to_string())),
            };
            println!("amplitude: {:.17e} {:+.17e}", amp.re, amp.im);
            if oracle {
                let reference = statevector_amplitude(&circ, &bits).map_err(input("oracle"))?;
                println!("oracle: {:.17e} {:+.17e}", reference.re, reference.im);
                println!("difference: {:e}", (amp - reference).norm());
            }
            Ok(())
        }
        Command::Bench { spec, output } => {
            let text = read(&spec)?;
            let spec = BenchSpec::parse(&text).map_err(input(&spec.display().to_string()))?;
            let rows = run_benchmark(&spec);
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).map_err(input("csv"))?;
            emit(&String::from_utf8(buf).expect("csv is utf-8"), output.as_deref())
        }
        Command::Summarize { csv, output } => {
            let file = fs::File::open(&csv).map_err(input(&csv.display().to_string()))?;
            let rows = read_csv(file).map_err(input(&csv.display().to_string()))?;
            if rows.is_empty() {
                return Err(CliError::Input(format!("{}: no rows", csv.display())));
            }
            let summary = summarize(&rows);
            fs::create_dir_all(&output).map_err(input(&output.display().to_string()))?;
            emit(&summary.markdown, Some(&output.join("summary.md")))?;
            emit(&summary.aggregate_csv, Some(&output.join("aggregate.csv")))?;
            emit(&summary.feasibility_csv, Some(&output.join("feasibility.csv")))?;
            print!("{}", summary.markdown);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Infeasible(msg)) => {
            eprintln!("infeasible: {msg}");
            ExitCode::from(2)
        }
    }
}
