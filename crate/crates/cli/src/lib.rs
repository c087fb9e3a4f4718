//! Commands behind the `qdd` binary.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdd::circuit::{self, ParseError};
use qdd::{BitString, Circuit, CircuitOp, Engine, EngineConfig, SimError, SimStats};
use serde::Serialize;

pub const TOOL: &str = "qdd";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest circuit whose final state `--dump-state` will print.
pub const MAX_DUMP_QUBITS: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "qdd", version, about = "Decision-diagram quantum circuit simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simulate a circuit file and print a JSON report.
    Run {
        file: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Generate and simulate a benchmark circuit.
    Bench {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Print a generated benchmark circuit in the circuit file format.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Render the final state or one gate of a circuit file as Graphviz DOT.
    Dot {
        file: PathBuf,
        #[arg(long, conflicts_with = "gate", required_unless_present = "gate")]
        state: bool,
        /// Index of a gate op in the file (counting every op from 0).
        #[arg(long)]
        gate: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RunFlags {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub shots: u32,
    /// Include the final amplitudes in the report (at most 20 qubits).
    #[arg(long)]
    pub dump_state: bool,
    /// Also write the report to this file.
    #[arg(long)]
    pub stats_json: Option<PathBuf>,
    #[arg(long)]
    pub gc_threshold: Option<u64>,
}

impl Default for RunFlags {
    fn default() -> Self {
        RunFlags {
            seed: 0,
            shots: 1,
            dump_state: false,
            stats_json: None,
            gc_threshold: None,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    pub family: Family,
    pub qubits: usize,
    /// Basis input for `qft`; all zeros by default.
    #[arg(long)]
    pub input: Option<BitString>,
    /// Marked element for `grover`; all ones by default.
    #[arg(long)]
    pub marked: Option<BitString>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Entangle,
    Qft,
    Grover,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Sim(SimError::NormDrift { .. }) => 3,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Sim(SimError::NormDrift { .. }) => "norm_drift",
            CliError::Sim(_) => "simulation",
            CliError::Usage(_) => "usage",
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub circuit: CircuitInfo,
    pub config: ConfigInfo,
    pub stats: StatsInfo,
    pub histogram: BTreeMap<String, u64>,
    /// Final amplitudes as `[re, im]` pairs, index 0 = all qubits zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<[f64; 2]>>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct CircuitInfo {
    pub name: String,
    pub qubits: usize,
    pub ops: usize,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ConfigInfo {
    pub seed: u64,
    pub shots: u32,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct StatsInfo {
    pub gates_applied: u64,
    pub peak_vector_nodes: usize,
    pub peak_unique_nodes: usize,
    pub wall_time_ms: f64,
    pub norm_deviation: f64,
}

impl From<&SimStats> for StatsInfo {
    fn from(s: &SimStats) -> Self {
        StatsInfo {
            gates_applied: s.gates_applied,
            peak_vector_nodes: s.peak_vector_nodes,
            peak_unique_nodes: s.peak_unique_nodes,
            wall_time_ms: s.wall_time_ms,
            norm_deviation: s.final_norm_deviation,
        }
    }
}

#[derive(Serialize, Debug)]
struct ErrorReport<'a> {
    tool: &'static str,
    version: &'static str,
    error: ErrorInfo<'a>,
}

#[derive(Serialize, Debug)]
struct ErrorInfo<'a> {
    kind: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
}

/// JSON document describing `err`, printed in place of a report.
pub fn error_json(err: &CliError) -> String {
    let (line, column) = match err {
        CliError::Parse { source, .. } => (Some(source.line), Some(source.column)),
        _ => (None, None),
    };
    let report = ErrorReport {
        tool: TOOL,
        version: VERSION,
        error: ErrorInfo {
            kind: err.kind(),
            message: err.to_string(),
            line,
            column,
        },
    };
    serde_json::to_string_pretty(&report).expect("error report serializes")
}

pub fn load_circuit(path: &Path) -> Result<Circuit, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "circuit".to_string());
    circuit::parse(&name, &text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

pub fn generate(family: &FamilyArgs) -> Result<Circuit, CliError> {
    let n = family.qubits;
    let check = |bits: &BitString, flag: &str| {
        if bits.len() == n {
            Ok(())
        } else {
            Err(CliError::Usage(format!("--{flag} has {} bits, expected {n}", bits.len())))
        }
    };
    let built = match family.family {
        Family::Entangle => circuit::entangle(n),
        Family::Qft => {
            let input = family.input.clone().unwrap_or_else(|| BitString::zeros(n));
            check(&input, "input")?;
            circuit::qft(&input)
        }
        Family::Grover => {
            let marked = family.marked.clone().unwrap_or_else(|| BitString::new(vec![true; n]));
            check(&marked, "marked")?;
            circuit::grover(&marked)
        }
    };
    built.map_err(|e| CliError::Usage(e.to_string()))
}

/// Samples `circuit` under `flags` and builds the report.
pub fn simulate(circuit: &Circuit, flags: &RunFlags) -> Result<RunReport, CliError> {
    let mut config = EngineConfig {
        seed: flags.seed,
        shots: flags.shots,
        ..Default::default()
    };
    if let Some(t) = flags.gc_threshold {
        config.gc_threshold = usize::try_from(t).unwrap_or(usize::MAX);
    }
    let mut engine = Engine::new(config);
    let out = engine.sample(circuit)?;
    let state = if flags.dump_state && circuit.qubits() <= MAX_DUMP_QUBITS {
        let amps = engine
            .universe()
            .vector_to_dense(out.state, circuit.qubits())
            .expect("qubit count checked");
        Some(amps.iter().map(|a| [a.re, a.im]).collect())
    } else {
        None
    };
    Ok(RunReport {
        tool: TOOL,
        version: VERSION,
        circuit: CircuitInfo {
            name: circuit.name().to_string(),
            qubits: circuit.qubits(),
            ops: circuit.ops().len(),
        },
        config: ConfigInfo {
            seed: flags.seed,
            shots: flags.shots,
        },
        stats: StatsInfo::from(&out.stats),
        histogram: out.stats.histogram,
        state,
    })
}

pub fn dot(circuit: &Circuit, state: bool, gate: Option<usize>, seed: u64) -> Result<String, CliError> {
    let mut engine = Engine::new(EngineConfig {
        seed,
        ..Default::default()
    });
    if state {
        let out = engine.run(circuit)?;
        return Ok(engine.universe().vector_to_dot(out.state));
    }
    let index = gate.ok_or_else(|| CliError::Usage("either --state or --gate is required".into()))?;
    match circuit.ops().get(index) {
        Some(CircuitOp::Gate(spec)) => {
            let g = engine
                .gate_dd(circuit.qubits(), spec)
                .map_err(|source| SimError::Gate { op_index: index, source })?;
            Ok(engine.universe().matrix_to_dot(g))
        }
        Some(_) => Err(CliError::Usage(format!("op {index} is a measurement, not a gate"))),
        None => Err(CliError::Usage(format!(
            "op {index} out of range, circuit has {} ops",
            circuit.ops().len()
        ))),
    }
}

fn emit_report(report: &RunReport, flags: &RunFlags) -> Result<String, CliError> {
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    if let Some(path) = &flags.stats_json {
        fs::write(path, format!("{json}\n")).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(json)
}

/// Runs one command and returns what goes to standard output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Run { file, flags } => {
            let circuit = load_circuit(file)?;
            emit_report(&simulate(&circuit, flags)?, flags)
        }
        Command::Bench { family, flags } => {
            let circuit = generate(family)?;
            emit_report(&simulate(&circuit, flags)?, flags)
        }
        Command::Gen { family } => {
            let circuit = generate(family)?;
            circuit::serialize(&circuit).map_err(|e| CliError::Usage(e.to_string()))
        }
        Command::Dot {
            file,
            state,
            gate,
            seed,
        } => {
            let circuit = load_circuit(file)?;
            dot(&circuit, *state, *gate, *seed)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let parse_err = circuit::parse("x", "h 0\n").unwrap_err();
        let parse = CliError::Parse {
            path: "x".into(),
            source: parse_err,
        };
        assert_eq!(parse.exit_code(), 2);
        let drift = CliError::Sim(SimError::NormDrift {
            op_index: 3,
            deviation: 1e-6,
        });
        assert_eq!(drift.exit_code(), 3);
        assert_eq!(CliError::Usage("u".into()).exit_code(), 1);
        let json: serde_json::Value = serde_json::from_str(&error_json(&drift)).unwrap();
        assert_eq!(json["error"]["kind"], "norm_drift");
    }

    #[test]
    fn report_for_generated_entangle() {
        let c = generate(&FamilyArgs {
            family: Family::Entangle,
            qubits: 3,
            input: None,
            marked: None,
        })
        .unwrap();
        let report = simulate(
            &c,
            &RunFlags {
                shots: 100,
                dump_state: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(report.circuit.ops, 3);
        assert_eq!(report.stats.gates_applied, 3);
        assert_eq!(report.histogram.values().sum::<u64>(), 100);
        let state = report.state.unwrap();
        assert!((state[0][0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((state[7][0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }
}
