//! Circuit representation, the line-oriented circuit file format and the
//! benchmark circuit generators.

mod generators;
mod parse;

pub use generators::{entangle, grover, grover_iterations, qft};
pub use parse::{parse, serialize, ParseError, ParseErrorKind, SerializeError};

use thiserror::Error;

use crate::gates::{GateError, GateSpec};

/// One step of a circuit, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircuitOp {
    Gate(GateSpec),
    /// Measure one qubit in the computational basis.
    Measure(usize),
    MeasureAll,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error("measured qubit {qubit} out of range for {qubits} qubits")]
    MeasureOutOfRange { qubit: usize, qubits: usize },
    #[error("a circuit needs at least one qubit")]
    NoQubits,
}

/// An ordered list of operations over `qubits` qubits; qubit 0 is the most
/// significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    name: String,
    qubits: usize,
    ops: Vec<CircuitOp>,
}

impl Circuit {
    pub fn new(name: impl Into<String>, qubits: usize) -> Result<Self, CircuitError> {
        if qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        Ok(Circuit {
            name: name.into(),
            qubits,
            ops: Vec::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn gate_count(&self) -> usize {
        self.ops.iter().filter(|op| matches!(op, CircuitOp::Gate(_))).count()
    }

    pub fn push(&mut self, op: CircuitOp) -> Result<&mut Self, CircuitError> {
        match &op {
            CircuitOp::Gate(spec) => spec.check_range(self.qubits)?,
            CircuitOp::Measure(q) if *q >= self.qubits => {
                return Err(CircuitError::MeasureOutOfRange {
                    qubit: *q,
                    qubits: self.qubits,
                })
            }
            _ => {}
        }
        self.ops.push(op);
        Ok(self)
    }

    pub fn gate(&mut self, spec: GateSpec) -> Result<&mut Self, CircuitError> {
        self.push(CircuitOp::Gate(spec))
    }

    /// Index of the first op after which only measurements follow, i.e. the
    /// length of the unitary prefix when every measurement is terminal.
    /// `None` when a gate follows some measurement.
    pub fn terminal_measurements_start(&self) -> Option<usize> {
        let first_measure = self
            .ops
            .iter()
            .position(|op| !matches!(op, CircuitOp::Gate(_)))
            .unwrap_or(self.ops.len());
        self.ops[first_measure..]
            .iter()
            .all(|op| !matches!(op, CircuitOp::Gate(_)))
            .then_some(first_measure)
    }
}
