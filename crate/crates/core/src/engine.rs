//! Gate-at-a-time circuit simulation on a single universe.
//!
//! The state starts as `|0…0⟩`. Every gate is turned into its `n`-qubit
//! matrix diagram (memoized per gate spec) and multiplied onto the state;
//! measurements collapse the state in place. After every operation the
//! engine checks that the squared norm is still 1 and records node-count
//! peaks.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bits::BitString;
use crate::circuit::{Circuit, CircuitOp};
use crate::dd::{MatrixEdge, Universe, VectorEdge};
use crate::error::DdError;
use crate::gates::{GateError, GateSpec};
use crate::ops::PROBABILITY_TOLERANCE;

#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub seed: u64,
    /// Number of samples drawn by [`Engine::sample`].
    pub shots: u32,
    /// Reuse gate diagrams across identical gate specs.
    pub gate_cache: bool,
    /// Live node count above which garbage is collected between operations.
    pub gc_threshold: usize,
    /// Verify node normalization of the state after every operation.
    pub check_invariants: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            seed: 0,
            shots: 1,
            gate_cache: true,
            gc_threshold: 1_000_000,
            check_invariants: false,
        }
    }
}

/// Run statistics. Everything except `wall_time_ms` is deterministic for a
/// given circuit and configuration.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SimStats {
    pub qubits: usize,
    pub gates_applied: u64,
    /// Largest state diagram (non-terminal nodes) seen after any operation.
    pub peak_vector_nodes: usize,
    /// Largest unique-table population (vector and matrix nodes).
    pub peak_unique_nodes: usize,
    pub wall_time_ms: f64,
    /// `|‖ψ‖² - 1|` of the final state.
    pub final_norm_deviation: f64,
    /// Sampled basis states and their counts, filled by [`Engine::sample`].
    pub histogram: BTreeMap<String, u64>,
}

/// Outcome of a `measure` or `measure_all` op.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub op_index: usize,
    /// `None` for `measure_all`.
    pub qubit: Option<usize>,
    pub outcome: BitString,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    /// State after the last operation; valid until the engine runs again.
    pub state: VectorEdge,
    pub stats: SimStats,
    pub measurements: Vec<MeasurementRecord>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("op {op_index}: {source}")]
    Gate { op_index: usize, source: GateError },
    #[error("op {op_index}: squared norm deviates from 1 by {deviation:e}")]
    NormDrift { op_index: usize, deviation: f64 },
    #[error("op {op_index}: {source}")]
    Measurement { op_index: usize, source: DdError },
    #[error("op {op_index}: state diagram is not normalized")]
    InvariantViolation { op_index: usize },
}

#[derive(Default)]
struct Tracker {
    gates_applied: u64,
    peak_vector_nodes: usize,
    peak_unique_nodes: usize,
}

pub struct Engine {
    universe: Universe,
    config: EngineConfig,
    gate_cache: HashMap<(usize, GateSpec), MatrixEdge>,
    rng: ChaCha8Rng,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        let rng = ChaCha8Rng::seed_from_u64(config.seed);
        Engine {
            universe: Universe::new(),
            config,
            gate_cache: HashMap::new(),
            rng,
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn universe_mut(&mut self) -> &mut Universe {
        &mut self.universe
    }

    fn reset(&mut self) {
        self.universe = Universe::new();
        self.gate_cache.clear();
        self.rng = ChaCha8Rng::seed_from_u64(self.config.seed);
    }

    /// The `n`-qubit matrix diagram of `spec`, built once per spec when the
    /// gate cache is enabled.
    pub fn gate_dd(&mut self, n: usize, spec: &GateSpec) -> Result<MatrixEdge, GateError> {
        if !self.config.gate_cache {
            return self.universe.gate(n, spec);
        }
        if let Some(&e) = self.gate_cache.get(&(n, spec.clone())) {
            return Ok(e);
        }
        let e = self.universe.gate(n, spec)?;
        self.gate_cache.insert((n, spec.clone()), e);
        Ok(e)
    }

    /// Runs the circuit once from `|0…0⟩` in a fresh universe.
    pub fn run(&mut self, circuit: &Circuit) -> Result<RunOutput, SimError> {
        self.reset();
        let start = Instant::now();
        let mut tracker = Tracker::default();
        let mut measurements = Vec::new();
        let state = self.universe.zero_state(circuit.qubits());
        self.observe(state, &mut tracker);
        let state = self.execute(circuit, 0, state, &mut tracker, &mut measurements)?;
        let stats = self.stats(circuit, state, tracker, start);
        Ok(RunOutput {
            state,
            stats,
            measurements,
        })
    }

    /// Draws `config.shots` samples of the full basis state at the end of the
    /// circuit.
    ///
    /// When every measurement sits at the end of the circuit, the unitary
    /// prefix is simulated once and each shot collapses its own copy of the
    /// resulting state. Otherwise each shot re-simulates the whole circuit.
    /// Every shot ends with a measurement of all qubits whose outcome is the
    /// histogram key.
    pub fn sample(&mut self, circuit: &Circuit) -> Result<RunOutput, SimError> {
        self.reset();
        let start = Instant::now();
        let mut tracker = Tracker::default();
        let mut histogram = BTreeMap::new();
        let mut measurements = Vec::new();
        let initial = self.universe.zero_state(circuit.qubits());
        self.observe(initial, &mut tracker);

        let mut last_state = initial;
        match circuit.terminal_measurements_start() {
            Some(split) => {
                let prefix = self.execute_ops(circuit, 0..split, initial, &mut tracker, &mut measurements)?;
                last_state = prefix;
                for _ in 0..self.config.shots {
                    measurements.clear();
                    let state =
                        self.execute_ops(circuit, split..circuit.ops().len(), prefix, &mut tracker, &mut measurements)?;
                    let bits = self.sample_basis(state, circuit.ops().len())?;
                    *histogram.entry(bits.to_string()).or_insert(0) += 1;
                    last_state = state;
                }
            }
            None => {
                for _ in 0..self.config.shots {
                    measurements.clear();
                    let state = self.execute(circuit, 0, initial, &mut tracker, &mut measurements)?;
                    let bits = self.sample_basis(state, circuit.ops().len())?;
                    *histogram.entry(bits.to_string()).or_insert(0) += 1;
                    last_state = state;
                }
            }
        }
        let mut stats = self.stats(circuit, last_state, tracker, start);
        stats.histogram = histogram;
        Ok(RunOutput {
            state: last_state,
            stats,
            measurements,
        })
    }

    fn sample_basis(&mut self, state: VectorEdge, op_index: usize) -> Result<BitString, SimError> {
        self.universe
            .measure_all(state, &mut self.rng)
            .map(|(bits, _)| bits)
            .map_err(|source| SimError::Measurement { op_index, source })
    }

    fn stats(&mut self, circuit: &Circuit, state: VectorEdge, tracker: Tracker, start: Instant) -> SimStats {
        SimStats {
            qubits: circuit.qubits(),
            gates_applied: tracker.gates_applied,
            peak_vector_nodes: tracker.peak_vector_nodes,
            peak_unique_nodes: tracker.peak_unique_nodes,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            final_norm_deviation: (self.universe.norm_squared(state) - 1.0).abs(),
            histogram: BTreeMap::new(),
        }
    }

    fn execute(
        &mut self,
        circuit: &Circuit,
        from: usize,
        state: VectorEdge,
        tracker: &mut Tracker,
        measurements: &mut Vec<MeasurementRecord>,
    ) -> Result<VectorEdge, SimError> {
        self.execute_ops(circuit, from..circuit.ops().len(), state, tracker, measurements)
    }

    fn execute_ops(
        &mut self,
        circuit: &Circuit,
        range: std::ops::Range<usize>,
        mut state: VectorEdge,
        tracker: &mut Tracker,
        measurements: &mut Vec<MeasurementRecord>,
    ) -> Result<VectorEdge, SimError> {
        let n = circuit.qubits();
        for op_index in range {
            let measure_err = |source| SimError::Measurement { op_index, source };
            match &circuit.ops()[op_index] {
                CircuitOp::Gate(spec) => {
                    let gate = self
                        .gate_dd(n, spec)
                        .map_err(|source| SimError::Gate { op_index, source })?;
                    state = self.universe.multiply(gate, state);
                    tracker.gates_applied += 1;
                }
                CircuitOp::Measure(q) => {
                    let (bit, next) = self
                        .universe
                        .measure_qubit(state, *q, &mut self.rng)
                        .map_err(measure_err)?;
                    measurements.push(MeasurementRecord {
                        op_index,
                        qubit: Some(*q),
                        outcome: BitString::new(vec![bit]),
                    });
                    state = next;
                }
                CircuitOp::MeasureAll => {
                    let (bits, next) = self.universe.measure_all(state, &mut self.rng).map_err(measure_err)?;
                    measurements.push(MeasurementRecord {
                        op_index,
                        qubit: None,
                        outcome: bits,
                    });
                    state = next;
                }
            }
            self.check(state, op_index)?;
            self.observe(state, tracker);
            self.maybe_collect(state);
        }
        Ok(state)
    }

    fn check(&mut self, state: VectorEdge, op_index: usize) -> Result<(), SimError> {
        let deviation = (self.universe.norm_squared(state) - 1.0).abs();
        if deviation.is_nan() || deviation > PROBABILITY_TOLERANCE {
            return Err(SimError::NormDrift { op_index, deviation });
        }
        if self.config.check_invariants && !self.universe.vector_is_normalized(state) {
            return Err(SimError::InvariantViolation { op_index });
        }
        Ok(())
    }

    fn observe(&self, state: VectorEdge, tracker: &mut Tracker) {
        let nodes = self.universe.vector_node_count(state);
        let unique = self.universe.live_vector_nodes() + self.universe.live_matrix_nodes();
        tracker.peak_vector_nodes = tracker.peak_vector_nodes.max(nodes);
        tracker.peak_unique_nodes = tracker.peak_unique_nodes.max(unique);
    }

    fn maybe_collect(&mut self, state: VectorEdge) {
        let live = self.universe.live_vector_nodes() + self.universe.live_matrix_nodes();
        if live <= self.config.gc_threshold {
            return;
        }
        let gates: Vec<MatrixEdge> = self.gate_cache.values().copied().collect();
        self.universe.collect_garbage(&[state], &gates);
    }
}
