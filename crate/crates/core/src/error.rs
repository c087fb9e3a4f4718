use thiserror::Error;

/// Errors from complex arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("non-finite complex value {re} + {im}i")]
    NonFinite { re: f64, im: f64 },
    #[error("division by (near-)zero value {re} + {im}i")]
    DivisionByZero { re: f64, im: f64 },
}

/// Errors raised by decision-diagram construction and operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DdError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("dense input of length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("dense readout limited to {max} qubits, requested {requested}")]
    TooManyQubits { requested: usize, max: usize },
    #[error("index {index} out of range for {qubits} qubits")]
    IndexOutOfRange { index: u64, qubits: usize },
    #[error("levels overlap: left operand reaches level {left_max}, right operand starts at {right_min}")]
    LevelOverlap { left_max: u32, right_min: u32 },
    #[error("qubit {qubit} is not represented in this diagram")]
    QubitNotPresent { qubit: usize },
    #[error("probabilities sum to {total}, deviating from 1 by more than {tolerance}")]
    NormDrift { total: f64, tolerance: f64 },
    #[error("outcome {outcome} has zero probability")]
    ImpossibleOutcome { outcome: u8 },
}
