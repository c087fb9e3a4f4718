//! Quantum circuit simulation on edge-weighted decision diagrams.
//!
//! State vectors and gate matrices live as shared, normalized diagrams in a
//! [`Universe`]. Gates are applied by diagram multiplication; measurement
//! works directly on the diagram. A small dense simulator in [`dense`] serves
//! as a reference.
//!
//! ```
//! use qdd::{circuit::parse, Engine, EngineConfig};
//!
//! let circuit = parse("bell", "qubits 2\nh 0\ncx 0 1\n").unwrap();
//! let mut engine = Engine::new(EngineConfig::default());
//! let out = engine.run(&circuit).unwrap();
//! assert_eq!(out.stats.gates_applied, 2);
//! let p = engine.universe_mut().probabilities_of(out.state, 1).unwrap();
//! assert!((p.0 - 0.5).abs() < 1e-12);
//! ```

pub mod bits;
pub mod circuit;
pub mod complex;
pub mod dd;
pub mod dense;
pub mod engine;
pub mod error;
pub mod gates;
pub mod ops;

pub use bits::BitString;
pub use circuit::{Circuit, CircuitOp};
pub use complex::{ComplexId, ComplexTable};
pub use dd::{MatrixEdge, NodeId, Universe, VectorEdge};
pub use engine::{Engine, EngineConfig, RunOutput, SimError, SimStats};
pub use error::{DdError, NumericError};
pub use gates::{GateKind, GateSpec};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/complex-values.md")]
    mod complex_values {}
    #[doc = include_str!("../../../book/src/vector-diagrams.md")]
    mod vector_diagrams {}
    #[doc = include_str!("../../../book/src/matrix-diagrams.md")]
    mod matrix_diagrams {}
    #[doc = include_str!("../../../book/src/operations.md")]
    mod operations {}
    #[doc = include_str!("../../../book/src/measurement.md")]
    mod measurement {}
    #[doc = include_str!("../../../book/src/gates.md")]
    mod gates {}
    #[doc = include_str!("../../../book/src/circuit-format.md")]
    mod circuit_format {}
    #[doc = include_str!("../../../book/src/engine.md")]
    mod engine {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
