//! Gate matrices and their `n`-qubit decision diagrams.
//!
//! A gate is a single-qubit unitary on a target qubit, optionally controlled
//! by any number of qubits (active on `|1⟩`). The resulting `2^n × 2^n`
//! matrix is built directly as a diagram with a constant number of nodes per
//! level, never as a dense array.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_complex::Complex64;
use thiserror::Error;

use crate::complex::ComplexId;
use crate::dd::{MatrixEdge, Universe};

/// A 2×2 complex matrix, row-major.
pub type Matrix2 = [[Complex64; 2]; 2];

/// The single-qubit operation applied to a gate's target.
#[derive(Clone, Copy, Debug)]
pub enum GateKind {
    X,
    /// Not among the gates needed by the benchmark circuits; included for
    /// completeness of the Pauli set.
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    /// `diag(1, e^{iθ})`, θ in radians.
    Phase(f64),
    /// `Phase(2π / 2^k)`.
    Rk(u32),
}

// Phase angles compare bitwise so that gate specs can key hash maps.
impl PartialEq for GateKind {
    fn eq(&self, other: &Self) -> bool {
        use GateKind::*;
        match (self, other) {
            (Phase(a), Phase(b)) => a.to_bits() == b.to_bits(),
            (Rk(a), Rk(b)) => a == b,
            _ => std::mem::discriminant(self) == std::mem::discriminant(other),
        }
    }
}

impl Eq for GateKind {}

impl Hash for GateKind {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            GateKind::Phase(theta) => theta.to_bits().hash(state),
            GateKind::Rk(k) => k.hash(state),
            _ => {}
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::X => f.write_str("x"),
            GateKind::Y => f.write_str("y"),
            GateKind::Z => f.write_str("z"),
            GateKind::H => f.write_str("h"),
            GateKind::S => f.write_str("s"),
            GateKind::Sdg => f.write_str("sdg"),
            GateKind::T => f.write_str("t"),
            GateKind::Tdg => f.write_str("tdg"),
            GateKind::Phase(theta) => write!(f, "p({theta})"),
            GateKind::Rk(k) => write!(f, "rk({k})"),
        }
    }
}

impl GateKind {
    /// The 2×2 unitary of this gate.
    pub fn matrix(self) -> Matrix2 {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
        let phase = |theta: f64| [[l, o], [o, Complex64::from_polar(1.0, theta)]];
        match self {
            GateKind::X => [[o, l], [l, o]],
            GateKind::Y => [[o, c(0.0, -1.0)], [c(0.0, 1.0), o]],
            GateKind::Z => [[l, o], [o, c(-1.0, 0.0)]],
            GateKind::H => {
                let h = c(FRAC_1_SQRT_2, 0.0);
                [[h, h], [h, -h]]
            }
            GateKind::S => [[l, o], [o, c(0.0, 1.0)]],
            GateKind::Sdg => [[l, o], [o, c(0.0, -1.0)]],
            GateKind::T => [[l, o], [o, c(FRAC_1_SQRT_2, FRAC_1_SQRT_2)]],
            GateKind::Tdg => [[l, o], [o, c(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)]],
            GateKind::Phase(0.0) => [[l, o], [o, l]],
            GateKind::Phase(theta) => phase(theta),
            GateKind::Rk(k) => match k {
                0 => [[l, o], [o, l]],
                1 => [[l, o], [o, c(-1.0, 0.0)]],
                2 => [[l, o], [o, c(0.0, 1.0)]],
                _ => phase(2.0 * PI / 2f64.powi(k as i32)),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("qubit {qubit} out of range for {qubits} qubits")]
    QubitOutOfRange { qubit: usize, qubits: usize },
    #[error("target qubit {0} is also listed as a control")]
    TargetIsControl(usize),
}

/// A (possibly multi-controlled) single-target gate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GateSpec {
    kind: GateKind,
    target: usize,
    /// Sorted, deduplicated.
    controls: Vec<usize>,
}

impl GateSpec {
    pub fn new(kind: GateKind, target: usize, controls: impl IntoIterator<Item = usize>) -> Result<Self, GateError> {
        let mut controls: Vec<usize> = controls.into_iter().collect();
        controls.sort_unstable();
        controls.dedup();
        if controls.binary_search(&target).is_ok() {
            return Err(GateError::TargetIsControl(target));
        }
        Ok(GateSpec { kind, target, controls })
    }

    pub fn single(kind: GateKind, target: usize) -> Self {
        GateSpec {
            kind,
            target,
            controls: Vec::new(),
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls
    }

    /// Largest qubit index referenced.
    pub fn max_qubit(&self) -> usize {
        self.controls.last().copied().unwrap_or(0).max(self.target)
    }

    pub fn check_range(&self, n: usize) -> Result<(), GateError> {
        let max = self.max_qubit();
        if max >= n {
            return Err(GateError::QubitOutOfRange { qubit: max, qubits: n });
        }
        Ok(())
    }
}

impl Universe {
    fn intern_matrix2(&mut self, m: Matrix2) -> [ComplexId; 4] {
        [m[0][0], m[0][1], m[1][0], m[1][1]].map(|x| self.complex.lookup(x))
    }

    /// `I` over qubits `from..n` (the terminal when `from == n`).
    fn identity_from(&mut self, from: usize, n: usize) -> MatrixEdge {
        let mut e = MatrixEdge::ONE;
        for level in (from..n).rev() {
            e = self.make_matrix_node(level as u32, [e, MatrixEdge::ZERO, MatrixEdge::ZERO, e]);
        }
        e
    }

    /// The `2^n × 2^n` identity: a chain of `n` identity nodes.
    pub fn identity(&mut self, n: usize) -> MatrixEdge {
        self.identity_from(0, n)
    }

    /// Builds the `n`-qubit matrix of `spec`.
    ///
    /// Levels are processed from the least significant qubit upwards. Below
    /// the target, each of the four gate entries is tracked separately: at a
    /// control level the entry only survives in the `|1⟩→|1⟩` quadrant, while
    /// the `|0⟩→|0⟩` quadrant continues with the identity on diagonal entries
    /// and with zero on off-diagonal ones. Above the target, a control level
    /// places the gate in `e11` and the identity of all lower qubits in `e00`.
    pub fn gate(&mut self, n: usize, spec: &GateSpec) -> Result<MatrixEdge, GateError> {
        spec.check_range(n)?;
        let is_control = {
            let mut flags = vec![false; n];
            for &c in spec.controls() {
                flags[c] = true;
            }
            flags
        };
        let entries = self.intern_matrix2(spec.kind().matrix());
        let mut em = entries.map(MatrixEdge::terminal);
        let mut ident = MatrixEdge::ONE;
        let z = MatrixEdge::ZERO;

        for level in (spec.target() + 1..n).rev() {
            let l = level as u32;
            for (i, e) in em.iter_mut().enumerate() {
                let diagonal = i == 0 || i == 3;
                *e = if is_control[level] {
                    let inactive = if diagonal { ident } else { z };
                    self.make_matrix_node(l, [inactive, z, z, *e])
                } else {
                    self.make_matrix_node(l, [*e, z, z, *e])
                };
            }
            ident = self.make_matrix_node(l, [ident, z, z, ident]);
        }

        let mut e = self.make_matrix_node(spec.target() as u32, em);

        for level in (0..spec.target()).rev() {
            let l = level as u32;
            e = if is_control[level] {
                let below = self.identity_from(level + 1, n);
                self.make_matrix_node(l, [below, z, z, e])
            } else {
                self.make_matrix_node(l, [e, z, z, e])
            };
        }
        Ok(e)
    }
}
