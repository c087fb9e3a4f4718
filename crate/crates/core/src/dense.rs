//! Brute-force reference simulator on explicit `2^n` arrays.
//!
//! This module exists to check the decision-diagram code. It shares nothing
//! with it beyond `num_complex` arithmetic: gate matrices are written out
//! again here and every operation is the textbook loop.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitOp};
use crate::gates::{GateKind, GateSpec};

/// Largest qubit count the oracle accepts.
pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DenseError {
    #[error("dense oracle is limited to {MAX_QUBITS} qubits, got {0}")]
    TooManyQubits(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("qubit {0} out of range")]
    QubitOutOfRange(usize),
    #[error("op {0} is a measurement; the dense oracle only runs unitary circuits")]
    Measurement(usize),
}

/// `2^n` amplitudes, index bit `n-1-q` holding qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector(pub Vec<Complex64>);

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl DenseVector {
    pub fn basis(n: usize, index: usize) -> Result<Self, DenseError> {
        check_qubits(n)?;
        let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
        v[index] = Complex64::new(1.0, 0.0);
        Ok(DenseVector(v))
    }

    pub fn norm_squared(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &[Complex64]) -> f64 {
        assert_eq!(self.0.len(), other.len());
        self.0
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        DenseMatrix { dim, data }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn from_2x2(m: [[Complex64; 2]; 2]) -> Self {
        DenseMatrix {
            dim: 2,
            data: vec![m[0][0], m[0][1], m[1][0], m[1][1]],
        }
    }
}

fn check_qubits(n: usize) -> Result<(), DenseError> {
    if n > MAX_QUBITS {
        return Err(DenseError::TooManyQubits(n));
    }
    Ok(())
}

/// The oracle's own table of single-qubit gate matrices.
pub fn gate_matrix(kind: GateKind) -> [[Complex64; 2]; 2] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let diag = |d: Complex64| [[one, z], [z, d]];
    match kind {
        GateKind::X => [[z, one], [one, z]],
        GateKind::Y => [[z, Complex64::new(0.0, -1.0)], [Complex64::new(0.0, 1.0), z]],
        GateKind::Z => diag(-one),
        GateKind::H => {
            let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
            [[h, h], [h, -h]]
        }
        GateKind::S => diag(Complex64::i()),
        GateKind::Sdg => diag(-Complex64::i()),
        GateKind::T => diag(Complex64::new(0.0, PI / 4.0).exp()),
        GateKind::Tdg => diag(Complex64::new(0.0, -PI / 4.0).exp()),
        GateKind::Phase(theta) => diag(Complex64::new(0.0, theta).exp()),
        GateKind::Rk(k) => diag(Complex64::new(0.0, 2.0 * PI / 2f64.powi(k as i32)).exp()),
    }
}

/// `ψ'_i = Σ_k u_{i,k} ψ_k`.
pub fn apply(m: &DenseMatrix, v: &DenseVector) -> Result<DenseVector, DenseError> {
    if m.dim != v.0.len() {
        return Err(DenseError::DimensionMismatch(m.dim, v.0.len()));
    }
    let out = (0..m.dim)
        .map(|i| (0..m.dim).map(|k| m.get(i, k) * v.0[k]).sum())
        .collect();
    Ok(DenseVector(out))
}

/// Block Kronecker product: entry `a_{i,j}` is replaced by `a_{i,j}·B`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let dim = a.dim * b.dim;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for ar in 0..a.dim {
        for ac in 0..a.dim {
            let x = a.get(ar, ac);
            for br in 0..b.dim {
                for bc in 0..b.dim {
                    data[(ar * b.dim + br) * dim + ac * b.dim + bc] = x * b.get(br, bc);
                }
            }
        }
    }
    DenseMatrix { dim, data }
}

/// The full `2^n × 2^n` matrix of a controlled gate: identity on every
/// column whose control bits are not all 1, the gate on the target otherwise.
pub fn controlled_gate(n: usize, spec: &GateSpec) -> Result<DenseMatrix, DenseError> {
    check_qubits(n)?;
    if spec.max_qubit() >= n {
        return Err(DenseError::QubitOutOfRange(spec.max_qubit()));
    }
    let dim = 1usize << n;
    let bit = |q: usize| 1usize << (n - 1 - q);
    let u = gate_matrix(spec.kind());
    let t = bit(spec.target());
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for col in 0..dim {
        let active = spec.controls().iter().all(|&c| col & bit(c) != 0);
        if !active {
            data[col * dim + col] = Complex64::new(1.0, 0.0);
            continue;
        }
        let in_bit = usize::from(col & t != 0);
        data[(col & !t) * dim + col] = u[0][in_bit];
        data[(col | t) * dim + col] = u[1][in_bit];
    }
    Ok(DenseMatrix { dim, data })
}

/// Basis-state probabilities `|α_x|²`, omitting exact zeros.
pub fn measure_distribution(v: &DenseVector) -> BTreeMap<String, f64> {
    let n = v.0.len().trailing_zeros() as usize;
    v.0.iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(i, a)| (format!("{i:0n$b}"), a.norm_sqr()))
        .collect()
}

/// Projects qubit `q` onto `outcome` and renormalizes. Returns the outcome
/// probability and the post-measurement state.
pub fn collapse(v: &DenseVector, q: usize, outcome: bool) -> (f64, DenseVector) {
    let n = v.0.len().trailing_zeros() as usize;
    let bit = 1usize << (n - 1 - q);
    let keep = |i: usize| (i & bit != 0) == outcome;
    let p: f64 = v.0.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, a)| a.norm_sqr()).sum();
    let scale = if p > 0.0 { 1.0 / p.sqrt() } else { 0.0 };
    let out = v
        .0
        .iter()
        .enumerate()
        .map(|(i, a)| if keep(i) { a * scale } else { Complex64::new(0.0, 0.0) })
        .collect();
    (p, DenseVector(out))
}

/// Runs a measurement-free circuit from `|0…0⟩` one gate matrix at a time.
pub fn run_circuit(circuit: &Circuit) -> Result<DenseVector, DenseError> {
    let n = circuit.qubits();
    let mut state = DenseVector::basis(n, 0)?;
    for (i, op) in circuit.ops().iter().enumerate() {
        match op {
            CircuitOp::Gate(spec) => {
                let m = controlled_gate(n, spec)?;
                state = apply(&m, &state)?;
            }
            CircuitOp::Measure(_) | CircuitOp::MeasureAll => return Err(DenseError::Measurement(i)),
        }
    }
    Ok(state)
}

/// The unitary DFT matrix, `F_{j,k} = 2^{-n/2} e^{2πi·jk/2^n}`.
pub fn dft_matrix(n: usize) -> Result<DenseMatrix, DenseError> {
    check_qubits(n)?;
    let dim = 1usize << n;
    let scale = 1.0 / (dim as f64).sqrt();
    let data = (0..dim * dim)
        .map(|idx| {
            let (j, k) = (idx / dim, idx % dim);
            let angle = 2.0 * PI * ((j * k) % dim) as f64 / dim as f64;
            Complex64::from_polar(scale, angle)
        })
        .collect();
    Ok(DenseMatrix { dim, data })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn cnot() -> GateSpec {
        GateSpec::new(GateKind::X, 1, [0]).unwrap()
    }

    #[test]
    fn cnot_maps_11_to_10() {
        let m = controlled_gate(2, &cnot()).unwrap();
        let out = apply(&m, &DenseVector::basis(2, 3).unwrap()).unwrap();
        assert_eq!(out.0, [0.0, 0.0, 1.0, 0.0].map(c));
        let id = DenseMatrix::identity(4);
        let v = DenseVector(vec![c(0.1), c(0.2), c(0.3), c(0.4)]);
        assert_eq!(apply(&id, &v).unwrap(), v);
    }

    #[test]
    fn hand_expanded_two_qubit_product() {
        // H on q0 applied to (a, b, c, d): ((a+c), (b+d), (a-c), (b-d)) / √2
        let h = DenseMatrix::from_2x2(gate_matrix(GateKind::H));
        let m = kron(&h, &DenseMatrix::identity(2));
        let v = DenseVector(vec![c(0.1), Complex64::new(0.0, 0.5), c(-0.3), c(0.7)]);
        let out = apply(&m, &v).unwrap();
        let s = FRAC_1_SQRT_2;
        let expected = [
            (c(0.1) + c(-0.3)) * s,
            (Complex64::new(0.0, 0.5) + c(0.7)) * s,
            (c(0.1) - c(-0.3)) * s,
            (Complex64::new(0.0, 0.5) - c(0.7)) * s,
        ];
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn hadamard_kron_identity() {
        let h = DenseMatrix::from_2x2(gate_matrix(GateKind::H));
        let m = kron(&h, &DenseMatrix::identity(2));
        let s = FRAC_1_SQRT_2;
        #[rustfmt::skip]
        let expected = [
            s, 0.0, s, 0.0,
            0.0, s, 0.0, s,
            s, 0.0, -s, 0.0,
            0.0, s, 0.0, -s,
        ].map(c);
        assert_eq!(m.data, expected);
        let one = DenseMatrix { dim: 1, data: vec![c(1.0)] };
        assert_eq!(kron(&h, &one), h);
    }

    #[test]
    fn kron_of_2x2_matches_definition() {
        let a = [[c(1.0), Complex64::new(0.0, 2.0)], [c(-1.0), c(0.5)]];
        let b = [[c(3.0), c(0.0)], [Complex64::new(1.0, 1.0), c(-2.0)]];
        let k = kron(&DenseMatrix::from_2x2(a), &DenseMatrix::from_2x2(b));
        for r in 0..4 {
            for col in 0..4 {
                let expected = a[r / 2][col / 2] * b[r % 2][col % 2];
                assert_eq!(k.get(r, col), expected);
            }
        }
    }

    #[test]
    fn uncontrolled_gate_is_kron_padding() {
        let spec = GateSpec::single(GateKind::Y, 1);
        let direct = controlled_gate(3, &spec).unwrap();
        let y = DenseMatrix::from_2x2(gate_matrix(GateKind::Y));
        let padded = kron(&kron(&DenseMatrix::identity(2), &y), &DenseMatrix::identity(2));
        assert_eq!(direct, padded);
    }

    #[test]
    fn toffoli_is_a_permutation() {
        let m = controlled_gate(3, &GateSpec::new(GateKind::X, 2, [0, 1]).unwrap()).unwrap();
        for col in 0..8 {
            let image = match col {
                6 => 7,
                7 => 6,
                x => x,
            };
            for row in 0..8 {
                assert_eq!(m.get(row, col), c(if row == image { 1.0 } else { 0.0 }));
            }
        }
    }

    #[test]
    fn distributions() {
        let s = FRAC_1_SQRT_2;
        let bell = DenseVector(vec![c(s), c(0.0), c(0.0), c(s)]);
        let d = measure_distribution(&bell);
        assert_eq!(d.keys().cloned().collect::<Vec<_>>(), ["00", "11"]);
        assert!(d.values().all(|p| (p - 0.5).abs() < 1e-15));
        let basis = DenseVector::basis(3, 5).unwrap();
        assert_eq!(measure_distribution(&basis).into_iter().collect::<Vec<_>>(), [("101".to_string(), 1.0)]);
        let v = DenseVector(vec![c(0.6), Complex64::new(0.0, 0.8)]);
        assert!((measure_distribution(&v).values().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn collapse_renormalizes() {
        let v = DenseVector([0.0, 0.0, 0.5, 0.0, 0.5, 0.0, -FRAC_1_SQRT_2, 0.0].map(c).to_vec());
        let (p, post) = collapse(&v, 0, true);
        assert!((p - 0.75).abs() < 1e-15);
        assert!((post.norm_squared() - 1.0).abs() < 1e-15);
        assert!((post.0[4] - c(0.5 / 0.75f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn size_cap() {
        assert_eq!(DenseVector::basis(13, 0), Err(DenseError::TooManyQubits(13)));
    }
}
