//! Benchmark circuit families: GHZ entanglement, quantum Fourier transform
//! and Grover search.

use std::f64::consts::PI;

use super::{Circuit, CircuitError};
use crate::bits::BitString;
use crate::gates::{GateKind, GateSpec};

/// `H` on qubit 0 followed by a CNOT chain, preparing
/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn entangle(n: usize) -> Result<Circuit, CircuitError> {
    let mut c = Circuit::new(format!("entangle_{n}"), n)?;
    c.gate(GateSpec::single(GateKind::H, 0))?;
    for q in 1..n {
        c.gate(GateSpec::new(GateKind::X, q, [q - 1])?)?;
    }
    Ok(c)
}

/// Quantum Fourier transform applied to the basis state `input`.
///
/// The input is prepared with `X` gates. Each qubit `t` then gets `H`
/// followed by controlled `Rk` rotations from every less significant qubit
/// `c` with `k = c - t + 1`. A final qubit reversal, written as three CNOTs
/// per swap, makes the output equal the DFT matrix applied to `input`.
pub fn qft(input: &BitString) -> Result<Circuit, CircuitError> {
    let n = input.len();
    let mut c = Circuit::new(format!("qft_{n}"), n)?;
    for (q, &bit) in input.bits().iter().enumerate() {
        if bit {
            c.gate(GateSpec::single(GateKind::X, q))?;
        }
    }
    for t in 0..n {
        c.gate(GateSpec::single(GateKind::H, t))?;
        for ctrl in t + 1..n {
            let k = (ctrl - t + 1) as u32;
            c.gate(GateSpec::new(GateKind::Rk(k), t, [ctrl])?)?;
        }
    }
    for a in 0..n / 2 {
        let b = n - 1 - a;
        c.gate(GateSpec::new(GateKind::X, b, [a])?)?;
        c.gate(GateSpec::new(GateKind::X, a, [b])?)?;
        c.gate(GateSpec::new(GateKind::X, b, [a])?)?;
    }
    Ok(c)
}

/// `⌊(π/4)·√(2^n)⌋`, except for a single qubit where search is degenerate
/// and no iteration is applied.
pub fn grover_iterations(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    (PI / 4.0 * 2f64.powf(n as f64 / 2.0)).floor() as usize
}

/// Grover search for `marked` with a phase oracle and no ancilla.
///
/// Oracle: `X` on the qubits where `marked` has a 0, a multi-controlled `Z`
/// over all qubits, and the same `X` layer again. Diffusion: `H`, `X`,
/// multi-controlled `Z`, `X`, `H` on all qubits.
pub fn grover(marked: &BitString) -> Result<Circuit, CircuitError> {
    let n = marked.len();
    let mut c = Circuit::new(format!("grover_{n}"), n)?;
    let all = 0..n;
    let mcz = || GateSpec::new(GateKind::Z, n - 1, 0..n - 1);
    for q in all.clone() {
        c.gate(GateSpec::single(GateKind::H, q))?;
    }
    for _ in 0..grover_iterations(n) {
        let zeros: Vec<usize> = all.clone().filter(|&q| !marked.get(q)).collect();
        for &q in &zeros {
            c.gate(GateSpec::single(GateKind::X, q))?;
        }
        c.gate(mcz()?)?;
        for &q in &zeros {
            c.gate(GateSpec::single(GateKind::X, q))?;
        }

        for kind in [GateKind::H, GateKind::X] {
            for q in all.clone() {
                c.gate(GateSpec::single(kind, q))?;
            }
        }
        c.gate(mcz()?)?;
        for kind in [GateKind::X, GateKind::H] {
            for q in all.clone() {
                c.gate(GateSpec::single(kind, q))?;
            }
        }
    }
    Ok(c)
}
