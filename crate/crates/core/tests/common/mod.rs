#![allow(dead_code)]

use num_complex::Complex64;
use qdd::{Circuit, GateKind, GateSpec};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_kind<R: Rng>(rng: &mut R) -> GateKind {
    use GateKind::*;
    match rng.gen_range(0..10) {
        0 => X,
        1 => Y,
        2 => Z,
        3 => H,
        4 => S,
        5 => Sdg,
        6 => T,
        7 => Tdg,
        8 => Phase(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)),
        _ => Rk(rng.gen_range(1..=8)),
    }
}

/// A random gate on `n` qubits with up to three controls.
pub fn random_gate<R: Rng>(rng: &mut R, n: usize) -> GateSpec {
    let mut qubits: Vec<usize> = (0..n).collect();
    qubits.shuffle(rng);
    let controls = rng.gen_range(0..=3.min(n - 1));
    GateSpec::new(random_kind(rng), qubits[0], qubits[1..=controls].iter().copied()).unwrap()
}

pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, gates: usize) -> Circuit {
    let mut c = Circuit::new("random", n).unwrap();
    for _ in 0..gates {
        c.gate(random_gate(rng, n)).unwrap();
    }
    c
}

pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..1usize << n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
    v
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
