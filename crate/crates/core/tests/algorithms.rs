mod common;

use common::max_diff;
use num_complex::Complex64;
use qdd::circuit::{grover, grover_iterations, qft};
use qdd::dense::{self, DenseVector};
use qdd::{BitString, Engine, EngineConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn run(c: &qdd::Circuit) -> (Vec<Complex64>, qdd::SimStats) {
    let mut engine = Engine::new(EngineConfig {
        check_invariants: true,
        ..Default::default()
    });
    let out = engine.run(c).unwrap();
    let amps = engine.universe().vector_to_dense(out.state, c.qubits()).unwrap();
    (amps, out.stats)
}

#[test]
fn qft_of_01() {
    let (amps, _) = run(&qft(&"01".parse().unwrap()).unwrap());
    let expected = [
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, 0.5),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, -0.5),
    ];
    assert!(max_diff(&amps, &expected) < 1e-12);
}

#[test]
fn qft_matches_dft_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for n in 1..=8 {
        let f = dense::dft_matrix(n).unwrap();
        for _ in 0..3 {
            let index = rng.gen_range(0..1u64 << n);
            let input = BitString::from_index(index, n);
            let (amps, stats) = run(&qft(&input).unwrap());
            let expected = dense::apply(&f, &DenseVector::basis(n, index as usize).unwrap()).unwrap();
            assert!(expected.max_abs_diff(&amps) < 1e-9, "n={n} input={input}");
            assert!(stats.peak_vector_nodes <= 4 * n);
        }
    }
}

#[test]
fn grover_two_qubits_is_exact() {
    for marked in ["00", "01", "10", "11"] {
        let bits: BitString = marked.parse().unwrap();
        let (amps, _) = run(&grover(&bits).unwrap());
        let index = bits.to_index().unwrap() as usize;
        assert!((amps[index].norm_sqr() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn grover_eight_qubits_matches_dense() {
    let marked: BitString = "10110010".parse().unwrap();
    assert_eq!(grover_iterations(8), 12);
    let c = grover(&marked).unwrap();
    let (amps, _) = run(&c);
    let expected = dense::run_circuit(&c).unwrap();
    assert!(expected.max_abs_diff(&amps) < 1e-9);
    let p = amps[marked.to_index().unwrap() as usize].norm_sqr();
    assert!(p >= 0.99, "{p}");
}
