//! Probabilities and projective measurement in the computational basis.
//!
//! The probability of a node is the squared norm of the sub-vector it
//! represents, computed bottom-up as `p = |w0|²·p0 + |w1|²·p1` and memoized
//! per node. The incoming edge weight is applied by the caller. Collapsing a
//! qubit replaces the losing branches by zero stubs and rescales the root
//! edge by `1/√P(outcome)`.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;

use crate::bits::BitString;
use crate::complex::ComplexId;
use crate::dd::{NodeId, Universe, VectorEdge};
use crate::error::DdError;

/// Maximum tolerated deviation of `P(0) + P(1)` from 1 before a measurement
/// is rejected as numerically drifted.
pub const PROBABILITY_TOLERANCE: f64 = 1e-8;

impl Universe {
    /// Squared norm of the sub-vector below `node`, excluding any incoming
    /// edge weight. The terminal has probability 1.
    pub fn node_probability(&mut self, node: NodeId) -> f64 {
        if node.is_terminal() {
            return 1.0;
        }
        if let Some(&p) = self.cache.probability.get(&node) {
            return p;
        }
        let n = *self.vector_node(node);
        let mut p = 0.0;
        for e in n.successors() {
            if !e.is_zero() {
                p += self.complex.magnitude_squared(e.weight) * self.node_probability(e.node);
            }
        }
        self.cache.probability.insert(node, p);
        p
    }

    /// `Σ|α|²` of the whole vector.
    pub fn norm_squared(&mut self, v: VectorEdge) -> f64 {
        if v.is_zero() {
            return 0.0;
        }
        self.complex.magnitude_squared(v.weight) * self.node_probability(v.node)
    }

    /// `(P(0), P(1))` for the qubit at the root of `v`, root weight included.
    pub fn qubit_probabilities(&mut self, v: VectorEdge) -> (f64, f64) {
        if v.is_zero() || v.is_terminal() {
            return (self.norm_squared(v), 0.0);
        }
        let root = self.complex.magnitude_squared(v.weight);
        let n = *self.vector_node(v.node);
        let [p0, p1] = n.successors().map(|e| {
            if e.is_zero() {
                0.0
            } else {
                self.complex.magnitude_squared(e.weight) * self.node_probability(e.node)
            }
        });
        (root * p0, root * p1)
    }

    /// `(P(0), P(1))` for an arbitrary qubit `q`.
    pub fn probabilities_of(&mut self, v: VectorEdge, q: usize) -> Result<(f64, f64), DdError> {
        if v.is_zero() {
            return Ok((0.0, 0.0));
        }
        let mut memo = HashMap::new();
        let (p0, p1) = self.branch_probabilities(v.node, q as u32, &mut memo)?;
        let root = self.complex.magnitude_squared(v.weight);
        Ok((root * p0, root * p1))
    }

    fn branch_probabilities(
        &mut self,
        node: NodeId,
        q: u32,
        memo: &mut HashMap<NodeId, (f64, f64)>,
    ) -> Result<(f64, f64), DdError> {
        if node.is_terminal() {
            return Err(DdError::QubitNotPresent { qubit: q as usize });
        }
        if let Some(&p) = memo.get(&node) {
            return Ok(p);
        }
        let n = *self.vector_node(node);
        if n.level() > q {
            return Err(DdError::QubitNotPresent { qubit: q as usize });
        }
        let mut acc = (0.0, 0.0);
        for (i, e) in n.successors().iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let w2 = self.complex.magnitude_squared(e.weight);
            if n.level() == q {
                let p = w2 * self.node_probability(e.node);
                if i == 0 {
                    acc.0 += p;
                } else {
                    acc.1 += p;
                }
            } else {
                let (c0, c1) = self.branch_probabilities(e.node, q, memo)?;
                acc.0 += w2 * c0;
                acc.1 += w2 * c1;
            }
        }
        memo.insert(node, acc);
        Ok(acc)
    }

    /// Samples the root qubit and collapses the state onto the outcome.
    ///
    /// Outcome 0 is chosen iff a uniform draw `u ∈ [0, 1)` is below `P(0)`.
    pub fn measure_top_qubit<R: Rng + ?Sized>(
        &mut self,
        v: VectorEdge,
        rng: &mut R,
    ) -> Result<(bool, VectorEdge), DdError> {
        let (p0, p1) = self.qubit_probabilities(v);
        check_sum(p0, p1)?;
        let outcome = rng.gen::<f64>() >= p0;
        let collapsed = self.collapse_top_qubit(v, outcome)?;
        Ok((outcome, collapsed))
    }

    /// Collapses the root qubit onto `outcome` without sampling.
    pub fn collapse_top_qubit(&mut self, v: VectorEdge, outcome: bool) -> Result<VectorEdge, DdError> {
        let (p0, p1) = self.qubit_probabilities(v);
        check_sum(p0, p1)?;
        let p = if outcome { p1 } else { p0 };
        if p <= 0.0 || v.is_terminal() {
            return Err(DdError::ImpossibleOutcome { outcome: outcome as u8 });
        }
        let n = *self.vector_node(v.node);
        let [s0, s1] = *n.successors();
        let kept = if outcome {
            self.make_vector_node(n.level(), VectorEdge::ZERO, s1)
        } else {
            self.make_vector_node(n.level(), s0, VectorEdge::ZERO)
        };
        Ok(self.renormalized(v.weight, kept, p))
    }

    /// Samples qubit `q` and collapses the state onto the outcome.
    pub fn measure_qubit<R: Rng + ?Sized>(
        &mut self,
        v: VectorEdge,
        q: usize,
        rng: &mut R,
    ) -> Result<(bool, VectorEdge), DdError> {
        let (p0, p1) = self.probabilities_of(v, q)?;
        check_sum(p0, p1)?;
        let outcome = rng.gen::<f64>() >= p0;
        let collapsed = self.collapse_qubit(v, q, outcome)?;
        Ok((outcome, collapsed))
    }

    /// Collapses qubit `q` onto `outcome`: every level-`q` branch on the
    /// other side becomes a zero stub and the root weight is rescaled.
    pub fn collapse_qubit(&mut self, v: VectorEdge, q: usize, outcome: bool) -> Result<VectorEdge, DdError> {
        if self.vector_level(v) == Some(q as u32) {
            return self.collapse_top_qubit(v, outcome);
        }
        let (p0, p1) = self.probabilities_of(v, q)?;
        check_sum(p0, p1)?;
        let p = if outcome { p1 } else { p0 };
        if p <= 0.0 {
            return Err(DdError::ImpossibleOutcome { outcome: outcome as u8 });
        }
        let mut memo = HashMap::new();
        let kept = self.collapse_rec(v.node, q as u32, outcome, &mut memo);
        Ok(self.renormalized(v.weight, kept, p))
    }

    fn collapse_rec(
        &mut self,
        node: NodeId,
        q: u32,
        outcome: bool,
        memo: &mut HashMap<NodeId, VectorEdge>,
    ) -> VectorEdge {
        if let Some(&e) = memo.get(&node) {
            return e;
        }
        let n = *self.vector_node(node);
        let mut succ = *n.successors();
        if n.level() == q {
            succ[usize::from(!outcome)] = VectorEdge::ZERO;
        } else {
            for s in succ.iter_mut() {
                if !s.is_zero() {
                    let child = self.collapse_rec(s.node, q, outcome, memo);
                    *s = self.scale_vector(child, s.weight);
                }
            }
        }
        let e = self.make_vector_node(n.level(), succ[0], succ[1]);
        memo.insert(node, e);
        e
    }

    fn renormalized(&mut self, root_weight: ComplexId, kept: VectorEdge, p: f64) -> VectorEdge {
        let w: Complex64 = self.complex.value(root_weight) * self.complex.value(kept.weight) / p.sqrt();
        let w = self.complex.lookup(w);
        VectorEdge::new(w, kept.node)
    }

    /// Measures every qubit, most significant first, each on the state
    /// collapsed by the previous outcomes. Returns the sampled basis state
    /// and the collapsed post-measurement vector.
    pub fn measure_all<R: Rng + ?Sized>(
        &mut self,
        v: VectorEdge,
        rng: &mut R,
    ) -> Result<(BitString, VectorEdge), DdError> {
        let (p0, p1) = self.qubit_probabilities(v);
        check_sum(p0, p1)?;
        let mut bits = BitString::default();
        let mut phase = self.complex.value(v.weight);
        let mut e = v;
        while !e.is_terminal() {
            let n = *self.vector_node(e.node);
            let [q0, q1] = n.successors().map(|s| {
                if s.is_zero() {
                    0.0
                } else {
                    self.complex.magnitude_squared(s.weight) * self.node_probability(s.node)
                }
            });
            let total = q0 + q1;
            let outcome = rng.gen::<f64>() * total >= q0;
            bits.push(outcome);
            e = n.successors()[usize::from(outcome)];
            phase *= self.complex.value(e.weight);
        }
        let basis = self.basis_state(&bits);
        let phase = self.complex.lookup(phase / phase.norm());
        Ok((bits, self.scale_vector(basis, phase)))
    }
}

fn check_sum(p0: f64, p1: f64) -> Result<(), DdError> {
    let total = p0 + p1;
    if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
        return Err(DdError::NormDrift {
            total,
            tolerance: PROBABILITY_TOLERANCE,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sample_state(u: &mut Universe) -> VectorEdge {
        u.vector_from_dense(&[0.0, 0.0, 0.5, 0.0, 0.5, 0.0, -FRAC_1_SQRT_2, 0.0].map(c))
            .unwrap()
    }

    #[test]
    fn node_probabilities_of_sample_state() {
        let mut u = Universe::new();
        let v = sample_state(&mut u);
        let root = *u.vector_node(v.node);
        let [left, right] = root.successors().map(|e| e.node);
        let q2 = u.vector_node(right).successors()[0].node;
        assert_eq!(u.node_probability(q2), 1.0);
        assert!((u.node_probability(left) - 1.0).abs() < 1e-12);
        assert!((u.node_probability(right) - 3.0).abs() < 1e-12);
        assert_eq!(u.node_probability(NodeId::TERMINAL), 1.0);
    }

    #[test]
    fn top_qubit_probabilities() {
        let mut u = Universe::new();
        let v = sample_state(&mut u);
        let (p0, p1) = u.qubit_probabilities(v);
        assert!((p0 - 0.25).abs() < 1e-12 && (p1 - 0.75).abs() < 1e-12);
        let z = u.zero_state(3);
        assert_eq!(u.qubit_probabilities(z), (1.0, 0.0));
    }

    #[test]
    fn forced_collapse_rescales_root() {
        let mut u = Universe::new();
        let v = sample_state(&mut u);
        let after = u.collapse_top_qubit(v, true).unwrap();
        let w = u.complex().value(after.weight);
        assert!((w - c(1.0 / 3f64.sqrt())).norm() < 1e-12);
        let root = *u.vector_node(after.node);
        assert_eq!(root.successors()[0], VectorEdge::ZERO);
        assert!((u.norm_squared(after) - 1.0).abs() < 1e-12);
        for i in 0..4 {
            assert_eq!(u.amplitude(after, 3, i).unwrap(), c(0.0));
        }
    }

    #[test]
    fn impossible_outcome_is_rejected() {
        let mut u = Universe::new();
        let z = u.zero_state(2);
        assert_eq!(
            u.collapse_top_qubit(z, true),
            Err(DdError::ImpossibleOutcome { outcome: 1 })
        );
        assert!(u.collapse_qubit(z, 1, true).is_err());
    }

    #[test]
    fn drift_is_detected() {
        let mut u = Universe::new();
        let v = u.vector_from_dense(&[c(1.0), c(1.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(u.measure_top_qubit(v, &mut rng), Err(DdError::NormDrift { .. })));
    }

    #[test]
    fn single_qubit_zero_is_deterministic() {
        let mut u = Universe::new();
        let z = u.zero_state(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let (bit, after) = u.measure_top_qubit(z, &mut rng).unwrap();
            assert!(!bit);
            assert_eq!(after, z);
        }
    }

    #[test]
    fn missing_qubit_is_reported() {
        let mut u = Universe::new();
        let z = u.zero_state(2);
        assert_eq!(u.probabilities_of(z, 2), Err(DdError::QubitNotPresent { qubit: 2 }));
    }

    #[test]
    fn measure_all_on_basis_state() {
        let mut u = Universe::new();
        let b = u.basis_state(&"10".parse().unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let (bits, after) = u.measure_all(b, &mut rng).unwrap();
            assert_eq!(bits.to_string(), "10");
            assert_eq!(after, b);
        }
    }

    #[test]
    fn same_seed_same_outcomes() {
        let mut u = Universe::new();
        let v = u.vector_from_dense(&[0.5, 0.5, 0.5, 0.5].map(c)).unwrap();
        let draw = |u: &mut Universe| {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            (0..50)
                .map(|_| u.measure_all(v, &mut rng).unwrap().0.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(&mut u), draw(&mut u));
    }
}
