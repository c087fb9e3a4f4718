use std::collections::HashMap;

use crate::dd::{MatrixEdge, NodeId, Universe};
use crate::error::DdError;

impl Universe {
    /// Kronecker product `a ⊗ b`.
    ///
    /// `a` must act on qubits strictly above those of `b`: every level in `a`
    /// is smaller than `b`'s root level. The product is formed by rebuilding
    /// `a` with its terminal replaced by `b`'s root node and multiplying the
    /// two root weights.
    pub fn kron(&mut self, a: MatrixEdge, b: MatrixEdge) -> Result<MatrixEdge, DdError> {
        if a.is_zero() || b.is_zero() {
            return Ok(MatrixEdge::ZERO);
        }
        if let Some(right_min) = self.matrix_level(b) {
            let left_max = self
                .reachable_matrix_nodes(a)
                .into_iter()
                .map(|id| self.matrix_node(id).level())
                .max();
            if let Some(left_max) = left_max.filter(|&l| l >= right_min) {
                return Err(DdError::LevelOverlap { left_max, right_min });
            }
        }
        let mut memo = HashMap::new();
        let body = self.kron_rec(a.node, b.node, &mut memo);
        let weight = self.complex.mul(a.weight, b.weight);
        Ok(self.scale_matrix(body, weight))
    }

    fn kron_rec(&mut self, a: NodeId, b: NodeId, memo: &mut HashMap<NodeId, MatrixEdge>) -> MatrixEdge {
        if a.is_terminal() {
            return MatrixEdge::new(crate::complex::ComplexId::ONE, b);
        }
        if let Some(&e) = memo.get(&a) {
            return e;
        }
        let node = *self.matrix_node(a);
        let mut succ = *node.successors();
        for s in succ.iter_mut() {
            if !s.is_zero() {
                let child = self.kron_rec(s.node, b, memo);
                *s = self.scale_matrix(child, s.weight);
            }
        }
        let e = self.make_matrix_node(node.level(), succ);
        memo.insert(a, e);
        e
    }
}
