use crate::dd::{MatrixEdge, NodeId, Universe, VectorEdge};

use super::CACHE_LIMIT;

impl Universe {
    /// Sum of two vectors over the same qubits.
    pub fn add(&mut self, a: VectorEdge, b: VectorEdge) -> VectorEdge {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.node == b.node {
            let w = self.complex.add(a.weight, b.weight);
            return VectorEdge::new(w, a.node);
        }
        // a + b = wa · (A + (wb/wa)·B), with the operands ordered by node so
        // that both argument orders share one cache entry
        let (x, y) = if a.node <= b.node { (a, b) } else { (b, a) };
        let ratio = self
            .complex
            .div(y.weight, x.weight)
            .expect("non-zero edges carry non-zero weights");
        let body = self.add_nodes(x.node, VectorEdge::new(ratio, y.node));
        self.scale_vector(body, x.weight)
    }

    fn add_nodes(&mut self, xn: NodeId, y: VectorEdge) -> VectorEdge {
        if let Some(&hit) = self.cache.add.get(&(xn, y)) {
            self.counters.cache_hits += 1;
            return hit;
        }
        self.counters.add_steps += 1;

        let (nx, ny) = (*self.vector_node(xn), *self.vector_node(y.node));
        assert_eq!(nx.level(), ny.level(), "add: operands are not level-aligned");
        let mut out = [VectorEdge::ZERO; 2];
        for (i, r) in out.iter_mut().enumerate() {
            let right = self.scale_vector(ny.successors()[i], y.weight);
            *r = self.add(nx.successors()[i], right);
        }
        let result = self.make_vector_node(nx.level(), out[0], out[1]);

        if self.cache.add.len() >= CACHE_LIMIT {
            self.cache.add.clear();
        }
        self.cache.add.insert((xn, y), result);
        result
    }

    /// Matrix-vector product `u · v`.
    ///
    /// Each level splits `u` into quadrants and `v` into halves; the result
    /// halves are `u00·v0 + u01·v1` and `u10·v0 + u11·v1`.
    pub fn multiply(&mut self, u: MatrixEdge, v: VectorEdge) -> VectorEdge {
        if u.is_zero() || v.is_zero() {
            return VectorEdge::ZERO;
        }
        let weight = self.complex.mul(u.weight, v.weight);
        if u.is_terminal() || v.is_terminal() {
            assert!(
                u.is_terminal() && v.is_terminal(),
                "multiply: operands are not level-aligned"
            );
            return VectorEdge::terminal(weight);
        }
        let body = self.multiply_nodes(u.node, v.node);
        self.scale_vector(body, weight)
    }

    fn multiply_nodes(&mut self, un: NodeId, vn: NodeId) -> VectorEdge {
        if let Some(&hit) = self.cache.multiply.get(&(un, vn)) {
            self.counters.cache_hits += 1;
            return hit;
        }
        self.counters.multiply_steps += 1;

        let m = *self.matrix_node(un);
        let x = *self.vector_node(vn);
        assert_eq!(m.level(), x.level(), "multiply: operands are not level-aligned");
        let mut out = [VectorEdge::ZERO; 2];
        for (row, r) in out.iter_mut().enumerate() {
            let left = self.multiply(m.successors()[2 * row], x.successors()[0]);
            let right = self.multiply(m.successors()[2 * row + 1], x.successors()[1]);
            *r = self.add(left, right);
        }
        let result = self.make_vector_node(m.level(), out[0], out[1]);

        if self.cache.multiply.len() >= CACHE_LIMIT {
            self.cache.multiply.clear();
        }
        self.cache.multiply.insert((un, vn), result);
        result
    }
}
