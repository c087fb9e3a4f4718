//! Kronecker product, addition, matrix-vector multiplication and
//! measurement on decision diagrams.
//!
//! All recursions descend both operands level by level. Sub-results are
//! memoized in a [`ComputeCache`] owned by the universe; the cache is purely
//! an accelerator and may be cleared at any time without changing results.

mod arith;
mod kron;
mod measure;

use std::collections::HashMap;

pub use measure::PROBABILITY_TOLERANCE;

use crate::dd::{NodeId, Universe, VectorEdge};

/// Entries per cache table before it is flushed.
const CACHE_LIMIT: usize = 1 << 20;

/// Memo tables for the recursive operations.
#[derive(Debug, Clone, Default)]
pub(crate) struct ComputeCache {
    /// Keyed on the first node and the second edge rescaled by the first
    /// edge's weight; operands are ordered by node.
    pub(crate) add: HashMap<(NodeId, VectorEdge), VectorEdge>,
    /// Keyed on node identities; operand weights are factored out.
    pub(crate) multiply: HashMap<(NodeId, NodeId), VectorEdge>,
    /// Squared norm of the sub-vector below a node.
    pub(crate) probability: HashMap<NodeId, f64>,
}

impl ComputeCache {
    pub(crate) fn clear(&mut self) {
        self.add.clear();
        self.multiply.clear();
        self.probability.clear();
    }
}

/// Work counters, useful for checking complexity bounds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounters {
    /// Node pairs expanded by `multiply` (cache misses).
    pub multiply_steps: u64,
    /// Node pairs expanded by `add` (cache misses).
    pub add_steps: u64,
    pub cache_hits: u64,
}

impl Universe {
    /// Drops all memoized results.
    pub fn clear_compute_cache(&mut self) {
        self.cache.clear();
    }
}
