//! Node storage, unique tables and normalized node construction.
//!
//! A [`Universe`] owns everything a diagram needs: the complex table, one
//! node store per diagram kind (vectors have two successors, matrices four)
//! and the compute caches used by the operations in [`crate::ops`]. Edges are
//! plain `Copy` values and are only meaningful inside the universe that
//! created them.
//!
//! Levels are qubit indices: level 0 is the most significant qubit and a
//! node's successors always sit at a strictly greater level (or are the
//! terminal). Every non-zero root-to-terminal path visits every level; a
//! sub-vector whose two halves are equal is not skipped but shared through
//! the unique table.

mod build;
mod dot;

use std::collections::HashMap;
use std::hash::Hash;

use crate::complex::{ComplexId, ComplexTable};
use crate::ops::{ComputeCache, OpCounters};

/// Identifier of a node inside a [`Universe`]; [`NodeId::TERMINAL`] is the
/// single terminal node.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(u32);

impl NodeId {
    pub const TERMINAL: NodeId = NodeId(0);

    #[inline]
    pub fn is_terminal(self) -> bool {
        self == Self::TERMINAL
    }

    fn slot(self) -> usize {
        debug_assert!(!self.is_terminal());
        (self.0 - 1) as usize
    }

    fn from_slot(slot: usize) -> Self {
        NodeId(u32::try_from(slot + 1).expect("node store overflow"))
    }
}

macro_rules! edge_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
        pub struct $name {
            pub weight: ComplexId,
            pub node: NodeId,
        }

        impl $name {
            /// The canonical zero edge (weight 0 into the terminal).
            pub const ZERO: $name = $name { weight: ComplexId::ZERO, node: NodeId::TERMINAL };
            /// Weight 1 into the terminal: the scalar `1`.
            pub const ONE: $name = $name { weight: ComplexId::ONE, node: NodeId::TERMINAL };

            pub fn new(weight: ComplexId, node: NodeId) -> Self {
                if weight.is_zero() {
                    Self::ZERO
                } else {
                    $name { weight, node }
                }
            }

            pub fn terminal(weight: ComplexId) -> Self {
                Self::new(weight, NodeId::TERMINAL)
            }

            #[inline]
            pub fn is_zero(&self) -> bool {
                self.weight.is_zero()
            }

            #[inline]
            pub fn is_terminal(&self) -> bool {
                self.node.is_terminal()
            }
        }
    };
}

edge_type!(
    /// Weighted edge into a vector node.
    VectorEdge
);
edge_type!(
    /// Weighted edge into a matrix node.
    MatrixEdge
);

/// Vector node: successor 0 is the `|0⟩` half, successor 1 the `|1⟩` half.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VectorNode {
    level: u32,
    succ: [VectorEdge; 2],
}

/// Matrix node with successors in quadrant order `(e00, e01, e10, e11)`.
///
/// `eRC` holds the sub-matrix with row (output) bit `R` and column (input)
/// bit `C` of this node's qubit, so `e01` is the upper-right quadrant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MatrixNode {
    level: u32,
    succ: [MatrixEdge; 4],
}

impl VectorNode {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn successors(&self) -> &[VectorEdge; 2] {
        &self.succ
    }
}

impl MatrixNode {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn successors(&self) -> &[MatrixEdge; 4] {
        &self.succ
    }
}

/// Slot storage plus the unique table for one node kind.
#[derive(Debug, Clone)]
pub(crate) struct NodeStore<N> {
    slots: Vec<Option<N>>,
    free: Vec<usize>,
    unique: HashMap<N, NodeId>,
}

impl<N: Copy + Eq + Hash> NodeStore<N> {
    fn new() -> Self {
        NodeStore {
            slots: Vec::new(),
            free: Vec::new(),
            unique: HashMap::new(),
        }
    }

    #[inline]
    fn get(&self, id: NodeId) -> &N {
        self.slots[id.slot()]
            .as_ref()
            .expect("edge refers to a collected node")
    }

    fn find_or_insert(&mut self, node: N) -> NodeId {
        if let Some(&id) = self.unique.get(&node) {
            return id;
        }
        let slot = match self.free.pop() {
            Some(slot) => {
                self.slots[slot] = Some(node);
                slot
            }
            None => {
                self.slots.push(Some(node));
                self.slots.len() - 1
            }
        };
        let id = NodeId::from_slot(slot);
        self.unique.insert(node, id);
        id
    }

    fn live(&self) -> usize {
        self.unique.len()
    }

    /// Frees every live slot not flagged in `marked`.
    fn sweep(&mut self, marked: &[bool]) -> usize {
        let mut freed = 0;
        // Ascending slot order keeps the free list (and thus later node ids)
        // independent of hash iteration order.
        for (slot, entry) in self.slots.iter_mut().enumerate() {
            if marked[slot] {
                continue;
            }
            if let Some(node) = entry.take() {
                self.unique.remove(&node);
                self.free.push(slot);
                freed += 1;
            }
        }
        // pop() hands out low slots first
        self.free.sort_unstable_by(|a, b| b.cmp(a));
        freed
    }

    fn live_nodes(&self) -> impl Iterator<Item = (NodeId, &N)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(slot, n)| n.as_ref().map(|n| (NodeId::from_slot(slot), n)))
    }
}

/// A decision-diagram universe: complex table, unique tables and caches.
///
/// Single-owner; concurrent simulations use separate universes.
#[derive(Debug, Clone)]
pub struct Universe {
    pub(crate) complex: ComplexTable,
    pub(crate) vectors: NodeStore<VectorNode>,
    pub(crate) matrices: NodeStore<MatrixNode>,
    pub(crate) cache: ComputeCache,
    pub(crate) counters: OpCounters,
}

impl Default for Universe {
    fn default() -> Self {
        Self::new()
    }
}

impl Universe {
    pub fn new() -> Self {
        Self::with_complex_table(ComplexTable::new())
    }

    pub fn with_complex_table(complex: ComplexTable) -> Self {
        Universe {
            complex,
            vectors: NodeStore::new(),
            matrices: NodeStore::new(),
            cache: ComputeCache::default(),
            counters: OpCounters::default(),
        }
    }

    pub fn complex(&self) -> &ComplexTable {
        &self.complex
    }

    pub fn complex_mut(&mut self) -> &mut ComplexTable {
        &mut self.complex
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }

    pub fn reset_counters(&mut self) {
        self.counters = OpCounters::default();
    }

    pub fn vector_node(&self, id: NodeId) -> &VectorNode {
        self.vectors.get(id)
    }

    pub fn matrix_node(&self, id: NodeId) -> &MatrixNode {
        self.matrices.get(id)
    }

    /// Live vector nodes in the unique table.
    pub fn live_vector_nodes(&self) -> usize {
        self.vectors.live()
    }

    /// Live matrix nodes in the unique table.
    pub fn live_matrix_nodes(&self) -> usize {
        self.matrices.live()
    }

    /// Level of the node an edge points to; `None` for the terminal.
    pub fn vector_level(&self, e: VectorEdge) -> Option<u32> {
        (!e.is_terminal()).then(|| self.vectors.get(e.node).level)
    }

    pub fn matrix_level(&self, e: MatrixEdge) -> Option<u32> {
        (!e.is_terminal()).then(|| self.matrices.get(e.node).level)
    }

    /// Builds (or finds) the normalized vector node at `level` with the given
    /// successors and returns an edge carrying the factored-out weight.
    ///
    /// The divisor is `e0`'s weight when non-zero, otherwise `e1`'s. Two zero
    /// successors yield the zero edge without allocating a node.
    pub fn make_vector_node(&mut self, level: u32, e0: VectorEdge, e1: VectorEdge) -> VectorEdge {
        let mut succ = [e0, e1].map(|e| VectorEdge::new(e.weight, e.node));
        let Some(first) = succ.iter().position(|e| !e.is_zero()) else {
            return VectorEdge::ZERO;
        };
        debug_assert!(succ.iter().all(|e| self
            .vector_level(*e)
            .is_none_or(|l| l > level)));
        let divisor = succ[first].weight;
        for (i, e) in succ.iter_mut().enumerate() {
            if i == first {
                e.weight = ComplexId::ONE;
            } else if !e.is_zero() {
                e.weight = self.normalize_weight(e.weight, divisor);
            }
        }
        let succ = succ.map(|e| VectorEdge::new(e.weight, e.node));
        let id = self.vectors.find_or_insert(VectorNode { level, succ });
        VectorEdge::new(divisor, id)
    }

    /// Matrix counterpart of [`Universe::make_vector_node`]; the divisor is
    /// the first non-zero weight among `(e00, e01, e10, e11)`.
    pub fn make_matrix_node(&mut self, level: u32, succ: [MatrixEdge; 4]) -> MatrixEdge {
        let mut succ = succ.map(|e| MatrixEdge::new(e.weight, e.node));
        let Some(first) = succ.iter().position(|e| !e.is_zero()) else {
            return MatrixEdge::ZERO;
        };
        debug_assert!(succ.iter().all(|e| self
            .matrix_level(*e)
            .is_none_or(|l| l > level)));
        let divisor = succ[first].weight;
        for (i, e) in succ.iter_mut().enumerate() {
            if i == first {
                e.weight = ComplexId::ONE;
            } else if !e.is_zero() {
                e.weight = self.normalize_weight(e.weight, divisor);
            }
        }
        let succ = succ.map(|e| MatrixEdge::new(e.weight, e.node));
        let id = self.matrices.find_or_insert(MatrixNode { level, succ });
        MatrixEdge::new(divisor, id)
    }

    fn normalize_weight(&mut self, weight: ComplexId, divisor: ComplexId) -> ComplexId {
        // divisor is a non-zero interned value, so |divisor| exceeds the
        // tolerance up to one rounding step
        self.complex
            .div(weight, divisor)
            .expect("normalization divisor is non-zero")
    }

    /// Multiplies an edge's weight by `factor`.
    pub fn scale_vector(&mut self, e: VectorEdge, factor: ComplexId) -> VectorEdge {
        VectorEdge::new(self.complex.mul(e.weight, factor), e.node)
    }

    pub fn scale_matrix(&mut self, e: MatrixEdge, factor: ComplexId) -> MatrixEdge {
        MatrixEdge::new(self.complex.mul(e.weight, factor), e.node)
    }

    /// Number of distinct non-terminal nodes reachable from `e`.
    pub fn vector_node_count(&self, e: VectorEdge) -> usize {
        self.reachable_vector_nodes(e).len()
    }

    pub fn matrix_node_count(&self, e: MatrixEdge) -> usize {
        self.reachable_matrix_nodes(e).len()
    }

    /// Reachable non-terminal vector nodes in depth-first pre-order.
    pub fn reachable_vector_nodes(&self, e: VectorEdge) -> Vec<NodeId> {
        let mut seen = vec![false; self.vectors.slots.len()];
        let mut order = Vec::new();
        let mut stack = vec![e.node];
        while let Some(id) = stack.pop() {
            if id.is_terminal() || seen[id.slot()] {
                continue;
            }
            seen[id.slot()] = true;
            order.push(id);
            let node = self.vectors.get(id);
            stack.extend(node.succ.iter().rev().map(|s| s.node));
        }
        order
    }

    pub fn reachable_matrix_nodes(&self, e: MatrixEdge) -> Vec<NodeId> {
        let mut seen = vec![false; self.matrices.slots.len()];
        let mut order = Vec::new();
        let mut stack = vec![e.node];
        while let Some(id) = stack.pop() {
            if id.is_terminal() || seen[id.slot()] {
                continue;
            }
            seen[id.slot()] = true;
            order.push(id);
            let node = self.matrices.get(id);
            stack.extend(node.succ.iter().rev().map(|s| s.node));
        }
        order
    }

    /// Checks the structural invariants on every node reachable from `e`:
    /// first non-zero successor weight is exactly the interned 1, at least one
    /// successor is non-zero, zero edges point to the terminal and successor
    /// levels are strictly deeper.
    pub fn vector_is_normalized(&self, e: VectorEdge) -> bool {
        self.reachable_vector_nodes(e).into_iter().all(|id| {
            let node = self.vectors.get(id);
            well_formed(
                node.level,
                node.succ.iter().map(|s| (s.weight, s.node)),
                |n| self.vectors.get(n).level,
            )
        })
    }

    pub fn matrix_is_normalized(&self, e: MatrixEdge) -> bool {
        self.reachable_matrix_nodes(e).into_iter().all(|id| {
            let node = self.matrices.get(id);
            well_formed(
                node.level,
                node.succ.iter().map(|s| (s.weight, s.node)),
                |n| self.matrices.get(n).level,
            )
        })
    }

    /// Verifies that no two live nodes share a level and successor tuple and
    /// that the unique tables agree with the slot stores.
    pub fn unique_tables_consistent(&self) -> bool {
        fn check<N: Copy + Eq + Hash>(store: &NodeStore<N>) -> bool {
            let mut seen = HashMap::new();
            for (id, node) in store.live_nodes() {
                if seen.insert(*node, id).is_some() {
                    return false;
                }
                if store.unique.get(node) != Some(&id) {
                    return false;
                }
            }
            seen.len() == store.unique.len()
        }
        check(&self.vectors) && check(&self.matrices)
    }

    /// Frees every node unreachable from the given roots and clears all
    /// compute caches. Returns the number of freed nodes.
    ///
    /// Edges into freed nodes become invalid.
    pub fn collect_garbage(&mut self, vector_roots: &[VectorEdge], matrix_roots: &[MatrixEdge]) -> usize {
        let mut vmark = vec![false; self.vectors.slots.len()];
        for &root in vector_roots {
            for id in self.reachable_vector_nodes(root) {
                vmark[id.slot()] = true;
            }
        }
        let mut mmark = vec![false; self.matrices.slots.len()];
        for &root in matrix_roots {
            for id in self.reachable_matrix_nodes(root) {
                mmark[id.slot()] = true;
            }
        }
        self.cache.clear();
        self.vectors.sweep(&vmark) + self.matrices.sweep(&mmark)
    }
}

fn well_formed(
    level: u32,
    succ: impl Iterator<Item = (ComplexId, NodeId)>,
    level_of: impl Fn(NodeId) -> u32,
) -> bool {
    let mut first_found = false;
    for (weight, node) in succ {
        if weight.is_zero() {
            if !node.is_terminal() {
                return false;
            }
            continue;
        }
        if !first_found {
            if !weight.is_one() {
                return false;
            }
            first_found = true;
        }
        if !node.is_terminal() && level_of(node) <= level {
            return false;
        }
    }
    first_found
}
