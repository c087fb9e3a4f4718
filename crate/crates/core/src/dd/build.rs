//! Conversions between dense arrays and decision diagrams.
//!
//! Dense vectors are indexed with qubit 0 as the most significant bit, so the
//! first half of a `2^n` array is the `q0 = |0⟩` sub-vector. Dense matrices
//! are row-major with `row` the output basis state and `col` the input basis
//! state, i.e. entry `(row, col)` is `⟨row|U|col⟩`.

use num_complex::Complex64;

use super::{MatrixEdge, NodeId, Universe, VectorEdge};
use crate::bits::BitString;
use crate::complex::ComplexId;
use crate::error::DdError;

/// Largest qubit count accepted by the dense readout functions.
pub const MAX_DENSE_QUBITS: usize = 20;

fn log2_exact(len: usize) -> Result<usize, DdError> {
    if len == 0 || !len.is_power_of_two() {
        return Err(DdError::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

impl Universe {
    /// Decomposes a dense `2^n` amplitude vector into a reduced, normalized
    /// vector diagram rooted at level 0.
    pub fn vector_from_dense(&mut self, amplitudes: &[Complex64]) -> Result<VectorEdge, DdError> {
        log2_exact(amplitudes.len())?;
        let weights = amplitudes
            .iter()
            .map(|a| self.complex.intern(a.re, a.im))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.vector_from_weights(&weights, 0))
    }

    fn vector_from_weights(&mut self, weights: &[ComplexId], level: u32) -> VectorEdge {
        if let [w] = weights {
            return VectorEdge::terminal(*w);
        }
        let (lo, hi) = weights.split_at(weights.len() / 2);
        let e0 = self.vector_from_weights(lo, level + 1);
        let e1 = self.vector_from_weights(hi, level + 1);
        self.make_vector_node(level, e0, e1)
    }

    /// The basis state `|bits⟩`: one node per level, amplitude 1 on `bits`.
    pub fn basis_state(&mut self, bits: &BitString) -> VectorEdge {
        let mut e = VectorEdge::ONE;
        for (level, &bit) in bits.bits().iter().enumerate().rev() {
            let level = level as u32;
            e = if bit {
                self.make_vector_node(level, VectorEdge::ZERO, e)
            } else {
                self.make_vector_node(level, e, VectorEdge::ZERO)
            };
        }
        e
    }

    /// `|0…0⟩` over `n` qubits.
    pub fn zero_state(&mut self, n: usize) -> VectorEdge {
        self.basis_state(&BitString::zeros(n))
    }

    /// Amplitude of basis state `index`: the product of edge weights along
    /// its path, most significant qubit first.
    pub fn amplitude(&self, v: VectorEdge, n: usize, index: u64) -> Result<Complex64, DdError> {
        if n < 64 && index >> n != 0 {
            return Err(DdError::IndexOutOfRange { index, qubits: n });
        }
        Ok(self.amplitude_of(v, &BitString::from_index(index, n)))
    }

    /// Amplitude of the basis state `bits`.
    pub fn amplitude_of(&self, v: VectorEdge, bits: &BitString) -> Complex64 {
        let mut value = self.complex.value(v.weight);
        let mut e = v;
        for &bit in bits.bits() {
            if e.is_zero() {
                return Complex64::new(0.0, 0.0);
            }
            if e.is_terminal() {
                break;
            }
            e = self.vectors.get(e.node).succ[usize::from(bit)];
            value *= self.complex.value(e.weight);
        }
        value
    }

    /// Expands a vector diagram into its `2^n` amplitudes (`n ≤ 20`).
    pub fn vector_to_dense(&self, v: VectorEdge, n: usize) -> Result<Vec<Complex64>, DdError> {
        if n > MAX_DENSE_QUBITS {
            return Err(DdError::TooManyQubits {
                requested: n,
                max: MAX_DENSE_QUBITS,
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); 1 << n];
        self.fill_vector(v.node, self.complex.value(v.weight), &mut out, v.is_zero());
        Ok(out)
    }

    fn fill_vector(&self, node: NodeId, factor: Complex64, out: &mut [Complex64], zero: bool) {
        if zero {
            return;
        }
        if node.is_terminal() {
            out.fill(factor);
            return;
        }
        let n = self.vectors.get(node);
        let (lo, hi) = out.split_at_mut(out.len() / 2);
        for (e, half) in n.succ.iter().zip([lo, hi]) {
            let w = factor * self.complex.value(e.weight);
            self.fill_vector(e.node, w, half, e.is_zero());
        }
    }

    /// Decomposes a row-major `dim × dim` matrix (`dim = 2^n`) into a matrix
    /// diagram rooted at level 0.
    pub fn matrix_from_dense(&mut self, dim: usize, entries: &[Complex64]) -> Result<MatrixEdge, DdError> {
        log2_exact(dim)?;
        if entries.len() != dim * dim {
            return Err(DdError::LengthMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        let weights = entries
            .iter()
            .map(|a| self.complex.intern(a.re, a.im))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.matrix_from_weights(&weights, dim, 0, 0, dim, 0))
    }

    fn matrix_from_weights(
        &mut self,
        weights: &[ComplexId],
        stride: usize,
        row: usize,
        col: usize,
        size: usize,
        level: u32,
    ) -> MatrixEdge {
        if size == 1 {
            return MatrixEdge::terminal(weights[row * stride + col]);
        }
        let half = size / 2;
        let mut succ = [MatrixEdge::ZERO; 4];
        for (i, e) in succ.iter_mut().enumerate() {
            let (r, c) = (i >> 1, i & 1);
            *e = self.matrix_from_weights(weights, stride, row + r * half, col + c * half, half, level + 1);
        }
        self.make_matrix_node(level, succ)
    }

    /// Entry `(row, col)` of an `n`-qubit matrix diagram.
    pub fn matrix_entry(&self, m: MatrixEdge, n: usize, row: u64, col: u64) -> Result<Complex64, DdError> {
        for index in [row, col] {
            if n < 64 && index >> n != 0 {
                return Err(DdError::IndexOutOfRange { index, qubits: n });
            }
        }
        let mut value = self.complex.value(m.weight);
        let mut e = m;
        for level in 0..n {
            if e.is_zero() {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if e.is_terminal() {
                break;
            }
            let shift = n - 1 - level;
            let r = ((row >> shift) & 1) as usize;
            let c = ((col >> shift) & 1) as usize;
            e = self.matrices.get(e.node).succ[2 * r + c];
            value *= self.complex.value(e.weight);
        }
        Ok(value)
    }

    /// Expands a matrix diagram into a row-major `2^n × 2^n` array (`n ≤ 12`).
    pub fn matrix_to_dense(&self, m: MatrixEdge, n: usize) -> Result<Vec<Complex64>, DdError> {
        const MAX: usize = 12;
        if n > MAX {
            return Err(DdError::TooManyQubits { requested: n, max: MAX });
        }
        let dim = 1usize << n;
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        if !m.is_zero() {
            self.fill_matrix(m.node, self.complex.value(m.weight), &mut out, dim, 0, 0, dim);
        }
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_matrix(
        &self,
        node: NodeId,
        factor: Complex64,
        out: &mut [Complex64],
        stride: usize,
        row: usize,
        col: usize,
        size: usize,
    ) {
        if node.is_terminal() {
            for r in row..row + size {
                out[r * stride + col..r * stride + col + size].fill(factor);
            }
            return;
        }
        let half = size / 2;
        let n = *self.matrices.get(node);
        for (i, e) in n.succ.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let w = factor * self.complex.value(e.weight);
            self.fill_matrix(e.node, w, out, stride, row + (i >> 1) * half, col + (i & 1) * half, half);
        }
    }

    /// Rebuilds a matrix diagram with every level moved down by `offset`,
    /// e.g. to place a gate built for qubit 0 onto a lower qubit before a
    /// Kronecker product.
    pub fn shift_matrix_levels(&mut self, m: MatrixEdge, offset: u32) -> MatrixEdge {
        if offset == 0 {
            return m;
        }
        let mut memo = std::collections::HashMap::new();
        let inner = self.shift_rec(m.node, offset, &mut memo);
        self.scale_matrix(inner, m.weight)
    }

    fn shift_rec(
        &mut self,
        node: NodeId,
        offset: u32,
        memo: &mut std::collections::HashMap<NodeId, MatrixEdge>,
    ) -> MatrixEdge {
        if node.is_terminal() {
            return MatrixEdge::ONE;
        }
        if let Some(&e) = memo.get(&node) {
            return e;
        }
        let n = *self.matrices.get(node);
        let mut succ = n.succ;
        for s in succ.iter_mut() {
            if !s.is_zero() {
                let child = self.shift_rec(s.node, offset, memo);
                *s = self.scale_matrix(child, s.weight);
            }
        }
        let e = self.make_matrix_node(n.level + offset, succ);
        memo.insert(node, e);
        e
    }
}
