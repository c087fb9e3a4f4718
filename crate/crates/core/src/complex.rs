//! Interned complex numbers with tolerance-based identity.
//!
//! Every edge weight in a decision diagram is a [`ComplexId`] handed out by a
//! [`ComplexTable`]. Two values whose real and imaginary parts both differ by
//! less than the table tolerance receive the same handle, so rounding noise
//! accumulated during simulation does not prevent structurally equal nodes
//! from being shared in the unique table.
//!
//! Lookup quantizes each component into cells of width `tolerance` and probes
//! the 3×3 neighbourhood of the value's cell, so values straddling a cell
//! boundary still unify with an existing entry.

use std::collections::HashMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::NumericError;

/// Default per-component interning tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Handle to an interned complex value.
///
/// Handles are only meaningful within the table that produced them.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ComplexId(u32);

impl ComplexId {
    /// The interned `0`.
    pub const ZERO: ComplexId = ComplexId(0);
    /// The interned `1`.
    pub const ONE: ComplexId = ComplexId(1);
    /// The interned `1/√2`.
    pub const SQRT1_2: ComplexId = ComplexId(2);
    /// The interned `-1/√2`.
    pub const NEG_SQRT1_2: ComplexId = ComplexId(3);

    #[inline]
    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    /// Raw table index, stable for the table's lifetime.
    pub fn index(self) -> u32 {
        self.0
    }
}

type Cell = (i64, i64);

/// Tolerance-interning store for complex values.
#[derive(Debug, Clone)]
pub struct ComplexTable {
    values: Vec<Complex64>,
    buckets: HashMap<Cell, Vec<ComplexId>>,
    tolerance: f64,
}

impl Default for ComplexTable {
    fn default() -> Self {
        Self::new()
    }
}

impl ComplexTable {
    pub fn new() -> Self {
        Self::with_tolerance(DEFAULT_TOLERANCE)
    }

    /// Creates a table with a custom tolerance.
    ///
    /// Panics if `tolerance` is not a positive finite number.
    pub fn with_tolerance(tolerance: f64) -> Self {
        assert!(
            tolerance.is_finite() && tolerance > 0.0,
            "interning tolerance must be positive and finite"
        );
        let mut table = ComplexTable {
            values: Vec::new(),
            buckets: HashMap::new(),
            tolerance,
        };
        for (id, value) in [
            (ComplexId::ZERO, Complex64::new(0.0, 0.0)),
            (ComplexId::ONE, Complex64::new(1.0, 0.0)),
            (ComplexId::SQRT1_2, Complex64::new(FRAC_1_SQRT_2, 0.0)),
            (ComplexId::NEG_SQRT1_2, Complex64::new(-FRAC_1_SQRT_2, 0.0)),
        ] {
            let got = table.insert(value);
            debug_assert_eq!(got, id);
        }
        table
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Number of distinct interned values.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Interns `re + i·im`, rejecting non-finite components.
    pub fn intern(&mut self, re: f64, im: f64) -> Result<ComplexId, NumericError> {
        if !re.is_finite() || !im.is_finite() {
            return Err(NumericError::NonFinite { re, im });
        }
        Ok(self.lookup(Complex64::new(re, im)))
    }

    /// Interns a value already known to be finite.
    ///
    /// Arithmetic on interned (hence finite) operands stays finite except for
    /// division, which is checked separately in [`ComplexTable::div`].
    pub(crate) fn lookup(&mut self, value: Complex64) -> ComplexId {
        debug_assert!(value.re.is_finite() && value.im.is_finite(), "{value}");
        let (cr, ci) = self.cell(value);
        for dr in -1..=1 {
            for di in -1..=1 {
                if let Some(bucket) = self.buckets.get(&(cr + dr, ci + di)) {
                    for &id in bucket {
                        let stored = self.values[id.0 as usize];
                        if (stored.re - value.re).abs() < self.tolerance
                            && (stored.im - value.im).abs() < self.tolerance
                        {
                            return id;
                        }
                    }
                }
            }
        }
        self.insert(value)
    }

    fn insert(&mut self, value: Complex64) -> ComplexId {
        let id = ComplexId(u32::try_from(self.values.len()).expect("complex table overflow"));
        self.values.push(value);
        let cell = self.cell(value);
        self.buckets.entry(cell).or_default().push(id);
        id
    }

    fn cell(&self, value: Complex64) -> Cell {
        (
            (value.re / self.tolerance).floor() as i64,
            (value.im / self.tolerance).floor() as i64,
        )
    }

    /// The stored representative of `id`.
    #[inline]
    pub fn value(&self, id: ComplexId) -> Complex64 {
        self.values[id.0 as usize]
    }

    pub fn mul(&mut self, a: ComplexId, b: ComplexId) -> ComplexId {
        if a.is_zero() || b.is_zero() {
            return ComplexId::ZERO;
        }
        if a.is_one() {
            return b;
        }
        if b.is_one() {
            return a;
        }
        self.lookup(self.value(a) * self.value(b))
    }

    pub fn add(&mut self, a: ComplexId, b: ComplexId) -> ComplexId {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        self.lookup(self.value(a) + self.value(b))
    }

    pub fn sub(&mut self, a: ComplexId, b: ComplexId) -> ComplexId {
        if b.is_zero() {
            return a;
        }
        self.lookup(self.value(a) - self.value(b))
    }

    /// `a / b`; fails when `|b|` is below the tolerance.
    pub fn div(&mut self, a: ComplexId, b: ComplexId) -> Result<ComplexId, NumericError> {
        if a == b && !b.is_zero() {
            return Ok(ComplexId::ONE);
        }
        let divisor = self.value(b);
        if divisor.norm() < self.tolerance {
            return Err(NumericError::DivisionByZero {
                re: divisor.re,
                im: divisor.im,
            });
        }
        if a.is_zero() {
            return Ok(ComplexId::ZERO);
        }
        if b.is_one() {
            return Ok(a);
        }
        let quotient = self.value(a) / divisor;
        if !quotient.re.is_finite() || !quotient.im.is_finite() {
            return Err(NumericError::NonFinite {
                re: quotient.re,
                im: quotient.im,
            });
        }
        Ok(self.lookup(quotient))
    }

    /// Multiplies an interned value by a real scalar.
    pub fn scale(&mut self, a: ComplexId, factor: f64) -> ComplexId {
        if a.is_zero() {
            return a;
        }
        self.lookup(self.value(a) * factor)
    }

    /// `re² + im²` of the stored representative; not interned.
    #[inline]
    pub fn magnitude_squared(&self, a: ComplexId) -> f64 {
        self.value(a).norm_sqr()
    }
}
