use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A computational basis state written most significant qubit first:
/// character `i` is the value of qubit `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct BitString(Vec<bool>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid bit '{found}' at position {position}")]
pub struct BitStringError {
    pub position: usize,
    pub found: char,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn zeros(n: usize) -> Self {
        BitString(vec![false; n])
    }

    /// The `n`-bit string whose value is `index` (qubit 0 = most significant).
    pub fn from_index(index: u64, n: usize) -> Self {
        BitString(
            (0..n)
                .map(|q| {
                    let shift = n - 1 - q;
                    shift < 64 && (index >> shift) & 1 == 1
                })
                .collect(),
        )
    }

    /// Integer value; `None` when it does not fit in 64 bits.
    pub fn to_index(&self) -> Option<u64> {
        let mut value: u64 = 0;
        for &b in &self.0 {
            value = value.checked_mul(2)? | u64::from(b);
        }
        Some(value)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, qubit: usize) -> bool {
        self.0[qubit]
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        BitString(bits)
    }
}

impl FromStr for BitString {
    type Err = BitStringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                found => Err(BitStringError { position, found }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let b: BitString = "110".parse().unwrap();
        assert_eq!(b.to_index(), Some(6));
        assert_eq!(BitString::from_index(6, 3), b);
        assert_eq!(b.to_string(), "110");
        assert_eq!(BitString::from_index(1, 4).to_string(), "0001");
    }

    #[test]
    fn rejects_other_characters() {
        let err = "01x".parse::<BitString>().unwrap_err();
        assert_eq!(err, BitStringError { position: 2, found: 'x' });
    }

    #[test]
    fn wide_strings_have_no_index() {
        let mut b = BitString::new(vec![true; 64]);
        assert_eq!(b.to_index(), Some(u64::MAX));
        b.push(true);
        assert_eq!(b.to_index(), None);
        assert_eq!(BitString::from_index(1, 70).to_string().matches('1').count(), 1);
    }
}
