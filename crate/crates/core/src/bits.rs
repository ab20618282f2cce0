//! Ordered bit vectors used for d-vectors, positions and kill columns.

use std::fmt;

use serde::{Deserialize, Serialize};

/// An ordered list of bits, one per test dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BitVector(Vec<bool>);

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Self {
        BitVector(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitVector(vec![false; len])
    }

    /// Parses a string of `0`/`1` characters such as `"0111"`.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(BitVector)
    }

    /// Builds an `len`-bit vector from the low bits of `value`; the first
    /// dimension is the most significant bit, so ascending integers order
    /// vectors like their binary strings.
    pub fn from_node(value: u64, len: usize) -> Self {
        BitVector((0..len).map(|i| value >> (len - 1 - i) & 1 == 1).collect())
    }

    /// Inverse of [`BitVector::from_node`]. Only meaningful for `len() <= 64`.
    pub fn to_node(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| acc << 1 | b as u64)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.0.get(i).copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    /// Manhattan norm: the number of set bits.
    pub fn norm(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_zero(&self) -> bool {
        !self.0.iter().any(|&b| b)
    }

    /// Indices where the two vectors disagree.
    ///
    /// # Panics
    /// If the lengths differ.
    pub fn differing_indices(&self, other: &BitVector) -> Vec<usize> {
        assert_eq!(self.len(), other.len(), "bit vectors of different length");
        self.iter()
            .zip(other.iter())
            .enumerate()
            .filter_map(|(i, (a, b))| (a != b).then_some(i))
            .collect()
    }

    /// True when every set bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitVector) -> bool {
        self.len() == other.len() && self.iter().zip(other.iter()).all(|(a, b)| !a || b)
    }

    /// The first `k` bits (all of them if `k >= len`).
    pub fn prefix(&self, k: usize) -> BitVector {
        BitVector(self.0[..k.min(self.len())].to_vec())
    }

    /// `⟨0,1,1,1⟩` notation.
    pub fn angle(&self) -> String {
        let inner: Vec<&str> = self.iter().map(|b| if b { "1" } else { "0" }).collect();
        format!("⟨{}⟩", inner.join(","))
    }
}

impl From<Vec<bool>> for BitVector {
    fn from(bits: Vec<bool>) -> Self {
        BitVector(bits)
    }
}

impl FromIterator<bool> for BitVector {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitVector(iter.into_iter().collect())
    }
}

/// Renders as a compact bit string, e.g. `0111`.
impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}
