//! Subsets of the message universe `[1:m]`.
//!
//! Message indices are 1-based in every public signature. Internally a set
//! is a bitmask where message `i` lives at bit `i - 1`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{validation, Result};

/// Largest supported number of messages. Lattice tables have `2^m` entries.
pub const MAX_MESSAGES: usize = 24;

/// A subset of `[1:m]`. Doubles as a receiver identity: receiver `H` is the
/// receiver whose side information is `H`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MessageSet {
    universe: u8,
    bits: u32,
}

impl MessageSet {
    pub fn empty(universe: usize) -> Result<Self> {
        check_universe(universe)?;
        Ok(Self { universe: universe as u8, bits: 0 })
    }

    pub fn full(universe: usize) -> Result<Self> {
        check_universe(universe)?;
        Ok(Self { universe: universe as u8, bits: full_mask(universe) })
    }

    /// Builds a set from 1-based message indices. Repeated indices are merged.
    pub fn from_indices(universe: usize, indices: &[usize]) -> Result<Self> {
        check_universe(universe)?;
        let mut bits = 0u32;
        for &i in indices {
            if i == 0 || i > universe {
                return Err(validation(format!("message index {i} outside [1:{universe}]")));
            }
            bits |= 1 << (i - 1);
        }
        Ok(Self { universe: universe as u8, bits })
    }

    pub fn from_bits(universe: usize, bits: u32) -> Result<Self> {
        check_universe(universe)?;
        if bits & !full_mask(universe) != 0 {
            return Err(validation(format!("bitmask {bits:#x} has members outside [1:{universe}]")));
        }
        Ok(Self { universe: universe as u8, bits })
    }

    /// Caller guarantees `bits` fits the universe.
    pub(crate) fn from_bits_unchecked(universe: usize, bits: u32) -> Self {
        debug_assert!(bits & !full_mask(universe) == 0);
        Self { universe: universe as u8, bits }
    }

    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.universe())
    }

    pub fn contains(&self, index: usize) -> bool {
        index >= 1 && index <= self.universe() && self.bits & (1 << (index - 1)) != 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self.bits != other.bits
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    /// Panics when `index` is outside the universe.
    pub fn with(&self, index: usize) -> Self {
        assert!(index >= 1 && index <= self.universe(), "index {index} out of range");
        Self { universe: self.universe, bits: self.bits | (1 << (index - 1)) }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self { universe: self.universe, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self { universe: self.universe, bits: self.bits & other.bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self { universe: self.universe, bits: self.bits & !other.bits }
    }

    pub fn complement(&self) -> Self {
        Self { universe: self.universe, bits: !self.bits & full_mask(self.universe()) }
    }

    /// Members in ascending order, 1-based.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.universe()).filter(move |b| bits & (1 << b) != 0).map(|b| b + 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest member, 1-based.
    pub fn first(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize + 1)
    }
}

/// Canonical order: universe, then cardinality, then lexicographic on the
/// sorted member list.
impl Ord for MessageSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe.cmp(&other.universe).then(self.len().cmp(&other.len())).then_with(|| {
            let diff = self.bits ^ other.bits;
            if diff == 0 {
                Ordering::Equal
            } else if self.bits & (diff & diff.wrapping_neg()) != 0 {
                // lowest differing message belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for MessageSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MessageSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MessageSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Serializes as the ascending 1-based index list.
impl Serialize for MessageSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

pub(crate) fn full_mask(universe: usize) -> u32 {
    if universe >= 32 {
        u32::MAX
    } else {
        (1u32 << universe) - 1
    }
}

pub(crate) fn check_universe(universe: usize) -> Result<()> {
    if universe == 0 {
        return Err(validation("universe size must be at least 1"));
    }
    if universe > MAX_MESSAGES {
        return Err(validation(format!("universe size {universe} exceeds the supported maximum {MAX_MESSAGES}")));
    }
    Ok(())
}
