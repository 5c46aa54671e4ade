//! Pliable-index-coding instances: a message count `m` and the family of
//! present receivers, each identified by its side-information set.

use std::collections::HashSet;

use crate::error::{validation, Result};
use crate::set::{check_universe, full_mask, MessageSet};

/// A validated problem. The receiver family is stored in canonical order
/// and contains neither duplicates nor the full set `[1:m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Problem {
    m: usize,
    present: Vec<MessageSet>,
}

impl Problem {
    /// Builds a problem from receivers given as 1-based index lists.
    pub fn new(m: usize, present: &[Vec<usize>]) -> Result<Self> {
        check_universe(m)?;
        let sets = present.iter().map(|r| MessageSet::from_indices(m, r)).collect::<Result<Vec<_>>>()?;
        Self::from_sets(m, sets)
    }

    pub fn from_sets(m: usize, present: Vec<MessageSet>) -> Result<Self> {
        check_universe(m)?;
        let mut seen = HashSet::with_capacity(present.len());
        for h in &present {
            if h.universe() != m {
                return Err(validation(format!(
                    "receiver {h} belongs to universe {} but the problem has m = {m}",
                    h.universe()
                )));
            }
            if h.is_full() {
                return Err(validation(format!("receiver {h} already knows every message and cannot be satisfied")));
            }
            if !seen.insert(h.bits()) {
                return Err(validation(format!("duplicate receiver {h}")));
            }
        }
        let mut present = present;
        present.sort();
        Ok(Self { m, present })
    }

    /// Every proper subset of `[1:m]` present.
    pub fn complete(m: usize) -> Result<Self> {
        check_universe(m)?;
        let full = full_mask(m);
        let present = (0..full).map(|b| MessageSet::from_bits_unchecked(m, b)).collect();
        Self::from_sets(m, present)
    }

    /// Problem whose absent family is exactly `absent`.
    pub fn from_absent(m: usize, absent: &[MessageSet]) -> Result<Self> {
        check_universe(m)?;
        let mut skip = HashSet::with_capacity(absent.len());
        for h in absent {
            if h.universe() != m {
                return Err(validation(format!("absent receiver {h} has the wrong universe")));
            }
            if h.is_full() {
                return Err(validation(format!("{h} is never a receiver and cannot be listed as absent")));
            }
            if !skip.insert(h.bits()) {
                return Err(validation(format!("duplicate absent receiver {h}")));
            }
        }
        let present =
            (0..full_mask(m)).filter(|b| !skip.contains(b)).map(|b| MessageSet::from_bits_unchecked(m, b)).collect();
        Self::from_sets(m, present)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Present receivers in canonical order.
    pub fn present(&self) -> &[MessageSet] {
        &self.present
    }

    pub fn receiver_count(&self) -> usize {
        self.present.len()
    }

    pub fn absent_count(&self) -> usize {
        full_mask(self.m) as usize - self.present.len()
    }

    pub fn is_present(&self, h: &MessageSet) -> bool {
        self.present.binary_search(h).is_ok()
    }

    /// Dense membership table indexed by bitmask, `2^m` entries.
    pub fn presence_table(&self) -> Vec<bool> {
        let mut table = vec![false; 1usize << self.m];
        for h in &self.present {
            table[h.bits() as usize] = true;
        }
        table
    }

    /// The absent receivers: proper subsets of `[1:m]` that are not present,
    /// in canonical order.
    pub fn absent_receivers(&self) -> Vec<MessageSet> {
        let table = self.presence_table();
        let mut absent: Vec<MessageSet> = (0..full_mask(self.m))
            .filter(|&b| !table[b as usize])
            .map(|b| MessageSet::from_bits_unchecked(self.m, b))
            .collect();
        absent.sort();
        absent
    }

    /// Same universe with one more present receiver.
    pub fn with_receiver(&self, h: MessageSet) -> Result<Self> {
        let mut present = self.present.clone();
        present.push(h);
        Self::from_sets(self.m, present)
    }

    /// Same universe with one receiver removed.
    pub fn without_receiver(&self, h: &MessageSet) -> Result<Self> {
        if !self.is_present(h) {
            return Err(validation(format!("receiver {h} is not present")));
        }
        let present = self.present.iter().copied().filter(|x| x != h).collect();
        Self::from_sets(self.m, present)
    }

    /// Replaces a present receiver by another side-information set.
    pub fn replace_receiver(&self, from: &MessageSet, to: MessageSet) -> Result<Self> {
        self.without_receiver(from)?.with_receiver(to)
    }
}

/// A partition `P_0, P_1, ..., P_L` of `[1:m]` describing a perfectly
/// `L`-nested absent family. Only `P_0` may be empty. Blocks are kept in
/// ascending order of their smallest message.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionNested {
    m: usize,
    p0: MessageSet,
    blocks: Vec<MessageSet>,
}

impl PartitionNested {
    pub fn new(m: usize, p0: &[usize], blocks: &[Vec<usize>]) -> Result<Self> {
        let p0 = MessageSet::from_indices(m, p0)?;
        let blocks = blocks.iter().map(|b| MessageSet::from_indices(m, b)).collect::<Result<Vec<_>>>()?;
        Self::from_sets(p0, blocks)
    }

    pub fn from_sets(p0: MessageSet, blocks: Vec<MessageSet>) -> Result<Self> {
        let m = p0.universe();
        if blocks.is_empty() {
            return Err(validation("a nested partition needs at least one block besides P_0"));
        }
        let mut covered = p0;
        for b in &blocks {
            if b.universe() != m {
                return Err(validation(format!("block {b} has the wrong universe")));
            }
            if b.is_empty() {
                return Err(validation("only P_0 may be empty"));
            }
            if !b.is_disjoint(&covered) {
                return Err(validation(format!("block {b} overlaps another part")));
            }
            covered = covered.union(b);
        }
        if !covered.is_full() {
            return Err(validation(format!("parts do not cover [1:{m}]; missing {}", covered.complement())));
        }
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.first());
        Ok(Self { m, p0, blocks })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p0(&self) -> MessageSet {
        self.p0
    }

    pub fn blocks(&self) -> &[MessageSet] {
        &self.blocks
    }

    /// Number of blocks `L` (excluding `P_0`).
    pub fn depth(&self) -> usize {
        self.blocks.len()
    }

    /// The `2^L - 1` sets `P_0 ∪ ⋃_{i∈Q} P_i` for proper subsets `Q` of the
    /// blocks, in canonical order.
    pub fn absent_family(&self) -> Vec<MessageSet> {
        let l = self.blocks.len();
        let mut out: Vec<MessageSet> = (0..(1u64 << l) - 1)
            .map(|q| {
                self.blocks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| q & (1 << i) != 0)
                    .fold(self.p0, |acc, (_, b)| acc.union(b))
            })
            .collect();
        out.sort();
        out
    }
}
