use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::problem::{PartitionNested, Problem};
use crate::set::{full_mask, MessageSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    DegenerateEmpty,
    Complete,
    UnionNotFull,
    NoNestedPair,
    OneNestedPair,
    PerfectlyNested(usize),
    Unclassified,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::DegenerateEmpty => f.write_str("degenerate-empty"),
            ClassLabel::Complete => f.write_str("complete"),
            ClassLabel::UnionNotFull => f.write_str("union-not-full"),
            ClassLabel::NoNestedPair => f.write_str("no-nested-pair"),
            ClassLabel::OneNestedPair => f.write_str("one-nested-pair"),
            ClassLabel::PerfectlyNested(l) => write!(f, "perfectly-nested({l})"),
            ClassLabel::Unclassified => f.write_str("unclassified"),
        }
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub label: ClassLabel,
    pub exact: Option<usize>,
    /// Every class whose predicate holds, in precedence order.
    pub applicable: Vec<ClassLabel>,
    pub partition: Option<PartitionNested>,
}

/// Number of pairs `J ⊊ K` of absent receivers.
///
/// `below[T]` counts absent sets inside `T` (sum over subsets), so each
/// absent `K` contributes `below[K] - 1`.
pub fn count_nested_pairs(p: &Problem) -> u64 {
    let m = p.m();
    let full = full_mask(m) as usize;
    let present = p.presence_table();
    let mut below: Vec<u32> = (0..=full).map(|t| (t != full && !present[t]) as u32).collect();
    for b in 0..m {
        let bit = 1usize << b;
        for t in 0..=full {
            if t & bit != 0 {
                below[t] += below[t ^ bit];
            }
        }
    }
    (0..full).filter(|&t| !present[t]).map(|t| below[t] as u64 - 1).sum()
}

/// The partition `P_0; P_1..P_L` whose nested family is exactly the absent
/// family, if there is one.
///
/// `P_0` is the intersection of the absent sets; the blocks are the minimal
/// nonempty differences `A \ P_0` (for `L = 1`, the complement of `P_0`).
/// The candidate is accepted only if it partitions `[1:m]`, has `2^L - 1`
/// members and rebuilds the family exactly.
pub fn detect_perfectly_nested(p: &Problem) -> Option<PartitionNested> {
    let m = p.m();
    let absent = p.absent_receivers();
    let n = absent.len();
    if n == 0 || !(n + 1).is_power_of_two() {
        return None;
    }
    let p0 = absent.iter().fold(MessageSet::full(m).ok()?, |acc, a| acc.intersection(a));
    if n == 1 {
        // L = 1: the lone block never shows up inside an absent set
        return PartitionNested::from_sets(p0, vec![p0.complement()]).ok();
    }

    // has[T]: some nonempty difference lies inside T
    let full = full_mask(m) as usize;
    let mut has = vec![false; full + 1];
    for a in &absent {
        let d = a.difference(&p0);
        if !d.is_empty() {
            has[d.bits() as usize] = true;
        }
    }
    for b in 0..m {
        let bit = 1usize << b;
        for t in 0..=full {
            if t & bit != 0 && has[t ^ bit] {
                has[t] = true;
            }
        }
    }
    let mut blocks: Vec<MessageSet> = absent
        .iter()
        .map(|a| a.difference(&p0))
        .filter(|d| !d.is_empty() && d.iter().all(|i| !has[(d.bits() & !(1 << (i - 1))) as usize]))
        .collect();
    blocks.sort();
    blocks.dedup();

    if blocks.is_empty() || n != (1usize << blocks.len()) - 1 {
        return None;
    }
    let part = PartitionNested::from_sets(p0, blocks).ok()?;
    (part.absent_family() == absent).then_some(part)
}

/// Assigns the first matching exact-rate class, checking that every other
/// applicable class implies the same value.
pub fn classify(p: &Problem) -> Result<Classification> {
    let m = p.m();
    let absent_count = p.absent_count();
    let union = p.absent_receivers().iter().fold(MessageSet::empty(m)?, |acc, a| acc.union(a));
    let pairs = count_nested_pairs(p);
    let partition = detect_perfectly_nested(p);

    let mut applicable = Vec::new();
    if p.receiver_count() == 0 {
        applicable.push((ClassLabel::DegenerateEmpty, 0));
    }
    if absent_count == 0 {
        applicable.push((ClassLabel::Complete, m));
    }
    if absent_count > 0 && !union.is_full() {
        applicable.push((ClassLabel::UnionNotFull, m - 1));
    }
    if absent_count > 0 && pairs == 0 {
        applicable.push((ClassLabel::NoNestedPair, m - 1));
    }
    if absent_count > 0 && pairs == 1 {
        applicable.push((ClassLabel::OneNestedPair, m - 1));
    }
    if let Some(part) = &partition {
        applicable.push((ClassLabel::PerfectlyNested(part.depth()), m - part.depth()));
    }

    if let Some(&(first, value)) = applicable.first() {
        if let Some(&(other, v)) = applicable.iter().find(|(_, v)| *v != value) {
            return Err(Error::Inconsistent(format!("class {first} gives rate {value} but class {other} gives {v}")));
        }
        Ok(Classification {
            label: first,
            exact: Some(value),
            applicable: applicable.into_iter().map(|(l, _)| l).collect(),
            partition,
        })
    } else {
        Ok(Classification { label: ClassLabel::Unclassified, exact: None, applicable: Vec::new(), partition })
    }
}
