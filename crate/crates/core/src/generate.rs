//! Instance generators.
//!
//! Random instances use `ChaCha8Rng::seed_from_u64(seed)` from `rand_chacha`
//! and a partial Fisher-Yates shuffle (`gen_range(k..n)` at step `k`) over the
//! proper subsets of `[1:m]` listed in canonical order. The first
//! `absent_count` shuffled sets become absent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{validation, Result};
use crate::problem::{PartitionNested, Problem};
use crate::set::{check_universe, full_mask, MessageSet};

/// All receivers whose side-information size is listed in `sizes`.
pub fn complete_s(m: usize, sizes: &[usize]) -> Result<Problem> {
    check_universe(m)?;
    if let Some(&s) = sizes.iter().find(|&&s| s >= m) {
        return Err(validation(format!("side-information size {s} must be below m = {m}")));
    }
    let present = (0..full_mask(m))
        .filter(|b| sizes.contains(&(b.count_ones() as usize)))
        .map(|b| MessageSet::from_bits_unchecked(m, b))
        .collect();
    Problem::from_sets(m, present)
}

/// Every proper subset present except the perfectly nested absent family.
pub fn perfectly_nested(part: &PartitionNested) -> Result<Problem> {
    Problem::from_absent(part.m(), &part.absent_family())
}

/// Removes `absent_count` uniformly chosen receivers from the complete family.
pub fn random(m: usize, absent_count: usize, seed: u64) -> Result<Problem> {
    check_universe(m)?;
    let mut pool = proper_subsets(m);
    if absent_count > pool.len() {
        return Err(validation(format!(
            "cannot remove {absent_count} receivers; only {} exist for m = {m}",
            pool.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = pool.len();
    for k in 0..absent_count {
        let j = rng.gen_range(k..n);
        pool.swap(k, j);
    }
    Problem::from_absent(m, &pool[..absent_count])
}

/// Proper subsets of `[1:m]` in canonical order.
pub fn proper_subsets(m: usize) -> Vec<MessageSet> {
    let mut v: Vec<MessageSet> = (0..full_mask(m)).map(|b| MessageSet::from_bits_unchecked(m, b)).collect();
    v.sort();
    v
}

/// Every partition `P_0; P_1..P_L` of `[1:m]` admitted by the perfectly nested
/// definition (`L + 1 ∈ [2:m]`, only `P_0` empty). Deterministic order.
pub fn nested_partitions(m: usize) -> Result<Vec<PartitionNested>> {
    check_universe(m)?;
    let full = full_mask(m);
    let mut out = Vec::new();
    for p0 in 0..full {
        let rest: Vec<usize> = (0..m).filter(|b| full & !p0 & (1 << b) != 0).collect();
        for blocks in set_partitions(&rest) {
            if blocks.len() + 1 > m {
                continue;
            }
            let blocks = blocks.into_iter().map(|bits| MessageSet::from_bits_unchecked(m, bits)).collect();
            out.push(PartitionNested::from_sets(MessageSet::from_bits_unchecked(m, p0), blocks)?);
        }
    }
    Ok(out)
}

/// Set partitions of `elems` (bit positions) via restricted growth strings.
fn set_partitions(elems: &[usize]) -> Vec<Vec<u32>> {
    fn go(elems: &[usize], k: usize, blocks: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == elems.len() {
            out.push(blocks.clone());
            return;
        }
        let bit = 1u32 << elems[k];
        for i in 0..blocks.len() {
            blocks[i] |= bit;
            go(elems, k + 1, blocks, out);
            blocks[i] &= !bit;
        }
        blocks.push(bit);
        go(elems, k + 1, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    if !elems.is_empty() {
        go(elems, 0, &mut Vec::new(), &mut out);
    }
    out
}
