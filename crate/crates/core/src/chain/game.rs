//! The skip game on the subset lattice.
//!
//! A chain state is the set `C` of messages already placed. At a present
//! receiver the decoding-choice player picks `D(C)` to maximise the number of
//! skips still to come; at an absent receiver the skip player picks the
//! skipped message to minimise it. Each subset is visited at most once per
//! chain, so a positional strategy on subsets is exactly a decoding choice
//! and `f(∅) = max_D min_S |S|`.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::set::{full_mask, MessageSet, MAX_MESSAGES};

pub const DEFAULT_BRUTE_FORCE_BUDGET: u64 = 10_000_000;

/// Optimal remaining skip count `f(C)` for every subset `C`, indexed by bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTable {
    m: usize,
    values: Vec<u8>,
}

impl GameTable {
    pub fn m(&self) -> usize {
        self.m
    }

    /// `f(∅)`.
    pub fn value(&self) -> usize {
        self.values[0] as usize
    }

    /// The lower bound `m - f(∅)`.
    pub fn bound(&self) -> usize {
        self.m - self.value()
    }

    pub fn get(&self, c: &MessageSet) -> usize {
        self.values[c.bits() as usize] as usize
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Minimising successor of `c`, smallest message on ties.
    pub fn best_skip(&self, c: &MessageSet) -> usize {
        c.complement().iter().min_by_key(|&a| (self.get(&c.with(a)), a)).expect("no move from the full set")
    }

    /// Maximising successor of `c`, smallest message on ties.
    pub fn best_decode(&self, c: &MessageSet) -> usize {
        c.complement()
            .iter()
            .min_by_key(|&a| (std::cmp::Reverse(self.get(&c.with(a))), a))
            .expect("no move from the full set")
    }

    /// SHA-256 over the `2^m` table bytes, hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(&self.values))
    }
}

/// Solves the skip game by backward induction from `[1:m]` down to `∅`.
pub fn chain_game_value(p: &Problem) -> Result<(usize, GameTable)> {
    let m = p.m();
    if m > MAX_MESSAGES {
        return Err(Error::Capacity(format!("m = {m} exceeds the lattice limit {MAX_MESSAGES}")));
    }
    let full = full_mask(m);
    let present = p.presence_table();
    let mut values = vec![0u8; 1usize << m];
    // successors C ∪ {a} are numerically larger than C
    for c in (0..full).rev() {
        let mut free = full & !c;
        let (mut lo, mut hi) = (u8::MAX, 0u8);
        while free != 0 {
            let bit = free & free.wrapping_neg();
            free ^= bit;
            let v = values[(c | bit) as usize];
            lo = lo.min(v);
            hi = hi.max(v);
        }
        values[c as usize] = if present[c as usize] { hi } else { lo + 1 };
    }
    let table = GameTable { m, values };
    Ok((table.value(), table))
}

pub fn chain_game_bound(p: &Problem) -> Result<usize> {
    chain_game_value(p).map(|(_, t)| t.bound())
}

/// `max_D min_S |S|` by enumerating every complete decoding choice and every
/// skip sequence. Exponential; `budget` caps the number of decoding choices.
pub fn brute_force_game_value(p: &Problem, budget: u64) -> Result<usize> {
    let m = p.m();
    let receivers = p.present();
    let mut total: u64 = 1;
    for h in receivers {
        total = total.saturating_mul((m - h.len()) as u64);
        if total > budget {
            return Err(Error::Capacity(format!("more than {budget} decoding choices to enumerate")));
        }
    }

    let options: Vec<Vec<u32>> =
        receivers.iter().map(|h| (0..m as u32).filter(|b| h.bits() & (1 << b) == 0).collect()).collect();
    let mut slot = vec![usize::MAX; 1usize << m];
    for (k, h) in receivers.iter().enumerate() {
        slot[h.bits() as usize] = k;
    }

    let full = full_mask(m);
    let mut digits = vec![0usize; receivers.len()];
    let mut best = 0usize;
    loop {
        let d: Vec<u32> = digits.iter().zip(&options).map(|(&k, o)| o[k]).collect();
        best = best.max(min_skips(0, full, &slot, &d));
        // odometer increment
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(best);
            }
            digits[k] += 1;
            if digits[k] < options[k].len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn min_skips(c: u32, full: u32, slot: &[usize], d: &[u32]) -> usize {
    if c == full {
        return 0;
    }
    match slot[c as usize] {
        usize::MAX => (0..32)
            .filter(|b| full & !c & (1 << b) != 0)
            .map(|b| 1 + min_skips(c | (1 << b), full, slot, d))
            .min()
            .unwrap(),
        k => min_skips(c | (1 << d[k]), full, slot, d),
    }
}
