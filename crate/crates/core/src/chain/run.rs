use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::game::GameTable;
use crate::error::{validation, Result};
use crate::problem::Problem;
use crate::set::MessageSet;

/// Assigns each present receiver `H` the message `D(H) ∉ H` it decodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodingChoice {
    m: usize,
    decoded: HashMap<u32, usize>,
}

impl DecodingChoice {
    /// Requires an entry for every present receiver and nothing else.
    pub fn new(p: &Problem, pairs: impl IntoIterator<Item = (MessageSet, usize)>) -> Result<Self> {
        let mut decoded = HashMap::with_capacity(p.receiver_count());
        for (h, i) in pairs {
            if !p.is_present(&h) {
                return Err(validation(format!("decoding choice lists {h}, which is not present")));
            }
            if i == 0 || i > p.m() || h.contains(i) {
                return Err(validation(format!("receiver {h} cannot decode message {i}")));
            }
            if decoded.insert(h.bits(), i).is_some() {
                return Err(validation(format!("receiver {h} assigned twice")));
            }
        }
        if let Some(h) = p.present().iter().find(|h| !decoded.contains_key(&h.bits())) {
            return Err(validation(format!("no decoded message given for receiver {h}")));
        }
        Ok(Self { m: p.m(), decoded })
    }

    pub fn from_fn(p: &Problem, mut f: impl FnMut(&MessageSet) -> usize) -> Result<Self> {
        Self::new(p, p.present().iter().map(|h| (*h, f(h))))
    }

    /// Every receiver decodes its smallest unknown message.
    pub fn lowest(p: &Problem) -> Self {
        Self::from_fn(p, |h| h.complement().first().expect("receivers are proper subsets"))
            .expect("lowest unknown message is always a legal choice")
    }

    pub fn random<R: Rng + ?Sized>(p: &Problem, rng: &mut R) -> Self {
        Self::from_fn(p, |h| {
            let choices = h.complement().to_vec();
            choices[rng.gen_range(0..choices.len())]
        })
        .expect("sampled from the complement")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, h: &MessageSet) -> Option<usize> {
        self.decoded.get(&h.bits()).copied()
    }
}

/// How Algorithm 1 picks the skipped message when it hits an absent receiver.
#[derive(Debug, Clone, Copy)]
pub enum SkipPolicy<'a> {
    /// Smallest message not yet in the chain.
    LexicographicMin,
    /// Smallest message whose addition lands on a present receiver (or on
    /// `[1:m]`); falls back to the smallest message.
    AvoidAbsentGreedy,
    /// Replays the minimizing move of a solved game table, ties to the
    /// smallest message.
    OptimalFromGameTable(&'a GameTable),
    /// Uniform choice driven by `ChaCha8Rng::seed_from_u64(seed)`.
    SeededRandom(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainHit {
    pub receiver: MessageSet,
    pub present: bool,
}

/// One execution of the chain construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRun {
    /// Messages in chain order, 1-based.
    pub chain: Vec<usize>,
    pub skipped: MessageSet,
    /// `hits[i]` is the set of the first `i` chain elements.
    pub hits: Vec<ChainHit>,
}

impl ChainRun {
    pub fn skip_count(&self) -> usize {
        self.skipped.len()
    }

    pub fn absent_hits(&self) -> impl Iterator<Item = &MessageSet> {
        self.hits.iter().filter(|h| !h.present).map(|h| &h.receiver)
    }
}

/// Grows the chain from `∅`: at a present receiver `C` append `D(C)`, at an
/// absent one append (and record as skipped) whatever the policy picks.
pub fn run_chain(p: &Problem, d: &DecodingChoice, policy: SkipPolicy<'_>) -> Result<ChainRun> {
    let m = p.m();
    if d.m() != m {
        return Err(validation("decoding choice belongs to another universe"));
    }
    if let SkipPolicy::OptimalFromGameTable(t) = policy {
        if t.m() != m {
            return Err(validation("game table belongs to another universe"));
        }
    }
    let mut rng = match policy {
        SkipPolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };

    let mut c = MessageSet::empty(m)?;
    let mut skipped = c;
    let mut chain = Vec::with_capacity(m);
    let mut hits = Vec::with_capacity(m);
    while !c.is_full() {
        let present = p.is_present(&c);
        hits.push(ChainHit { receiver: c, present });
        let next = if present {
            d.get(&c).ok_or_else(|| validation(format!("no decoded message for {c}")))?
        } else {
            let a = match policy {
                SkipPolicy::LexicographicMin => c.complement().first().unwrap(),
                SkipPolicy::AvoidAbsentGreedy => c
                    .complement()
                    .iter()
                    .find(|&a| {
                        let n = c.with(a);
                        n.is_full() || p.is_present(&n)
                    })
                    .unwrap_or_else(|| c.complement().first().unwrap()),
                SkipPolicy::OptimalFromGameTable(t) => t.best_skip(&c),
                SkipPolicy::SeededRandom(_) => {
                    let rest = c.complement().to_vec();
                    let rng = rng.as_mut().unwrap();
                    rest[rng.gen_range(0..rest.len())]
                }
            };
            skipped = skipped.with(a);
            a
        };
        chain.push(next);
        c = c.with(next);
    }
    Ok(ChainRun { chain, skipped, hits })
}
