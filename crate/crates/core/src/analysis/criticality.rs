use serde::Serialize;

use super::classify::classify;
use super::report::{analyze, RateReport};
use crate::error::{validation, Result};
use crate::gf::oracle_supported;
use crate::problem::Problem;
use crate::set::MessageSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Holds,
    Violated,
    /// At least one side has only an interval.
    Inconclusive,
}

fn rate(p: &Problem, q: u32) -> Result<RateReport> {
    analyze(p, q, oracle_supported(p.m(), q))
}

/// Compares the rates of `sub ⊆ p`. Only exact rates on both sides settle
/// the question.
pub fn check_monotonicity(p: &Problem, sub: &Problem, q: u32) -> Result<Monotonicity> {
    if p.m() != sub.m() {
        return Err(validation(format!("universes differ: {} vs {}", p.m(), sub.m())));
    }
    if let Some(h) = sub.present().iter().find(|h| !p.is_present(h)) {
        return Err(validation(format!("receiver {h} of the subfamily is not in the larger family")));
    }
    let (big, small) = (rate(p, q)?, rate(sub, q)?);
    Ok(match (big.exact, small.exact) {
        (Some(b), Some(s)) if s <= b => Monotonicity::Holds,
        (Some(_), Some(_)) => Monotonicity::Violated,
        _ => Monotonicity::Inconclusive,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    StrictIncrease,
    NoIncrease,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Augmentation {
    pub receiver: MessageSet,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub base_lower: usize,
    pub base_upper: usize,
    pub augmentations: Vec<Augmentation>,
    /// Every augmentation is a proven strict increase.
    pub critical: bool,
}

impl CriticalityReport {
    /// True when every augmentation got a definite verdict.
    pub fn conclusive(&self) -> bool {
        self.augmentations.iter().all(|a| a.verdict != Verdict::Inconclusive)
    }
}

/// Adds each absent receiver in turn and checks whether the rate must rise.
///
/// A strict increase is certified when the augmented lower bound exceeds the
/// base upper bound; no increase when the augmented upper bound is at most
/// the base lower bound.
pub fn criticality_check(p: &Problem, q: u32) -> Result<CriticalityReport> {
    let base = rate(p, q)?;
    let mut augmentations = Vec::new();
    for h in p.absent_receivers() {
        let aug = rate(&p.with_receiver(h)?, q)?;
        let verdict = if aug.lower_bound > base.upper_bound {
            Verdict::StrictIncrease
        } else if aug.upper_bound <= base.lower_bound {
            Verdict::NoIncrease
        } else {
            Verdict::Inconclusive
        };
        augmentations.push(Augmentation {
            receiver: h,
            lower_bound: aug.lower_bound,
            upper_bound: aug.upper_bound,
            verdict,
        });
    }
    let critical = augmentations.iter().all(|a| a.verdict == Verdict::StrictIncrease);
    Ok(CriticalityReport { base_lower: base.lower_bound, base_upper: base.upper_bound, augmentations, critical })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoStep {
    pub problem: Problem,
    pub exact: usize,
    /// The present receiver that lost side information, and what it became.
    pub change: Option<(MessageSet, MessageSet)>,
}

/// Three `m = 5` problems linked by removing side information from one
/// present receiver each time; the rate goes 4, 3, 4.
pub fn corollary1_demo() -> Result<Vec<DemoStep>> {
    let s = |xs: &[usize]| MessageSet::from_indices(5, xs);
    let start = Problem::from_absent(5, &[s(&[1, 2, 3])?, s(&[3])?, s(&[3, 4])?])?;
    let changes = [(s(&[3, 4, 5])?, s(&[3, 4])?), (s(&[2, 3, 4])?, s(&[3])?)];

    let exact = |p: &Problem| -> Result<usize> {
        classify(p)?.exact.ok_or_else(|| validation("demo step left the classified families"))
    };
    let mut steps = vec![DemoStep { exact: exact(&start)?, problem: start, change: None }];
    for (from, to) in changes {
        let next = steps.last().unwrap().problem.replace_receiver(&from, to)?;
        steps.push(DemoStep { exact: exact(&next)?, problem: next, change: Some((from, to)) });
    }
    Ok(steps)
}
