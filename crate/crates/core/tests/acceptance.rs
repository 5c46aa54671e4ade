//! Acceptance criteria, one test each.
//!
//! Every test prints a single `PASS`/`FAIL` line (visible with
//! `--nocapture`) and then asserts. The tests share a lock so the measured
//! wall-clock times are not inflated by each other.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use pliable_core::analysis::{classify, corollary1_demo, count_nested_pairs, ClassLabel};
use pliable_core::chain::{
    brute_force_game_value, chain_game_bound, chain_game_value, nested_chain_bound, prune_via_chain, run_chain,
    DecodingChoice, SkipPolicy, DEFAULT_BRUTE_FORCE_BUDGET,
};
use pliable_core::generate::{self, nested_partitions, proper_subsets};
use pliable_core::gf::{code_satisfies, linear_beta_oracle, perfectly_nested_code};
use pliable_core::{MessageSet, Problem, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static SERIAL: Mutex<()> = Mutex::new(());

struct Outcome {
    failures: Vec<String>,
    checked: usize,
}

impl Outcome {
    fn new() -> Self {
        Self { failures: Vec::new(), checked: 0 }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb<T>(&mut self, r: Result<T>, ctx: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{}: {e}", ctx()));
                None
            }
        }
    }
}

fn criterion(n: u32, title: &str, limit: Duration, body: impl FnOnce(&mut Outcome)) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut out = Outcome::new();
    let start = Instant::now();
    body(&mut out);
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let pass = out.failures.is_empty() && in_time;
    println!(
        "criterion {n:>2} {}: {title} ({} checks, {:.2?} of {:?})",
        if pass { "PASS" } else { "FAIL" },
        out.checked,
        elapsed,
        limit,
    );
    for f in out.failures.iter().take(20) {
        println!("    {f}");
    }
    if out.failures.len() > 20 {
        println!("    ... {} more", out.failures.len() - 20);
    }
    assert!(
        out.failures.is_empty(),
        "criterion {n}: {} failing checks, first: {}",
        out.failures.len(),
        out.failures[0]
    );
    assert!(in_time, "criterion {n}: took {elapsed:.2?}, limit {limit:?}");
}

fn set(m: usize, xs: &[usize]) -> MessageSet {
    MessageSet::from_indices(m, xs).unwrap()
}

fn from_absent(m: usize, abs: &[&[usize]]) -> Problem {
    let sets: Vec<MessageSet> = abs.iter().map(|a| set(m, a)).collect();
    Problem::from_absent(m, &sets).unwrap()
}

fn oracle(p: &Problem) -> Result<usize> {
    Ok(linear_beta_oracle(p, 2, chain_game_bound(p)?)?.beta)
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn criterion_01_three_problem_regression() {
    criterion(1, "three m=5 problems have rates 4, 3, 4", secs(10), |out| {
        let cases = [
            (from_absent(5, &[&[1, 2, 3], &[3], &[3, 4]]), 4),
            (from_absent(5, &[&[1, 2, 3], &[3], &[3, 4, 5]]), 3),
            (from_absent(5, &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]), 4),
        ];
        for (p, want) in cases {
            let abs = p.absent_receivers();
            let ctx = || format!("absent {abs:?}");
            if let Some(c) = out.absorb(classify(&p), ctx) {
                out.expect(c.exact == Some(want), || format!("absent {abs:?}: classifier {:?}, want {want}", c.exact));
            }
            if let Some(b) = out.absorb(oracle(&p), ctx) {
                out.expect(b == want, || format!("absent {abs:?}: oracle {b}, want {want}"));
            }
        }
    });
}

#[test]
fn criterion_02_single_nested_pair_example() {
    criterion(2, "m=3 with absent {3}, {1,3} has rate 2 by two routes", secs(1), |out| {
        let p = from_absent(3, &[&[3], &[1, 3]]);
        if let Some(c) = out.absorb(classify(&p), || "classify".into()) {
            out.expect(c.label == ClassLabel::UnionNotFull, || format!("label {}", c.label));
            out.expect(c.exact == Some(2), || format!("classifier {:?}", c.exact));
            out.expect(c.applicable.contains(&ClassLabel::OneNestedPair), || {
                format!("one-nested-pair not applicable: {:?}", c.applicable)
            });
        }
        out.expect(count_nested_pairs(&p) == 1, || format!("{} nested pairs", count_nested_pairs(&p)));
        let union = p.absent_receivers().iter().fold(MessageSet::empty(3).unwrap(), |u, a| u.union(a));
        out.expect(union == set(3, &[1, 3]), || format!("absent union {union}"));
        if let Some(b) = out.absorb(oracle(&p), || "oracle".into()) {
            out.expect(b == 2, || format!("oracle {b}"));
        }
    });
}

#[test]
fn criterion_03_full_rate_iff_complete() {
    criterion(3, "complete problems need m, single deletions need m-1", secs(120), |out| {
        for m in 2..=4 {
            let full = Problem::complete(m).unwrap();
            if let Some(b) = out.absorb(oracle(&full), || format!("complete m={m}")) {
                out.expect(b == m, || format!("complete m={m}: oracle {b}"));
            }
            for h in proper_subsets(m) {
                let p = full.without_receiver(&h).unwrap();
                if let Some(b) = out.absorb(oracle(&p), || format!("m={m} without {h}")) {
                    out.expect(b == m - 1, || format!("m={m} without {h}: oracle {b}, want {}", m - 1));
                }
            }
        }
    });
}

#[test]
fn criterion_04_complete_s_formula_binary() {
    criterion(4, "complete-S rate min(s_max+1, m-s_min) over F_2, m <= 5", secs(300), |out| {
        for m in 1..=5 {
            for lo in 0..m {
                for hi in lo..m {
                    let sizes: Vec<usize> = (lo..=hi).collect();
                    let p = generate::complete_s(m, &sizes).unwrap();
                    let want = (hi + 1).min(m - lo);
                    if let Some(b) = out.absorb(oracle(&p), || format!("m={m} S={lo}..{hi}")) {
                        out.expect(b == want, || format!("m={m} S={lo}..{hi}: oracle {b}, formula {want}"));
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_05_perfectly_nested_rate() {
    criterion(5, "perfectly L-nested problems with m <= 5 have rate m-L", secs(300), |out| {
        for m in 2..=5 {
            for part in nested_partitions(m).unwrap() {
                let want = m - part.depth();
                let p = generate::perfectly_nested(&part).unwrap();
                let abs = p.absent_receivers();
                let ctx = || format!("m={m} absent {abs:?}");
                if let Some(lb) = out.absorb(chain_game_bound(&p), ctx) {
                    out.expect(lb == want, || format!("m={m} absent {abs:?}: game bound {lb}, want {want}"));
                }
                if let Some(code) = out.absorb(perfectly_nested_code(&part, 2), ctx) {
                    out.expect(code.len() == want, || format!("m={m} absent {abs:?}: code length {}", code.len()));
                    if let Some(r) = out.absorb(code_satisfies(&code, &p), ctx) {
                        out.expect(r.satisfied, || format!("m={m} absent {abs:?}: code misses receivers"));
                    }
                }
                if let Some(b) = out.absorb(oracle(&p), ctx) {
                    out.expect(b == want, || format!("m={m} absent {abs:?}: oracle {b}, want {want}"));
                }
            }
        }
    });
}

#[test]
fn criterion_06_perfectly_nested_is_critical() {
    criterion(6, "every absent-receiver augmentation raises the game bound, m <= 6", secs(120), |out| {
        for m in 2..=6 {
            for part in nested_partitions(m).unwrap() {
                let want = m - part.depth() + 1;
                let p = generate::perfectly_nested(&part).unwrap();
                for a in part.absent_family() {
                    let aug = p.with_receiver(a).unwrap();
                    if let Some(lb) = out.absorb(chain_game_bound(&aug), || format!("m={m} add {a}")) {
                        out.expect(lb >= want, || {
                            format!("m={m} absent {:?} plus {a}: bound {lb}, want >= {want}", p.absent_receivers())
                        });
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_07_game_table_matches_brute_force() {
    criterion(7, "game table agrees with exhaustive play", secs(300), |out| {
        let mut check = |p: Problem| {
            let ctx = || format!("m={} present {:?}", p.m(), p.present());
            let fast = out.absorb(chain_game_value(&p).map(|(v, _)| v), ctx);
            let slow = out.absorb(brute_force_game_value(&p, DEFAULT_BRUTE_FORCE_BUDGET), ctx);
            if let (Some(fast), Some(slow)) = (fast, slow) {
                out.expect(fast == slow, || format!("present {:?}: table {fast}, brute force {slow}", p.present()));
            }
        };
        let subsets = proper_subsets(3);
        for mask in 0u32..1 << subsets.len() {
            let present = subsets.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| *s).collect();
            check(Problem::from_sets(3, present).unwrap());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..250 {
            let present = rng.gen_range(0..=8);
            check(generate::random(4, 15 - present, rng.gen()).unwrap());
        }
    });
}

#[test]
fn criterion_08_pruned_graph_is_acyclic() {
    criterion(8, "pruning a chain leaves an acyclic graph on m-|S| messages", secs(30), |out| {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for trial in 0..1000 {
            let m = rng.gen_range(2..=6);
            let total = (1usize << m) - 1;
            let p = generate::random(m, rng.gen_range(0..=total), rng.gen()).unwrap();
            let d = DecodingChoice::random(&p, &mut rng);
            let table = chain_game_value(&p).unwrap().1;
            let policy = match trial % 4 {
                0 => SkipPolicy::LexicographicMin,
                1 => SkipPolicy::AvoidAbsentGreedy,
                2 => SkipPolicy::OptimalFromGameTable(&table),
                _ => SkipPolicy::SeededRandom(rng.gen()),
            };
            let ctx = || format!("trial {trial}: m={m} absent {:?}", p.absent_receivers());
            let Some(run) = out.absorb(run_chain(&p, &d, policy), ctx) else { continue };
            if let Some(o) = out.absorb(prune_via_chain(&p, &d, &run), ctx) {
                out.expect(o.acyclic, || format!("{}: cycle survives", ctx()));
                out.expect(o.message_count == m - run.skip_count(), || {
                    format!("{}: {} messages, {} skipped", ctx(), o.message_count, run.skip_count())
                });
            }
        }
    });
}

#[test]
fn criterion_09_bound_order_and_monotonicity() {
    criterion(9, "bounds are ordered and the rate is monotone, m <= 4", secs(300), |out| {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let random_problem = |rng: &mut ChaCha8Rng| {
            let m = rng.gen_range(1..=4);
            let total = (1usize << m) - 1;
            generate::random(m, rng.gen_range(0..=total), rng.gen()).unwrap()
        };
        for _ in 0..500 {
            let p = random_problem(&mut rng);
            let m = p.m();
            let ctx = || format!("m={m} absent {:?}", p.absent_receivers());
            let (Some(game), Some(beta)) = (out.absorb(chain_game_bound(&p), ctx), out.absorb(oracle(&p), ctx)) else {
                continue;
            };
            let nested = nested_chain_bound(&p);
            let cap = if p.absent_count() > 0 { m - 1 } else { m };
            out.expect(nested <= game && game <= beta && beta <= cap, || {
                format!("{}: nested {nested}, game {game}, oracle {beta}, cap {cap}", ctx())
            });
        }
        for _ in 0..200 {
            let p = random_problem(&mut rng);
            let keep: Vec<MessageSet> = p.present().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let sub = Problem::from_sets(p.m(), keep).unwrap();
            let ctx = || format!("m={} present {:?} within {:?}", p.m(), sub.present(), p.present());
            if let (Some(small), Some(big)) = (out.absorb(oracle(&sub), ctx), out.absorb(oracle(&p), ctx)) {
                out.expect(small <= big, || format!("{}: {small} > {big}", ctx()));
            }
        }
    });
}

#[test]
fn criterion_10_side_information_removal() {
    criterion(10, "removing side information moves the rate 4 -> 3 -> 4", secs(1), |out| {
        let Some(steps) = out.absorb(corollary1_demo(), || "demo".into()) else { return };
        let rates: Vec<usize> = steps.iter().map(|s| s.exact).collect();
        out.expect(rates == [4, 3, 4], || format!("rates {rates:?}"));
        for pair in steps.windows(2) {
            let (from, to) = pair[1].change.expect("every later step records its change");
            let shrinks = to.is_proper_subset(&from)
                && pair[0].problem.is_present(&from)
                && pair[1].problem.is_present(&to)
                && !pair[1].problem.is_present(&from);
            out.expect(shrinks, || format!("step {from} -> {to} is not a side-information removal"));
        }
    });
}
