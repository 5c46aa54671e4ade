//! Problem JSON documents.
//!
//! ```json
//! {"m":3,"receivers":[[],[1],[2],[1,2],[2,3]]}
//! {"m":5,"absent":[[3],[1,2,3],[3,4,5]],"q":2}
//! ```
//!
//! Exactly one of `receivers` / `absent` must be given. Index lists are
//! 1-based and strictly increasing. `q` is optional and defaults to 2.
//! Encoding always emits `receivers` in canonical order with no trailing
//! whitespace.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::field::is_prime;
use crate::problem::Problem;
use crate::set::{MessageSet, MAX_MESSAGES};

pub const DEFAULT_Q: u32 = 2;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemDocIn {
    m: u64,
    #[serde(default)]
    receivers: Option<Vec<Vec<u64>>>,
    #[serde(default)]
    absent: Option<Vec<Vec<u64>>>,
    #[serde(default)]
    q: Option<u64>,
}

#[derive(Serialize)]
struct ProblemDocOut {
    m: usize,
    receivers: Vec<Vec<usize>>,
}

/// A decoded document: the problem plus the field size it asks for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemDocument {
    pub problem: Problem,
    pub q: u32,
}

pub fn encode(p: &Problem) -> String {
    let doc = ProblemDocOut { m: p.m(), receivers: p.present().iter().map(|h| h.to_vec()).collect() };
    serde_json::to_string(&doc).expect("problem documents always serialize")
}

pub fn decode(text: &str) -> Result<Problem> {
    decode_document(text).map(|d| d.problem)
}

pub fn decode_document(text: &str) -> Result<ProblemDocument> {
    let doc: ProblemDocIn = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if doc.m == 0 || doc.m > MAX_MESSAGES as u64 {
        return Err(Error::Format(format!("\"m\" must lie in [1, {MAX_MESSAGES}], got {}", doc.m)));
    }
    let m = doc.m as usize;
    let q = match doc.q {
        None => DEFAULT_Q,
        Some(q) if q <= u32::MAX as u64 && is_prime(q as u32) => q as u32,
        Some(q) => return Err(Error::Format(format!("\"q\" must be prime, got {q}"))),
    };
    let problem = match (doc.receivers, doc.absent) {
        (Some(list), None) => Problem::from_sets(m, parse_sets(m, &list, "receivers")?)?,
        (None, Some(list)) => Problem::from_absent(m, &parse_sets(m, &list, "absent")?)?,
        (Some(_), Some(_)) => {
            return Err(Error::Format("give exactly one of \"receivers\" or \"absent\", not both".into()))
        }
        (None, None) => return Err(Error::Format("one of \"receivers\" or \"absent\" is required".into())),
    };
    Ok(ProblemDocument { problem, q })
}

fn parse_sets(m: usize, lists: &[Vec<u64>], key: &str) -> Result<Vec<MessageSet>> {
    lists
        .iter()
        .enumerate()
        .map(|(k, list)| {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Format(format!("{key}[{k}] is not strictly increasing")));
            }
            if let Some(&bad) = list.iter().find(|&&i| i == 0 || i > m as u64) {
                return Err(Error::Format(format!("{key}[{k}] has index {bad} outside [1, {m}]")));
            }
            let idx: Vec<usize> = list.iter().map(|&i| i as usize).collect();
            MessageSet::from_indices(m, &idx)
        })
        .collect()
}
