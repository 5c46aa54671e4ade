use serde::Serialize;

use super::classify::{classify, ClassLabel};
use crate::chain::{chain_game_value, nested_chain_length};
use crate::error::{Error, Result};
use crate::gf::{code_satisfies, linear_beta_oracle, perfectly_nested_code, theorem1_code, LinearCode};
use crate::problem::Problem;
use crate::set::MessageSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub q: u32,
    pub use_oracle: bool,
    /// Embed the whole game table instead of only its digest.
    pub full_table: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { q: 2, use_oracle: false, full_table: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerCertificate {
    pub game_value: usize,
    pub game_bound: usize,
    pub nested_chain_length: usize,
    pub nested_bound: usize,
    pub table_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<u8>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperSource {
    NothingSent,
    Uncoded,
    UncodedPlusCyclic,
    NestedCyclic,
    LinearSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCertificate {
    pub beta: usize,
    pub subspaces_checked: u64,
    pub witness: LinearCode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperCertificate {
    pub source: UpperSource,
    pub length: usize,
    pub code: LinearCode,
    /// The absent receiver sent uncoded by the split construction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub absent_receiver: Option<MessageSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub lower: LowerCertificate,
    pub upper: UpperCertificate,
}

/// Bounds on `β_q` with the evidence behind them. Field order is the JSON order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RateReport {
    pub m: usize,
    #[serde(rename = "receivers")]
    pub receiver_count: usize,
    pub absent_count: usize,
    pub class: ClassLabel,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub exact: Option<usize>,
    pub certificates: Certificates,
}

impl RateReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

pub fn analyze(p: &Problem, q: u32, use_oracle: bool) -> Result<RateReport> {
    analyze_with(p, &AnalyzeOptions { q, use_oracle, full_table: false })
}

pub fn analyze_with(p: &Problem, opts: &AnalyzeOptions) -> Result<RateReport> {
    let m = p.m();
    let q = opts.q;
    let class = classify(p)?;

    let (game_value, table) = chain_game_value(p)?;
    let nested = nested_chain_length(p);
    let lower_bound = (m - nested).max(table.bound());
    let lower = LowerCertificate {
        game_value,
        game_bound: table.bound(),
        nested_chain_length: nested,
        nested_bound: m - nested,
        table_sha256: table.digest(),
        table: opts.full_table.then(|| table.values().to_vec()),
    };

    let oracle = if opts.use_oracle {
        let r = linear_beta_oracle(p, q, lower_bound)?;
        Some(OracleCertificate { beta: r.beta, subspaces_checked: r.subspaces_checked, witness: r.witness })
    } else {
        None
    };

    let first_absent = || p.absent_receivers().first().copied();
    let split = |h: Option<MessageSet>| -> Result<(UpperSource, LinearCode, Option<MessageSet>)> {
        let h = h.ok_or_else(|| Error::Inconsistent("split construction needs an absent receiver".into()))?;
        Ok((UpperSource::UncodedPlusCyclic, theorem1_code(p, &h, q)?, Some(h)))
    };
    let (source, code, absent_receiver) = match class.label {
        ClassLabel::DegenerateEmpty => (UpperSource::NothingSent, LinearCode::empty(q, m)?, None),
        ClassLabel::Complete => (UpperSource::Uncoded, LinearCode::identity(q, m)?, None),
        ClassLabel::UnionNotFull | ClassLabel::NoNestedPair | ClassLabel::OneNestedPair => split(first_absent())?,
        ClassLabel::PerfectlyNested(_) => {
            let part = class.partition.as_ref().expect("label implies a partition");
            (UpperSource::NestedCyclic, perfectly_nested_code(part, q)?, None)
        }
        ClassLabel::Unclassified => match &oracle {
            Some(o) if o.beta < m - 1 => (UpperSource::LinearSearch, o.witness.clone(), None),
            _ => split(first_absent())?,
        },
    };

    let report = code_satisfies(&code, p)?;
    if !report.satisfied {
        return Err(Error::Inconsistent(format!(
            "upper-bound code fails receivers {:?}",
            report.unsatisfied().collect::<Vec<_>>()
        )));
    }
    let upper_bound = code.len();
    if let Some(exact) = class.exact {
        if upper_bound != exact || lower_bound != exact {
            return Err(Error::Inconsistent(format!(
                "class {} gives {exact} but bounds are [{lower_bound}, {upper_bound}]",
                class.label
            )));
        }
        if let Some(o) = &oracle {
            if o.beta != exact {
                return Err(Error::Inconsistent(format!(
                    "class {} gives {exact} but the linear search found {}",
                    class.label, o.beta
                )));
            }
        }
    }
    if lower_bound > upper_bound {
        return Err(Error::Inconsistent(format!("lower bound {lower_bound} exceeds upper bound {upper_bound}")));
    }

    Ok(RateReport {
        m,
        receiver_count: p.receiver_count(),
        absent_count: p.absent_count(),
        class: class.label,
        lower_bound,
        upper_bound,
        exact: (lower_bound == upper_bound).then_some(lower_bound),
        certificates: Certificates {
            lower,
            upper: UpperCertificate { source, length: upper_bound, code, absent_receiver, oracle },
        },
    })
}
