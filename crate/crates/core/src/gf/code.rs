use serde::{Deserialize, Serialize, Serializer};

use super::field::PrimeField;
use super::matrix::rref;
use crate::error::{validation, Error, Result};
use crate::problem::{PartitionNested, Problem};
use crate::set::MessageSet;

/// An `ℓ × m` encoder over `F_q`: transmission `r` is `Σ_j rows[r][j] X_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: PrimeField,
    m: usize,
    rows: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeDoc {
    q: u32,
    rows: Vec<Vec<u32>>,
}

impl LinearCode {
    pub fn new(q: u32, m: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        let field = PrimeField::new(q)?;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(validation(format!("row {r} has {} entries, expected {m}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= q) {
                return Err(validation(format!("row {r} entry {x} is not an element of F_{q}")));
            }
        }
        Ok(Self { field, m, rows })
    }

    /// Sends nothing.
    pub fn empty(q: u32, m: usize) -> Result<Self> {
        Self::new(q, m, Vec::new())
    }

    /// Sends every message uncoded.
    pub fn identity(q: u32, m: usize) -> Result<Self> {
        Self::new(q, m, (1..=m).map(|i| unit_row(m, i)).collect())
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of transmissions `ℓ`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    /// Rows stacked after `self`'s.
    pub fn concat(mut self, other: &LinearCode) -> Result<Self> {
        if other.m != self.m || other.q() != self.q() {
            return Err(validation("cannot stack codes of different shape"));
        }
        self.rows.extend(other.rows.iter().cloned());
        Ok(self)
    }

    /// `{"q": .., "rows": [[..], ..]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CodeDoc { q: self.q(), rows: self.rows.clone() }).expect("codes always serialize")
    }

    /// `m` is needed because a zero-row code does not carry it.
    pub fn from_json(text: &str, m: usize) -> Result<Self> {
        let doc: CodeDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::new(doc.q, m, doc.rows)
    }
}

impl Serialize for LinearCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CodeDoc { q: self.q(), rows: self.rows.clone() }.serialize(s)
    }
}

fn unit_row(m: usize, i: usize) -> Vec<u32> {
    let mut row = vec![0; m];
    row[i - 1] = 1;
    row
}

/// Messages outside `h` that receiver `h` recovers from the transmissions.
///
/// The receiver cancels the columns it knows, leaving `A_{H^c} X_{H^c}`;
/// message `i` is recoverable for every realisation iff the unit vector on `i`
/// lies in the row space of `A_{H^c}`. In reduced row-echelon form that holds
/// iff some row is exactly that unit vector.
pub fn decodable_set(code: &LinearCode, h: &MessageSet) -> Result<MessageSet> {
    if h.universe() != code.m {
        return Err(validation(format!("receiver over {} messages against a code over {}", h.universe(), code.m)));
    }
    let unknown: Vec<usize> = h.complement().to_vec();
    let mut restricted: Vec<Vec<u32>> =
        code.rows.iter().map(|row| unknown.iter().map(|&i| row[i - 1]).collect()).collect();
    let pivots = rref(&mut restricted, &code.field);
    let mut out = MessageSet::empty(code.m)?;
    for (row, &c) in restricted.iter().zip(&pivots) {
        if row.iter().filter(|&&x| x != 0).count() == 1 {
            out = out.with(unknown[c]);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodabilityReport {
    /// Each present receiver with the messages it can decode.
    pub receivers: Vec<(MessageSet, MessageSet)>,
    pub satisfied: bool,
}

impl DecodabilityReport {
    pub fn unsatisfied(&self) -> impl Iterator<Item = &MessageSet> {
        self.receivers.iter().filter(|(_, d)| d.is_empty()).map(|(h, _)| h)
    }
}

pub fn code_satisfies(code: &LinearCode, p: &Problem) -> Result<DecodabilityReport> {
    if code.m != p.m() {
        return Err(validation(format!("code has {} columns, problem has {} messages", code.m, p.m())));
    }
    let receivers = p.present().iter().map(|h| decodable_set(code, h).map(|d| (*h, d))).collect::<Result<Vec<_>>>()?;
    let satisfied = receivers.iter().all(|(_, d)| !d.is_empty());
    Ok(DecodabilityReport { receivers, satisfied })
}

/// `X_{a_1} + X_{a_2}, ..., X_{a_{k-1}} + X_{a_k}`; nothing for a single message.
pub fn cyclic_code(messages: &[usize], m: usize, q: u32) -> Result<LinearCode> {
    if messages.is_empty() {
        return Err(validation("a cyclic code needs at least one message"));
    }
    let set = MessageSet::from_indices(m, messages)?;
    if set.len() != messages.len() {
        return Err(validation("cyclic code messages must be distinct"));
    }
    let rows = messages
        .windows(2)
        .map(|w| {
            let mut row = vec![0; m];
            row[w[0] - 1] = 1;
            row[w[1] - 1] = 1;
            row
        })
        .collect();
    LinearCode::new(q, m, rows)
}

/// Uncoded `X_H` followed by a cyclic code on `[1:m] \ H`, ascending order.
/// Length `m - 1`; satisfies every present receiver whenever `H` is absent.
pub fn theorem1_code(p: &Problem, h: &MessageSet, q: u32) -> Result<LinearCode> {
    if h.universe() != p.m() {
        return Err(validation("receiver belongs to another universe"));
    }
    if h.is_full() {
        return Err(validation(format!("{h} is not a receiver")));
    }
    if p.is_present(h) {
        return Err(Error::Contract(format!("receiver {h} is present; an absent one is required")));
    }
    let m = p.m();
    let uncoded = LinearCode::new(q, m, h.iter().map(|i| unit_row(m, i)).collect())?;
    uncoded.concat(&cyclic_code(&h.complement().to_vec(), m, q)?)
}

/// Uncoded `X_{P_0}` followed by a cyclic code per block. Length `m - L`.
pub fn perfectly_nested_code(part: &PartitionNested, q: u32) -> Result<LinearCode> {
    let m = part.m();
    let mut code = LinearCode::new(q, m, part.p0().iter().map(|i| unit_row(m, i)).collect())?;
    for block in part.blocks() {
        code = code.concat(&cyclic_code(&block.to_vec(), m, q)?)?;
    }
    Ok(code)
}
