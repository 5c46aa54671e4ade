//! Exhaustive search for the shortest satisfying scalar linear code.
//!
//! Decodability depends only on the row space, so each `ℓ`-dimensional
//! subspace of `F_q^m` is visited once through its reduced row-echelon
//! basis: choose pivot columns, then fill every free entry (right of the
//! row's pivot, outside the other pivot columns) with every field element.

use super::code::LinearCode;
use super::field::PrimeField;
use super::matrix::rref;
use crate::error::{Error, Result};
use crate::problem::Problem;

pub const ORACLE_MAX_M: usize = 6;
pub const ORACLE_MAX_Q: u32 = 7;

pub fn oracle_supported(m: usize, q: u32) -> bool {
    m <= ORACLE_MAX_M && q <= ORACLE_MAX_Q && super::field::is_prime(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Shortest satisfying linear code length.
    pub beta: usize,
    /// Lexicographically first satisfying canonical basis of that length.
    pub witness: LinearCode,
    pub subspaces_checked: u64,
}

/// RREF bases of all `dim`-dimensional subspaces of `F_q^m`.
pub fn subspaces(m: usize, dim: usize, q: u32) -> Subspaces {
    Subspaces::new(m, dim, q)
}

pub struct Subspaces {
    m: usize,
    q: u32,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u32>,
    done: bool,
}

impl Subspaces {
    fn new(m: usize, dim: usize, q: u32) -> Self {
        let mut s = Self { m, q, pivots: (0..dim).collect(), free: Vec::new(), digits: Vec::new(), done: dim > m };
        if !s.done {
            s.reset_free();
        }
        s
    }

    fn reset_free(&mut self) {
        self.free.clear();
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.m {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn current(&self) -> Vec<Vec<u32>> {
        let mut rows = vec![vec![0u32; self.m]; self.pivots.len()];
        for (r, &p) in self.pivots.iter().enumerate() {
            rows[r][p] = 1;
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.digits) {
            rows[r][c] = v;
        }
        rows
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.q {
                return;
            }
            *d = 0;
        }
        // free entries exhausted; next pivot combination
        let k = self.pivots.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < self.m - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.reset_free();
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Subspaces {
    type Item = Vec<Vec<u32>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

struct Checker<'a> {
    field: &'a PrimeField,
    unknown: Vec<Vec<usize>>,
}

impl Checker<'_> {
    fn satisfies(&self, rows: &[Vec<u32>]) -> bool {
        self.unknown.iter().all(|cols| {
            let mut restricted: Vec<Vec<u32>> = rows.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect();
            rref(&mut restricted, self.field);
            restricted.iter().any(|row| row.iter().filter(|&&x| x != 0).count() == 1)
        })
    }

    /// Lexicographically first satisfying basis of dimension `dim`.
    fn level(&self, m: usize, dim: usize, checked: &mut u64) -> Option<Vec<Vec<u32>>> {
        let mut best: Option<Vec<Vec<u32>>> = None;
        for rows in subspaces(m, dim, self.field.q()) {
            *checked += 1;
            if best.as_ref().is_some_and(|b| &rows >= b) {
                continue;
            }
            if self.satisfies(&rows) {
                best = Some(rows);
            }
        }
        best
    }
}

/// Smallest `ℓ ≥ lb_hint` admitting a satisfying linear code over `F_q`.
///
/// The hint is re-checked: any satisfying space extends to a satisfying space
/// one dimension larger, so searching level `lb_hint - 1` alone decides
/// whether the hint was a valid lower bound. Finding a code there is an
/// [`Error::Inconsistent`].
pub fn linear_beta_oracle(p: &Problem, q: u32, lb_hint: usize) -> Result<OracleResult> {
    let m = p.m();
    if !super::field::is_prime(q) {
        return Err(Error::Validation(format!("field size {q} is not prime")));
    }
    if !oracle_supported(m, q) {
        return Err(Error::Capacity(format!(
            "linear oracle limited to m <= {ORACLE_MAX_M} and q <= {ORACLE_MAX_Q} (got m = {m}, q = {q})"
        )));
    }
    if lb_hint > m {
        return Err(Error::Inconsistent(format!(
            "lower bound {lb_hint} exceeds m = {m}, but sending every message always works"
        )));
    }
    let field = PrimeField::new(q)?;
    let checker = Checker {
        field: &field,
        unknown: p.present().iter().map(|h| (0..m).filter(|&b| h.bits() & (1 << b) == 0).collect()).collect(),
    };
    let mut checked = 0u64;
    if lb_hint > 0 {
        if let Some(rows) = checker.level(m, lb_hint - 1, &mut checked) {
            return Err(Error::Inconsistent(format!(
                "a linear code of length {} satisfies the problem, below the claimed lower bound {lb_hint}: {rows:?}",
                lb_hint - 1
            )));
        }
    }
    for dim in lb_hint..=m {
        if let Some(rows) = checker.level(m, dim, &mut checked) {
            return Ok(OracleResult { beta: dim, witness: LinearCode::new(q, m, rows)?, subspaces_checked: checked });
        }
    }
    unreachable!("the identity code satisfies every problem")
}
