use crate::error::{validation, Result};

/// Largest field size accepted for codes; keeps products inside `u32`.
pub const MAX_FIELD_SIZE: u32 = 65_521;

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `F_q` for prime `q` with a tabulated inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    q: u32,
    inverse: Vec<u32>,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(validation(format!("field size {q} is not prime")));
        }
        if q > MAX_FIELD_SIZE {
            return Err(validation(format!("field size {q} exceeds {MAX_FIELD_SIZE}")));
        }
        let mut inverse = vec![0u32; q as usize];
        for a in 1..q {
            // Fermat: a^(q-2)
            inverse[a as usize] = pow(a, q - 2, q);
        }
        Ok(Self { q, inverse })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.q
    }

    /// Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        self.inverse[a as usize]
    }
}

fn pow(base: u32, mut exp: u32, q: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = base as u64 % q as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % q as u64;
        }
        b = b * b % q as u64;
        exp >>= 1;
    }
    acc as u32
}
