//! Scalar linear codes over prime fields.

mod code;
pub mod field;
mod matrix;
mod oracle;

pub use code::{
    code_satisfies, cyclic_code, decodable_set, perfectly_nested_code, theorem1_code, DecodabilityReport, LinearCode,
};
pub use field::PrimeField;
pub use matrix::{rank, rref};
pub use oracle::{linear_beta_oracle, oracle_supported, subspaces, OracleResult, ORACLE_MAX_M, ORACLE_MAX_Q};
