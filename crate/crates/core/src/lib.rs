//! Optimal broadcast rates for pliable index coding.
//!
//! A problem has `m` messages and a family of present receivers, each
//! identified by the set of messages it already knows and satisfied by any
//! one message it does not. This crate computes lower bounds from decoding
//! chains with skipped messages, builds matching linear codes, classifies the
//! families whose rate is known exactly, and searches small instances
//! exhaustively for the shortest linear code.

pub mod analysis;
pub mod chain;
pub mod codec;
mod error;
pub mod generate;
pub mod gf;
mod problem;
mod set;
pub mod suites;

pub use error::{Error, Result};
pub use problem::{PartitionNested, Problem};
pub use set::{MessageSet, MAX_MESSAGES};
