//! Decoding chains with skipped messages and the lower bounds built on them.

mod game;
mod nested;
mod prune;
mod run;

pub use game::{brute_force_game_value, chain_game_bound, chain_game_value, GameTable, DEFAULT_BRUTE_FORCE_BUDGET};
pub use nested::{nested_chain_bound, nested_chain_length};
pub use prune::{prune_via_chain, BipartiteProblemGraph, GraphNode, PruneOutcome};
pub use run::{run_chain, ChainHit, ChainRun, DecodingChoice, SkipPolicy};
