//! Game representations, validation, and structural predicates.

mod canonical;
mod coalition;
mod desirability;
mod json;
mod simple;
mod weighted;
mod weightedness;

pub use canonical::{automorphism_count, canonical_form, MAX_CANONICAL_PLAYERS};
pub use coalition::Coalition;
pub use desirability::{is_complete, DesirabilityRelation, PairOrder};
pub use json::GameSpec;
pub use simple::{SimpleGame, MAX_TABLE_PLAYERS};
pub use weighted::{IntegerWeights, WeightedGame};
pub use weightedness::is_weighted;

use crate::ratio::Ratio;

#[derive(Debug, Clone, thiserror::Error)]
pub enum GameError {
    #[error("player count {n} outside the supported range 1..={max}")]
    PlayerCount { n: usize, max: usize },
    #[error("truth table has {got} words, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("the empty coalition must lose")]
    EmptyCoalitionWins,
    #[error("the grand coalition must win")]
    GrandCoalitionLoses,
    #[error("not monotone: {winning} wins but its superset {losing} loses")]
    NotMonotone { winning: Coalition, losing: Coalition },
    #[error("quota {quota} is not positive")]
    QuotaNotPositive { quota: Ratio },
    #[error("negative weight {weight} for player {player}")]
    NegativeWeight { player: usize, weight: Ratio },
    #[error("quota {quota} exceeds the total weight {total}")]
    QuotaExceedsTotal { quota: Ratio, total: Ratio },
    #[error("game parse error: {0}")]
    Parse(String),
}
