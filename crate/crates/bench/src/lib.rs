//! Shared fixtures for the benchmark targets.

use votepower::game::{SimpleGame, WeightedGame};
use votepower::ratio::{int, rat, Ratio};

/// A moderately asymmetric table game: [2n−1; n, n−1, ..., 1] at `n`
/// players exercises every index path without degenerate shortcuts.
pub fn staircase_game(n: usize) -> SimpleGame {
    let weights: Vec<Ratio> = (1..=n as i64).rev().map(int).collect();
    WeightedGame::from_weights(int(2 * n as i64 - 1), weights)
        .unwrap()
        .realize()
        .unwrap()
}

/// Integer-weight game for the dynamic-programming paths.
pub fn staircase_weighted(n: usize) -> WeightedGame {
    let weights: Vec<Ratio> = (1..=n as i64).map(|i| int(1 + i % 5)).collect();
    let total: Ratio = weights.iter().sum();
    WeightedGame::from_weights(rat(1, 2) * total, weights).unwrap()
}
