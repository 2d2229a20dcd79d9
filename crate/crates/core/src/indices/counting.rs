//! Integer swing counting over truth tables. These loops sit inside the
//! enumeration folds, so they stay allocation-light and integer-only.

use crate::game::SimpleGame;

/// The vector η of per-player swing counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwingVector {
    pub eta: Vec<u64>,
}

impl SwingVector {
    pub fn total(&self) -> u64 {
        self.eta.iter().sum()
    }
}

/// η_i = #{S ∌ i : S losing, S ∪ {i} winning}.
pub fn banzhaf_raw(game: &SimpleGame) -> SwingVector {
    SwingVector {
        eta: swing_counts(game),
    }
}

pub fn swing_counts(game: &SimpleGame) -> Vec<u64> {
    let n = game.player_count();
    let mut eta = vec![0u64; n];
    for mask in 0..(1u32 << n) {
        if game.is_winning_mask(mask) {
            continue;
        }
        let mut absent = !mask & ((1u32 << n) - 1);
        while absent != 0 {
            let low = absent & absent.wrapping_neg();
            if game.is_winning_mask(mask | low) {
                eta[low.trailing_zeros() as usize] += 1;
            }
            absent ^= low;
        }
    }
    eta
}

/// `result[i][s]` counts swings of player i over losing coalitions of size s.
pub fn swing_counts_by_size(game: &SimpleGame) -> Vec<Vec<u64>> {
    let n = game.player_count();
    let mut counts = vec![vec![0u64; n]; n];
    for mask in 0..(1u32 << n) {
        if game.is_winning_mask(mask) {
            continue;
        }
        let size = mask.count_ones() as usize;
        let mut absent = !mask & ((1u32 << n) - 1);
        while absent != 0 {
            let low = absent & absent.wrapping_neg();
            if game.is_winning_mask(mask | low) {
                counts[low.trailing_zeros() as usize][size] += 1;
            }
            absent ^= low;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::WeightedGame;
    use crate::ratio::int;

    fn table(q: i64, w: &[i64]) -> SimpleGame {
        WeightedGame::from_weights(int(q), w.iter().map(|&x| int(x)).collect())
            .unwrap()
            .realize()
            .unwrap()
    }

    #[test]
    fn majority_swings() {
        assert_eq!(banzhaf_raw(&table(2, &[1, 1, 1])).eta, vec![2, 2, 2]);
    }

    #[test]
    fn two_one_one_swings() {
        assert_eq!(banzhaf_raw(&table(3, &[2, 1, 1])).eta, vec![3, 1, 1]);
    }

    #[test]
    fn unanimity_attains_the_minimum_total() {
        let g = table(3, &[1, 1, 1]);
        let eta = banzhaf_raw(&g);
        assert_eq!(eta.eta, vec![1, 1, 1]);
        assert_eq!(eta.total(), 3);
    }

    #[test]
    fn by_size_totals_match() {
        let g = table(5, &[3, 2, 1, 1]);
        let flat = swing_counts(&g);
        let by_size = swing_counts_by_size(&g);
        for (i, counts) in by_size.iter().enumerate() {
            assert_eq!(counts.iter().sum::<u64>(), flat[i]);
        }
    }
}
