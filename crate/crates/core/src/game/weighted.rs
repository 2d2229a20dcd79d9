use super::simple::{SimpleGame, MAX_TABLE_PLAYERS};
use super::GameError;
use crate::ratio::{denominator_lcm, Ratio};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

/// A weighted majority game `[q; w_1, ..., w_n]`: a coalition wins iff its
/// weight meets or exceeds the quota.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGame {
    quota: Ratio,
    weights: Vec<Ratio>,
}

/// Integer-scaled form of a weighted game: winning ⟺ Σ weights ≥ threshold.
/// Scaling is exact, so the threshold rule agrees with the rational one on
/// every coalition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerWeights {
    pub threshold: u64,
    pub weights: Vec<u64>,
}

impl WeightedGame {
    pub fn from_weights(quota: Ratio, weights: Vec<Ratio>) -> Result<Self, GameError> {
        if weights.is_empty() {
            return Err(GameError::PlayerCount {
                n: 0,
                max: MAX_TABLE_PLAYERS,
            });
        }
        if !quota.is_positive() {
            return Err(GameError::QuotaNotPositive { quota });
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(GameError::NegativeWeight {
                player: i + 1,
                weight: weights[i].clone(),
            });
        }
        let total: Ratio = weights.iter().sum();
        if total < quota {
            return Err(GameError::QuotaExceedsTotal { quota, total });
        }
        Ok(WeightedGame { quota, weights })
    }

    pub fn player_count(&self) -> usize {
        self.weights.len()
    }

    pub fn quota(&self) -> &Ratio {
        &self.quota
    }

    pub fn weights(&self) -> &[Ratio] {
        &self.weights
    }

    pub fn total_weight(&self) -> Ratio {
        self.weights.iter().sum()
    }

    /// Weights rescaled to sum to one.
    pub fn normalized_weights(&self) -> Vec<Ratio> {
        let total = self.total_weight();
        self.weights.iter().map(|w| w / &total).collect()
    }

    /// Relative quota q / Σw.
    pub fn relative_quota(&self) -> Ratio {
        &self.quota / self.total_weight()
    }

    pub fn coalition_weight(&self, mask: u32) -> Ratio {
        let mut total = Ratio::zero();
        let mut rest = mask;
        while rest != 0 {
            total += &self.weights[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        total
    }

    pub fn is_winning_mask(&self, mask: u32) -> bool {
        self.coalition_weight(mask) >= self.quota
    }

    /// Exact integer rescaling; `None` when the scaled weights or threshold
    /// do not fit in `u64`.
    pub fn integer_form(&self) -> Option<IntegerWeights> {
        let mut all = self.weights.clone();
        all.push(self.quota.clone());
        let scale = denominator_lcm(&all);
        let mut weights = Vec::with_capacity(self.weights.len());
        let mut total = BigInt::zero();
        for w in &self.weights {
            let scaled = (w * Ratio::from_integer(scale.clone())).to_integer();
            total += &scaled;
            weights.push(scaled.to_u64()?);
        }
        total.to_u64()?;
        // Integer coalition weights compare to the quota the same way they
        // compare to its ceiling.
        let threshold = (&self.quota * Ratio::from_integer(scale)).ceil().to_integer();
        Some(IntegerWeights {
            threshold: threshold.to_u64()?,
            weights,
        })
    }

    /// Expands the threshold rule into a full truth table.
    pub fn realize(&self) -> Result<SimpleGame, GameError> {
        let n = self.player_count();
        if n > MAX_TABLE_PLAYERS {
            return Err(GameError::PlayerCount {
                n,
                max: MAX_TABLE_PLAYERS,
            });
        }
        if let Some(form) = self.integer_form() {
            // Subset-sum over masks; one add per table entry.
            let mut sums = vec![0u64; 1 << n];
            for mask in 1..(1u32 << n) {
                let low = mask & mask.wrapping_neg();
                sums[mask as usize] =
                    sums[(mask & !low) as usize] + form.weights[low.trailing_zeros() as usize];
            }
            SimpleGame::from_predicate(n, |mask| sums[mask as usize] >= form.threshold)
        } else {
            SimpleGame::from_predicate(n, |mask| self.is_winning_mask(mask))
        }
    }
}

impl IntegerWeights {
    pub fn coalition_weight(&self, mask: u32) -> u64 {
        let mut total = 0u64;
        let mut rest = mask;
        while rest != 0 {
            total += self.weights[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        total
    }

    pub fn is_winning_mask(&self, mask: u32) -> bool {
        self.coalition_weight(mask) >= self.threshold
    }
}

impl fmt::Display for WeightedGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.quota)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for WeightedGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};

    fn game(q: i64, w: &[i64]) -> WeightedGame {
        WeightedGame::from_weights(int(q), w.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn dictator_from_weights() {
        let g = game(1, &[1, 0, 0]);
        for mask in 0..8u32 {
            assert_eq!(g.is_winning_mask(mask), mask & 1 == 1);
        }
    }

    #[test]
    fn majority_from_weights() {
        let g = game(2, &[1, 1, 1]);
        for mask in 0..8u32 {
            assert_eq!(g.is_winning_mask(mask), mask.count_ones() >= 2);
        }
    }

    #[test]
    fn two_one_one_winning_sets() {
        let g = game(3, &[2, 1, 1]);
        let winning: Vec<u32> = (0..8).filter(|&m| g.is_winning_mask(m)).collect();
        // {1,2}, {1,3}, {1,2,3} as masks
        assert_eq!(winning, vec![0b011, 0b101, 0b111]);
        let table = g.realize().unwrap();
        assert_eq!(
            table.minimal_winning(),
            &[
                Coalition::from_players(&[0, 1], 3),
                Coalition::from_players(&[0, 2], 3)
            ]
        );
    }

    use crate::game::Coalition;

    #[test]
    fn rejects_invalid_inputs() {
        assert!(matches!(
            WeightedGame::from_weights(int(0), vec![int(1)]),
            Err(GameError::QuotaNotPositive { .. })
        ));
        assert!(matches!(
            WeightedGame::from_weights(int(1), vec![int(-1), int(2)]),
            Err(GameError::NegativeWeight { .. })
        ));
        assert!(matches!(
            WeightedGame::from_weights(int(4), vec![int(1), int(2)]),
            Err(GameError::QuotaExceedsTotal { .. })
        ));
    }

    #[test]
    fn rational_quota_scales_exactly() {
        // [1/2; 2/5, 2/5, 1/5]: all pairs win, singletons lose.
        let g = WeightedGame::from_weights(rat(1, 2), vec![rat(2, 5), rat(2, 5), rat(1, 5)])
            .unwrap();
        let form = g.integer_form().unwrap();
        for mask in 0..8u32 {
            assert_eq!(g.is_winning_mask(mask), form.is_winning_mask(mask));
        }
        let table = g.realize().unwrap();
        assert!(table.is_winning_mask(0b110));
        assert!(table.is_winning_mask(0b101));
        assert!(table.is_winning_mask(0b011));
        assert!(!table.is_winning_mask(0b100));
    }

    #[test]
    fn quota_tie_is_winning() {
        let g = game(4, &[2, 2, 1]);
        assert!(g.is_winning_mask(0b011)); // weight exactly 4
        assert!(!g.is_winning_mask(0b101)); // weight 3
    }
}
