use super::simple::SimpleGame;
use super::weighted::WeightedGame;
use super::GameError;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::ratio::Ratio;
use num_traits::{One, Zero};

/// Decides whether a simple game is a weighted majority game, returning a
/// realizing representation when it is.
///
/// Feasibility system over variables (w_1..w_n, q), all ≥ 0:
///   w(W) ≥ q       for every minimal winning W,
///   w(T) ≤ q − 1   for every maximal losing T,
/// with margin 1 standing in for the strict winning/losing separation
/// (any positive margin is equivalent up to scaling). The empty coalition
/// appears among the maximal losing sets when all singletons win, which
/// forces q ≥ 1 and so q > 0 in every solution.
pub fn is_weighted(game: &SimpleGame) -> Result<(bool, Option<WeightedGame>), GameError> {
    let n = game.player_count();
    let q_var = n;
    // Small witnesses read better, so minimize the total weight.
    let mut objective = vec![Ratio::one(); n];
    objective.push(Ratio::zero());
    let mut lp = LinearProgram::minimize(objective).nonnegative();

    for coalition in game.minimal_winning() {
        let mut row = vec![Ratio::zero(); n + 1];
        for p in coalition.players() {
            row[p] = Ratio::one();
        }
        row[q_var] = -Ratio::one();
        lp.push(row, Relation::Ge, Ratio::zero());
    }
    for coalition in game.maximal_losing() {
        let mut row = vec![Ratio::zero(); n + 1];
        for p in coalition.players() {
            row[p] = Ratio::one();
        }
        row[q_var] = -Ratio::one();
        lp.push(row, Relation::Le, -Ratio::one());
    }

    match lp.solve().map_err(|e| GameError::Parse(e.to_string()))? {
        LpOutcome::Optimal(solution) => {
            let mut point = solution.point;
            let quota = point.pop().expect("quota variable present");
            let witness = WeightedGame::from_weights(quota, point)?;
            debug_assert_eq!(&witness.realize()?, game);
            Ok((true, Some(witness)))
        }
        LpOutcome::Infeasible(_) => Ok((false, None)),
        LpOutcome::Unbounded => unreachable!("feasibility system with a bounded objective"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Coalition;
    use crate::ratio::int;

    #[test]
    fn majority_is_weighted() {
        let g = SimpleGame::from_predicate(3, |m| m.count_ones() >= 2).unwrap();
        let (weighted, witness) = is_weighted(&g).unwrap();
        assert!(weighted);
        assert_eq!(&witness.unwrap().realize().unwrap(), &g);
    }

    #[test]
    fn crossed_pairs_are_not_weighted() {
        let g = SimpleGame::from_min_winning(
            4,
            &[
                Coalition::from_players(&[0, 1], 4),
                Coalition::from_players(&[2, 3], 4),
            ],
        )
        .unwrap();
        let (weighted, witness) = is_weighted(&g).unwrap();
        assert!(!weighted);
        assert!(witness.is_none());
    }

    #[test]
    fn all_three_player_games_are_weighted() {
        // All 18 labeled 3-player simple games admit weights.
        let mut checked = 0;
        for bits in 0u64..256 {
            let Ok(g) = SimpleGame::from_raw_bits(3, vec![bits]) else {
                continue;
            };
            let (weighted, witness) = is_weighted(&g).unwrap();
            assert!(weighted, "game {g:?} reported non-weighted");
            assert_eq!(&witness.unwrap().realize().unwrap(), &g);
            checked += 1;
        }
        assert_eq!(checked, 18);
    }

    #[test]
    fn witness_realizes_identical_table() {
        let g = WeightedGame::from_weights(int(5), vec![int(3), int(2), int(1), int(1)])
            .unwrap()
            .realize()
            .unwrap();
        let (weighted, witness) = is_weighted(&g).unwrap();
        assert!(weighted);
        assert_eq!(&witness.unwrap().realize().unwrap(), &g);
    }
}
