//! Minimum sum representation index: among integer representations
//! [q; w] realizing the game exactly, take one of minimal total weight and
//! report the normalized weights.

use super::{IndexError, IndexKind, PowerVector};
use crate::game::{is_complete, is_weighted, SimpleGame};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::ratio::Ratio;
use num_traits::{One, Zero};

/// The search is exponential in the total weight; past 9 players minimum
/// sums grow into the hundreds and the enumeration stops being a desk job.
pub const MAX_MSR_PLAYERS: usize = 9;

pub fn msr_index(game: &SimpleGame) -> Result<PowerVector, IndexError> {
    let n = game.player_count();
    if n > MAX_MSR_PLAYERS {
        return Err(IndexError::Unsupported {
            kind: IndexKind::MinimumSum.to_string(),
            detail: format!("msr supports at most {MAX_MSR_PLAYERS} players (got {n})"),
        });
    }
    let (weighted, _) = is_weighted(game)?;
    if !weighted {
        return Err(IndexError::NotWeighted);
    }
    let (q, w) = minimum_sum_representation(game)?;
    let total: u64 = w.iter().sum();
    debug_assert!(q >= 1 && total >= q);
    let values = w
        .iter()
        .map(|&wi| Ratio::new(wi.into(), total.into()))
        .collect();
    Ok(PowerVector {
        kind: IndexKind::MinimumSum,
        values,
    })
}

/// The lexicographically smallest (q, w) among integer representations of
/// minimal total weight.
pub fn minimum_sum_representation(game: &SimpleGame) -> Result<(u64, Vec<u64>), IndexError> {
    let n = game.player_count();
    let min_winning: Vec<u32> = game.minimal_winning().iter().map(|c| c.mask()).collect();
    let max_losing: Vec<u32> = game.maximal_losing().iter().map(|c| c.mask()).collect();

    // Exact LP relaxation of the total weight, a valid lower bound for the
    // integer search.
    let mut objective = vec![Ratio::one(); n];
    objective.push(Ratio::zero());
    let mut lp = LinearProgram::minimize(objective).nonnegative();
    for &mask in &min_winning {
        let mut row = incidence_q(mask, n, -Ratio::one());
        row[n] = -Ratio::one();
        lp.push(row, Relation::Ge, Ratio::zero());
    }
    for &mask in &max_losing {
        let mut row = incidence_q(mask, n, -Ratio::one());
        row[n] = -Ratio::one();
        lp.push(row, Relation::Le, -Ratio::one());
    }
    let relaxation = match lp.solve()? {
        LpOutcome::Optimal(solution) => solution.value,
        _ => return Err(IndexError::NotWeighted),
    };
    let mut sum = relaxation.ceil().to_integer();
    if Ratio::from_integer(sum.clone()) < relaxation {
        sum += 1;
    }
    let mut sum: u64 = num_traits::ToPrimitive::to_u64(&sum).ok_or_else(|| {
        IndexError::Internal("minimum sum bound out of range".to_string())
    })?;
    sum = sum.max(1);

    // Strictly more desirable players carry strictly larger weights in
    // every exact representation, so the search assigns weights along the
    // desirability order with a per-class upper bound; within a class the
    // weights are unconstrained.
    let (_, relation) = is_complete(game);
    let classes = relation.equivalence_classes();

    const SUM_CAP: u64 = 100_000;
    while sum <= SUM_CAP {
        let mut search = Search {
            n,
            min_winning: &min_winning,
            max_losing: &max_losing,
            classes: &classes,
            weights: vec![0u64; n],
            best: None,
        };
        search.assign(0, 0, sum, u64::MAX);
        if let Some((q, w)) = search.best {
            return Ok((q, w));
        }
        sum += 1;
    }
    Err(IndexError::Internal(
        "minimum sum search exceeded its cap".to_string(),
    ))
}

struct Search<'a> {
    n: usize,
    min_winning: &'a [u32],
    max_losing: &'a [u32],
    classes: &'a [Vec<usize>],
    weights: Vec<u64>,
    best: Option<(u64, Vec<u64>)>,
}

impl Search<'_> {
    /// Assign the `index`-th member (flattened over classes) a weight below
    /// `bound` (the strict cross-class cap), spending exactly `remaining`.
    fn assign(&mut self, class: usize, member: usize, remaining: u64, bound: u64) {
        if class == self.classes.len() {
            if remaining == 0 {
                self.check_leaf();
            }
            return;
        }
        let (class, member, bound) = if member == self.classes[class].len() {
            // Entering the next class: its weights must drop strictly below
            // everything assigned in this class.
            let class_min = self.classes[class]
                .iter()
                .map(|&p| self.weights[p])
                .min()
                .unwrap_or(u64::MAX);
            (class + 1, 0, class_min.saturating_sub(1).min(bound))
        } else {
            (class, member, bound)
        };
        if class == self.classes.len() {
            if remaining == 0 {
                self.check_leaf();
            }
            return;
        }
        let player = self.classes[class][member];
        // Everything left must fit under the running bound.
        let players_left = (self.classes[class].len() - member)
            + self.classes[class + 1..].iter().map(Vec::len).sum::<usize>();
        for w in (0..=bound.min(remaining)).rev() {
            if w.saturating_mul(players_left as u64) < remaining {
                break;
            }
            self.weights[player] = w;
            self.assign(class, member + 1, remaining - w, bound);
        }
        self.weights[player] = 0;
    }

    fn check_leaf(&mut self) {
        let weight_of = |mask: u32| -> u64 {
            let mut total = 0;
            let mut rest = mask;
            while rest != 0 {
                total += self.weights[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            total
        };
        let min_win = self.min_winning.iter().map(|&m| weight_of(m)).min();
        let max_lose = self.max_losing.iter().map(|&m| weight_of(m)).max();
        let (Some(min_win), Some(max_lose)) = (min_win, max_lose) else {
            return;
        };
        if min_win <= max_lose {
            return;
        }
        let q = max_lose + 1;
        let candidate = (q, self.weights.clone());
        match &self.best {
            Some(best) if *best <= candidate => {}
            _ => self.best = Some(candidate),
        }
        let _ = self.n;
    }
}

fn incidence_q(mask: u32, n: usize, _q_coeff: Ratio) -> Vec<Ratio> {
    let mut row = vec![Ratio::zero(); n + 1];
    let mut rest = mask;
    while rest != 0 {
        row[rest.trailing_zeros() as usize] = Ratio::one();
        rest &= rest - 1;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Coalition, WeightedGame};
    use crate::ratio::{int, rat};

    fn table(q: i64, w: &[i64]) -> SimpleGame {
        WeightedGame::from_weights(int(q), w.iter().map(|&x| int(x)).collect())
            .unwrap()
            .realize()
            .unwrap()
    }

    #[test]
    fn two_one_one_has_sum_four() {
        let g = table(3, &[2, 1, 1]);
        let (q, w) = minimum_sum_representation(&g).unwrap();
        assert_eq!((q, w), (3, vec![2, 1, 1]));
        assert_eq!(
            msr_index(&g).unwrap().values,
            vec![rat(1, 2), rat(1, 4), rat(1, 4)]
        );
    }

    #[test]
    fn majority_has_sum_three() {
        let g = table(2, &[1, 1, 1]);
        let (q, w) = minimum_sum_representation(&g).unwrap();
        assert_eq!((q, w), (2, vec![1, 1, 1]));
        assert_eq!(
            msr_index(&g).unwrap().values,
            vec![rat(1, 3), rat(1, 3), rat(1, 3)]
        );
    }

    #[test]
    fn dictator_puts_everything_on_one_player() {
        let g = table(1, &[1, 0, 0]);
        assert_eq!(
            msr_index(&g).unwrap().values,
            vec![int(1), int(0), int(0)]
        );
    }

    #[test]
    fn rejects_non_weighted_games() {
        let g = SimpleGame::from_min_winning(
            4,
            &[
                Coalition::from_players(&[0, 1], 4),
                Coalition::from_players(&[2, 3], 4),
            ],
        )
        .unwrap();
        assert!(matches!(msr_index(&g), Err(IndexError::NotWeighted)));
    }

    #[test]
    fn representation_realizes_the_game() {
        for (q, w) in [(4i64, vec![2i64, 2, 1, 1]), (5, vec![3, 2, 1, 1]), (4, vec![1, 1, 1, 1, 1])] {
            let g = table(q, &w);
            let (mq, mw) = minimum_sum_representation(&g).unwrap();
            let realized = WeightedGame::from_weights(
                int(mq as i64),
                mw.iter().map(|&x| int(x as i64)).collect(),
            )
            .unwrap()
            .realize()
            .unwrap();
            assert_eq!(realized, g);
        }
    }
}
