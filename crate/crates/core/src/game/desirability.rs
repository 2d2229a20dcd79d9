use super::simple::SimpleGame;

/// Outcome of comparing two players in the desirability preorder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairOrder {
    MoreDesirable,
    Equal,
    LessDesirable,
    Incomparable,
}

/// The Isbell desirability relation of a simple game: i ⪰ j iff swapping j
/// for i never turns a winning coalition losing.
#[derive(Clone, Debug)]
pub struct DesirabilityRelation {
    n: usize,
    cells: Vec<PairOrder>,
}

impl DesirabilityRelation {
    pub fn of(game: &SimpleGame) -> Self {
        let n = game.player_count();
        let mut cells = vec![PairOrder::Equal; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let (ge, le) = compare(game, i, j);
                let order = match (ge, le) {
                    (true, true) => PairOrder::Equal,
                    (true, false) => PairOrder::MoreDesirable,
                    (false, true) => PairOrder::LessDesirable,
                    (false, false) => PairOrder::Incomparable,
                };
                cells[i * n + j] = order;
                cells[j * n + i] = match order {
                    PairOrder::MoreDesirable => PairOrder::LessDesirable,
                    PairOrder::LessDesirable => PairOrder::MoreDesirable,
                    other => other,
                };
            }
        }
        DesirabilityRelation { n, cells }
    }

    pub fn player_count(&self) -> usize {
        self.n
    }

    pub fn compare(&self, i: usize, j: usize) -> PairOrder {
        self.cells[i * self.n + j]
    }

    /// True when no pair of players is incomparable.
    pub fn is_total(&self) -> bool {
        !self.cells.contains(&PairOrder::Incomparable)
    }

    /// True when i is at least as desirable as j.
    pub fn at_least(&self, i: usize, j: usize) -> bool {
        matches!(
            self.compare(i, j),
            PairOrder::MoreDesirable | PairOrder::Equal
        )
    }

    /// Players sorted most-desirable first; ties keep index order. Only
    /// meaningful when the relation is total.
    pub fn sorted_players(&self) -> Vec<usize> {
        let mut players: Vec<usize> = (0..self.n).collect();
        players.sort_by(|&a, &b| {
            match self.compare(a, b) {
                PairOrder::MoreDesirable => std::cmp::Ordering::Less,
                PairOrder::LessDesirable => std::cmp::Ordering::Greater,
                _ => a.cmp(&b),
            }
        });
        players
    }

    /// Groups of equally desirable players, in `sorted_players` order.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        let order = self.sorted_players();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for p in order {
            match classes.last_mut() {
                Some(class) if self.compare(class[0], p) == PairOrder::Equal => class.push(p),
                _ => classes.push(vec![p]),
            }
        }
        classes
    }
}

fn compare(game: &SimpleGame, i: usize, j: usize) -> (bool, bool) {
    let n = game.player_count();
    let bi = 1u32 << i;
    let bj = 1u32 << j;
    let mut i_ge_j = true;
    let mut j_ge_i = true;
    // Walk the subsets of N \ {i,j} by skipping masks touching i or j.
    for mask in 0..(1u32 << n) {
        if mask & (bi | bj) != 0 {
            continue;
        }
        let with_i = game.is_winning_mask(mask | bi);
        let with_j = game.is_winning_mask(mask | bj);
        if with_j && !with_i {
            i_ge_j = false;
        }
        if with_i && !with_j {
            j_ge_i = false;
        }
        if !i_ge_j && !j_ge_i {
            break;
        }
    }
    (i_ge_j, j_ge_i)
}

/// Tests completeness: the desirability preorder must be total.
pub fn is_complete(game: &SimpleGame) -> (bool, DesirabilityRelation) {
    let relation = DesirabilityRelation::of(game);
    (relation.is_total(), relation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Coalition;

    #[test]
    fn weighted_games_are_complete() {
        let g = crate::game::WeightedGame::from_weights(
            crate::ratio::int(3),
            vec![crate::ratio::int(2), crate::ratio::int(1), crate::ratio::int(1)],
        )
        .unwrap()
        .realize()
        .unwrap();
        let (complete, rel) = is_complete(&g);
        assert!(complete);
        assert_eq!(rel.compare(0, 1), PairOrder::MoreDesirable);
        assert_eq!(rel.compare(1, 2), PairOrder::Equal);
        assert_eq!(rel.sorted_players(), vec![0, 1, 2]);
        assert_eq!(rel.equivalence_classes(), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn crossed_pairs_are_incomparable() {
        // Minimal winning {1,2} and {3,4}: players 1 and 3 incomparable.
        let g = SimpleGame::from_min_winning(
            4,
            &[
                Coalition::from_players(&[0, 1], 4),
                Coalition::from_players(&[2, 3], 4),
            ],
        )
        .unwrap();
        let (complete, rel) = is_complete(&g);
        assert!(!complete);
        assert_eq!(rel.compare(0, 2), PairOrder::Incomparable);
    }
}
