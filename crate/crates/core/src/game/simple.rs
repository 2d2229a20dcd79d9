use super::coalition::{mask_all, Coalition};
use super::GameError;
use std::fmt;
use std::sync::OnceLock;

/// Largest player count representable as a 2^n truth table (1 MiB of bits).
pub const MAX_TABLE_PLAYERS: usize = 20;

/// A simple game: a monotone map from coalitions to {losing, winning} with
/// v(∅) = 0 and v(N) = 1, stored as a 2^n bit table.
///
/// Games are immutable after construction, so every predicate on them is
/// safe to evaluate concurrently. The list of minimal winning coalitions is
/// cached on first use behind a [`OnceLock`].
pub struct SimpleGame {
    n: usize,
    bits: Vec<u64>,
    min_winning: OnceLock<Vec<Coalition>>,
}

impl Clone for SimpleGame {
    fn clone(&self) -> Self {
        SimpleGame {
            n: self.n,
            bits: self.bits.clone(),
            min_winning: match self.min_winning.get() {
                Some(v) => {
                    let lock = OnceLock::new();
                    let _ = lock.set(v.clone());
                    lock
                }
                None => OnceLock::new(),
            },
        }
    }
}

impl PartialEq for SimpleGame {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}
impl Eq for SimpleGame {}

impl PartialOrd for SimpleGame {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: player count, then truth table bits in mask order. Used as
/// the deterministic tie-break in parallel reductions.
impl Ord for SimpleGame {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.bits).cmp(&(other.n, &other.bits))
    }
}

impl std::hash::Hash for SimpleGame {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bits.hash(state);
    }
}

impl SimpleGame {
    /// Builds a game from a predicate on coalition masks, validating the
    /// simple-game requirements (monotone, losing ∅, winning N).
    pub fn from_predicate(
        n: usize,
        mut winning: impl FnMut(u32) -> bool,
    ) -> Result<Self, GameError> {
        check_player_count(n)?;
        let size = 1usize << n;
        let mut bits = vec![0u64; size.div_ceil(64)];
        for mask in 0..size as u32 {
            if winning(mask) {
                bits[(mask / 64) as usize] |= 1u64 << (mask % 64);
            }
        }
        Self::from_raw_bits(n, bits)
    }

    /// Builds a game from raw table bits (bit `mask` of the array is the
    /// value of the coalition with that mask), validating invariants.
    pub fn from_raw_bits(n: usize, bits: Vec<u64>) -> Result<Self, GameError> {
        check_player_count(n)?;
        let size = 1usize << n;
        if bits.len() != size.div_ceil(64) {
            return Err(GameError::TableSize {
                expected: size.div_ceil(64),
                got: bits.len(),
            });
        }
        if size < 64 {
            // Stray bits above 2^n would break table comparisons.
            let stray = bits[0] & !((1u64 << size) - 1);
            if stray != 0 {
                return Err(GameError::TableSize {
                    expected: size.div_ceil(64),
                    got: bits.len(),
                });
            }
        }
        let game = SimpleGame {
            n,
            bits,
            min_winning: OnceLock::new(),
        };
        if game.is_winning_mask(0) {
            return Err(GameError::EmptyCoalitionWins);
        }
        if !game.is_winning_mask(mask_all(n)) {
            return Err(GameError::GrandCoalitionLoses);
        }
        // Monotonicity: removing any single player from a winning coalition
        // must not be able to create it from a losing one.
        for mask in 0..(1u32 << n) {
            if game.is_winning_mask(mask) {
                continue;
            }
            let mut sub = mask;
            while sub != 0 {
                let low = sub & sub.wrapping_neg();
                if game.is_winning_mask(mask & !low) {
                    return Err(GameError::NotMonotone {
                        winning: Coalition::new(mask & !low, n),
                        losing: Coalition::new(mask, n),
                    });
                }
                sub ^= low;
            }
        }
        Ok(game)
    }

    /// Table constructor bypassing validation, for generators that build
    /// monotone tables by construction.
    pub(crate) fn from_bits_unchecked(n: usize, bits: Vec<u64>) -> Self {
        debug_assert!(n >= 1 && n <= MAX_TABLE_PLAYERS);
        SimpleGame {
            n,
            bits,
            min_winning: OnceLock::new(),
        }
    }

    /// Builds the up-closure of the given coalitions. Non-minimal entries
    /// are tolerated; the result's minimal winning family is recomputed.
    pub fn from_min_winning(n: usize, generators: &[Coalition]) -> Result<Self, GameError> {
        check_player_count(n)?;
        if generators.is_empty() {
            return Err(GameError::GrandCoalitionLoses);
        }
        let masks: Vec<u32> = generators.iter().map(|c| c.mask()).collect();
        if masks.iter().any(|&m| m == 0) {
            return Err(GameError::EmptyCoalitionWins);
        }
        Self::from_predicate(n, |mask| masks.iter().any(|&g| g & !mask == 0))
    }

    pub fn player_count(&self) -> usize {
        self.n
    }

    pub fn is_winning_mask(&self, mask: u32) -> bool {
        self.bits[(mask / 64) as usize] >> (mask % 64) & 1 == 1
    }

    pub fn is_winning(&self, coalition: &Coalition) -> bool {
        self.is_winning_mask(coalition.mask())
    }

    /// Raw table bits; bit `mask` is the value of that coalition.
    pub fn table_bits(&self) -> &[u64] {
        &self.bits
    }

    /// Number of winning coalitions (including N).
    pub fn winning_count(&self) -> u64 {
        self.bits.iter().map(|b| b.count_ones() as u64).sum()
    }

    /// Minimal winning coalitions, sorted by (cardinality, mask). Cached.
    pub fn minimal_winning(&self) -> &[Coalition] {
        self.min_winning.get_or_init(|| {
            let mut result = Vec::new();
            for mask in 1..(1u32 << self.n) {
                if !self.is_winning_mask(mask) {
                    continue;
                }
                let mut minimal = true;
                let mut sub = mask;
                while sub != 0 {
                    let low = sub & sub.wrapping_neg();
                    if self.is_winning_mask(mask & !low) {
                        minimal = false;
                        break;
                    }
                    sub ^= low;
                }
                if minimal {
                    result.push(Coalition::new(mask, self.n));
                }
            }
            result.sort_by_key(|c| (c.card(), c.mask()));
            result
        })
    }

    /// Maximal losing coalitions, sorted by (cardinality, mask).
    pub fn maximal_losing(&self) -> Vec<Coalition> {
        let mut result = Vec::new();
        for mask in 0..(1u32 << self.n) {
            if self.is_winning_mask(mask) {
                continue;
            }
            let absent = !mask & mask_all(self.n);
            let mut maximal = true;
            let mut add = absent;
            while add != 0 {
                let low = add & add.wrapping_neg();
                if !self.is_winning_mask(mask | low) {
                    maximal = false;
                    break;
                }
                add ^= low;
            }
            if maximal {
                result.push(Coalition::new(mask, self.n));
            }
        }
        result.sort_by_key(|c| (c.card(), c.mask()));
        result
    }

    /// Players whose presence never changes the outcome.
    pub fn dummies(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| {
                let bit = 1u32 << i;
                (0..(1u32 << self.n))
                    .filter(|mask| mask & bit == 0)
                    .all(|mask| self.is_winning_mask(mask) == self.is_winning_mask(mask | bit))
            })
            .collect()
    }

    /// A player contained in every winning coalition.
    pub fn is_veto_player(&self, player: usize) -> bool {
        let bit = 1u32 << player;
        (0..(1u32 << self.n)).all(|mask| mask & bit != 0 || !self.is_winning_mask(mask))
    }

    /// True iff exactly one of S and N∖S wins, for every coalition S.
    pub fn is_decisive(&self) -> bool {
        let full = mask_all(self.n);
        (0..(1u32 << self.n))
            .all(|mask| self.is_winning_mask(mask) != self.is_winning_mask(full & !mask))
    }

    /// The image of the game under a relabeling of players; `perm[i]` is the
    /// new name of player `i`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGame {
        debug_assert_eq!(perm.len(), self.n);
        let size = 1usize << self.n;
        let mut bits = vec![0u64; size.div_ceil(64)];
        for mask in 0..size as u32 {
            if self.is_winning_mask(mask) {
                let mut image = 0u32;
                let mut rest = mask;
                while rest != 0 {
                    let i = rest.trailing_zeros() as usize;
                    image |= 1 << perm[i];
                    rest &= rest - 1;
                }
                bits[(image / 64) as usize] |= 1u64 << (image % 64);
            }
        }
        SimpleGame {
            n: self.n,
            bits,
            min_winning: OnceLock::new(),
        }
    }
}

impl fmt::Debug for SimpleGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGame(n={}, min_winning=[", self.n)?;
        for (i, c) in self.minimal_winning().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

fn check_player_count(n: usize) -> Result<(), GameError> {
    if n == 0 || n > MAX_TABLE_PLAYERS {
        return Err(GameError::PlayerCount {
            n,
            max: MAX_TABLE_PLAYERS,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn majority3() -> SimpleGame {
        SimpleGame::from_predicate(3, |m| m.count_ones() >= 2).unwrap()
    }

    #[test]
    fn validates_boundary_conditions() {
        assert!(matches!(
            SimpleGame::from_predicate(2, |_| true),
            Err(GameError::EmptyCoalitionWins)
        ));
        assert!(matches!(
            SimpleGame::from_predicate(2, |_| false),
            Err(GameError::GrandCoalitionLoses)
        ));
    }

    #[test]
    fn rejects_non_monotone_tables() {
        let result = SimpleGame::from_predicate(2, |m| m == 0b01 || m == 0b11);
        assert!(result.is_ok());
        // Winning {1} and N but losing {1,2}.
        let result = SimpleGame::from_predicate(3, |m| m == 0b001 || m == 0b111);
        assert!(matches!(result, Err(GameError::NotMonotone { .. })));
    }

    #[test]
    fn minimal_winning_of_majority() {
        let g = majority3();
        let mw = g.minimal_winning();
        assert_eq!(
            mw,
            &[
                Coalition::from_players(&[0, 1], 3),
                Coalition::from_players(&[0, 2], 3),
                Coalition::from_players(&[1, 2], 3),
            ]
        );
        assert!(g.maximal_losing().iter().all(|c| c.card() == 1));
        assert!(g.is_decisive());
        assert!(g.dummies().is_empty());
    }

    #[test]
    fn up_closure_from_generators() {
        let g = SimpleGame::from_min_winning(
            3,
            &[
                Coalition::from_players(&[0, 1], 3),
                Coalition::from_players(&[0, 2], 3),
            ],
        )
        .unwrap();
        assert!(g.is_winning_mask(0b011));
        assert!(g.is_winning_mask(0b101));
        assert!(g.is_winning_mask(0b111));
        assert!(!g.is_winning_mask(0b110));
        assert!(g.is_veto_player(0));
        assert!(!g.is_veto_player(1));
        assert!(!g.is_decisive()); // {1} and {2,3} both lose
    }

    #[test]
    fn relabel_moves_players() {
        let g = SimpleGame::from_min_winning(3, &[Coalition::singleton(0, 3)]).unwrap();
        let h = g.relabel(&[2, 0, 1]);
        assert!(h.is_winning_mask(0b100));
        assert!(!h.is_winning_mask(0b001));
    }
}
