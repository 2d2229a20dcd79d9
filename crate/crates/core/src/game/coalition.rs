use std::fmt;

/// A coalition of players, stored as a bitmask over `{0, ..., n-1}`.
///
/// Players are 0-indexed internally; all human-facing formatting is
/// 1-indexed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition {
    mask: u32,
    n: u8,
}

impl Coalition {
    pub fn new(mask: u32, n: usize) -> Self {
        debug_assert!(n <= 32);
        debug_assert_eq!(mask & !mask_all(n), 0, "players outside 0..n");
        Coalition { mask, n: n as u8 }
    }

    pub fn empty(n: usize) -> Self {
        Coalition::new(0, n)
    }

    pub fn full(n: usize) -> Self {
        Coalition::new(mask_all(n), n)
    }

    pub fn singleton(player: usize, n: usize) -> Self {
        debug_assert!(player < n);
        Coalition::new(1 << player, n)
    }

    /// Builds a coalition from 0-indexed player ids.
    pub fn from_players(players: &[usize], n: usize) -> Self {
        let mut mask = 0u32;
        for &p in players {
            assert!(p < n, "player {p} out of range for n = {n}");
            mask |= 1 << p;
        }
        Coalition::new(mask, n)
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn player_count(&self) -> usize {
        self.n as usize
    }

    pub fn card(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn contains(&self, player: usize) -> bool {
        self.mask >> player & 1 == 1
    }

    pub fn with(&self, player: usize) -> Self {
        Coalition::new(self.mask | 1 << player, self.n as usize)
    }

    pub fn without(&self, player: usize) -> Self {
        Coalition::new(self.mask & !(1 << player), self.n as usize)
    }

    pub fn complement(&self) -> Self {
        Coalition::new(!self.mask & mask_all(self.n as usize), self.n as usize)
    }

    pub fn is_subset_of(&self, other: &Coalition) -> bool {
        self.mask & !other.mask == 0
    }

    /// 0-indexed members in increasing order.
    pub fn players(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n as usize).filter(move |&p| self.contains(p))
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for p in self.players() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", p + 1)?;
            first = false;
        }
        write!(f, "}}")
    }
}

pub(crate) fn mask_all(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_ops() {
        let c = Coalition::from_players(&[0, 2], 4);
        assert!(c.contains(0) && c.contains(2) && !c.contains(1));
        assert_eq!(c.card(), 2);
        assert_eq!(c.with(1).card(), 3);
        assert_eq!(c.without(0), Coalition::singleton(2, 4));
        assert_eq!(c.complement(), Coalition::from_players(&[1, 3], 4));
        assert!(c.is_subset_of(&Coalition::full(4)));
        assert!(Coalition::empty(4).is_subset_of(&c));
    }

    #[test]
    fn display_is_one_indexed() {
        let c = Coalition::from_players(&[0, 2], 3);
        assert_eq!(c.to_string(), "{1,3}");
        assert_eq!(Coalition::empty(3).to_string(), "{}");
    }
}
