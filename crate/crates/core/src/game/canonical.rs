use super::simple::SimpleGame;
use super::GameError;
use std::cmp::Ordering;

/// Largest player count accepted by [`canonical_form`]; the search is a
/// branch-and-bound over player assignments and degrades sharply past this.
pub const MAX_CANONICAL_PLAYERS: usize = 12;

/// The lexicographically minimal truth table over all player relabelings.
///
/// The table is read as the bit string v(∅), v({1}), v({2}), v({1,2}), ...
/// in coalition-mask order. Two games are isomorphic iff their canonical
/// forms are equal, and `canonical_form(relabel(g)) == canonical_form(g)`.
pub fn canonical_form(game: &SimpleGame) -> Result<SimpleGame, GameError> {
    let n = game.player_count();
    if n > MAX_CANONICAL_PLAYERS {
        return Err(GameError::PlayerCount {
            n,
            max: MAX_CANONICAL_PLAYERS,
        });
    }
    let size = 1usize << n;
    let mut search = Search {
        game,
        n,
        // Everything except v(∅) starts as the worst possible table, so the
        // first branch explored immediately becomes the incumbent.
        best: {
            let mut b = vec![true; size];
            b[0] = false;
            b
        },
        current: vec![false; size],
        orig: vec![0u32; size],
        used: vec![false; n],
    };
    search.dfs(0);
    let best = search.best;
    SimpleGame::from_predicate(n, |mask| best[mask as usize])
}

struct Search<'a> {
    game: &'a SimpleGame,
    n: usize,
    best: Vec<bool>,
    current: Vec<bool>,
    /// `orig[m]` is the original-player mask corresponding to relabeled mask
    /// `m`, valid for all m below the current frontier.
    orig: Vec<u32>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Invariant: on entry, `current[..1 << depth]` equals
    /// `best[..1 << depth]`. Assigning a player to position `depth` decides
    /// the table on masks `[1 << depth, 2 << depth)`.
    fn dfs(&mut self, depth: usize) {
        if depth == self.n {
            return;
        }
        let lo = 1usize << depth;
        for p in 0..self.n {
            if self.used[p] {
                continue;
            }
            let bit = 1u32 << p;
            let mut cmp = Ordering::Equal;
            for m in lo..2 * lo {
                self.orig[m] = self.orig[m - lo] | bit;
                let value = self.game.is_winning_mask(self.orig[m]);
                self.current[m] = value;
                if cmp == Ordering::Equal && value != self.best[m] {
                    cmp = if value { Ordering::Greater } else { Ordering::Less };
                    if cmp == Ordering::Greater {
                        break;
                    }
                }
            }
            match cmp {
                Ordering::Greater => continue,
                Ordering::Less => {
                    self.best[lo..2 * lo].copy_from_slice(&self.current[lo..2 * lo]);
                    for b in &mut self.best[2 * lo..] {
                        *b = true;
                    }
                }
                Ordering::Equal => {}
            }
            self.used[p] = true;
            self.dfs(depth + 1);
            self.used[p] = false;
        }
    }
}

/// Number of relabelings mapping the game to itself.
pub fn automorphism_count(game: &SimpleGame) -> u64 {
    let n = game.player_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0u64;
    permute_all(&mut perm, 0, &mut |perm| {
        if &game.relabel(perm) == game {
            count += 1;
        }
    });
    count
}

fn permute_all(perm: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::WeightedGame;
    use crate::ratio::int;

    fn weighted(q: i64, w: &[i64]) -> SimpleGame {
        WeightedGame::from_weights(int(q), w.iter().map(|&x| int(x)).collect())
            .unwrap()
            .realize()
            .unwrap()
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let a = canonical_form(&weighted(3, &[1, 1, 2])).unwrap();
        let b = canonical_form(&weighted(3, &[2, 1, 1])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let g = weighted(4, &[3, 2, 1, 1]);
        let c = canonical_form(&g).unwrap();
        assert_eq!(canonical_form(&c).unwrap(), c);
    }

    #[test]
    fn invariant_under_all_relabelings() {
        let g = weighted(4, &[3, 2, 1, 1]);
        let c = canonical_form(&g).unwrap();
        let perm: Vec<usize> = (0..4).collect();
        permute_all(&mut perm.clone(), 0, &mut |p| {
            assert_eq!(canonical_form(&g.relabel(p)).unwrap(), c);
        });
    }

    #[test]
    fn majority_automorphisms() {
        assert_eq!(automorphism_count(&weighted(2, &[1, 1, 1])), 6);
        assert_eq!(automorphism_count(&weighted(3, &[2, 1, 1])), 2);
    }
}
