//! Exact inverse solving by exhaustive enumeration: fold the game stream,
//! keep the minimum distance. The distance of a game is computed between
//! the descending-sorted index vector and the descending-sorted target,
//! which is the optimal relabeling for any symmetric index (rearrangement
//! inequality), and the winning game is relabeled back against the
//! original target order at the end.

use super::{Certificate, InverseError, InverseSolution, Norm, TargetDistribution};
use crate::enumeration::{fold_games, GameClass, GameFold};
use crate::game::{GameSpec, SimpleGame};
use crate::indices::{
    compute_on_table, swing_counts, swing_counts_by_size, ComputeOptions, IndexError, IndexKind,
};
use crate::ratio::Ratio;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub const MAX_EXHAUSTIVE_PLAYERS: usize = 6;

/// Globally optimal inverse solution over the enumerated class.
///
/// For n ≤ 5 the isomorphism-reduced stream is used; n = 6 falls back to
/// the labeled stream (isomorphism reduction is capped at 5 players), which
/// costs a factor n! but stays within desk scale for the cheap indices.
pub fn solve_exhaustive(
    sigma: &TargetDistribution,
    class: GameClass,
    kind: &IndexKind,
    norm: Norm,
) -> Result<InverseSolution, InverseError> {
    let n = sigma.player_count();
    if n > MAX_EXHAUSTIVE_PLAYERS {
        return Err(InverseError::Envelope(format!(
            "exhaustive search supports n ≤ {MAX_EXHAUSTIVE_PLAYERS} (got {n}); \
             try the local-search method"
        )));
    }
    let up_to_iso = n <= crate::enumeration::MAX_ISO_PLAYERS;
    let fold = BestGameFold {
        sigma_sorted: sigma.sorted().to_vec(),
        kind: kind.clone(),
        norm,
        fast: FastLane::prepare(sigma.sorted(), kind, norm),
    };
    let (best, _report) = fold_games(n, class, up_to_iso, &fold)?;
    let best = best.ok_or_else(|| InverseError::Envelope("empty game class".to_string()))?;
    let game = align_to_target(&best.game, kind, sigma)?;
    let power = compute_on_table(&game, kind, &ComputeOptions::default())?;
    InverseSolution::checked(
        GameSpec::Explicit(game),
        power,
        &sigma.original(),
        Certificate::ExactOptimal,
        norm,
    )
}

/// Relabels the optimal game so that its index vector aligns with the
/// target's original entry order (largest power at the position of the
/// largest target entry, and so on).
fn align_to_target(
    game: &SimpleGame,
    kind: &IndexKind,
    sigma: &TargetDistribution,
) -> Result<SimpleGame, InverseError> {
    let power = compute_on_table(game, kind, &ComputeOptions::default())?;
    let n = game.player_count();
    let mut by_power: Vec<usize> = (0..n).collect();
    by_power.sort_by(|&a, &b| power.values[b].cmp(&power.values[a]).then(a.cmp(&b)));
    let mut perm = vec![0usize; n];
    for (rank, &player) in by_power.iter().enumerate() {
        perm[player] = sigma.position_of_rank(rank);
    }
    Ok(game.relabel(&perm))
}

struct Best {
    distance_key: DistanceKey,
    game: SimpleGame,
}

struct BestGameFold {
    sigma_sorted: Vec<Ratio>,
    kind: IndexKind,
    norm: Norm,
    fast: Option<FastLane>,
}

impl GameFold for BestGameFold {
    type Acc = Option<Best>;

    fn empty(&self) -> Self::Acc {
        None
    }

    fn absorb(&self, acc: &mut Self::Acc, game: &SimpleGame) {
        let key = match &self.fast {
            Some(lane) => lane.distance_key(game),
            None => None,
        };
        let key = match key {
            Some(k) => k,
            None => match slow_distance_key(game, &self.kind, self.norm, &self.sigma_sorted) {
                Some(k) => k,
                None => return, // index not computable on this game; skip
            },
        };
        let better = match acc {
            None => true,
            Some(best) => match key.cmp(&best.distance_key) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => game < &best.game,
                std::cmp::Ordering::Greater => false,
            },
        };
        if better {
            *acc = Some(Best {
                distance_key: key,
                game: game.clone(),
            });
        }
    }

    fn merge(&self, a: Self::Acc, b: Self::Acc) -> Self::Acc {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => {
                // Deterministic tie-break on the truth table.
                let pick_x = match x.distance_key.cmp(&y.distance_key) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => x.game <= y.game,
                    std::cmp::Ordering::Greater => false,
                };
                Some(if pick_x { x } else { y })
            }
        }
    }
}

/// Exactly comparable distance key: a fraction num/den with den > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
enum DistanceKey {
    Small { num: i128, den: i128 },
    Big(Ratio),
}

impl DistanceKey {
    fn to_ratio(&self) -> Ratio {
        match self {
            DistanceKey::Small { num, den } => Ratio::new(BigInt::from(*num), BigInt::from(*den)),
            DistanceKey::Big(r) => r.clone(),
        }
    }
}

impl Ord for DistanceKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (DistanceKey::Small { num: a, den: b }, DistanceKey::Small { num: c, den: d }) => {
                // Cross-multiply; magnitudes are kept below 2^63 on build.
                (a * d).cmp(&(c * b))
            }
            _ => self.to_ratio().cmp(&other.to_ratio()),
        }
    }
}

impl PartialOrd for DistanceKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer lane for the indices whose raw per-player values are integer
/// counts with a common denominator: the l1/linf distance between the
/// sorted count vector over its total and the scaled target is a small
/// fraction, no big-rational work per game.
struct FastLane {
    kind: FastKind,
    /// Target numerators over `scale`, sorted descending.
    target: Vec<i128>,
    scale: i128,
    norm: Norm,
}

#[derive(Clone, Copy)]
enum FastKind {
    Banzhaf,
    ShapleyShubik,
    PublicGood,
    PublicHelp,
    Johnston,
}

const FAST_LIMIT: i128 = 1 << 30;

impl FastLane {
    fn prepare(sigma_sorted: &[Ratio], kind: &IndexKind, norm: Norm) -> Option<FastLane> {
        if norm == Norm::L2 {
            return None; // squared distances stay on the rational path
        }
        let kind = match kind {
            IndexKind::Banzhaf => FastKind::Banzhaf,
            IndexKind::ShapleyShubik => FastKind::ShapleyShubik,
            IndexKind::PublicGood => FastKind::PublicGood,
            IndexKind::PublicHelp => FastKind::PublicHelp,
            IndexKind::Johnston => FastKind::Johnston,
            _ => return None,
        };
        let scale = crate::ratio::denominator_lcm(sigma_sorted)
            .to_i128()
            .filter(|&s| s < FAST_LIMIT)?;
        let mut target = Vec::with_capacity(sigma_sorted.len());
        for v in sigma_sorted {
            let scaled = (v * Ratio::from_integer(BigInt::from(scale))).to_integer();
            target.push(scaled.to_i128().filter(|&x| x.abs() < FAST_LIMIT)?);
        }
        Some(FastLane {
            kind,
            target,
            scale,
            norm,
        })
    }

    /// Raw integer counts of the index on this game, unnormalized.
    fn raw_counts(&self, game: &SimpleGame) -> Option<Vec<i128>> {
        let n = game.player_count();
        match self.kind {
            FastKind::Banzhaf => {
                Some(swing_counts(game).into_iter().map(|c| c as i128).collect())
            }
            FastKind::ShapleyShubik => {
                let by_size = swing_counts_by_size(game);
                let mut factorial = vec![1i128; n + 1];
                for i in 1..=n {
                    factorial[i] = factorial[i - 1] * i as i128;
                }
                Some(
                    by_size
                        .iter()
                        .map(|counts| {
                            counts
                                .iter()
                                .enumerate()
                                .map(|(s, &c)| factorial[s] * factorial[n - 1 - s] * c as i128)
                                .sum()
                        })
                        .collect(),
                )
            }
            FastKind::PublicGood => {
                let mut counts = vec![0i128; n];
                for c in game.minimal_winning() {
                    for p in c.players() {
                        counts[p] += 1;
                    }
                }
                Some(counts)
            }
            FastKind::PublicHelp => {
                let mut counts = vec![0i128; n];
                for mask in 1..(1u32 << n) {
                    if !game.is_winning_mask(mask) {
                        continue;
                    }
                    let mut rest = mask;
                    while rest != 0 {
                        counts[rest.trailing_zeros() as usize] += 1;
                        rest &= rest - 1;
                    }
                }
                Some(counts)
            }
            FastKind::Johnston => {
                let scale: i128 = (1..=n as i128).fold(1, num_integer::lcm);
                let mut counts = vec![0i128; n];
                for mask in 1..(1u32 << n) {
                    if !game.is_winning_mask(mask) {
                        continue;
                    }
                    let mut critical: Vec<usize> = Vec::new();
                    let mut rest = mask;
                    while rest != 0 {
                        let p = rest.trailing_zeros() as usize;
                        if !game.is_winning_mask(mask & !(1 << p)) {
                            critical.push(p);
                        }
                        rest &= rest - 1;
                    }
                    if critical.is_empty() {
                        continue;
                    }
                    let share = scale / critical.len() as i128;
                    for p in critical {
                        counts[p] += share;
                    }
                }
                Some(counts)
            }
        }
    }

    fn distance_key(&self, game: &SimpleGame) -> Option<DistanceKey> {
        let mut counts = self.raw_counts(game)?;
        counts.sort_unstable_by(|a, b| b.cmp(a));
        let total: i128 = counts.iter().sum();
        if total <= 0 || total >= FAST_LIMIT {
            return None;
        }
        // |c_i/total − t_i/scale| = |c_i·scale − t_i·total| / (scale·total)
        let den = self.scale * total;
        let mut num = 0i128;
        for (c, t) in counts.iter().zip(&self.target) {
            let diff = (c * self.scale - t * total).abs();
            match self.norm {
                Norm::L1 => num += diff,
                Norm::Linf => num = num.max(diff),
                Norm::L2 => unreachable!("l2 never uses the fast lane"),
            }
        }
        Some(DistanceKey::Small { num, den })
    }
}

fn slow_distance_key(
    game: &SimpleGame,
    kind: &IndexKind,
    norm: Norm,
    sigma_sorted: &[Ratio],
) -> Option<DistanceKey> {
    let power = match compute_on_table(game, kind, &ComputeOptions::default()) {
        Ok(p) => p,
        Err(IndexError::NotWeighted) => return None,
        Err(_) => return None,
    };
    let mut values = power.values;
    values.sort_by(|a, b| b.cmp(a));
    Some(DistanceKey::Big(norm.distance(&values, sigma_sorted)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};

    #[test]
    fn dictator_target_is_hit_exactly() {
        let sigma = TargetDistribution::parse("1,0,0").unwrap();
        let solution =
            solve_exhaustive(&sigma, GameClass::Simple, &IndexKind::Banzhaf, Norm::L1).unwrap();
        assert_eq!(solution.distance, int(0));
        assert_eq!(solution.power.values, vec![int(1), int(0), int(0)]);
        assert!(matches!(solution.certificate, Certificate::ExactOptimal));
    }

    #[test]
    fn permuting_the_target_permutes_the_solution() {
        let a = TargetDistribution::parse("3/5,1/5,1/5").unwrap();
        let b = TargetDistribution::parse("1/5,3/5,1/5").unwrap();
        let sa = solve_exhaustive(&a, GameClass::Simple, &IndexKind::Banzhaf, Norm::L1).unwrap();
        let sb = solve_exhaustive(&b, GameClass::Simple, &IndexKind::Banzhaf, Norm::L1).unwrap();
        assert_eq!(sa.distance, sb.distance);
        assert_eq!(sa.distance, int(0));
        assert_eq!(sa.power.values, vec![rat(3, 5), rat(1, 5), rat(1, 5)]);
        assert_eq!(sb.power.values, vec![rat(1, 5), rat(3, 5), rat(1, 5)]);
    }

    #[test]
    fn fast_and_slow_lanes_agree() {
        let sigma = TargetDistribution::parse("1/2,1/3,1/6,0").unwrap();
        for kind in [
            IndexKind::Banzhaf,
            IndexKind::ShapleyShubik,
            IndexKind::PublicGood,
            IndexKind::PublicHelp,
            IndexKind::Johnston,
        ] {
            let lane = FastLane::prepare(sigma.sorted(), &kind, Norm::L1).unwrap();
            let (games, _) = crate::enumeration::collect_games(4, GameClass::Simple, true).unwrap();
            for g in &games {
                let fast = lane.distance_key(g).unwrap().to_ratio();
                let slow = slow_distance_key(g, &kind, Norm::L1, sigma.sorted())
                    .unwrap()
                    .to_ratio();
                assert_eq!(fast, slow, "lane mismatch for {kind} on {g:?}");
            }
        }
    }

    #[test]
    fn exhaustive_beats_every_enumerated_game() {
        let sigma = TargetDistribution::parse("2/3,1/6,1/6,0").unwrap();
        let solution =
            solve_exhaustive(&sigma, GameClass::Simple, &IndexKind::ShapleyShubik, Norm::L1)
                .unwrap();
        let (games, _) = crate::enumeration::collect_games(4, GameClass::Simple, false).unwrap();
        for g in &games {
            let power = compute_on_table(g, &IndexKind::ShapleyShubik, &Default::default())
                .unwrap();
            let d = Norm::L1.distance(&power.values, &sigma.original());
            assert!(solution.distance <= d);
        }
    }
}
